"""From a partition to classified zeros.

Run with ``python3 demos/zeros_tour.py``.
"""

# %% A partition fixes which degrees exist
from xhermite import degree_set, exceptional_hermite, generalized_hermite, make_partition, zero_set
from xhermite.exact_poly import exceptional_ode_residual
from xhermite.zeros import exceptional_deviation, h_roots, interlacing_report, classical_hermite_zeros

lam = make_partition((1, 1))
print("partition", lam.parts, "skips degrees", lam.excluded_degrees())
print("first admissible degrees:", degree_set(lam, 8))

# %% The denominator polynomial has no real zeros
H = generalized_hermite(lam)
print("H =", H.coeffs)
print("zeros of H:", [complex(w) for w in h_roots(lam, 64).roots])

# %% Exceptional polynomials are exact integer objects
P = exceptional_hermite(lam, 6)
print("P_6 =", P.coeffs)
print("differential equation residual is zero:", exceptional_ode_residual(lam, 6).is_zero())

# %% Zeros split into real (regular) and non-real (exceptional) ones
for n in (5, 20, 40):
    zs = zero_set(lam, n, 192)
    dev = [float(d) for _, d in exceptional_deviation(zs, h_roots(lam, 192))]
    print(f"n={n:3d}: {zs.n} regular, {zs.m} exceptional, distance to zeros of H {max(dev):.4f}")

# %% Regular zeros sit in the gaps between classical Hermite zeros
zs = zero_set(lam, 30, 192)
rep = interlacing_report(zs.regular, classical_hermite_zeros(zs.m + zs.n, 64), lam.length)
print(f"occupied gaps: {rep['occupied']} of at least {30 - lam.length} required")

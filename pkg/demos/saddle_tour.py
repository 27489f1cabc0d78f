"""The two-row case, the modified weight and the semicircle comparison.

Run with ``python3 demos/saddle_tour.py``.
"""

# %% D_nu is the Christoffel-Darboux diagonal
from xhermite import make_partition, zero_set
from xhermite.dnu import dnu, dnu_ode_check, ode_hessian_block, r_mn, saddle_check
from xhermite.energy import hessian
from xhermite.lab import semicircle_report
from xhermite.optimality import WeightSpec, verify_unique_maximum
from xhermite.zeros import h_roots

for nu in range(4):
    d = dnu(nu)
    print(f"D_{nu} = {d.exact_part.coeffs}, ODE holds: {dnu_ode_check(nu)}")

# %% Two closed forms for the exceptional diagonal of the Hessian
lam, n = make_partition((1, 1)), 30
zs = zero_set(lam, n, 192)
A = hessian(zs, h_roots(lam, 192)).symmetric
z = zs.exceptional[0]
print("assembled:         ", A[0, 0])
print("from the ODE:      ", float(ode_hessian_block(lam, n, z)[0]))
print("r_mn as displayed: ", float(r_mn(1, n, z).real))

# %% Saddle structure
for nu in (1, 2):
    v = saddle_check(nu, 40)
    print(f"nu={nu}: dominant {v.dominant}, regular diagonal < 0 {v.regular_negative}, "
          f"exceptional diagonal < 0 {v.exceptional_negative}")

# %% Regular zeros maximize the energy for the modified weight
zs = zero_set(lam, 40, 192)
ver = verify_unique_maximum(WeightSpec.modified(zs), list(zs.regular), trials=500, seed=1)
print(ver.to_json())

# %% Scaled regular zeros against the semicircle law
for n in (20, 40, 60):
    print(n, round(semicircle_report(zero_set(lam, n, 192))["ks_distance"], 4))

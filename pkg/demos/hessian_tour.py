"""The log-energy Hessian at the zeros and where its eigenvalues live.

Run with ``python3 demos/hessian_tour.py``.
"""

# %% Assemble the Hessian at the zeros
import numpy as np

from xhermite import make_partition, zero_set
from xhermite.energy import Configuration, find_scaling_K, gradient, hessian, scaled_hessian
from xhermite.gersgorin import localization_report
from xhermite.zeros import h_roots

lam, n = make_partition((1, 1)), 40
zs, hw = zero_set(lam, n, 192), h_roots(lam, 192)
g = gradient(Configuration.from_zero_set(zs), hw)
print("largest gradient component:", float(max(abs(v) for v in g)))

H = hessian(zs, hw)
print("dimension", H.dim, "with", H.m, "2x2 blocks and", H.n, "scalar blocks")
print("first exceptional block:\n", H.symmetric[:2, :2])

# %% Rescale the exceptional coordinates until the matrix is block dominant
search = find_scaling_K(H)
print("scaling K =", search.K, "smallest margin", min(search.margins))

# %% Block Gersgorin sets enclose the spectrum
rep = localization_report(scaled_hessian(H, search.K))
print("regular discs lie in x < 0:", rep.verdicts["G_r_negative"])
print("exceptional bands:", [[round(a, 1), round(b, 1)] for a, b in rep.G_e[0]])
print("all eigenvalues enclosed:", rep.verdicts["all_contained"])
ev = np.array(rep.eigenvalues)
print(f"{(ev > 0).sum()} positive and {(ev < 0).sum()} negative eigenvalues")

# %% With two exceptional pairs no scaling makes the matrix dominant
H22 = hessian(zero_set(make_partition((2, 2)), 40, 192), h_roots(make_partition((2, 2)), 192))
s22 = find_scaling_K(H22)
print("(2,2): dominant scaling found:", s22.found, "best margin", round(s22.best_margin, 3))

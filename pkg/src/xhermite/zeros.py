"""Zeros of classical, generalized and exceptional Hermite polynomials.

All roots are computed in arbitrary precision.  Real-coefficient inputs get
their conjugate symmetry restored exactly after the iteration, so exceptional
zeros always come in ``(z, conj(z))`` pairs.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import mpmath as mp
import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import (
    CountMismatch,
    DegenerateDistance,
    MatchingAmbiguous,
    NonConvergence,
    NotSquarefree,
)
from .exact_poly import (
    ExactPoly,
    default_precision,
    derivative,
    eval_extended,
    exceptional_hermite,
    generalized_hermite,
    hermite,
    horner_with_derivative,
    is_squarefree,
)
from .partition import Partition

GUARD_BITS = 32


def working_precision(p: ExactPoly, precision_bits: int) -> int:
    return max(default_precision(p), precision_bits) + GUARD_BITS


@dataclass(frozen=True)
class RootList:
    """Roots of a polynomial together with their residual certificates."""

    roots: tuple
    residuals: tuple
    iterations: int = 0

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)


@dataclass(frozen=True)
class HRoots:
    """Zeros ``w_k`` of the generalized Hermite polynomial, upper member of each pair first."""

    roots: tuple
    leading: int = 1
    precision_bits: int = 128

    @property
    def m(self) -> int:
        return len(self.roots)


@dataclass(frozen=True)
class ZeroSet:
    """Classified zeros of an exceptional Hermite polynomial of degree ``m + n``."""

    exceptional: tuple
    regular: tuple
    lambda_ref: Partition
    precision_bits: int = 128
    residuals: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def m(self) -> int:
        return len(self.exceptional)

    @property
    def n(self) -> int:
        return len(self.regular)

    @property
    def degree(self) -> int:
        return self.m + self.n

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "re", "im", "residual"])
        for z in self.exceptional:
            res = self.residuals.get(("e", _key(z)), "")
            w.writerow(["exceptional", mp.nstr(mp.re(z), 30), mp.nstr(mp.im(z), 30), _fmt(res)])
        for x in self.regular:
            res = self.residuals.get(("r", _key(x)), "")
            w.writerow(["regular", mp.nstr(x, 30), "0", _fmt(res)])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "partition": list(self.lambda_ref.parts),
            "m": self.m,
            "n": self.n,
            "precision_bits": self.precision_bits,
            "exceptional": [[mp.nstr(mp.re(z), 30), mp.nstr(mp.im(z), 30)] for z in self.exceptional],
            "regular": [mp.nstr(x, 30) for x in self.regular],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _key(z) -> str:
    return mp.nstr(z, 25)


def _fmt(v) -> str:
    if v == "":
        return ""
    return mp.nstr(v, 6)


def classical_hermite_zeros(N: int, precision_bits: int = 128) -> List:
    """Zeros of ``H_N`` as sorted ``mpf`` values.

    Eigenvalues of the symmetric Jacobi matrix seed a Newton iteration on the
    exact polynomial.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if N == 1:
        return [mp.mpf(0)]
    off = np.sqrt(np.arange(1, N) / 2.0)
    seeds = eigh_tridiagonal(np.zeros(N), off, eigvals_only=True)
    p = hermite(N)
    work = working_precision(p, precision_bits)
    coeffs = p.coeffs
    dcoeffs = derivative(p).coeffs
    # zeros are symmetric; refine the positive ones (the middle zero of odd N is 0)
    first = (N + 1) // 2
    out = []
    with mp.workprec(work):
        tol = mp.ldexp(1, -precision_bits - 4)
        for s in seeds[first:]:
            x = mp.mpf(float(s))
            for _ in range(200):
                y, dy = horner_with_derivative(coeffs, x)
                step = y / dy
                x -= step
                if abs(step) <= tol * max(1, abs(x)):
                    break
            else:
                raise NonConvergence(f"Newton refinement of H_{N} zeros did not converge")
            out.append(+x)
        middle = [mp.mpf(0)] if N % 2 else []
        zeros = [-x for x in reversed(out)] + middle + out
    return zeros


def _default_seeds(p: ExactPoly) -> List:
    N = int(p.degree)
    a0 = abs(p.coeffs[0]) or 1
    radius = mp.power(mp.mpf(a0) / abs(p.leading), mp.mpf(1) / N)
    radius = max(radius, mp.mpf("0.5"))
    return [radius * mp.expjpi(mp.mpf(2 * k) / N + mp.mpf(1) / (2 * N)) for k in range(N)]


def all_roots(
    p: ExactPoly,
    precision_bits: int = 128,
    seeds: Optional[Sequence] = None,
    max_iter: int = 500,
) -> RootList:
    """All complex roots of a squarefree polynomial by Aberth-Ehrlich iteration.

    Parameters
    ----------
    p : ExactPoly
        Squarefree polynomial with integer coefficients.
    precision_bits : int
        Target relative accuracy ``2**-precision_bits`` of each root.  The
        iteration itself runs with extra headroom for coefficient growth.
    seeds : sequence of complex, optional
        Initial approximations (``deg p`` of them).  Defaults to points on a
        circle scaled to the geometric mean modulus of the roots.
    max_iter : int
        Iteration cap; exceeding it raises :class:`NonConvergence`.

    Returns
    -------
    RootList
        Roots (conjugate symmetry enforced) with residual certificates
        ``|p(r)| / (|p'(r)| * min_j |r - r_j|)``.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no roots")
    N = int(p.degree)
    if N == 0:
        return RootList((), (), 0)
    if not is_squarefree(p):
        raise NotSquarefree(f"polynomial of degree {N} has repeated roots")
    work = working_precision(p, precision_bits)
    dp = derivative(p)
    with mp.workprec(work):
        coeffs = [mp.mpf(a) for a in p.coeffs]
        if seeds is None:
            z = _default_seeds(p)
        else:
            if len(seeds) != N:
                raise ValueError(f"expected {N} seeds, got {len(seeds)}")
            # a small rotation breaks exact conjugate symmetry of the seeds
            rot = mp.expj(mp.mpf("1e-3"))
            z = [mp.mpc(s) * rot for s in seeds]
        tol = mp.ldexp(1, -precision_bits - 8)
        done = [False] * N
        it = 0
        for it in range(1, max_iter + 1):
            for k in range(N):
                if done[k]:
                    continue
                zk = z[k]
                y, dy = horner_with_derivative(coeffs, zk)
                if y == 0:
                    done[k] = True
                    continue
                ratio = y / dy
                s = mp.fsum(1 / (zk - z[j]) for j in range(N) if j != k)
                w = ratio / (1 - ratio * s)
                z[k] = zk - w
                if abs(w) <= tol * max(1, abs(z[k])):
                    done[k] = True
            if all(done):
                break
        else:
            raise NonConvergence(
                f"Aberth iteration did not converge in {max_iter} steps at {work} bits"
            )
        z = [_newton_polish(p, dp, r, work) for r in z]
        z = _enforce_conjugate_symmetry(z)
        residuals = []
        for i, r in enumerate(z):
            v, _ = eval_extended(p, r, work)
            dv, _ = eval_extended(dp, r, work)
            spacing = min((abs(r - q) for j, q in enumerate(z) if j != i), default=mp.mpf(1))
            residuals.append(abs(v) / (abs(dv) * spacing) if dv != 0 else mp.inf)
    return RootList(tuple(z), tuple(residuals), it)


def _newton_polish(p: ExactPoly, dp: ExactPoly, z, work: int, steps: int = 2):
    for _ in range(steps):
        v, _ = eval_extended(p, z, work)
        dv, _ = eval_extended(dp, z, work)
        if v == 0 or dv == 0:
            break
        z = z - v / dv
    return z


def _enforce_conjugate_symmetry(z: List) -> List:
    n = len(z)
    partner = [min(range(n), key=lambda j: abs(z[i] - mp.conj(z[j]))) for i in range(n)]
    out = list(z)
    for i in range(n):
        j = partner[i]
        if j == i:
            out[i] = mp.mpc(mp.re(z[i]), 0)
        elif partner[j] == i and i < j:
            avg = (z[i] + mp.conj(z[j])) / 2
            out[i], out[j] = avg, mp.conj(avg)
    return out


def _order_pairs(zs: Sequence, precision_bits: int) -> tuple:
    with mp.workprec(precision_bits + GUARD_BITS):
        upper = sorted((z for z in zs if mp.im(z) > 0), key=lambda z: (mp.re(z), mp.im(z)))
        out = []
        for z in upper:
            out.extend([+z, mp.conj(z)])
    if len(out) != len(zs):
        raise CountMismatch("non-real roots are not closed under conjugation")
    return tuple(out)


@lru_cache(maxsize=None)
def h_roots(lam: Partition, precision_bits: int = 128) -> HRoots:
    """Zeros of ``H_λ`` in conjugate-pair order."""
    H = generalized_hermite(lam)
    roots = all_roots(H, precision_bits).roots if H.degree > 0 else ()
    if any(abs(mp.im(w)) == 0 for w in roots):
        raise CountMismatch(f"H_{lam} has real zeros; the partition is not usable here")
    return HRoots(_order_pairs(roots, working_precision(H, precision_bits)), H.leading, precision_bits)


def _roots_precision(roots: Sequence, precision_bits: int) -> int:
    """Bits needed to hold the given roots without rounding."""
    bits = precision_bits
    for z in roots:
        z = z if isinstance(z, (mp.mpc, mp.mpf)) else mp.mpc(z)
        parts = (z._mpc_ if isinstance(z, mp.mpc) else (z._mpf_,))
        for part in parts:
            bits = max(bits, part[3] if part[1] else 0)
    return bits


def default_tol_imag(precision_bits: int):
    return mp.ldexp(1, -(precision_bits // 2))


def classify_zeros(roots: Sequence, lam: Partition, n: int, tol_imag=None, precision_bits: int = 128) -> ZeroSet:
    """Split roots into ``n`` regular (real) and ``|λ|`` exceptional zeros."""
    m = lam.size
    if len(roots) != m + n:
        raise CountMismatch(f"{len(roots)} roots given, expected {m + n}")
    base = default_tol_imag(precision_bits) if tol_imag is None else tol_imag
    regular, exceptional = [], []
    with mp.workprec(_roots_precision(roots, precision_bits)):
        for z in roots:
            z = mp.mpc(z)
            if abs(mp.im(z)) <= base * max(1, abs(z)):
                regular.append(+mp.re(z))
            else:
                exceptional.append(z)
    if len(regular) != n or len(exceptional) != m:
        raise CountMismatch(
            f"found {len(regular)} real and {len(exceptional)} non-real zeros, expected ({n}, {m})"
        )
    regular.sort()
    if any(b <= a for a, b in zip(regular, regular[1:])):
        raise CountMismatch("regular zeros are not pairwise distinct")
    return ZeroSet(_order_pairs(exceptional, _roots_precision(roots, precision_bits)), tuple(regular), lam, precision_bits)


def _regular_seeds(lam: Partition, n: int, hw: HRoots, precision_bits: int) -> List:
    m = lam.size
    cz = [mp.mpf(c) for c in classical_hermite_zeros(m + n, 64)]
    # drop one classical zero per exceptional seed, nearest to its real part
    for w in hw.roots:
        j = min(range(len(cz)), key=lambda i: abs(cz[i] - mp.re(w)))
        cz.pop(j)
    return cz


@lru_cache(maxsize=None)
def zero_set(lam: Partition, n: int, precision_bits: int = 192) -> ZeroSet:
    """Zeros of the exceptional Hermite polynomial of degree ``|λ| + n``.

    ``n`` is the number of regular zeros.  Seeds are the zeros of ``H_λ`` for
    the exceptional part and classical Hermite zeros for the regular part.
    """
    m = lam.size
    P = exceptional_hermite(lam, m + n)
    hw = h_roots(lam, precision_bits)
    seeds = list(hw.roots) + _regular_seeds(lam, n, hw, precision_bits)
    rl = all_roots(P, precision_bits, seeds=seeds)
    zs = classify_zeros(rl.roots, lam, n, precision_bits=precision_bits)
    residuals = {}
    for r, res in zip(rl.roots, rl.residuals):
        if mp.im(r) == 0:
            residuals[("r", _key(mp.re(r)))] = res
        else:
            residuals[("e", _key(r))] = res
    return ZeroSet(zs.exceptional, zs.regular, lam, precision_bits, residuals)


def match_exceptional(zs: ZeroSet, hw: HRoots, ratio: float = 1.01) -> List[int]:
    """Index into ``hw.roots`` of the ``w_k`` paired with each exceptional zero.

    Greedy nearest-neighbour matching on sorted distances.  Raises
    :class:`MatchingAmbiguous` when two exceptional zeros compete for the same
    nearest ``w`` with distances within ``ratio`` of each other.
    """
    m = zs.m
    if m != hw.m:
        raise CountMismatch(f"{m} exceptional zeros but {hw.m} zeros of H")
    d = [[abs(z - w) for w in hw.roots] for z in zs.exceptional]
    nearest = [min(range(m), key=lambda l: d[k][l]) for k in range(m)]
    for k in range(m):
        for k2 in range(k + 1, m):
            if nearest[k] == nearest[k2]:
                a, b = sorted((d[k][nearest[k]], d[k2][nearest[k]]))
                if a == 0 or b / a < ratio:
                    raise MatchingAmbiguous(
                        f"exceptional zeros {k} and {k2} share nearest zero of H (ratio {mp.nstr(b / a if a else 0, 4)})"
                    )
    pairs = sorted((d[k][l], k, l) for k in range(m) for l in range(m))
    match = [-1] * m
    used = set()
    for _, k, l in pairs:
        if match[k] < 0 and l not in used:
            match[k] = l
            used.add(l)
    assert sorted(match) == list(range(m))
    return match


def exceptional_deviation(zs: ZeroSet, hw: HRoots) -> List[Tuple[int, object]]:
    """Distances ``|z_k - w_k|`` after matching exceptional zeros to zeros of ``H``."""
    match = match_exceptional(zs, hw)
    return [(k, abs(z - hw.roots[match[k]])) for k, z in enumerate(zs.exceptional)]


def km_identity_residual(zs: ZeroSet, hw: HRoots) -> List[Tuple[object, object]]:
    """Residuals of the pole-balance identity satisfied at each zero of ``H``.

    For matched ``(z_k, w_k)`` the residual is
    ``1/(w_k - z_k) - [w_k + Σ 1/(w_k - w_l) - Σ 1/(w_k - z_l) - Σ 1/(w_k - x_j)]``
    (sums over ``l != k``).  Returns ``(absolute, relative)`` pairs, relative
    to ``1/|w_k - z_k|``.
    """
    if zs.m == 0:
        return []
    match = match_exceptional(zs, hw)
    ws = [hw.roots[match[k]] for k in range(zs.m)]
    out = []
    with mp.workprec(zs.precision_bits):
        floor = mp.mpf(10) ** (-zs.precision_bits / 4)
        for k, z in enumerate(zs.exceptional):
            w = ws[k]
            if abs(w - z) < floor:
                raise DegenerateDistance(f"|z_{k} - w_{k}| below {mp.nstr(floor, 3)}")
            rhs = (
                w
                + mp.fsum(1 / (w - ws[l]) for l in range(zs.m) if l != k)
                - mp.fsum(1 / (w - zs.exceptional[l]) for l in range(zs.m) if l != k)
                - mp.fsum(1 / (w - x) for x in zs.regular)
            )
            lhs = 1 / (w - z)
            res = abs(lhs - rhs)
            out.append((res, res / abs(lhs)))
    return out


def interlacing_report(regular: Sequence, classical: Sequence, r: int) -> dict:
    """Count classical-zero gaps ``(c_k, c_{k+1})`` holding at least one regular zero."""
    n = len(regular)
    c = sorted(classical)
    xs = sorted(regular)
    occupied = 0
    j = 0
    for lo, hi in zip(c, c[1:]):
        while j < n and xs[j] <= lo:
            j += 1
        if j < n and xs[j] < hi:
            occupied += 1
    skipped = r == 0 and n > 0
    return {
        "occupied": occupied,
        "required": max(n - r, 0),
        "passed": True if skipped else occupied >= n - r,
        "skipped": skipped,
    }


def inverse_distance_scan(a, b, regular: Sequence):
    """``Σ 1 / ((a - x_i)^2 + b^2)`` over the regular zeros."""
    if b == 0:
        raise ValueError("b must be nonzero")
    return mp.fsum(1 / ((a - x) ** 2 + b**2) for x in regular)

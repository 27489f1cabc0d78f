"""Weighted logarithmic energy of a point configuration and its derivatives.

A configuration holds ``m`` complex points ``z_k = ξ_k + iη_k`` and ``n`` real
points ``x_i``.  The external field comes from ``w(z) = |exp(-z^2)| / |H(z)|^2``
with ``H`` given through its zeros (and leading coefficient).  The energy is

    F = Σ log w(u) + Σ_{a<b} log |u_a - u_b|^2

as a function of the ``2m + n`` real coordinates
``(ξ_1, η_1, ..., ξ_m, η_m, x_1, ..., x_n)``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import List, Optional, Sequence

import mpmath as mp
import numpy as np

from .errors import CoincidentPoints, PointAtPoleOfW, RealExceptionalZero
from .exact_poly import ExactPoly, eval_extended
from .zeros import HRoots, ZeroSet

DEFAULT_PRECISION = 192


@dataclass(frozen=True)
class Configuration:
    xi: tuple
    eta: tuple
    x: tuple
    precision_bits: int = DEFAULT_PRECISION

    @property
    def m(self) -> int:
        return len(self.xi)

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def dim(self) -> int:
        return 2 * self.m + self.n

    @classmethod
    def from_zero_set(cls, zs: ZeroSet) -> "Configuration":
        return cls(
            tuple(mp.re(z) for z in zs.exceptional),
            tuple(mp.im(z) for z in zs.exceptional),
            tuple(zs.regular),
            zs.precision_bits,
        )

    @classmethod
    def from_vector(cls, v: Sequence, m: int, precision_bits: int = DEFAULT_PRECISION) -> "Configuration":
        v = list(v)
        return cls(tuple(v[0 : 2 * m : 2]), tuple(v[1 : 2 * m : 2]), tuple(v[2 * m :]), precision_bits)

    def as_vector(self) -> List:
        out = []
        for a, b in zip(self.xi, self.eta):
            out.extend([a, b])
        return out + list(self.x)

    def points(self) -> List:
        """All ``m + n`` points as complex numbers, exceptional first."""
        return [mp.mpc(a, b) for a, b in zip(self.xi, self.eta)] + [mp.mpc(x) for x in self.x]


def _check_points(pts, hw: HRoots):
    # equality up to a few ulps of the working precision
    eps = mp.ldexp(1, 8 - mp.mp.prec)
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            if abs(pts[a] - pts[b]) <= eps * max(1, abs(pts[a])):
                raise CoincidentPoints(f"points {a} and {b} coincide")
        for w in hw.roots:
            if abs(pts[a] - w) <= eps * max(1, abs(w)):
                raise PointAtPoleOfW(f"point {a} sits on a zero of H")


def log_energy(cfg: Configuration, hw: HRoots) -> mp.mpf:
    """Logarithm ``F`` of the weighted energy, summed term by term in log form."""
    with mp.workprec(cfg.precision_bits):
        pts = cfg.points()
        _check_points(pts, hw)
        log_c = mp.log(abs(hw.leading))
        terms = []
        for u in pts:
            terms.append(-mp.re(u * u) - 2 * log_c)
            terms.extend(-2 * mp.log(abs(u - w)) for w in hw.roots)
        for a in range(len(pts)):
            for b in range(a + 1, len(pts)):
                terms.append(2 * mp.log(abs(pts[a] - pts[b])))
        return mp.fsum(terms)


def complex_log_energy(cfg: Configuration, H: ExactPoly) -> mp.mpc:
    """``F_c = -Σ u^2 - 2 Σ log H(u) + 2 Σ_{a<b} log(u_a - u_b)`` with principal logs.

    Its real part equals :func:`log_energy`; the imaginary part depends on the
    point ordering through the branch of each logarithm.
    """
    with mp.workprec(cfg.precision_bits):
        pts = cfg.points()
        terms = []
        for u in pts:
            hv, _ = eval_extended(H, u, max(cfg.precision_bits, 2 * H.bit_length() + 64))
            if hv == 0:
                raise PointAtPoleOfW("point sits on a zero of H")
            terms.append(-u * u - 2 * mp.log(hv))
        for a in range(len(pts)):
            for b in range(a + 1, len(pts)):
                d = pts[a] - pts[b]
                if d == 0:
                    raise CoincidentPoints(f"points {a} and {b} coincide")
                terms.append(2 * mp.log(d))
        return mp.fsum(terms)


def _field_derivative(u, pts, skip: int, hw: HRoots):
    # derivative of the holomorphic potential whose real part is the energy
    g = -2 * u
    for w in hw.roots:
        g -= 2 / (u - w)
    for b, q in enumerate(pts):
        if b != skip:
            g += 2 / (u - q)
    return g


def gradient(cfg: Configuration, hw: HRoots) -> List:
    """Analytic gradient of ``F`` in the order ``(ξ_1, η_1, ..., x_1, ..., x_n)``."""
    with mp.workprec(cfg.precision_bits):
        pts = cfg.points()
        _check_points(pts, hw)
        out = []
        for a, u in enumerate(pts):
            g = _field_derivative(u, pts, a, hw)
            if a < cfg.m:
                out.extend([mp.re(g), -mp.im(g)])
            else:
                out.append(mp.re(g))
        return out


def _s(a, b):
    r2 = a * a + b * b
    return (a * a - b * b) / (r2 * r2)


def _t(a, b):
    r2 = a * a + b * b
    return a * b / (r2 * r2)


@dataclass(frozen=True)
class PartitionedHessian:
    """Hessian of ``F`` with its ``m`` 2x2 / ``n`` 1x1 block structure.

    ``symmetric`` is the true (symmetric) Hessian.  ``entries`` is the
    similarity-scaled ``D^{-1} H D`` where ``D`` is the identity on the first
    ``2m`` coordinates and ``scaling_K`` on the last ``n``.
    """

    symmetric: np.ndarray
    m: int
    n: int
    scaling_K: float = 1.0

    @property
    def dim(self) -> int:
        return 2 * self.m + self.n

    @property
    def block_sizes(self) -> List[int]:
        return [2] * self.m + [1] * self.n

    @property
    def entries(self) -> np.ndarray:
        if self.scaling_K == 1.0:
            return self.symmetric.copy()
        d = np.r_[np.ones(2 * self.m), np.full(self.n, self.scaling_K)]
        return self.symmetric * d[None, :] / d[:, None]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "j", "value"])
        A = self.entries
        for i in range(self.dim):
            for j in range(self.dim):
                w.writerow([i + 1, j + 1, repr(float(A[i, j]))])
        return buf.getvalue()

    def summary(self) -> dict:
        A = self.entries
        return {
            "dim": self.dim,
            "block_sizes": self.block_sizes,
            "K": self.scaling_K,
            "max_entry": float(A.max()),
            "min_entry": float(A.min()),
            "max_abs_entry": float(np.abs(A).max()),
        }

    def to_json(self) -> str:
        return json.dumps(self.summary(), sort_keys=True)


def hessian(Z, hw: HRoots) -> PartitionedHessian:
    """Assemble the Hessian of ``F`` entry by entry.

    ``Z`` may be a :class:`ZeroSet` or any :class:`Configuration`; the entry
    formulas are those of the second derivatives of ``F`` in real form, with
    the ``η``-rows obtained from the ``ξ``-rows by the harmonic relations
    ``h_{ηη} = -h_{ξξ}``.
    """
    cfg = Configuration.from_zero_set(Z) if isinstance(Z, ZeroSet) else Z
    m, n = cfg.m, cfg.n
    if any(e == 0 for e in cfg.eta):
        raise RealExceptionalZero("an exceptional point lies on the real axis")
    D = 2 * m + n
    A = np.zeros((D, D))
    xi, eta, xs = cfg.xi, cfg.eta, cfg.x
    with mp.workprec(cfg.precision_bits):
        us = [mp.re(w) for w in hw.roots]
        vs = [mp.im(w) for w in hw.roots]
        for k in range(m):
            a, b = xi[k], eta[k]
            hkk = -2 + 2 * mp.fsum(_s(a - u, b - v) for u, v in zip(us, vs))
            hke = 4 * mp.fsum(_t(a - u, b - v) for u, v in zip(us, vs))
            for l in range(m):
                if l == k:
                    continue
                s, t = _s(a - xi[l], b - eta[l]), _t(a - xi[l], b - eta[l])
                hkk -= 2 * s
                hke -= 4 * t
                A[2 * k, 2 * l] = float(2 * s)
                A[2 * k, 2 * l + 1] = float(4 * t)
                A[2 * k + 1, 2 * l + 1] = -A[2 * k, 2 * l]
                A[2 * k + 1, 2 * l] = A[2 * k, 2 * l + 1]
            for i, x in enumerate(xs):
                s, t = _s(a - x, b), _t(a - x, b)
                hkk -= 2 * s
                hke -= 4 * t
                A[2 * k, 2 * m + i] = A[2 * m + i, 2 * k] = float(2 * s)
                A[2 * k + 1, 2 * m + i] = A[2 * m + i, 2 * k + 1] = float(4 * t)
            A[2 * k, 2 * k] = float(hkk)
            A[2 * k + 1, 2 * k + 1] = -A[2 * k, 2 * k]
            A[2 * k, 2 * k + 1] = A[2 * k + 1, 2 * k] = float(hke)
        for i, x in enumerate(xs):
            h = -2 + 2 * mp.fsum(_s(x - u, v) for u, v in zip(us, vs))
            h -= 2 * mp.fsum(_s(a - x, b) for a, b in zip(xi, eta))
            for j, y in enumerate(xs):
                if j == i:
                    continue
                if x == y:
                    raise CoincidentPoints(f"regular points {i} and {j} coincide")
                q = 1 / (x - y) ** 2
                h -= 2 * q
                A[2 * m + i, 2 * m + j] = float(2 * q)
            A[2 * m + i, 2 * m + i] = float(h)
    return PartitionedHessian(A, m, n, 1.0)


def scaled_hessian(H: PartitionedHessian, K: float) -> PartitionedHessian:
    """Similarity transform ``D^{-1} H D`` with ``D = diag(1, ..., 1, K, ..., K)``."""
    if not K > 0:
        raise ValueError("K must be positive")
    return PartitionedHessian(H.symmetric, H.m, H.n, float(K))


@dataclass(frozen=True)
class ScalingSearch:
    found: bool
    K: Optional[float]
    exponent: Optional[int]
    margins: tuple
    best_K: float
    best_margin: float


def find_scaling_K(H: PartitionedHessian, exponents: Sequence[int] = range(-20, 21)) -> ScalingSearch:
    """Smallest ``K = 2**t`` making the scaled Hessian strictly block diagonally dominant.

    When no exponent works the result has ``found=False`` and reports the
    candidate with the largest minimal margin.
    """
    from .gersgorin import is_strictly_block_diagonally_dominant

    if H.m == 0:
        dominant, margins = is_strictly_block_diagonally_dominant(H.entries, H.block_sizes)
        worst = min(margins)
        if dominant:
            return ScalingSearch(True, 1.0, 0, tuple(margins), 1.0, worst)
        return ScalingSearch(False, None, None, (), 1.0, worst)
    best = None
    for t in exponents:
        K = 2.0**t
        dominant, margins = is_strictly_block_diagonally_dominant(
            scaled_hessian(H, K).entries, H.block_sizes
        )
        worst = min(margins)
        if best is None or worst > best[1]:
            best = (K, worst)
        if dominant:
            return ScalingSearch(True, K, t, tuple(margins), K, worst)
    return ScalingSearch(False, None, None, (), best[0], best[1])


def fd_gradient(cfg: Configuration, hw: HRoots, step=mp.mpf("1e-5")) -> List:
    """Central finite differences of :func:`log_energy`."""
    v = cfg.as_vector()
    out = []
    with mp.workprec(cfg.precision_bits):
        for j in range(len(v)):
            vp, vm = list(v), list(v)
            vp[j] += step
            vm[j] -= step
            fp = log_energy(Configuration.from_vector(vp, cfg.m, cfg.precision_bits), hw)
            fm = log_energy(Configuration.from_vector(vm, cfg.m, cfg.precision_bits), hw)
            out.append((fp - fm) / (2 * step))
    return out


def fd_hessian(cfg: Configuration, hw: HRoots, step=mp.mpf("1e-5")) -> np.ndarray:
    """Central finite differences of the analytic :func:`gradient`, symmetrized."""
    v = cfg.as_vector()
    D = len(v)
    out = np.zeros((D, D))
    with mp.workprec(cfg.precision_bits):
        for j in range(D):
            vp, vm = list(v), list(v)
            vp[j] += step
            vm[j] -= step
            gp = gradient(Configuration.from_vector(vp, cfg.m, cfg.precision_bits), hw)
            gm = gradient(Configuration.from_vector(vm, cfg.m, cfg.precision_bits), hw)
            out[:, j] = [float((a - b) / (2 * step)) for a, b in zip(gp, gm)]
    return (out + out.T) / 2


def hessian_deviation_report(Z, hw: HRoots, step=mp.mpf("1e-5")) -> dict:
    """Compare the assembled Hessian against finite differences of the gradient."""
    cfg = Configuration.from_zero_set(Z) if isinstance(Z, ZeroSet) else Z
    A = hessian(cfg, hw).symmetric
    B = fd_hessian(cfg, hw, step)
    rel = np.abs(A - B) / np.maximum(np.abs(B), 1.0)
    i, j = np.unravel_index(np.argmax(rel), rel.shape)
    return {
        "max_relative_deviation": float(rel.max()),
        "worst_entry": [int(i) + 1, int(j) + 1],
        "assembled": float(A[i, j]),
        "finite_difference": float(B[i, j]),
        "step": float(step),
    }

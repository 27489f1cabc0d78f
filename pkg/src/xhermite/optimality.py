"""Weights of Hermite type and the maximality of the regular zeros for the reduced energy.

Three weights on the real line are handled:

* ``classical``: ``w_0 = exp(-x^2)``
* ``exceptional``: ``w = exp(-x^2) / H(x)^2``
* ``modified_w1``: ``w_1 = w · |P_m(x)|^2`` where ``P_m`` is the monic
  polynomial whose zeros are the exceptional zeros.

For ``w_1`` the regular zeros should be the unique maximizer of
``E(x) = Σ log w_1(x_i) + Σ_{i<j} log (x_i - x_j)^2``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import mpmath as mp
import numpy as np

from .errors import CoincidentPoints, PoleProximity
from .exact_poly import ExactPoly, derivative, eval_extended, generalized_hermite
from .partition import Partition, make_partition
from .zeros import ZeroSet, h_roots

KINDS = ("classical_hermite", "exceptional", "modified_w1")


@dataclass(frozen=True)
class WeightSpec:
    kind: str
    lam: Partition = field(default_factory=make_partition)
    n: int = 0
    exceptional_zeros: tuple = ()
    precision_bits: int = 192

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind == "modified_w1":
            zs = list(self.exceptional_zeros)
            if len(zs) != self.lam.size:
                raise ValueError("modified_w1 needs one exceptional zero per zero of H")
            with mp.workprec(self.precision_bits):
                for z in zs:
                    if not any(mp.almosteq(mp.conj(z), u, rel_eps=mp.mpf(2) ** (-self.precision_bits // 2)) for u in zs):
                        raise ValueError("exceptional zeros must be closed under conjugation")

    @classmethod
    def classical(cls) -> "WeightSpec":
        return cls("classical_hermite")

    @classmethod
    def exceptional_weight(cls, lam: Partition, n: int = 0, precision_bits: int = 192) -> "WeightSpec":
        return cls("exceptional", lam, n, (), precision_bits)

    @classmethod
    def modified(cls, zs: ZeroSet) -> "WeightSpec":
        return cls("modified_w1", zs.lambda_ref, zs.n, tuple(zs.exceptional), zs.precision_bits)

    @property
    def H_poly(self) -> ExactPoly:
        return generalized_hermite(self.lam) if self.kind != "classical_hermite" else ExactPoly((1,))

    @property
    def h_zeros(self) -> tuple:
        if self.kind == "classical_hermite":
            return ()
        return tuple(h_roots(self.lam, self.precision_bits).roots)

    @property
    def p_zeros(self) -> tuple:
        return tuple(self.exceptional_zeros) if self.kind == "modified_w1" else ()

    def _guard(self, x, pole_tol):
        for w in self.h_zeros + self.p_zeros:
            if abs(x - w) < pole_tol:
                raise PoleProximity(f"x = {mp.nstr(x, 10)} is within {pole_tol} of a pole or zero of the weight")

    def log_weight(self, x, pole_tol: float = 1e-12):
        """``log w(x)`` (up to the additive constant from the leading coefficient of ``H``)."""
        with mp.workprec(self.precision_bits):
            x = mp.mpf(x)
            self._guard(x, pole_tol)
            return -x * x - mp.fsum(2 * mp.log(abs(x - w)) for w in self.h_zeros) + mp.fsum(
                2 * mp.log(abs(x - z)) for z in self.p_zeros
            )

    def log_derivatives(self, x, pole_tol: float = 1e-12) -> Tuple:
        """``(M, M')`` with ``M = (log w)'``; conjugate pairs make both real."""
        with mp.workprec(self.precision_bits):
            x = mp.mpf(x)
            self._guard(x, pole_tol)
            M = -2 * x - 2 * mp.fsum(1 / (x - w) for w in self.h_zeros) + 2 * mp.fsum(1 / (x - z) for z in self.p_zeros)
            dM = -2 + 2 * mp.fsum(1 / (x - w) ** 2 for w in self.h_zeros) - 2 * mp.fsum(1 / (x - z) ** 2 for z in self.p_zeros)
            return mp.re(M), mp.re(dM)


@dataclass
class ApproximatingVerdict:
    log_concave: bool
    finite_moments: bool
    boundary: str
    min_minus_second_log_derivative: float
    tail_values: list

    @property
    def approximating(self) -> bool:
        return self.log_concave and self.finite_moments

    def to_dict(self) -> dict:
        return {
            "approximating": self.approximating,
            "log_concave": self.log_concave,
            "finite_moments": self.finite_moments,
            "boundary": self.boundary,
            "min_minus_second_log_derivative": self.min_minus_second_log_derivative,
            "tail_values": self.tail_values,
        }


def is_approximating(ws: WeightSpec, interval: Tuple[float, float] = (-math.inf, math.inf), grid_size: int = 400,
                     half_width: float = 10.0, moment_order: int = 4) -> ApproximatingVerdict:
    """Grid check that ``-log w`` is convex and that ``w`` has finite moments.

    On the whole line the boundary conditions are vacuous and are skipped; an
    infinite ``interval`` is sampled on ``[-half_width, half_width]``.  Moments
    are judged by ``w(x)|x|^k`` for ``k = moment_order`` at ``|x| = 10, 20, 40``,
    which must decrease and end below ``1e-100``.
    """
    if grid_size < 100:
        raise ValueError("grid_size must be at least 100")
    a, b = interval
    a = -half_width if math.isinf(a) else a
    b = half_width if math.isinf(b) else b
    worst = math.inf
    for x in np.linspace(a, b, grid_size):
        _, dM = ws.log_derivatives(float(x))
        worst = min(worst, float(-dM))
    tails = []
    for r in (10.0, 20.0, 40.0):
        v = max(mp.exp(ws.log_weight(s * r)) * r**moment_order for s in (-1, 1))
        tails.append(float(v))
    decaying = tails[0] > tails[1] > tails[2] and tails[2] < 1e-100
    boundary = "vacuous" if math.isinf(interval[0]) and math.isinf(interval[1]) else "not checked"
    return ApproximatingVerdict(worst >= 0, decaying, boundary, worst, tails)


def m1n_derivative(ws: WeightSpec, x, pole_tol: float = 1e-12) -> float:
    """``M_1' (x) = -2 - 2 Σ_k (1/(x - z_k)^2 - 1/(x - w_k)^2)`` for the modified weight.

    Raises
    ------
    PoleProximity
        If ``x`` lies within ``pole_tol`` of some ``z_k`` or ``w_k``.
    """
    return float(ws.log_derivatives(x, pole_tol)[1])


def _check_increasing(x: Sequence):
    for i in range(len(x) - 1):
        if not x[i] < x[i + 1]:
            raise CoincidentPoints(f"points {i} and {i + 1} are not strictly increasing")


def reduced_gradient(x: Sequence, ws: WeightSpec) -> list:
    """Gradient of the reduced energy: ``M(x_i) + Σ_{j≠i} 2/(x_i - x_j)``."""
    _check_increasing(x)
    with mp.workprec(ws.precision_bits):
        out = []
        for i, xi in enumerate(x):
            M, _ = ws.log_derivatives(xi)
            out.append(M + 2 * mp.fsum(1 / (xi - xj) for j, xj in enumerate(x) if j != i))
        return out


def reduced_hessian(x: Sequence, ws: WeightSpec) -> np.ndarray:
    """Hessian of the reduced energy.

    Off the diagonal ``2/(x_i - x_j)^2``; on it ``(log w)''(x_i) - Σ_{j≠i} 2/(x_i - x_j)^2``.

    Raises
    ------
    CoincidentPoints
        If ``x`` is not strictly increasing.
    """
    _check_increasing(x)
    n = len(x)
    A = np.zeros((n, n))
    with mp.workprec(ws.precision_bits):
        for i in range(n):
            acc = []
            for j in range(n):
                if i != j:
                    v = 2 / (mp.mpf(x[i]) - x[j]) ** 2
                    A[i, j] = float(v)
                    acc.append(v)
            A[i, i] = float(ws.log_derivatives(x[i])[1] - mp.fsum(acc))
    return A


def _energy_change(x: np.ndarray, d: np.ndarray, w_zeros: np.ndarray, p_zeros: np.ndarray) -> float:
    """``E(x + d) - E(x)`` accumulated from relative changes with ``log1p``."""
    total = -float(np.sum(2 * x * d + d * d))
    for roots, sign in ((w_zeros, -1.0), (p_zeros, 1.0)):
        if len(roots):
            t = d[:, None] / (x[:, None] - roots[None, :])
            total += sign * float(np.sum(np.log1p(2 * t.real + np.abs(t) ** 2)))
    diff = x[:, None] - x[None, :]
    dd = d[:, None] - d[None, :]
    iu = np.triu_indices(len(x), 1)
    r = dd[iu] / diff[iu]
    total += float(np.sum(np.log1p(2 * r + r * r)))
    return total


@dataclass
class MaximumVerdict:
    stationarity_max: float
    hessian_max_eigenvalue: float
    trials: int
    failures: int
    seed: int
    scales: Tuple[float, float]
    worst_change: float

    @property
    def passed(self) -> bool:
        return self.stationarity_max <= 1e-8 and self.hessian_max_eigenvalue < 0 and self.failures == 0

    def to_dict(self) -> dict:
        return {
            "stationarity_max": self.stationarity_max,
            "hessian_max_eigenvalue": self.hessian_max_eigenvalue,
            "trials": self.trials,
            "failures": self.failures,
            "seed": self.seed,
            "scales": list(self.scales),
            "worst_change": self.worst_change,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def verify_unique_maximum(ws: WeightSpec, x: Sequence, trials: int = 1000, seed: int = 0,
                          scales: Tuple[float, float] = (1e-3, 1e-1)) -> MaximumVerdict:
    """Stationarity, negative definiteness and random-perturbation dominance at ``x``.

    Each trial draws a scale log-uniformly from ``scales`` and a Gaussian
    direction from ``numpy.random.default_rng(seed)``.  A trial fails when the
    energy does not strictly decrease; zero-scale trials are never counted.
    """
    from .gersgorin import symmetric_eigenvalues

    if trials < 100:
        raise ValueError("trials must be at least 100")
    grad = reduced_gradient(x, ws)
    stat = max((float(abs(g)) for g in grad), default=0.0)
    A = reduced_hessian(x, ws)
    top = float(symmetric_eigenvalues(A)[-1]) if len(x) else -math.inf
    xs = np.array([float(v) for v in x])
    wz = np.array([complex(w) for w in ws.h_zeros])
    pz = np.array([complex(z) for z in ws.p_zeros])
    rng = np.random.default_rng(seed)
    lo, hi = scales
    failures = 0
    worst = -math.inf
    for _ in range(trials):
        s = 0.0 if hi == 0 else math.exp(rng.uniform(math.log(lo), math.log(hi)))
        d = s * rng.standard_normal(len(xs))
        if s == 0 or not np.any(d):
            continue
        change = _energy_change(xs, d, wz, pz)
        worst = max(worst, change)
        if not change < 0:
            failures += 1
    return MaximumVerdict(stat, top, trials, failures, seed, (lo, hi), worst)


def qn_ode_residual(lam: Partition, n: int, x, Z: ZeroSet, constant: Optional[int] = None,
                    pole_tol: float = 1e-10) -> float:
    """Normalized residual of the differential equation satisfied by ``q_n = Π (x - x_i)``.

    The equation is ``q'' + (M + 2P_m'/P_m) q' + (P_m''/P_m + (P_m'/P_m) M + H''/H + 2xH'/H + c) q = 0``
    with ``M = -2x - 2H'/H``.  The default constant is ``c = 2n`` where ``n`` is
    the number of regular zeros.  The residual is divided by the largest of
    the three terms so that ``q`` itself never needs to be formed.

    Raises
    ------
    PoleProximity
        If ``x`` is within ``pole_tol`` of a zero of ``H`` or of ``P_m``.
    """
    c = 2 * n if constant is None else constant
    H = generalized_hermite(lam)
    prec = Z.precision_bits
    with mp.workprec(prec):
        x = mp.mpmathify(x)
        hz = h_roots(lam, prec).roots if lam.size else ()
        for w in tuple(hz) + tuple(Z.exceptional):
            if abs(x - w) < pole_tol:
                raise PoleProximity(f"x = {mp.nstr(x, 10)} is within {pole_tol} of a zero of H or P_m")
        h0, _ = eval_extended(H, x, prec)
        h1, _ = eval_extended(derivative(H), x, prec)
        h2, _ = eval_extended(derivative(H, 2), x, prec)
        s1 = mp.fsum(1 / (x - z) for z in Z.exceptional)
        s2 = mp.fsum(1 / (x - z) ** 2 for z in Z.exceptional)
        p1, p2 = s1, s1 * s1 - s2
        t1 = mp.fsum(1 / (x - xi) for xi in Z.regular)
        t2 = mp.fsum(1 / (x - xi) ** 2 for xi in Z.regular)
        q1, q2 = t1, t1 * t1 - t2
        M = -2 * x - 2 * h1 / h0
        terms = [q2, (M + 2 * p1) * q1, p2 + p1 * M + h2 / h0 + 2 * x * h1 / h0 + c]
        scale = max(abs(t) for t in terms)
        return float(abs(mp.fsum(terms)) / scale)

"""The two-row partition ``(ν, ν)``: the Christoffel–Darboux polynomial ``d_ν`` and its uses.

``D_ν = H_ν H_{ν+1}' - H_ν' H_{ν+1}`` is the integer-coefficient form; the
orthonormal version is ``d_ν = scale · D_ν`` with
``scale = 1 / (√π · √(2^{2ν+1} ν! (ν+1)!))``.  Scales are carried exactly as a
rational radicand times a rational power of ``π`` (:class:`Scaled`) so the
product identities can be checked without rounding.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence

import mpmath as mp
import numpy as np

from .errors import DegenerateFit, PoleOfDnu, XHermiteError
from .exact_poly import ExactPoly, derivative, eval_extended, generalized_hermite, hermite, is_squarefree, real_root_count
from .fits import asymptotic_fit
from .partition import Partition, make_partition

X = ExactPoly.x()


@dataclass(frozen=True)
class Scaled:
    """``poly · √radicand · π**pi_power`` with exact rational ``radicand`` and ``pi_power``."""

    poly: ExactPoly
    radicand: Fraction = Fraction(1)
    pi_power: Fraction = Fraction(0)

    def __mul__(self, other: "Scaled") -> "Scaled":
        return Scaled(self.poly * other.poly, self.radicand * other.radicand, self.pi_power + other.pi_power)

    def times(self, p: ExactPoly) -> "Scaled":
        return Scaled(self.poly * p, self.radicand, self.pi_power)

    def value(self, x, precision_bits: int = 128):
        with mp.workprec(precision_bits):
            r = self.radicand
            s = mp.sqrt(mp.mpf(r.numerator) / r.denominator) * mp.pi ** (mp.mpf(self.pi_power.numerator) / self.pi_power.denominator)
            return self.poly(mp.mpmathify(x)) * s


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def scaled_sum_is_zero(terms: Sequence[Scaled]) -> bool:
    """Exact test of ``Σ terms ≡ 0``.

    Terms are grouped by π-power and by radicand class (radicands differing by
    a rational square); each group is brought onto one integer polynomial.
    Distinct classes are linearly independent over the rationals, so every
    group must vanish separately.
    """
    groups: List[List] = []
    for t in terms:
        if t.poly.is_zero():
            continue
        for g in groups:
            base = g[0]
            if base.pi_power != t.pi_power:
                continue
            q = _rational_sqrt(t.radicand / base.radicand)
            if q is not None:
                g.append((t, q))
                break
        else:
            groups.append([t, (t, Fraction(1))])
    for g in groups:
        pairs = g[1:]
        den = 1
        for _, q in pairs:
            den = den * q.denominator // math.gcd(den, q.denominator)
        total = ExactPoly(())
        for t, q in pairs:
            total = total + t.poly * ExactPoly((q.numerator * (den // q.denominator),))
        if not total.is_zero():
            return False
    return True


def orthonormal_hermite(k: int) -> Scaled:
    """``h_k = H_k / √(2^k k! √π)``."""
    return Scaled(hermite(k), Fraction(1, 2**k * math.factorial(k)), Fraction(-1, 4))


def orthonormal_leading(k: int, precision_bits: int = 128):
    """Leading coefficient ``γ_k`` of ``h_k``."""
    with mp.workprec(precision_bits):
        return mp.mpf(2) ** k / mp.sqrt(mp.mpf(2) ** k * mp.factorial(k) * mp.sqrt(mp.pi))


@dataclass(frozen=True)
class DnuPoly:
    nu: int
    exact_part: ExactPoly
    radicand: Fraction
    pi_power: Fraction
    hermite_ratio: Fraction
    cd_max_relative_deviation: float

    @property
    def scaled(self) -> Scaled:
        return Scaled(self.exact_part, self.radicand, self.pi_power)

    @property
    def scale(self) -> float:
        return float(self.scaled.value(0) / self.exact_part(0)) if self.exact_part(0) else float("nan")

    def __call__(self, x, precision_bits: int = 128):
        return self.scaled.value(x, precision_bits)

    def cd_sum(self, x, precision_bits: int = 128):
        """``(γ_{ν+1}/γ_ν) Σ_{k≤ν} h_k(x)^2``."""
        with mp.workprec(precision_bits):
            ratio = orthonormal_leading(self.nu + 1, precision_bits) / orthonormal_leading(self.nu, precision_bits)
            return ratio * mp.fsum(orthonormal_hermite(k).value(x, precision_bits) ** 2 for k in range(self.nu + 1))


@lru_cache(maxsize=None)
def dnu(nu: int) -> DnuPoly:
    """Build ``D_ν`` and check it against the Christoffel–Darboux sum and ``H_{(ν,ν)}``.

    Raises
    ------
    XHermiteError
        If any construction invariant fails.
    """
    if nu < 0:
        raise ValueError("ν must be nonnegative")
    Hn, Hn1 = hermite(nu), hermite(nu + 1)
    D = Hn * derivative(Hn1) - derivative(Hn) * Hn1
    radicand = Fraction(1, 2 ** (2 * nu + 1) * math.factorial(nu) * math.factorial(nu + 1))
    d = DnuPoly(nu, D, radicand, Fraction(-1, 2), Fraction(1), 0.0)

    if D.degree != 2 * nu or not D.is_even() or not is_squarefree(D):
        raise XHermiteError(f"D_{nu} is not an even squarefree polynomial of degree {2 * nu}")
    if D(0) <= 0 or real_root_count(D) != 0:
        raise XHermiteError(f"D_{nu} is not positive on the real line")

    worst = 0.0
    for x in np.linspace(-3.0, 3.0, 2 * nu + 5):
        a, b = d(x), d.cd_sum(x)
        worst = max(worst, float(abs(a - b) / abs(b)))
    if worst > 1e-10:
        raise XHermiteError(f"Christoffel–Darboux form deviates by {worst:.3e}")

    if nu == 0:
        ratio = Fraction(D.leading)
    else:
        G = generalized_hermite(make_partition((nu, nu)))
        ratio = Fraction(D.leading, G.leading)
        if D * ExactPoly((ratio.denominator,)) != G * ExactPoly((ratio.numerator,)):
            raise XHermiteError(f"D_{nu} is not a constant multiple of H_({nu},{nu})")
    return DnuPoly(nu, D, radicand, Fraction(-1, 2), ratio, worst)


def dnu_ode_check(nu: int) -> bool:
    """Exact check of ``h_ν D'' - (2x h_ν + 2h_ν') D' + 4x h_ν' D ≡ 0``.

    Every term is linear in ``h_ν`` and in ``D``, so the orthonormal scales
    cancel and the check runs on ``H_ν`` and ``D_ν``.
    """
    H = hermite(nu)
    D = dnu(nu).exact_part
    dH = derivative(H)
    two_x = ExactPoly((0, 2))
    four_x = ExactPoly((0, 4))
    res = H * derivative(D, 2) - (two_x * H + ExactPoly((2,)) * dH) * derivative(D) + four_x * dH * D
    return res.is_zero()


def product_identities_check(nu: int) -> tuple:
    """Exact checks of the two product identities.

    ``2x h_ν h_{ν+1} = √(2(ν+1)) (h_ν^2 + h_{ν+1}^2) - d_ν`` and
    ``h_ν' h_{ν+1} = √(2(ν+1)) h_ν^2 - d_ν``.
    """
    h0, h1 = orthonormal_hermite(nu), orthonormal_hermite(nu + 1)
    dh0 = Scaled(derivative(h0.poly), h0.radicand, h0.pi_power)
    d = dnu(nu).scaled
    root = Scaled(ExactPoly((1,)), Fraction(2 * (nu + 1)))
    neg = ExactPoly((-1,))
    first = scaled_sum_is_zero(
        [
            (h0 * h1).times(ExactPoly((0, 2))),
            (root * h0 * h0).times(neg),
            (root * h1 * h1).times(neg),
            d,
        ]
    )
    second = scaled_sum_is_zero([dh0 * h1, (root * h0 * h0).times(neg), d])
    return first, second


def r_mn(nu: int, n: int, z, precision_bits: int = 192):
    """``-(8(z^2 + 1 - √((ν+1)/2) (2h_ν(z)^2 + h_{ν+1}(z)^2) / d_ν(z)) + 2n)``.

    Raises
    ------
    PoleOfDnu
        When ``|d_ν(z)|`` is below the working precision floor.
    """
    with mp.workprec(precision_bits):
        z = mp.mpmathify(z)
        d = dnu(nu)(z, precision_bits)
        if abs(d) <= mp.mpf(2) ** (-(precision_bits // 2)):
            raise PoleOfDnu(f"d_{nu} vanishes at {mp.nstr(z, 10)}")
        a = orthonormal_hermite(nu).value(z, precision_bits)
        b = orthonormal_hermite(nu + 1).value(z, precision_bits)
        frac = mp.sqrt(mp.mpf(nu + 1) / 2) * (2 * a * a + b * b) / d
        return -(8 * (z * z + 1 - frac) + 2 * n)


def ode_hessian_block(lam: Partition, n: int, z, precision_bits: int = 192):
    """Closed form of ``(h_{2k-1,2k-1}, h_{2k-1,2k})`` at an exceptional zero ``z``.

    With ``n`` regular zeros, ``h_{2k-1,2k-1} + i h_{2k-1,2k} = conj`` of
    ``-(2/3)(1 + 2n - z^2 + 2 (H'/H)'(z))``; this follows from the differential
    equation of the exceptional polynomial evaluated at its zero.
    """
    H = generalized_hermite(lam)
    dH, ddH = derivative(H), derivative(H, 2)
    with mp.workprec(precision_bits):
        z = mp.mpmathify(z)
        h, _ = eval_extended(H, z, precision_bits)
        h1, _ = eval_extended(dH, z, precision_bits)
        h2, _ = eval_extended(ddH, z, precision_bits)
        g2 = -(mp.mpf(2) / 3) * (1 + 2 * n - z * z + 2 * (h2 * h - h1 * h1) / (h * h))
        return mp.re(g2), -mp.im(g2)


@dataclass
class SaddleVerdict:
    nu: int
    n: int
    K: Optional[float]
    dominant: bool
    regular_negative: bool
    exceptional_negative: bool
    dominance_margins: List[float]
    regular_diagonal_max: float
    exceptional_diagonal_max: float
    exceptional_diagonal: List[float]

    @property
    def passed(self) -> bool:
        return self.dominant and self.regular_negative and self.exceptional_negative

    def to_dict(self) -> dict:
        return {
            "nu": self.nu,
            "n": self.n,
            "K": self.K,
            "dominant": self.dominant,
            "regular_negative": self.regular_negative,
            "exceptional_negative": self.exceptional_negative,
            "dominance_margin_min": min(self.dominance_margins) if self.dominance_margins else None,
            "regular_diagonal_max": self.regular_diagonal_max,
            "exceptional_diagonal_max": self.exceptional_diagonal_max,
            "passed": self.passed,
        }


def saddle_check(nu: int, n: int, precision_bits: int = 192) -> SaddleVerdict:
    """Block dominance of the scaled Hessian and the signs of its diagonal at the zeros of ``P``.

    The scaling ``K`` is the smallest power of two giving dominance; if none
    exists the best candidate is used and ``dominant`` is false.
    """
    from .energy import find_scaling_K, hessian, scaled_hessian
    from .gersgorin import is_strictly_block_diagonally_dominant
    from .zeros import h_roots, zero_set

    lam = make_partition((nu, nu))
    zs = zero_set(lam, n, precision_bits)
    H = hessian(zs, h_roots(lam, precision_bits))
    search = find_scaling_K(H)
    K = search.K if search.found else search.best_K
    dominant, margins = is_strictly_block_diagonally_dominant(scaled_hessian(H, K).entries, H.block_sizes)
    A = H.symmetric
    m = H.m
    reg = [float(A[2 * m + i, 2 * m + i]) for i in range(H.n)]
    exc = [float(A[2 * k, 2 * k]) for k in range(m)]
    trace_free = all(A[2 * k, 2 * k] == -A[2 * k + 1, 2 * k + 1] for k in range(m))
    return SaddleVerdict(
        nu,
        n,
        K,
        dominant,
        all(v < 0 for v in reg),
        trace_free and all(v < 0 for v in exc),
        list(margins),
        max(reg) if reg else float("-inf"),
        max(exc) if exc else float("-inf"),
        exc,
    )


@dataclass
class DistanceFit:
    nu: int
    rows: List[dict]
    upper_slope: Optional[float] = None
    upper_constant: Optional[float] = None
    lower_constant: Optional[float] = None
    slope_ok: Optional[bool] = None
    lower_ok: Optional[bool] = None
    diagnostic: str = ""

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "min_dist", "max_dist", "slope"])
        for r in self.rows:
            w.writerow([r["n"], repr(r["min_dist"]), repr(r["max_dist"]), "" if self.upper_slope is None else repr(self.upper_slope)])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "nu": self.nu,
            "rows": self.rows,
            "upper_slope": self.upper_slope,
            "upper_constant": self.upper_constant,
            "lower_constant": self.lower_constant,
            "slope_ok": self.slope_ok,
            "lower_ok": self.lower_ok,
            "diagnostic": self.diagnostic,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def distance_bound_fit(nu: int, n_grid: Sequence[int], precision_bits: int = 192, slope_window=(-0.65, -0.35)) -> DistanceFit:
    """Distances between the exceptional zeros and the zeros of ``H_{(ν,ν)}`` over a grid.

    Fits ``max_k |z_k - w_k| ≈ C n^s`` and reports ``min_n min_k |z_k - w_k| √n log n``.
    A grid too short for a fit yields a report with a diagnostic and no verdicts.
    """
    from .zeros import exceptional_deviation, h_roots, zero_set

    lam = make_partition((nu, nu))
    hw = h_roots(lam, precision_bits)
    rows = []
    for n in n_grid:
        dev = [float(d) for _, d in exceptional_deviation(zero_set(lam, n, precision_bits), hw)]
        rows.append(
            {
                "n": n,
                "min_dist": min(dev),
                "max_dist": max(dev),
                "lower_constant": min(dev) * math.sqrt(n) * math.log(n),
            }
        )
    out = DistanceFit(nu, rows)
    try:
        fit = asymptotic_fit([(r["n"], r["max_dist"]) for r in rows], min_points=2)
    except DegenerateFit as exc:
        out.diagnostic = str(exc)
        return out
    out.upper_slope = fit.exponent
    out.upper_constant = fit.constant
    out.lower_constant = min(r["lower_constant"] for r in rows)
    out.slope_ok = slope_window[0] <= fit.exponent <= slope_window[1]
    out.lower_ok = out.lower_constant > 0
    return out

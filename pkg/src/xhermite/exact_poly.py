"""Exact integer polynomials, Hermite/Wronskian constructions and extended-precision evaluation.

Coefficients are Python integers stored in ascending degree order, so every
ring operation here is exact.  Floating point only enters through
:func:`eval_extended`.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterable, List, Sequence, Tuple

import mpmath as mp

from .errors import DegreeMismatch, InadmissibleDegree
from .partition import Partition, is_admissible


class ExactPoly:
    """Univariate polynomial with exact integer coefficients (ascending order)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: Tuple[int, ...] = tuple(c)

    # construction helpers
    @classmethod
    def constant(cls, a: int) -> "ExactPoly":
        return cls([a])

    @classmethod
    def x(cls) -> "ExactPoly":
        return cls([0, 1])

    @property
    def degree(self):
        """Degree, with ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def bit_length(self) -> int:
        """Bit length of the largest coefficient in absolute value."""
        return max((abs(a).bit_length() for a in self.coeffs), default=0)

    # ring operations
    def __add__(self, other):
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return ExactPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return ExactPoly([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return ExactPoly([other * a for a in self.coeffs])
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ExactPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return ExactPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = ExactPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = ExactPoly([other])
        if not isinstance(other, ExactPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        """Exact Horner evaluation at an integer/Fraction (or any ring element)."""
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __repr__(self):
        return f"ExactPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[k]
            if a == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            coef = str(a) if (abs(a) != 1 or k == 0) else ("-" if a < 0 else "")
            terms.append(f"{coef}{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def content(self) -> int:
        g = 0
        for a in self.coeffs:
            g = math.gcd(g, a)
        return g

    def primitive_part(self) -> "ExactPoly":
        g = self.content()
        if g == 0:
            return self
        if self.leading < 0:
            g = -g
        return ExactPoly([a // g for a in self.coeffs])

    def is_even(self) -> bool:
        return all(a == 0 for a in self.coeffs[1::2])

    # serialization
    def to_dict(self) -> dict:
        return {"coeffs": [str(a) for a in self.coeffs]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "ExactPoly":
        return cls(int(s) for s in d["coeffs"])

    @classmethod
    def from_json(cls, text: str) -> "ExactPoly":
        return cls.from_dict(json.loads(text))


def _coerce(p) -> ExactPoly:
    if isinstance(p, ExactPoly):
        return p
    if isinstance(p, int):
        return ExactPoly([p])
    raise TypeError(f"cannot combine ExactPoly with {type(p).__name__}")


def derivative(p: ExactPoly, order: int = 1) -> ExactPoly:
    if order < 0:
        raise ValueError("order must be nonnegative")
    c = list(p.coeffs)
    for _ in range(order):
        c = [k * c[k] for k in range(1, len(c))]
    return ExactPoly(c)


def exact_divide(a: ExactPoly, b: ExactPoly) -> ExactPoly:
    """Quotient ``a / b``; raises if the division is not exact over the integers."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(a.coeffs)
    db = len(b.coeffs) - 1
    lb = b.leading
    if len(rem) - 1 < db:
        if any(rem):
            raise ArithmeticError("inexact polynomial division")
        return ExactPoly()
    q = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        t, r = divmod(rem[k], lb)
        if r:
            raise ArithmeticError("inexact polynomial division")
        q[k - db] = t
        if t:
            for j, bj in enumerate(b.coeffs):
                rem[k - db + j] -= t * bj
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return ExactPoly(q)


def pseudo_remainder(a: ExactPoly, b: ExactPoly) -> ExactPoly:
    rem = list(a.coeffs)
    db = len(b.coeffs) - 1
    lb = b.leading
    while len(rem) - 1 >= db and rem:
        k = len(rem) - 1
        t = rem[k]
        rem = [lb * r for r in rem]
        for j, bj in enumerate(b.coeffs):
            rem[k - db + j] -= t * bj
        while rem and rem[-1] == 0:
            rem.pop()
    return ExactPoly(rem)


def poly_gcd(a: ExactPoly, b: ExactPoly) -> ExactPoly:
    """Primitive GCD via the primitive polynomial remainder sequence."""
    a, b = a.primitive_part(), b.primitive_part()
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = pseudo_remainder(a, b)
        a, b = b, r.primitive_part()
    return a.primitive_part()


def is_squarefree(p: ExactPoly) -> bool:
    if p.is_zero():
        raise ValueError("the zero polynomial has no squarefree decomposition")
    if p.degree <= 1:
        return True
    return poly_gcd(p, derivative(p)).degree == 0


def real_root_count(p: ExactPoly) -> int:
    """Number of distinct real roots, by a Sturm sequence in exact rationals."""
    if p.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    seq = [[Fraction(c) for c in p.coeffs], [Fraction(c) for c in derivative(p).coeffs]]
    while len(seq[-1]) > 1:
        a, b = seq[-2], seq[-1]
        rem = list(a)
        while len(rem) >= len(b):
            t = rem[-1] / b[-1]
            off = len(rem) - len(b)
            for j, bj in enumerate(b):
                rem[off + j] -= t * bj
            rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
        if not rem:
            break
        seq.append([-c for c in rem])

    def changes(signs):
        signs = [s for s in signs if s != 0]
        return sum(1 for u, v in zip(signs, signs[1:]) if u != v)

    at_pos = [1 if q[-1] > 0 else -1 for q in seq if q]
    at_neg = [(1 if q[-1] > 0 else -1) * (-1) ** (len(q) - 1) for q in seq if q]
    return changes(at_neg) - changes(at_pos)


@lru_cache(maxsize=None)
def hermite(k: int) -> ExactPoly:
    """Physicists' Hermite polynomial ``H_k`` (leading coefficient ``2**k``)."""
    if k < 0:
        raise ValueError("Hermite index must be nonnegative")
    prev, cur = ExactPoly([1]), ExactPoly([0, 2])
    if k == 0:
        return prev
    for j in range(1, k):
        prev, cur = cur, ExactPoly([0, 2]) * cur - prev * (2 * j)
    return cur


def _det_cofactor(m: List[List[ExactPoly]]) -> ExactPoly:
    # Leibniz/cofactor sum, used for tiny matrices only.
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = ExactPoly()
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _det_bareiss(m: List[List[ExactPoly]]) -> ExactPoly:
    a = [row[:] for row in m]
    n = len(a)
    sign = 1
    prev = ExactPoly([1])
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return ExactPoly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_divide(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def polynomial_determinant(m: Sequence[Sequence[ExactPoly]]) -> ExactPoly:
    """Exact determinant of a square matrix of polynomials.

    Cofactor expansion up to 5x5, fraction-free Bareiss elimination beyond.
    """
    rows = [list(r) for r in m]
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("matrix must be square")
    if len(rows) <= 5:
        return _det_cofactor(rows)
    return _det_bareiss(rows)


def wronskian(ps: Sequence[ExactPoly]) -> ExactPoly:
    """Wronskian determinant ``det[p_j^{(i)}]`` of the given polynomials."""
    if not ps:
        raise ValueError("wronskian needs at least one polynomial")
    rows = [list(ps)]
    for _ in range(1, len(ps)):
        rows.append([derivative(p) for p in rows[-1]])
    return polynomial_determinant(rows)


def _hermite_indices(lam: Partition) -> List[int]:
    r = lam.length
    return [lam.parts[r - 1 - i] + i for i in range(r)]


@lru_cache(maxsize=None)
def generalized_hermite(lam: Partition) -> ExactPoly:
    """Wronskian ``H_λ`` of the shifted classical Hermite polynomials (``1`` if λ is empty)."""
    if lam.length == 0:
        return ExactPoly([1])
    out = wronskian([hermite(k) for k in _hermite_indices(lam)])
    if out.degree != lam.size:
        raise DegreeMismatch(f"deg H_λ = {out.degree}, expected {lam.size}")
    return out


@lru_cache(maxsize=None)
def exceptional_hermite(lam: Partition, n: int) -> ExactPoly:
    """Exceptional Hermite polynomial of degree ``n`` attached to ``lam``."""
    if not is_admissible(lam, n):
        raise InadmissibleDegree(
            f"degree {n} is not admissible for {lam}; excluded degrees {lam.excluded_degrees()}, "
            f"minimum {max(lam.size - lam.length, 0)}"
        )
    k = n - lam.size + lam.length
    out = wronskian([hermite(j) for j in _hermite_indices(lam)] + [hermite(k)])
    if out.degree != n:
        raise DegreeMismatch(f"deg P_n = {out.degree}, expected {n}")
    return out


def exceptional_ode_residual(lam: Partition, n: int, constant: int | None = None) -> ExactPoly:
    """Left side of the exceptional Hermite equation, cleared of the ``H`` denominator.

    ``H P'' - (2xH + 2H') P' + (H'' + 2xH' + c H) P`` with ``c = 2n - 2|λ|`` by
    default; this vanishes identically for a correct construction.
    """
    if constant is None:
        constant = 2 * n - 2 * lam.size
    H = generalized_hermite(lam)
    P = exceptional_hermite(lam, n)
    x = ExactPoly.x()
    dH, ddH = derivative(H), derivative(H, 2)
    return (
        H * derivative(P, 2)
        - (2 * x * H + 2 * dH) * derivative(P)
        + (ddH + 2 * x * dH + constant * H) * P
    )


def hermite_ode_residual(k: int) -> ExactPoly:
    h = hermite(k)
    return derivative(h, 2) - 2 * ExactPoly.x() * derivative(h) + 2 * k * h


def default_precision(p: ExactPoly) -> int:
    return max(128, 2 * p.bit_length())


def eval_extended(p: ExactPoly, z, precision_bits: int | None = None):
    """Horner evaluation in binary floating point with a running error bound.

    Returns ``(value, bound)`` where ``value`` is an ``mpc`` and ``bound`` an
    ``mpf`` bounding ``|value - p(z)|`` for the rounding committed here (the
    argument ``z`` itself is taken as exact).
    """
    prec = default_precision(p) if precision_bits is None else precision_bits
    if prec < 53:
        raise ValueError("precision_bits must be at least 53")
    if p.is_zero():
        return mp.mpc(0), mp.mpf(0)
    with mp.workprec(prec):
        z = mp.mpc(z)
        az = abs(z)
        y = mp.mpc(p.coeffs[-1])
        e = abs(y) / 2
        for a in reversed(p.coeffs[:-1]):
            y = y * z + a
            e = e * az + abs(y)
        # complex multiply-add costs a few ulps more than the real case
        bound = 4 * mp.ldexp(1, -prec) * max(2 * e - abs(y), 0)
        return y, bound


def horner_with_derivative(coeffs: Sequence, z):
    """Values of ``p(z)`` and ``p'(z)`` in the current mpmath context."""
    y = coeffs[-1]
    dy = 0
    for a in reversed(coeffs[:-1]):
        dy = dy * z + y
        y = y * z + a
    return y, dy

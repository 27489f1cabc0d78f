"""Partitioned-matrix tools: block norms, block diagonal dominance, block Gersgorin sets.

Every norm here is the l-infinity operator norm (maximum absolute row sum),
applied block by block.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from .errors import BlockShapeMismatch, NotSymmetric, PartitionMismatch, SingularBlock


def _offsets(sizes: Sequence[int], dim: int) -> np.ndarray:
    sizes = list(sizes)
    if not sizes or any(s < 1 for s in sizes) or sum(sizes) != dim:
        raise PartitionMismatch(f"block sizes {sizes} do not partition dimension {dim}")
    return np.cumsum([0] + sizes)


def inf_norm(B: np.ndarray) -> float:
    B = np.atleast_2d(B)
    return float(np.abs(B).sum(axis=1).max())


def block_norms(A: np.ndarray, sizes: Sequence[int]) -> np.ndarray:
    """Matrix of l-infinity norms of the blocks ``A_IJ``."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise PartitionMismatch("matrix must be square")
    st = _offsets(sizes, A.shape[0])
    L = len(sizes)
    out = np.zeros((L, L))
    for I in range(L):
        rows = A[st[I] : st[I + 1]]
        for J in range(L):
            out[I, J] = inf_norm(rows[:, st[J] : st[J + 1]])
    return out


def inv_block_norm_reciprocal(B: np.ndarray) -> float:
    """``1 / ||B^{-1}||``.

    Trace-free symmetric 2x2 blocks ``[[a, b], [b, -a]]`` use the closed form
    ``(a^2 + b^2) / (|a| + |b|)``.
    """
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if B.shape == (1, 1):
        if B[0, 0] == 0:
            raise SingularBlock("zero scalar block")
        return abs(float(B[0, 0]))
    if B.shape == (2, 2) and B[0, 0] == -B[1, 1] and B[0, 1] == B[1, 0]:
        a, b = float(B[0, 0]), float(B[0, 1])
        if a == 0 and b == 0:
            raise SingularBlock("zero 2x2 block")
        return (a * a + b * b) / (abs(a) + abs(b))
    try:
        inv = np.linalg.inv(B)
    except np.linalg.LinAlgError as exc:
        raise SingularBlock(str(exc)) from None
    if not np.all(np.isfinite(inv)):
        raise SingularBlock("block inverse is not finite")
    return 1.0 / inf_norm(inv)


def dominance_margins(A: np.ndarray, sizes: Sequence[int]) -> List[float]:
    """Per block row ``1/||A_II^{-1}|| - Σ_{J≠I} ||A_IJ||`` (``-inf`` for singular ``A_II``)."""
    A = np.asarray(A, dtype=float)
    N = block_norms(A, sizes)
    st = _offsets(sizes, A.shape[0])
    out = []
    for I in range(len(sizes)):
        off = N[I].sum() - N[I, I]
        try:
            diag = inv_block_norm_reciprocal(A[st[I] : st[I + 1], st[I] : st[I + 1]])
        except SingularBlock:
            out.append(-math.inf)
            continue
        out.append(float(diag - off))
    return out


def is_strictly_block_diagonally_dominant(A: np.ndarray, sizes: Sequence[int]) -> Tuple[bool, List[float]]:
    """Strict block diagonal dominance; a ``True`` verdict certifies ``A`` nonsingular."""
    margins = dominance_margins(A, sizes)
    return all(g > 0 for g in margins), margins


def in_block_gersgorin_set(A: np.ndarray, sizes: Sequence[int], z: complex) -> List[int]:
    """Indices of the block Gersgorin components that contain the point ``z``."""
    A = np.asarray(A, dtype=complex)
    N = block_norms(np.abs(A), sizes)
    st = _offsets(sizes, A.shape[0])
    hits = []
    for I in range(len(sizes)):
        blk = A[st[I] : st[I + 1], st[I] : st[I + 1]]
        shifted = z * np.eye(blk.shape[0]) - blk
        try:
            inv = np.linalg.inv(shifted)
            lhs = 1.0 / inf_norm(np.abs(inv))
        except np.linalg.LinAlgError:
            lhs = 0.0
        off = N[I].sum() - N[I, I]
        if lhs <= off * (1 + 1e-12) + 1e-12:
            hits.append(I)
    return hits


def symmetric_eigenvalues(A: np.ndarray, tol: float = 1e-13, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, ascending."""
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSymmetric("matrix must be square")
    scale = np.linalg.norm(A)
    if np.linalg.norm(A - A.T) > 1e-12 * max(scale, 1e-300):
        raise NotSymmetric("matrix is not symmetric within 1e-12 relative")
    A = (A + A.T) / 2
    n = A.shape[0]
    target = tol * scale
    for _ in range(max_sweeps):
        off = math.sqrt(max(float((A * A).sum() - (np.diag(A) ** 2).sum()), 0.0))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                d = A[q, q] - A[p, p]
                # tangent of the smaller rotation angle, written without d / apq
                t = (1.0 if d >= 0 else -1.0) * 2.0 * apq / (abs(d) + math.hypot(d, 2.0 * apq))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                cp, cq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
                rp, rq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                A[p, q] = A[q, p] = 0.0
    return np.sort(np.diag(A))


def exceptional_band(U: float, V: float, R: float) -> Tuple[float, float]:
    """Radii ``lo <= |x| <= hi`` of the real Gersgorin set of a trace-free 2x2 block.

    The set is ``{x : |x^2 - U^2| <= R(|x| + V)}``; both sides of ``|x| = U``
    close up into one annulus.
    """
    hi = math.sqrt(R * V + U * U + R * R / 4) + R / 2
    lo = max(math.sqrt(max(U * U - R * V + R * R / 4, 0.0)) - R / 2, 0.0)
    return lo, hi


@dataclass
class GersgorinReport:
    G_r: List[List[float]]
    G_e: List[List[List[float]]]
    U: List[float]
    V: List[float]
    R: List[float]
    R_regular: List[float]
    dominant: bool
    margins: List[float]
    eigenvalues: List[float] = field(default_factory=list)
    containment: List[str] = field(default_factory=list)
    verdicts: dict = field(default_factory=dict)

    def components(self):
        for i, (lo, hi) in enumerate(self.G_r):
            yield f"r{i + 1}", lo, hi
        for k, ivs in enumerate(self.G_e):
            for lo, hi in ivs:
                yield f"e{k + 1}", lo, hi

    def locate(self, x: float, rel: float = 1e-9) -> str:
        tol = rel * max(1.0, abs(x))
        for label, lo, hi in self.components():
            if lo - tol <= x <= hi + tol:
                return label
        return ""

    def to_dict(self) -> dict:
        return {
            "dominant": self.dominant,
            "margins": self.margins,
            "G_r": self.G_r,
            "G_e": self.G_e,
            "U": self.U,
            "V": self.V,
            "R": self.R,
            "eigenvalues": self.eigenvalues,
            "containment": self.containment,
            "verdicts": self.verdicts,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def gersgorin_sets(Hs) -> GersgorinReport:
    """Real parts of the block Gersgorin sets of a partitioned Hessian.

    ``Hs`` is a :class:`~xhermite.energy.PartitionedHessian` (usually scaled):
    ``m`` trace-free 2x2 blocks followed by ``n`` scalar blocks.
    """
    A = Hs.entries
    m, n = Hs.m, Hs.n
    sizes = [2] * m + [1] * n
    N = block_norms(A, sizes)
    offsum = N.sum(axis=1) - np.diag(N)
    U, V, R, G_e = [], [], [], []
    for k in range(m):
        blk = A[2 * k : 2 * k + 2, 2 * k : 2 * k + 2]
        if blk[0, 0] != -blk[1, 1] or blk[0, 1] != blk[1, 0]:
            raise BlockShapeMismatch(f"block {k + 1} is not of the form [[a, b], [b, -a]]")
        a, b = float(blk[0, 0]), float(blk[0, 1])
        u, v, r = math.hypot(a, b), abs(a) + abs(b), float(offsum[k])
        lo, hi = exceptional_band(u, v, r)
        ivs = [[-hi, hi]] if lo == 0 else [[-hi, -lo], [lo, hi]]
        U.append(u)
        V.append(v)
        R.append(r)
        G_e.append(ivs)
    G_r = []
    R_reg = []
    for i in range(n):
        c = float(A[2 * m + i, 2 * m + i])
        r = float(offsum[m + i])
        G_r.append([c - r, c + r])
        R_reg.append(r)
    dominant, margins = is_strictly_block_diagonally_dominant(A, sizes)
    return GersgorinReport(G_r, G_e, U, V, R, R_reg, dominant, margins)


def localization_report(Hs) -> GersgorinReport:
    """Gersgorin sets plus eigenvalues, containment and the localization verdicts."""
    rep = gersgorin_sets(Hs)
    ev = symmetric_eigenvalues(Hs.symmetric)
    rep.eigenvalues = [float(x) for x in ev]
    rep.containment = [rep.locate(x) for x in rep.eigenvalues]
    max_abs_Gr = max((max(abs(lo), abs(hi)) for lo, hi in rep.G_r), default=0.0)
    rep.verdicts = {
        "containment_fraction": sum(1 for c in rep.containment if c) / max(len(ev), 1),
        "all_contained": all(rep.containment),
        "G_r_negative": all(hi < 0 for _, hi in rep.G_r),
        "max_abs_G_r": max_abs_Gr,
        "G_e_band_magnitude": float(np.mean(rep.U)) if rep.U else 0.0,
        "G_e_inner_radius": min((ivs[-1][0] if len(ivs) == 2 else 0.0) for ivs in rep.G_e) if rep.G_e else 0.0,
        "G_e_outer_radius": max((ivs[-1][1] for ivs in rep.G_e), default=0.0),
        "dominant": rep.dominant,
        "min_abs_eigenvalue": float(np.min(np.abs(ev))) if len(ev) else 0.0,
    }
    return rep

"""Log-log least-squares power-law fits."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .errors import DegenerateFit


@dataclass(frozen=True)
class PowerLawFit:
    exponent: float
    constant: float
    max_relative_residual: float
    points: int

    def to_dict(self) -> dict:
        return {
            "exponent": self.exponent,
            "constant": self.constant,
            "max_relative_residual": self.max_relative_residual,
            "points": self.points,
        }


def asymptotic_fit(series: Sequence[Tuple[float, float]], model: str = "power_law", min_points: int = 4) -> PowerLawFit:
    """Fit ``value ≈ constant * n**exponent`` by least squares on the logs.

    Parameters
    ----------
    series : sequence of (n, value)
        Positive abscissae and values.
    model : str
        Only ``"power_law"`` is supported.
    min_points : int
        Fewer points raise :class:`DegenerateFit`.
    """
    if model != "power_law":
        raise ValueError(f"unknown model {model!r}")
    pts = [(float(n), float(v)) for n, v in series]
    if len(pts) < min_points:
        raise DegenerateFit(f"need at least {min_points} points, got {len(pts)}")
    if any(n <= 0 or v <= 0 for n, v in pts):
        raise DegenerateFit("power-law fit needs positive abscissae and values")
    x = np.log([n for n, _ in pts])
    y = np.log([v for _, v in pts])
    if np.ptp(x) == 0:
        raise DegenerateFit("all abscissae coincide")
    slope, intercept = np.polyfit(x, y, 1)
    c = math.exp(intercept)
    resid = max(abs(c * n**slope - v) / v for n, v in pts)
    return PowerLawFit(float(slope), c, float(resid), len(pts))

"""Scenario orchestration: run a configured set of checks and write a report bundle.

A bundle is a directory with one CSV and one JSON file per scenario and
regular-zero count ``n``, plus ``sweep.csv``/``sweep.json`` for the fits
across ``n`` and ``summary.json`` with one verdict per checked property.
Everything is deterministic given the configuration and seed.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import mpmath as mp
import numpy as np
from scipy import stats

from .errors import ConfigError, DegenerateFit, XHermiteError
from .exact_poly import exceptional_hermite, exceptional_ode_residual, hermite, is_squarefree
from .fits import PowerLawFit, asymptotic_fit
from .partition import Partition, degree_set, is_admissible, make_partition
from .zeros import (
    ZeroSet,
    classical_hermite_zeros,
    exceptional_deviation,
    h_roots,
    interlacing_report,
    inverse_distance_scan,
    km_identity_residual,
    zero_set,
)

SCENARIOS = ("construct", "zeros", "hessian", "gersgorin", "dnu", "optimality", "semicircle", "sweep")

DEFAULT_TOLERANCES = {
    "stationarity": 1e-8,
    "fd_relative": 1e-5,
    "closed_form_relative": 1e-6,
    "identity_relative": 1e-6,
    "orthogonality": 1e-8,
    "reduced_gradient": 1e-8,
    "max_G_r_exponent": 1.15,
    "band_exponent": [0.85, 1.15],
    "inverse_norm_exponent": 0.85,
    "off_block_exponent": 0.7,
    "scan_exponent": [0.3, 0.7],
    "distance_slope": [-0.65, -0.35],
    "semicircle_ks": 0.15,
    "trials": 1000,
}

__all__ = [
    "ScenarioConfig",
    "run",
    "semicircle_cdf",
    "semicircle_report",
    "orthogonality_check",
    "orthogonality_pairs",
    "asymptotic_fit",
    "PowerLawFit",
]


@dataclass
class ScenarioConfig:
    """What to run.

    ``n_values`` are numbers of regular zeros; the polynomial degree is
    ``|λ| + n`` and must be admissible for the partition.
    """

    partition: Sequence[int] = ()
    n_values: Sequence[int] = (20,)
    precision_bits: int = 192
    scenarios: Sequence[str] = SCENARIOS
    seed: int = 0
    output_dir: str = "xhermite-out"
    tolerances: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        try:
            self.lam = make_partition(self.partition)
        except XHermiteError as exc:
            raise ConfigError(f"invalid partition {list(self.partition)}: {exc}") from None
        self.n_values = [int(n) for n in self.n_values]
        self.scenarios = list(self.scenarios)
        if not self.n_values:
            raise ConfigError("n_values is empty")
        if self.precision_bits < 64:
            raise ConfigError("precision_bits must be at least 64")
        unknown = [s for s in self.scenarios if s not in SCENARIOS]
        if unknown:
            raise ConfigError(f"unknown scenarios {unknown}; choose from {list(SCENARIOS)}")
        unknown = [k for k in self.tolerances if k not in DEFAULT_TOLERANCES]
        if unknown:
            raise ConfigError(f"unknown tolerance keys {unknown}")
        m = self.lam.size
        bad = [n for n in self.n_values if n < 0 or not is_admissible(self.lam, m + n)]
        if bad:
            raise ConfigError(
                f"inadmissible n {bad} for partition {self.lam}: degree |λ|+n must avoid "
                f"the excluded degrees {sorted(self.lam.excluded_degrees())} and be at least {max(m - self.lam.length, 0)}"
            )

    @property
    def tol(self) -> dict:
        out = dict(DEFAULT_TOLERANCES)
        out.update(self.tolerances)
        return out

    def to_dict(self) -> dict:
        return {
            "partition": list(self.lam.parts),
            "n_values": list(self.n_values),
            "precision_bits": self.precision_bits,
            "scenarios": list(self.scenarios),
            "seed": self.seed,
            "output_dir": self.output_dir,
            "tolerances": dict(self.tolerances),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ScenarioConfig":
        known = {"partition", "n_values", "precision_bits", "scenarios", "seed", "output_dir", "tolerances"}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config keys {sorted(extra)}")
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "ScenarioConfig":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None
        if not isinstance(d, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(d)


# ---------------------------------------------------------------- helpers


def semicircle_cdf(t):
    """CDF of the semicircle law on ``[-1, 1]``."""
    t = np.clip(np.asarray(t, dtype=float), -1.0, 1.0)
    return 0.5 + (t * np.sqrt(1 - t * t) + np.arcsin(t)) / np.pi


def semicircle_report(Z: ZeroSet, n: Optional[int] = None, m: Optional[int] = None) -> dict:
    """Kolmogorov–Smirnov distance between scaled regular zeros and the semicircle law.

    Zeros are divided by ``√(2(m + n))``, the half-width of the zero range of
    the classical Hermite polynomial of the same total degree.
    """
    n = Z.n if n is None else n
    m = Z.m if m is None else m
    if n < 5:
        raise ValueError("semicircle comparison needs at least 5 regular zeros")
    scale = math.sqrt(2 * (m + n))
    xs = np.array([float(x) for x in Z.regular]) / scale
    res = stats.kstest(xs, semicircle_cdf)
    return {"n": n, "m": m, "ks_distance": float(res.statistic), "scale": scale, "scaling": "sqrt(2*(m+n))"}


def _gauss_hermite(N: int, precision_bits: int):
    nodes = classical_hermite_zeros(N, precision_bits)
    with mp.workprec(precision_bits):
        c = mp.mpf(2) ** (N - 1) * mp.factorial(N) * mp.sqrt(mp.pi) / N**2
        weights = []
        for x in nodes:
            a, b = mp.mpf(1), 2 * x
            for k in range(1, N - 1):
                a, b = b, 2 * x * b - 2 * k * a
            h = a if N == 1 else b
            weights.append(c / (h * h))
    return nodes, weights


def orthogonality_check(lam: Partition, n1: int, n2: int, quad_points: Optional[int] = None,
                        precision_bits: int = 128) -> float:
    """Normalized inner product of ``P_{n1}`` and ``P_{n2}`` for the weight ``exp(-x^2)/H^2``.

    ``n1`` and ``n2`` are degrees.  Gauss–Hermite quadrature with
    ``max(200, 4(n1+n2))`` nodes unless ``quad_points`` is given.
    """
    if n1 == n2:
        raise ValueError("orthogonality needs two different degrees")
    N = max(200, 4 * (n1 + n2)) if quad_points is None else quad_points
    if N < 200:
        raise ValueError("quad_points must be at least 200")
    from .exact_poly import generalized_hermite

    P1, P2 = exceptional_hermite(lam, n1), exceptional_hermite(lam, n2)
    H = generalized_hermite(lam)
    nodes, weights = _gauss_hermite(N, precision_bits)
    with mp.workprec(precision_bits + max(P1.bit_length(), P2.bit_length(), H.bit_length())):
        s12, s11, s22 = [], [], []
        for x, w in zip(nodes, weights):
            h = H(x)
            a, b = P1(x) / h, P2(x) / h
            s12.append(w * a * b)
            s11.append(w * a * a)
            s22.append(w * b * b)
        return float(abs(mp.fsum(s12)) / mp.sqrt(mp.fsum(s11) * mp.fsum(s22)))


def orthogonality_pairs(lam: Partition, count: int = 3) -> List[tuple]:
    """The first ``count`` pairs of admissible degrees of equal parity two apart."""
    degs = degree_set(lam, lam.size + 40)
    out = []
    for d in degs:
        if d + 2 in degs:
            out.append((d, d + 2))
        if len(out) == count:
            break
    return out


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating, mp.mpf)):
        return float(v)
    if isinstance(v, mp.mpc):
        return [float(v.real), float(v.imag)]
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    return v


def _dump(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(x)) if isinstance(x, (float, np.floating, mp.mpf)) else x for x in r])
    return buf.getvalue()


def _nu(lam: Partition) -> Optional[int]:
    p = lam.parts
    return p[0] if len(p) == 2 and p[0] == p[1] else None


# --------------------------------------------------------------- scenarios


class _Context:
    """Lazily computed objects shared by the scenarios for one ``n``."""

    def __init__(self, cfg: ScenarioConfig, n: int):
        self.cfg, self.n, self.lam, self.prec = cfg, n, cfg.lam, cfg.precision_bits
        self._cache = {}

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def zs(self):
        return self._get("zs", lambda: zero_set(self.lam, self.n, self.prec))

    @property
    def hw(self):
        return self._get("hw", lambda: h_roots(self.lam, self.prec))

    @property
    def H(self):
        from .energy import hessian

        return self._get("H", lambda: hessian(self.zs, self.hw))

    @property
    def search(self):
        from .energy import find_scaling_K

        return self._get("search", lambda: find_scaling_K(self.H))

    @property
    def K(self):
        s = self.search
        return s.K if s.found else s.best_K

    @property
    def localization(self):
        from .energy import scaled_hessian
        from .gersgorin import localization_report

        return self._get("loc", lambda: localization_report(scaled_hessian(self.H, self.K)))


def _construct(ctx: _Context):
    lam, deg = ctx.lam, ctx.lam.size + ctx.n
    P = exceptional_hermite(lam, deg)
    data = {
        "degree": deg,
        "ode_exact": exceptional_ode_residual(lam, deg).is_zero(),
        "squarefree": is_squarefree(P),
        "even_or_odd": "even" if deg % 2 == 0 else "odd",
        "max_coefficient_bits": P.bit_length(),
    }
    rows = [(k, str(c)) for k, c in enumerate(P.coeffs)]
    return _csv(["power", "coefficient"], rows), data


def _zeros(ctx: _Context):
    zs, hw = ctx.zs, ctx.hw
    data = {"m": zs.m, "n": zs.n, "precision_bits": zs.precision_bits}
    res = [float(v) for v in zs.residuals.values() if v != ""]
    data["max_residual_bound"] = max(res) if res else 0.0
    if zs.m:
        dev = [float(d) for _, d in exceptional_deviation(zs, hw)]
        data["min_distance_to_H_zeros"] = min(dev)
        data["max_distance_to_H_zeros"] = max(dev)
        km = km_identity_residual(zs, hw)
        data["pole_balance_max_relative_residual"] = max(float(r) for _, r in km)
    classical = classical_hermite_zeros(zs.m + zs.n, 64)
    data["interlacing"] = interlacing_report(zs.regular, classical, ctx.lam.length)
    data["inverse_distance_scan"] = float(inverse_distance_scan(0, 1, zs.regular))
    return zs.to_csv(), data


def _hessian(ctx: _Context):
    from .energy import Configuration, gradient, hessian_deviation_report

    cfg = Configuration.from_zero_set(ctx.zs)
    g = gradient(cfg, ctx.hw)
    A = ctx.H.symmetric
    m = ctx.H.m
    data = ctx.H.summary()
    data["gradient_max"] = max((float(abs(v)) for v in g), default=0.0)
    data["trace_free_blocks"] = all(A[2 * k, 2 * k] == -A[2 * k + 1, 2 * k + 1] for k in range(m))
    data["finite_difference"] = hessian_deviation_report(ctx.zs, ctx.hw)
    return ctx.H.to_csv(), data


def _gersgorin(ctx: _Context):
    from .gersgorin import block_norms, inv_block_norm_reciprocal

    rep = ctx.localization
    data = rep.to_dict()
    data["K"] = ctx.K
    data["K_found"] = ctx.search.found
    A = ctx.H.symmetric
    m = ctx.H.m
    if m:
        N = block_norms(A, ctx.H.block_sizes)
        data["inverse_block_norm_reciprocal"] = [inv_block_norm_reciprocal(A[2 * k : 2 * k + 2, 2 * k : 2 * k + 2]) for k in range(m)]
        data["off_block_row_sums"] = [float(N[k].sum() - N[k, k]) for k in range(m)]
    rows = [(i + 1, x, rep.containment[i]) for i, x in enumerate(rep.eigenvalues)]
    return _csv(["index", "eigenvalue", "component"], rows), data


def _dnu(ctx: _Context):
    from .dnu import dnu_ode_check, ode_hessian_block, product_identities_check, r_mn, saddle_check

    nu = _nu(ctx.lam)
    if nu is None:
        return None, {"skipped": f"partition {ctx.lam} is not of the form (ν, ν)"}
    A = ctx.H.symmetric
    rows, dev_r, dev_ode = [], 0.0, 0.0
    for k, z in enumerate(ctx.zs.exceptional):
        h11, h12 = float(A[2 * k, 2 * k]), float(A[2 * k, 2 * k + 1])
        r = r_mn(nu, ctx.n, z, ctx.prec)
        o11, o12 = (float(v) for v in ode_hessian_block(ctx.lam, ctx.n, z, ctx.prec))
        rows.append((k + 1, h11, h12, float(r.real), float(r.imag), o11, o12))
        dev_r = max(dev_r, abs(h11 - float(r.real)) / abs(h11))
        dev_ode = max(dev_ode, abs(h11 - o11) / abs(h11), abs(h12 - o12) / abs(h11))
    sc = saddle_check(nu, ctx.n, ctx.prec)
    first, second = product_identities_check(nu)
    data = {
        "nu": nu,
        "saddle": sc.to_dict(),
        "r_mn_relative_deviation": dev_r,
        "closed_form_relative_deviation": dev_ode,
        "dnu_ode_exact": dnu_ode_check(nu),
        "product_identities_exact": [first, second],
    }
    header = ["k", "h_diag", "h_offdiag", "re_r_mn", "im_r_mn", "closed_form_diag", "closed_form_offdiag"]
    return _csv(header, rows), data


def _optimality(ctx: _Context):
    from .optimality import WeightSpec, is_approximating, m1n_derivative, qn_ode_residual, verify_unique_maximum

    zs = ctx.zs
    ws = WeightSpec.modified(zs) if zs.m else WeightSpec.classical()
    grid = np.linspace(-10, 10, 400)
    vals = [m1n_derivative(ws, float(x)) for x in grid]
    ver = verify_unique_maximum(ws, zs.regular, int(ctx.cfg.tol["trials"]), ctx.cfg.seed)
    rng = np.random.default_rng(ctx.cfg.seed)
    xs = rng.uniform(-10, 10, 50)
    qres = max(qn_ode_residual(ctx.lam, zs.n, float(x), zs) for x in xs)
    data = {
        "maximum": ver.to_dict(),
        "approximating": is_approximating(ws).to_dict(),
        "m1n_derivative_max": max(vals),
        "m1n_derivative_sup_deviation": max(abs(v + 2) for v in vals),
        "qn_ode_max_residual": qres,
    }
    return _csv(["x", "m1n_derivative"], zip(grid, vals)), data


def _semicircle(ctx: _Context):
    rep = semicircle_report(ctx.zs)
    xs = sorted(float(x) / rep["scale"] for x in ctx.zs.regular)
    rows = [(x, (i + 1) / len(xs), float(semicircle_cdf(x))) for i, x in enumerate(xs)]
    return _csv(["scaled_zero", "empirical_cdf", "semicircle_cdf"], rows), rep


_RUNNERS = {
    "construct": _construct,
    "zeros": _zeros,
    "hessian": _hessian,
    "gersgorin": _gersgorin,
    "dnu": _dnu,
    "optimality": _optimality,
    "semicircle": _semicircle,
}
_ORDER = ("construct", "zeros", "hessian", "gersgorin", "dnu", "optimality", "semicircle")


# ----------------------------------------------------------------- verdicts


def _verdict(claim, ok, tolerance, value, grade=None):
    v = grade or ("PASS" if ok else "FAIL")
    return {"claim": claim, "verdict": v, "tolerance": tolerance, "value": value}


def _ok(results, scenario):
    """Per-n results of a scenario without the failed ones."""
    return {n: d for n, d in results.get(scenario, {}).items() if "error" not in d}


def _fit(series):
    try:
        return asymptotic_fit(series).to_dict()
    except DegenerateFit as exc:
        return {"error": str(exc)}


def _sweep(cfg: ScenarioConfig, results: dict):
    """Power-law fits across ``n`` of the scaling quantities."""
    loc, zer = _ok(results, "gersgorin"), _ok(results, "zeros")
    ns = sorted(set(loc) & set(zer))
    rows = []
    for n in ns:
        g, z = loc[n], zer[n]
        rows.append(
            {
                "n": n,
                "max_abs_G_r": g["verdicts"]["max_abs_G_r"],
                "G_e_band": g["verdicts"]["G_e_band_magnitude"],
                "inverse_block_norm_min": min(g.get("inverse_block_norm_reciprocal", [math.nan])),
                "off_block_row_sum_max": max(g.get("off_block_row_sums", [math.nan])),
                "inverse_distance_scan": z["inverse_distance_scan"],
                "max_distance": z.get("max_distance_to_H_zeros", math.nan),
                "min_distance": z.get("min_distance_to_H_zeros", math.nan),
            }
        )
    fits = {}
    for key in ("max_abs_G_r", "G_e_band", "inverse_block_norm_min", "off_block_row_sum_max", "inverse_distance_scan", "max_distance"):
        series = [(r["n"], r[key]) for r in rows if isinstance(r[key], float) and math.isfinite(r[key]) and r[key] > 0]
        fits[key] = _fit(series)
    semi = _ok(results, "semicircle")
    ks = [(n, semi[n]["ks_distance"]) for n in sorted(semi)]
    data = {"rows": rows, "fits": fits, "semicircle": ks}
    header = list(rows[0]) if rows else ["n"]
    csv_text = _csv(header, [[r[h] for h in header] for r in rows])
    return csv_text, data


def _summary_verdicts(cfg: ScenarioConfig, results: dict, sweep: Optional[dict]) -> List[dict]:
    tol = cfg.tol
    out = []

    def per_n(scenario, claim, tolerance, pred, value):
        res = results.get(scenario)
        if res is None:
            return
        errors = [n for n, d in res.items() if "error" in d]
        good = _ok(results, scenario)
        if not good and not errors:
            return
        ok = not errors and all(pred(n, d) for n, d in good.items())
        out.append(_verdict(claim, ok, tolerance, {str(n): value(n, d) for n, d in good.items()} | {str(n): "error" for n in errors}))

    per_n("construct", "exceptional polynomial satisfies its differential equation exactly", "exact",
          lambda n, d: d["ode_exact"], lambda n, d: d["ode_exact"])
    per_n("hessian", "gradient of the log-energy vanishes at the zeros", f"{tol['stationarity']}*max(1,n)",
          lambda n, d: d["gradient_max"] <= tol["stationarity"] * max(1, n), lambda n, d: d["gradient_max"])
    per_n("hessian", "assembled Hessian matches finite differences; exceptional blocks are trace-free",
          f"{tol['fd_relative']} relative",
          lambda n, d: d["finite_difference"]["max_relative_deviation"] <= tol["fd_relative"] and d["trace_free_blocks"],
          lambda n, d: d["finite_difference"]["max_relative_deviation"])
    per_n("gersgorin", "scaled Hessian is strictly block diagonally dominant, hence nonsingular", "margins > 0",
          lambda n, d: d["dominant"] and d["verdicts"]["min_abs_eigenvalue"] > 0,
          lambda n, d: min(d["margins"]) if d["margins"] else None)
    per_n("gersgorin", "every eigenvalue lies in the block Gersgorin set; regular discs lie in x < 0", "100%",
          lambda n, d: d["verdicts"]["all_contained"] and d["verdicts"]["G_r_negative"],
          lambda n, d: d["verdicts"]["containment_fraction"])
    per_n("zeros", "regular zeros occupy at least n - r gaps of the classical zeros", "count",
          lambda n, d: d["interlacing"]["passed"], lambda n, d: d["interlacing"]["occupied"])
    if cfg.lam.size:
        per_n("zeros", "pole-balance identity at the zeros of H", f"{tol['identity_relative']} relative",
              lambda n, d: d["pole_balance_max_relative_residual"] <= tol["identity_relative"],
              lambda n, d: d["pole_balance_max_relative_residual"])
    if _nu(cfg.lam) is not None:
        per_n("dnu", "d_ν differential equation and product identities hold exactly", "exact",
              lambda n, d: d["dnu_ode_exact"] and all(d["product_identities_exact"]),
              lambda n, d: d["dnu_ode_exact"])
        per_n("dnu", "scaled Hessian dominant with negative diagonal (saddle structure)", "margins > 0, diagonal < 0",
              lambda n, d: d["saddle"]["passed"], lambda n, d: d["saddle"])
        per_n("dnu", "displayed closed form r_mn reproduces the exceptional Hessian diagonal",
              f"{tol['closed_form_relative']} relative",
              lambda n, d: d["r_mn_relative_deviation"] <= tol["closed_form_relative"],
              lambda n, d: d["r_mn_relative_deviation"])
        per_n("dnu", "closed form from the differential equation reproduces the exceptional Hessian blocks",
              f"{tol['closed_form_relative']} relative",
              lambda n, d: d["closed_form_relative_deviation"] <= tol["closed_form_relative"],
              lambda n, d: d["closed_form_relative_deviation"])
    per_n("optimality", "regular zeros are a strict local maximum of the reduced energy for w1",
          f"gradient {tol['reduced_gradient']}, eigenvalue < 0, {tol['trials']} perturbations",
          lambda n, d: d["maximum"]["passed"] and d["m1n_derivative_max"] < 0, lambda n, d: d["maximum"])
    if sweep is not None:
        fits = sweep["fits"]

        def fit_claim(key, claim, lo, hi):
            f = fits.get(key, {})
            if "error" in f:
                out.append(_verdict(claim, False, f"[{lo}, {hi}]", f["error"]))
                return
            e = f["exponent"]
            out.append(_verdict(claim, lo <= e <= hi, f"exponent in [{lo}, {hi}]", e))

        fit_claim("max_abs_G_r", "regular Gersgorin discs grow at most linearly in n", -math.inf, tol["max_G_r_exponent"])
        if cfg.lam.size:
            fit_claim("G_e_band", "exceptional Gersgorin bands scale like n", *tol["band_exponent"])
            fit_claim("inverse_block_norm_min", "exceptional diagonal blocks grow like n", tol["inverse_norm_exponent"], math.inf)
            fit_claim("off_block_row_sum_max", "off-block row sums of exceptional rows grow like sqrt(n)", -math.inf, tol["off_block_exponent"])
            fit_claim("max_distance", "exceptional zeros approach the zeros of H like 1/sqrt(n)", *tol["distance_slope"])
            rows = [r for r in sweep["rows"] if math.isfinite(r["min_distance"])]
            lower = [r["min_distance"] * math.sqrt(r["n"]) * math.log(r["n"]) for r in rows if r["n"] > 1]
            out.append(_verdict("min distance times sqrt(n) log(n) stays bounded below", bool(lower) and min(lower) > 0,
                                "> 0", min(lower) if lower else None))
        fit_claim("inverse_distance_scan", "inverse squared distance sums grow like sqrt(n)", *tol["scan_exponent"])
    semi = _ok(results, "semicircle")
    if semi:
        ks = [(n, semi[n]["ks_distance"]) for n in sorted(semi)]
        vals = [v for _, v in ks]
        mono = all(b <= a for a, b in zip(vals, vals[1:]))
        out.append(_verdict("scaled regular zeros approach the semicircle law", None,
                            f"non-increasing, final < {tol['semicircle_ks']}",
                            {"ks": {str(n): v for n, v in ks}, "non_increasing": mono, "final_below": vals[-1] < tol["semicircle_ks"]},
                            grade="REPORT"))
    return out


def run(config: ScenarioConfig, write: bool = True) -> dict:
    """Run the configured scenarios and (optionally) write the report bundle.

    Scenarios run for each ``n`` in dependency order; an error in one
    scenario for one ``n`` is recorded and the rest continues.  Returns the
    bundle as a mapping from file name to file contents.
    """
    cfg = config
    requested = set(cfg.scenarios)
    per_n = set(requested) - {"sweep"}
    if "sweep" in requested:
        per_n |= {"zeros", "gersgorin"}
    results: Dict[str, Dict[int, dict]] = {}
    files: Dict[str, str] = {}
    for n in cfg.n_values:
        ctx = _Context(cfg, n)
        for sc in _ORDER:
            if sc not in per_n:
                continue
            try:
                csv_text, data = _RUNNERS[sc](ctx)
            except (XHermiteError, ArithmeticError, ValueError) as exc:
                csv_text, data = None, {"error": f"{type(exc).__name__}: {exc}"}
            results.setdefault(sc, {})[n] = data
            if sc in requested:
                if csv_text is not None:
                    files[f"{sc}_n{n}.csv"] = csv_text
                files[f"{sc}_n{n}.json"] = _dump({"partition": list(cfg.lam.parts), "n": n, "seed": cfg.seed, **data})
    sweep = None
    if "sweep" in requested:
        csv_text, sweep = _sweep(cfg, results)
        files["sweep.csv"] = csv_text
        files["sweep.json"] = _dump(sweep)
    verdicts = _summary_verdicts(cfg, results, sweep)
    if "construct" in requested:
        pairs = orthogonality_pairs(cfg.lam)
        vals = {f"{a},{b}": orthogonality_check(cfg.lam, a, b) for a, b in pairs}
        verdicts.append(_verdict("exceptional polynomials are orthogonal for exp(-x^2)/H^2",
                                 all(v <= cfg.tol["orthogonality"] for v in vals.values()),
                                 f"{cfg.tol['orthogonality']} normalized", vals))
    summary = {
        "config": cfg.to_dict(),
        "verdicts": verdicts,
        "counts": {g: sum(1 for v in verdicts if v["verdict"] == g) for g in ("PASS", "FAIL", "REPORT")},
        "errors": {sc: {str(n): d["error"] for n, d in r.items() if "error" in d} for sc, r in results.items()},
    }
    files["summary.json"] = _dump(summary)
    if write:
        os.makedirs(cfg.output_dir, exist_ok=True)
        for name in sorted(files):
            with open(os.path.join(cfg.output_dir, name), "w", encoding="utf-8", newline="") as fh:
                fh.write(files[name])
    return files

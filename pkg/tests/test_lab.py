import json
import math

import numpy as np
import pytest

from xhermite.errors import ConfigError, DegenerateFit
from xhermite.fits import asymptotic_fit
from xhermite.lab import (
    ScenarioConfig,
    orthogonality_check,
    orthogonality_pairs,
    run,
    semicircle_cdf,
    semicircle_report,
)
from xhermite.partition import make_partition
from xhermite.zeros import zero_set

L0 = make_partition(())
L11 = make_partition((1, 1))


def test_config_validation():
    with pytest.raises(ConfigError, match="excluded degrees"):
        ScenarioConfig(partition=(1, 1), n_values=[20, 0])
    with pytest.raises(ConfigError):
        ScenarioConfig(partition=(1, 2), n_values=[5])
    with pytest.raises(ConfigError):
        ScenarioConfig(n_values=[5], precision_bits=32)
    with pytest.raises(ConfigError):
        ScenarioConfig(n_values=[5], scenarios=["plot"])
    with pytest.raises(ConfigError):
        ScenarioConfig(n_values=[5], tolerances={"nope": 1})
    with pytest.raises(ConfigError):
        ScenarioConfig.from_json("{not json")
    with pytest.raises(ConfigError):
        ScenarioConfig.from_dict({"n_values": [5], "colour": "red"})


def test_config_round_trip():
    cfg = ScenarioConfig(partition=(2, 2), n_values=[20, 30], seed=3, tolerances={"trials": 200})
    again = ScenarioConfig.from_json(json.dumps(cfg.to_dict()))
    assert again.to_dict() == cfg.to_dict()
    assert again.tol["trials"] == 200 and again.tol["fd_relative"] == 1e-5


def test_semicircle():
    assert semicircle_cdf(0.0) == pytest.approx(0.5)
    assert semicircle_cdf(-1.0) == pytest.approx(0.0)
    assert semicircle_cdf(2.0) == pytest.approx(1.0)
    rep = semicircle_report(zero_set(L0, 60, 128))
    assert rep["ks_distance"] < 0.08 and rep["scaling"] == "sqrt(2*(m+n))"
    with pytest.raises(ValueError):
        semicircle_report(zero_set(L0, 3, 128))


def test_orthogonality():
    assert orthogonality_check(L0, 2, 3) <= 1e-12
    assert orthogonality_check(L0, 2, 4) <= 1e-12
    assert orthogonality_check(L11, 3, 4) <= 1e-8
    for a, b in orthogonality_pairs(L11):
        assert orthogonality_check(L11, a, b) <= 1e-8
    with pytest.raises(ValueError):
        orthogonality_check(L11, 4, 4)
    with pytest.raises(ValueError):
        orthogonality_check(L11, 3, 5, quad_points=50)


def test_orthogonality_pairs_are_admissible():
    assert orthogonality_pairs(L11) == [(3, 5), (4, 6), (5, 7)]
    assert orthogonality_pairs(L0) == [(0, 2), (1, 3), (2, 4)]


def test_fit_exact_series():
    ns = [10, 20, 40, 80]
    assert asymptotic_fit([(n, float(n)) for n in ns]).exponent == pytest.approx(1.0)
    f = asymptotic_fit([(n, 3 * math.sqrt(n)) for n in ns])
    assert f.exponent == pytest.approx(0.5) and f.constant == pytest.approx(3.0)
    assert f.max_relative_residual < 1e-12
    with pytest.raises(DegenerateFit):
        asymptotic_fit([(1, 1.0), (2, 2.0), (3, 3.0)])
    with pytest.raises(DegenerateFit):
        asymptotic_fit([(1, 1.0), (2, -2.0), (3, 3.0), (4, 4.0)])


def test_classical_zeros_bundle(tmp_path):
    cfg = ScenarioConfig(partition=(), n_values=[5], scenarios=["zeros"], output_dir=str(tmp_path))
    files = run(cfg)
    assert set(files) == {"zeros_n5.csv", "zeros_n5.json", "summary.json"}
    lines = (tmp_path / "zeros_n5.csv").read_text().splitlines()
    assert len(lines) == 6 and "," in lines[0]
    assert json.loads(files["summary.json"])["counts"]["FAIL"] == 0


def test_errors_are_isolated_per_n():
    cfg = ScenarioConfig(partition=(1, 1), n_values=[3, 10], scenarios=["semicircle"])
    summary = json.loads(run(cfg, write=False)["summary.json"])
    assert "3" in summary["errors"]["semicircle"] and "10" not in summary["errors"]["semicircle"]


def test_bundle_is_deterministic():
    cfg = ScenarioConfig(partition=(1, 1), n_values=[6, 8], scenarios=["zeros", "hessian", "gersgorin", "optimality"],
                         seed=5, tolerances={"trials": 100})
    assert run(cfg, write=False) == run(cfg, write=False)


def test_small_sweep_verdicts():
    cfg = ScenarioConfig(partition=(1, 1), n_values=[20, 30, 40, 50], scenarios=["sweep", "semicircle"])
    summary = json.loads(run(cfg, write=False)["summary.json"])
    verdicts = {v["claim"]: v for v in summary["verdicts"]}
    assert verdicts["exceptional Gersgorin bands scale like n"]["verdict"] == "PASS"
    assert verdicts["scaled regular zeros approach the semicircle law"]["verdict"] == "REPORT"
    for v in summary["verdicts"]:
        assert v["tolerance"] and v["verdict"] in ("PASS", "FAIL", "REPORT")

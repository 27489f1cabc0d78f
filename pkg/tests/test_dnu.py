import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest

from xhermite.dnu import (
    distance_bound_fit,
    dnu,
    dnu_ode_check,
    ode_hessian_block,
    product_identities_check,
    r_mn,
    saddle_check,
)
from xhermite.energy import hessian
from xhermite.errors import PoleOfDnu
from xhermite.exact_poly import ExactPoly, generalized_hermite, wronskian, hermite
from xhermite.partition import make_partition
from xhermite.zeros import h_roots, zero_set


def test_small_cases():
    assert dnu(0).exact_part == ExactPoly((2,))
    assert dnu(1).exact_part == ExactPoly((4, 0, 8))
    assert dnu(2).exact_part == ExactPoly((24, 0, 0, 0, 32))
    assert dnu(2).exact_part == wronskian([hermite(2), hermite(3)])


def test_d0_value():
    with mp.workprec(128):
        assert mp.almosteq(dnu(0)(0.3), mp.sqrt(2) / mp.sqrt(mp.pi), rel_eps=mp.mpf(10) ** -30)


@pytest.mark.parametrize("nu", range(0, 8))
def test_construction_invariants(nu):
    d = dnu(nu)
    D = d.exact_part
    assert D.degree == 2 * nu and D.is_even()
    assert d.cd_max_relative_deviation <= 1e-10
    expected = 1 / math.sqrt(math.pi * 2 ** (2 * nu + 1) * math.factorial(nu) * math.factorial(nu + 1))
    assert d.scale == pytest.approx(expected, rel=1e-13)
    if nu:
        G = generalized_hermite(make_partition((nu, nu)))
        assert D * ExactPoly((d.hermite_ratio.denominator,)) == G * ExactPoly((d.hermite_ratio.numerator,))
        assert d.hermite_ratio > 0


@pytest.mark.parametrize("nu", range(0, 11))
def test_exact_identities(nu):
    assert dnu_ode_check(nu)
    assert product_identities_check(nu) == (True, True)


def test_r_mn_origin():
    assert abs(r_mn(0, 0, 0)) < 1e-40


@pytest.mark.parametrize("nu", [0, 1, 2])
def test_r_mn_quadratic_terms_cancel(nu):
    # the fraction carries the same z^2 leading term, so r stays bounded off the real axis
    near, far = r_mn(nu, 7, mp.mpc(0.3, 40)), r_mn(nu, 7, mp.mpc(0.3, 400))
    assert abs(far) < 1e-3 * 400**2
    assert abs(far - near) < 1.0
    assert abs(r_mn(0, 7, mp.mpc(0.3, 40)) + 14) < 1e-40


def test_r_mn_pole():
    w = h_roots(make_partition((1, 1)), 192).roots[0]
    with pytest.raises(PoleOfDnu):
        r_mn(1, 10, w)


@pytest.mark.parametrize("nu,n", [(1, 20), (2, 20), (1, 7)])
def test_closed_form_block_matches_assembled_hessian(nu, n):
    lam = make_partition((nu, nu))
    zs = zero_set(lam, n, 192)
    A = hessian(zs, h_roots(lam, 192)).symmetric
    for k, z in enumerate(zs.exceptional):
        a, b = ode_hessian_block(lam, n, z)
        assert float(a) == pytest.approx(A[2 * k, 2 * k], rel=1e-10)
        assert float(b) == pytest.approx(A[2 * k, 2 * k + 1], rel=1e-10, abs=1e-10)


def test_saddle_nu1():
    v = saddle_check(1, 40)
    assert v.dominant and v.regular_negative and v.exceptional_negative and v.passed
    assert v.to_dict()["passed"]


def test_saddle_small_n_reports():
    v = saddle_check(1, 1)
    assert isinstance(v.passed, bool)


def test_exceptional_diagonal_grows_linearly():
    vals = [(n, -saddle_check(2, n).exceptional_diagonal_max) for n in (20, 40, 60)]
    assert all(v > 0 for _, v in vals)
    ratios = [v / n for n, v in vals]
    assert max(ratios) / min(ratios) < 1.5


def test_distance_fit():
    fit = distance_bound_fit(1, [20, 30, 40, 50, 60])
    assert fit.slope_ok and fit.lower_ok
    assert -0.65 <= fit.upper_slope <= -0.35
    lines = fit.to_csv().splitlines()
    assert lines[0] == "n,min_dist,max_dist,slope" and len(lines) == 6


def test_distance_fit_single_point():
    fit = distance_bound_fit(1, [20])
    assert fit.upper_slope is None and fit.slope_ok is None and fit.diagnostic

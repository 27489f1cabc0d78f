import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from xhermite.energy import hessian
from xhermite.errors import CoincidentPoints, PoleProximity
from xhermite.partition import make_partition
from xhermite.optimality import (
    WeightSpec,
    is_approximating,
    m1n_derivative,
    qn_ode_residual,
    reduced_gradient,
    reduced_hessian,
    verify_unique_maximum,
)
from xhermite.zeros import classical_hermite_zeros, h_roots, zero_set

L0 = make_partition(())
L11 = make_partition((1, 1))
L22 = make_partition((2, 2))


def test_classical_weight():
    ws = WeightSpec.classical()
    v = is_approximating(ws)
    assert v.approximating and v.min_minus_second_log_derivative == pytest.approx(2)
    assert v.boundary == "vacuous"
    for x in (-3.0, 0.0, 2.5):
        assert m1n_derivative(ws, x) == -2
        assert float(ws.log_weight(x)) == pytest.approx(-x * x)
    with pytest.raises(ValueError):
        is_approximating(ws, grid_size=50)


def test_modified_weight_approximating():
    ws = WeightSpec.modified(zero_set(L11, 40, 192))
    assert is_approximating(ws, grid_size=200).approximating
    assert all(m1n_derivative(ws, x) < 0 for x in np.linspace(-10, 10, 81))


def test_m1n_cancels_when_zeros_coincide():
    hw = h_roots(L11, 192)
    ws = WeightSpec("modified_w1", L11, 5, tuple(hw.roots), 192)
    for x in (-2.0, 0.1, 3.0):
        assert m1n_derivative(ws, x) == pytest.approx(-2, abs=1e-30)


def test_m1n_approaches_classical_value():
    grid = np.linspace(-5, 5, 101)
    sups = []
    for n in (1, 20, 40):
        ws = WeightSpec.modified(zero_set(L11, n, 192))
        sups.append(max(abs(m1n_derivative(ws, x) + 2) for x in grid))
    assert sups[0] > sups[1] > sups[2]


def test_conjugate_closure_required():
    zs = zero_set(L11, 10, 192)
    with pytest.raises(ValueError, match="conjugation"):
        WeightSpec("modified_w1", L11, 10, (zs.exceptional[0], zs.exceptional[0]), 192)


def test_reduced_hessian_examples():
    ws = WeightSpec.classical()
    r = 1 / math.sqrt(2)
    assert np.allclose(reduced_hessian([-r, r], ws), [[-3, 1], [1, -3]])
    flat = WeightSpec("classical_hermite", L0, 0, (), 128)
    A = reduced_hessian([0.0, 1.0], flat) - np.diag([-2.0, -2.0])
    assert np.allclose(A, [[-2, 2], [2, -2]])
    with pytest.raises(CoincidentPoints):
        reduced_hessian([1.0, 1.0], ws)
    with pytest.raises(CoincidentPoints):
        reduced_gradient([2.0, 1.0], ws)


def test_reduced_hessian_equals_regular_block():
    zs = zero_set(L11, 20, 192)
    A = hessian(zs, h_roots(L11, 192)).symmetric
    B = reduced_hessian(list(zs.regular), WeightSpec.modified(zs))
    m = len(zs.exceptional)
    assert np.allclose(B, A[2 * m :, 2 * m :], rtol=1e-8, atol=1e-8)


@pytest.mark.parametrize("n", range(2, 11))
def test_classical_chain(n):
    ws = WeightSpec.classical()
    x = classical_hermite_zeros(n, 128)
    assert is_approximating(ws).approximating
    assert qn_ode_residual(L0, n, 0.37, zero_set(L0, n, 128)) <= 1e-10
    v = verify_unique_maximum(ws, x, trials=200, seed=n)
    assert v.stationarity_max <= 1e-8 and v.hessian_max_eigenvalue < 0 and v.failures == 0


def test_unique_maximum_modified_weight():
    zs = zero_set(L11, 40, 192)
    v = verify_unique_maximum(WeightSpec.modified(zs), list(zs.regular), trials=1000, seed=7)
    assert v.passed
    d = v.to_dict()
    assert d["seed"] == 7 and d["trials"] == 1000 and d["failures"] == 0


def test_zero_scale_perturbations_never_fail():
    ws = WeightSpec.classical()
    v = verify_unique_maximum(ws, classical_hermite_zeros(3, 128), trials=100, scales=(0.0, 0.0))
    assert v.failures == 0
    with pytest.raises(ValueError):
        verify_unique_maximum(ws, classical_hermite_zeros(3, 128), trials=10)


def test_unique_maximum_is_deterministic():
    ws = WeightSpec.classical()
    x = classical_hermite_zeros(4, 128)
    assert verify_unique_maximum(ws, x, seed=3).to_json() == verify_unique_maximum(ws, x, seed=3).to_json()


def test_qn_residual_exceptional():
    rng = np.random.default_rng(1)
    zs = zero_set(L11, 40, 192)
    xs = rng.uniform(-8, 8, 50)
    assert max(qn_ode_residual(L11, 40, float(x), zs) for x in xs) <= 1e-6
    assert qn_ode_residual(L11, 40, 0.3, zs, constant=2 * 40 - 2) > 1e-3


def test_qn_residual_pole_guard():
    zs = zero_set(L11, 10, 192)
    w = h_roots(L11, 192).roots[0]
    with pytest.raises(PoleProximity):
        qn_ode_residual(L11, 10, w, zs)


@settings(max_examples=15)
@given(st.integers(2, 8), st.floats(-4, 4))
def test_classical_qn_residual_property(n, x):
    zs = zero_set(L0, n, 128)
    if min(abs(x - float(r)) for r in zs.regular) < 1e-6:
        return
    assert qn_ode_residual(L0, n, x, zs) <= 1e-10

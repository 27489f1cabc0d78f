import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from xhermite.energy import (
    Configuration,
    PartitionedHessian,
    complex_log_energy,
    fd_gradient,
    find_scaling_K,
    gradient,
    hessian,
    hessian_deviation_report,
    log_energy,
    scaled_hessian,
)
from xhermite.errors import CoincidentPoints, PointAtPoleOfW, RealExceptionalZero
from xhermite.exact_poly import generalized_hermite
from xhermite.partition import make_partition
from xhermite.zeros import HRoots, h_roots, zero_set

L0 = make_partition(())
L11 = make_partition((1, 1))
L22 = make_partition((2, 2))
NO_H = HRoots((), 1, 128)


def _classical_two():
    with mp.workprec(192):
        r = 1 / mp.sqrt(2)
        return Configuration((), (), (-r, r), 192)


def test_classical_two_point_energy():
    with mp.workprec(192):
        assert mp.almosteq(log_energy(_classical_two(), NO_H), -1 + mp.log(2), rel_eps=mp.mpf(10) ** -50)


def test_classical_two_point_hessian():
    H = hessian(_classical_two(), NO_H)
    assert np.allclose(H.symmetric, [[-3, 1], [1, -3]], atol=1e-14)
    assert H.block_sizes == [1, 1]


def test_gradient_vanishes_at_zeros():
    for lam, n in ((L0, 10), (L11, 20), (L22, 20)):
        zs = zero_set(lam, n, 192)
        g = gradient(Configuration.from_zero_set(zs), h_roots(lam, 192))
        assert max(abs(v) for v in g) < mp.mpf(10) ** -40


def test_gradient_against_finite_differences_off_the_zeros():
    zs = zero_set(L11, 6, 192)
    hw = h_roots(L11, 192)
    with mp.workprec(192):
        v = [p + mp.mpf("0.01") * (i % 3 - 1) for i, p in enumerate(Configuration.from_zero_set(zs).as_vector())]
    cfg = Configuration.from_vector(v, zs.m, 192)
    g, fd = gradient(cfg, hw), fd_gradient(cfg, hw, mp.mpf("1e-12"))
    assert max(abs(a - b) for a, b in zip(g, fd)) < 1e-15


def test_real_part_of_complex_energy():
    zs = zero_set(L11, 8, 192)
    cfg = Configuration.from_zero_set(zs)
    hw = h_roots(L11, 192)
    with mp.workprec(192):
        assert mp.almosteq(log_energy(cfg, hw), mp.re(complex_log_energy(cfg, generalized_hermite(L11))), rel_eps=mp.mpf(10) ** -40)


@pytest.mark.parametrize("lam,n", [(L11, 5), (L11, 20), (L22, 10)])
def test_hessian_matches_finite_differences(lam, n):
    rep = hessian_deviation_report(zero_set(lam, n, 192), h_roots(lam, 192))
    assert rep["max_relative_deviation"] <= 1e-5


def test_hessian_structure():
    H = hessian(zero_set(L22, 20, 192), h_roots(L22, 192))
    A = H.symmetric
    assert np.array_equal(A, A.T)
    for k in range(H.m):
        assert A[2 * k, 2 * k] == -A[2 * k + 1, 2 * k + 1]
    for k in range(H.m):
        for l in range(H.m):
            if k != l:
                assert A[2 * k, 2 * l] == -A[2 * k + 1, 2 * l + 1]
                assert A[2 * k, 2 * l + 1] == A[2 * k + 1, 2 * l]


def test_hessian_errors():
    with pytest.raises(RealExceptionalZero):
        hessian(Configuration((mp.mpf(0),), (mp.mpf(0),), (), 128), NO_H)
    with pytest.raises(CoincidentPoints):
        log_energy(Configuration((), (), (mp.mpf(1), mp.mpf(1)), 128), NO_H)
    hw = h_roots(L11, 192)
    with mp.workprec(192):
        w = hw.roots[0]
        cfg = Configuration((mp.re(w),), (mp.im(w),), (), 192)
    with pytest.raises(PointAtPoleOfW):
        log_energy(cfg, hw)


def test_scaling_search():
    H = hessian(zero_set(L11, 20, 192), h_roots(L11, 192))
    s = find_scaling_K(H)
    assert s.found and s.K == 4.0 and min(s.margins) > 0
    s22 = find_scaling_K(hessian(zero_set(L22, 30, 192), h_roots(L22, 192)))
    assert not s22.found and s22.best_margin < 0


def test_scaled_hessian_is_a_similarity():
    H = hessian(zero_set(L11, 10, 192), h_roots(L11, 192))
    S = scaled_hessian(H, 8.0)
    assert np.allclose(np.sort(np.linalg.eigvals(S.entries).real), np.linalg.eigvalsh(H.symmetric))
    with pytest.raises(ValueError):
        scaled_hessian(H, 0)


def test_hessian_csv_and_summary():
    H = hessian(_classical_two(), NO_H)
    lines = H.to_csv().splitlines()
    assert lines[0] == "i,j,value" and len(lines) == 5
    assert H.summary()["dim"] == 2


@settings(max_examples=10)
@given(st.lists(st.floats(-3, 3, allow_nan=False), min_size=2, max_size=5, unique=True))
def test_energy_is_symmetric_under_permutation(xs):
    xs = sorted(xs)
    if min(b - a for a, b in zip(xs, xs[1:])) < 1e-3:
        return
    a = log_energy(Configuration((), (), tuple(mp.mpf(x) for x in xs), 128), NO_H)
    b = log_energy(Configuration((), (), tuple(mp.mpf(x) for x in reversed(xs)), 128), NO_H)
    assert a == b


@settings(max_examples=10)
@given(st.lists(st.floats(-2, 2, allow_nan=False), min_size=2, max_size=4, unique=True))
def test_classical_hessian_is_negative_definite(xs):
    xs = sorted(xs)
    if min(b - a for a, b in zip(xs, xs[1:])) < 1e-2:
        return
    H = hessian(Configuration((), (), tuple(mp.mpf(x) for x in xs), 128), NO_H)
    assert np.linalg.eigvalsh(H.symmetric).max() < 0

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import numpy_hermite_nodes
from xhermite.errors import CountMismatch, DegenerateDistance, NotSquarefree
from xhermite.exact_poly import ExactPoly, exceptional_hermite, generalized_hermite, hermite
from xhermite.partition import make_partition
from xhermite.zeros import (
    ZeroSet,
    all_roots,
    classical_hermite_zeros,
    classify_zeros,
    exceptional_deviation,
    h_roots,
    interlacing_report,
    inverse_distance_scan,
    km_identity_residual,
    match_exceptional,
    zero_set,
)

X = ExactPoly.x()
L11 = make_partition((1, 1))
L22 = make_partition((2, 2))


def _bits(v):
    return v.man.bit_length() if v else 0


def test_classical_zeros_against_numpy():
    for N in (1, 2, 5, 20, 60):
        z = classical_hermite_zeros(N, 128)
        assert np.allclose([float(v) for v in z], numpy_hermite_nodes(N), rtol=1e-12, atol=1e-14)


def test_classical_zeros_keep_full_precision():
    z = classical_hermite_zeros(10, 128)
    assert all(_bits(v) > 100 for v in z)
    with mp.workprec(128):
        assert all(abs(hermite(10)(v)) < mp.mpf(10) ** -20 for v in z)


def test_classical_zeros_two():
    z = classical_hermite_zeros(2, 128)
    with mp.workprec(128):
        assert mp.almosteq(z[1], 1 / mp.sqrt(2), rel_eps=mp.mpf(2) ** -120)


def test_all_roots_of_generalized_hermite_11():
    r = all_roots(generalized_hermite(L11), 128).roots
    with mp.workprec(128):
        target = 1 / mp.sqrt(2)
        assert sorted(float(mp.im(z)) for z in r) == pytest.approx([-float(target), float(target)], abs=1e-30)
        assert all(abs(mp.re(z)) < mp.mpf(10) ** -30 for z in r)


def test_all_roots_agrees_with_classical():
    for N in (7, 30):
        a = sorted(float(mp.re(z)) for z in all_roots(hermite(N), 128).roots)
        b = [float(v) for v in classical_hermite_zeros(N, 128)]
        assert np.allclose(a, b, rtol=1e-12)


def test_vieta():
    P = exceptional_hermite(L11, 12)
    r = all_roots(P, 192).roots
    with mp.workprec(192):
        s = mp.fsum(r)
        prod = mp.fprod(r)
        c = P.coeffs
        assert abs(s + mp.mpf(c[-2]) / c[-1]) < mp.mpf(10) ** -40
        assert abs(prod - mp.mpf(c[0]) / c[-1]) < mp.mpf(10) ** -40 * max(1, abs(prod))


def test_all_roots_rejects_repeated_roots():
    with pytest.raises(NotSquarefree):
        all_roots((X - ExactPoly((1,))) * (X - ExactPoly((1,))))


def test_zero_set_counts_and_precision():
    zs = zero_set(L11, 20, 192)
    assert (zs.m, zs.n, zs.degree) == (2, 20, 22)
    assert all(_bits(x) > 180 for x in zs.regular)
    with mp.workprec(400):
        assert mp.im(zs.exceptional[0]) > 0 and zs.exceptional[1] == mp.conj(zs.exceptional[0])
    assert list(zs.regular) == sorted(zs.regular)


def test_zero_set_classical_reduction():
    zs = zero_set(make_partition(()), 5, 128)
    assert zs.m == 0
    assert np.allclose([float(x) for x in zs.regular], numpy_hermite_nodes(5), rtol=1e-13)


def test_classify_count_mismatch():
    roots = all_roots(hermite(4), 128).roots
    with pytest.raises(CountMismatch):
        classify_zeros(roots, L11, 2)


def test_zero_set_serialization():
    zs = zero_set(L11, 5, 128)
    lines = zs.to_csv().splitlines()
    assert lines[0] == "kind,re,im,residual"
    assert len(lines) == 1 + 7
    assert sum(1 for l in lines if l.startswith("exceptional")) == 2
    d = zs.to_dict()
    assert d["partition"] == [1, 1] and len(d["regular"]) == 5


def test_matching_and_deviation_decrease():
    hw = h_roots(L11, 192)
    devs = [max(float(d) for _, d in exceptional_deviation(zero_set(L11, n, 192), hw)) for n in (20, 40, 60)]
    assert devs[0] > devs[1] > devs[2]
    assert devs[0] == pytest.approx(0.1534433, rel=1e-5)


def test_matching_is_a_permutation():
    zs = zero_set(L22, 20, 192)
    assert sorted(match_exceptional(zs, h_roots(L22, 192))) == [0, 1, 2, 3]


def test_pole_balance_identity():
    for lam in (L11, L22):
        for n in (10, 30):
            res = km_identity_residual(zero_set(lam, n, 192), h_roots(lam, 192))
            assert all(rel < 1e-40 for _, rel in res)


def test_pole_balance_degenerate():
    hw = h_roots(L11, 192)
    fake = ZeroSet(tuple(hw.roots), (mp.mpf(0),), L11, 192)
    with pytest.raises(DegenerateDistance):
        km_identity_residual(fake, hw)


def test_interlacing():
    zs = zero_set(L11, 30, 192)
    rep = interlacing_report(zs.regular, classical_hermite_zeros(32, 64), 2)
    assert rep["passed"] and rep["occupied"] >= 28
    assert interlacing_report([], [], 2)["passed"]
    assert interlacing_report([0.0], [-1.0, 1.0], 0)["skipped"]


def test_inverse_distance_scan():
    assert inverse_distance_scan(0, 1, [0]) == 1
    assert inverse_distance_scan(0, 1, [1, -1]) == 1
    with pytest.raises(ValueError):
        inverse_distance_scan(0, 0, [1])


@settings(max_examples=15)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=6, unique=True))
def test_roots_of_products_of_linear_factors(ints):
    p = ExactPoly((1,))
    for a in ints:
        p = p * ExactPoly((-a, 1))
    r = sorted(float(mp.re(z)) for z in all_roots(p, 96).roots)
    assert np.allclose(r, sorted(ints), atol=1e-20)


@settings(max_examples=15)
@given(st.lists(st.integers(-6, 6), min_size=3, max_size=8))
def test_conjugate_symmetry(coeffs):
    p = ExactPoly(coeffs + [1])
    if p.degree < 1:
        return
    from xhermite.exact_poly import is_squarefree

    if not is_squarefree(p):
        return
    r = all_roots(p, 96).roots
    with mp.workprec(96):
        for z in r:
            assert min(abs(mp.conj(z) - w) for w in r) < mp.mpf(10) ** -20

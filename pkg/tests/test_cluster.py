from fractions import Fraction

import pytest

from motzkin_gf.cluster import (
    SpectralLadder,
    area_bounds,
    c2,
    cluster_exp_check,
    cluster_term,
    cluster_term_uv,
    compositions,
    even_sum,
    log_gf,
    log_gf_oracle,
    p_polynomial,
    q_degree_bounds,
)
from motzkin_gf.errors import IndexOutOfRange, Unreachable
from motzkin_gf.polyring import U, V, ZERO, ZH, q_power, sym_reduce


def test_compositions():
    assert compositions(1) == [(1,)]
    assert compositions(2) == [(1, 1), (2,)]
    assert len(compositions(4)) == 8
    assert compositions(3, max_parts=2) == [(1, 2), (2, 1), (3,)]
    assert all(sum(c) == 6 for c in compositions(6))


def test_c2():
    assert c2((5,)) == Fraction(1, 5)
    assert c2((1, 1)) == 1
    assert c2((2, 1)) == 1
    assert c2((1, 2)) == 1
    # (1/2) C(3,2) C(3,2)
    assert c2((2, 2, 2)) == Fraction(9, 2)
    with pytest.raises(ValueError):
        c2((0, 1))


def test_even_sum():
    assert even_sum((1, 2, 3, 4)) == 6
    assert even_sum((5,)) == 0


def test_ladder():
    lad = SpectralLadder(1)
    assert len(lad) == 4
    assert lad.s(2) == q_power(1) * lad.s(0)
    with pytest.raises(IndexOutOfRange):
        lad.s(4)


@pytest.mark.parametrize("k", range(4))
def test_first_cluster_term(k):
    assert cluster_term(k, 1) == -ZH * sum((q_power(n) for n in range(k + 1)), ZERO)


def test_long_compositions_vanish():
    # k = 0 has two levels, so a = 3 only sees compositions of at most two parts
    assert all(2 * 0 + 2 - len(c) < 0 for c in compositions(3) if len(c) > 2)
    # ln(1 - zh) at grade 3
    assert cluster_term(0, 3) == -(ZH ** 3 / 3)
    assert sym_reduce(cluster_term_uv(0, 3)) == cluster_term(0, 3)


@pytest.mark.parametrize("k", range(5))
def test_exp_of_clusters(k):
    assert cluster_exp_check(k, 6)


def test_first_log_term():
    # G_k = 1 + zh + ..., so the grade-1 log term at m = n = 0 is +zh
    assert log_gf(1, 0, 0, 1)[1] == ZH
    assert log_gf(3, 0, 0, 1)[1] == ZH


@pytest.mark.parametrize("k,m,n", [(1, 0, 0), (2, 0, 2), (2, 1, 1), (3, 1, 2)])
def test_log_routes(k, m, n):
    oracle = log_gf_oracle(k, m, n, 6)
    assert log_gf(k, m, n, 6) == oracle
    assert log_gf(k, m, n, 6, route="split") == oracle
    assert log_gf(k, n, m, 6) == oracle


def test_p_polynomial_even_q_powers():
    p = p_polynomial(2, 0, 1, 4)
    assert all(e[2] % 2 == 0 for e, _ in p.terms())


def test_p_coefficients_are_not_always_integers():
    # the single-part composition carries 1/a
    assert not log_gf(1, 0, 0, 2)[2].is_integral()


def test_area_bounds_figure_values():
    assert area_bounds(5, 3, 4, 5)[0] == 23
    assert area_bounds(5, 3, 4, 6)[0] == 25
    assert area_bounds(5, 3, 4, 11)[0] == 25
    assert area_bounds(5, 3, 4, 1) == (7, 7)


def test_area_bounds_errors():
    with pytest.raises(Unreachable):
        area_bounds(5, 0, 4, 3)
    with pytest.raises(IndexOutOfRange):
        area_bounds(2, 0, 3, 5)


def test_degree_bounds():
    assert q_degree_bounds(3, 0, 0, 2) == (0, 1)
    assert q_degree_bounds(1, 0, 0, 4) == (0, 3)
    assert q_degree_bounds(5, 3, 4, 2) == (5, 9)
    assert q_degree_bounds(5, 4, 3, 2) == q_degree_bounds(5, 3, 4, 2)

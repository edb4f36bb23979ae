import pytest

from motzkin_gf.errors import NotIntegral
from motzkin_gf.motzkin import (
    INFINITE,
    F,
    MeanderQuery,
    ROUTES,
    SPECIAL_SUBSTITUTIONS,
    bosonic_partition,
    continued_fraction,
    continued_fraction_check,
    dual_transform,
    duality_check,
    embedding_identities,
    gf_meander,
    gf_rational,
    gf_series_oracle,
    hamiltonian,
    recursion_checks,
    secular,
    secular_closed,
    secular_det,
    secular_dual,
    secular_special,
    spectral_factor,
    two_step,
    z_chebyshev,
)
from motzkin_gf.polyring import ONE, QH, U, V, Z, Z1, Z2, ZERO, ZH, Poly, RatFunc, Series, det, q_power, scale_shift


def test_conventions():
    assert F(-1) == ONE
    assert F(-2) == ZERO
    assert F(0) == 1 - ZH


def test_F1_by_hand():
    # det [[1-zh, -z q^1/2], [-z q^1/2, 1-zh q]]
    expect = (1 - ZH) * (1 - ZH * q_power(1)) - Z ** 2 * q_power(1)
    assert F(1) == expect
    assert secular_det(1) == expect


def test_hamiltonian_shape():
    H = hamiltonian(2)
    assert H.dim == 3
    assert H.is_symmetric()
    assert H[1, 1] == ZH * QH ** 2
    assert H[1, 2] == Z * QH ** 3
    assert H[0, 2] == ZERO
    with pytest.raises(ValueError):
        hamiltonian(-1)


@pytest.mark.parametrize("k", range(5))
@pytest.mark.parametrize("route", ROUTES)
def test_routes_agree(k, route):
    assert secular(k, route) == secular_det(k)


@pytest.mark.parametrize("k", range(4))
def test_closed_form_realizations(k):
    assert secular_closed(k, "qbinomial") == secular_closed(k, "product")


def test_closed_form_rational_intermediates():
    # T_2(x) = 2x^2 - 1, so z^2 T_2(zh/2z) = zh^2/2 - z^2
    assert z_chebyshev(2, 2) == ZH ** 2 / 2 - Z ** 2
    assert not z_chebyshev(2, 2).is_integral()


def test_closed_form_integrality_guard(monkeypatch):
    import motzkin_gf.motzkin as mk
    monkeypatch.setattr(mk, "z_chebyshev", lambda N, r: Poly.monomial({"ZH": N}, "1/3"))
    with pytest.raises(NotIntegral):
        mk.secular_closed(1)


@pytest.mark.parametrize("k", range(4))
def test_dual_sign_by_degree(k):
    # in the U, V basis the degree-N part carries the sign (-1)^N
    for exps, c in secular_dual(k).terms():
        N = exps[3] + exps[4]
        assert c * (-1) ** N > 0


def test_spectral_ladder():
    assert spectral_factor(0) == -U
    assert spectral_factor(1) == -V
    assert spectral_factor(4) == -U * q_power(2)


@pytest.mark.parametrize("kk,N", [(0, 0), (1, 2), (3, 2), (2, 4)])
def test_bosonic_forms(kk, N):
    a = bosonic_partition(kk, N, "alpha")
    assert a == bosonic_partition(kk, N, "alpha", "first") == bosonic_partition(kk, N, "alpha", "second")
    assert bosonic_partition(kk, N, "beta") == a.swap_uv()


@pytest.mark.parametrize("k", range(6))
@pytest.mark.parametrize("case", sorted(SPECIAL_SUBSTITUTIONS))
def test_special_cases(k, case):
    assert secular_special(k, case) == F(k).subs(SPECIAL_SUBSTITUTIONS[case])


def test_uniform_small():
    # F_0 = 1 - zh at zh = z
    assert secular_special(0, "uniform") == 1 - Z


@pytest.mark.parametrize("k", range(6))
def test_duality(k):
    assert duality_check(k)
    assert dual_transform(F(k), k).laurent


@pytest.mark.parametrize("k", range(5))
def test_embedding(k):
    rep = embedding_identities(k)
    assert rep.ok, str(rep)


def test_embedding_k0():
    H = two_step(0)
    assert H.dim == 3
    assert det(1 - H) == 1 - Z1 ** 2 - Z2 ** 2


@pytest.mark.parametrize("k", range(6))
def test_continued_fraction(k):
    assert continued_fraction_check(k)
    cf = continued_fraction(k, L=6)
    g = gf_meander(MeanderQuery(k, 0, 0, 5)).series
    assert cf.series == Series([ZERO] + [Z * c for c in g])


def test_continued_fraction_depth():
    # a shorter fraction is the generating function of a lower ceiling
    cf = continued_fraction(4, depth=2)
    assert RatFunc(cf.numerator, cf.denominator).equals(RatFunc(Z * scale_shift(F(0), 1), F(1)))
    with pytest.raises(ValueError):
        continued_fraction(2, depth=4)


@pytest.mark.parametrize("k", range(5))
def test_identity_suite(k):
    rep = recursion_checks(k, 7)
    assert rep.ok, str(rep)


def test_gf_parts():
    g = gf_meander(MeanderQuery(2, 0, 2, 4))
    assert (g.z_power, g.qh_power) == (2, 4)
    assert g.series[2] == Z ** 2 * QH ** 4
    assert gf_rational(2, 2, 0).equals(gf_rational(2, 0, 2))


def test_series_oracle_symmetric():
    a = gf_series_oracle(MeanderQuery(3, 1, 3, 8))
    b = gf_series_oracle(MeanderQuery(3, 3, 1, 8))
    assert a == b


def test_infinite_ceiling():
    q = MeanderQuery(INFINITE, 0, 1, 8)
    assert q.k_eff == 9
    g = gf_meander(q)
    assert g.series == gf_series_oracle(q)
    # a higher ceiling changes nothing through this order
    assert g.series == gf_meander(MeanderQuery(20, 0, 1, 8)).series


def test_query_validation():
    with pytest.raises(ValueError):
        MeanderQuery(1, 2, 0, 3)
    with pytest.raises(ValueError):
        MeanderQuery(2, 0, 0, -1)

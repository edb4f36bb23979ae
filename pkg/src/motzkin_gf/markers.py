"""Paths with boundary markers.

Four extra weights monitor contact with the boundaries: ``TD`` per down-step
landing on the floor, ``CD`` per level step taken on the floor, ``TU`` per
up-step landing on the ceiling, ``CU`` per level step taken on the ceiling.
Paths starting on the floor (ceiling) get an extra ``TD`` (``TU``) so that
the marked propagator is symmetric in its endpoints.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Optional, Union

from .errors import CeilingTooLow
from .motzkin import F, MeanderQuery, dual_transform, gf_parts, gf_rational, hamiltonian
from .polyring import (
    CD,
    CU,
    ONE,
    TD,
    TU,
    ZERO,
    ZH,
    Poly,
    PolyMatrix,
    RatFunc,
    Series,
    det,
    eval_rational,
    q_power,
    qh_power,
    scale_shift,
    series_invert,
)
from .report import Report, first_difference, series_difference

Weight = Union[Poly, int, Fraction]

MARKERS = ("TD", "CD", "TU", "CU")


@dataclass(frozen=True)
class MarkerWeights:
    """Values for the touch-down, creep-down, touch-up and creep-up markers.

    Defaults are the formal marker variables; pass numbers to specialize.
    """

    td: Weight = TD
    cd: Weight = CD
    tu: Weight = TU
    cu: Weight = CU

    @classmethod
    def symbolic(cls) -> "MarkerWeights":
        return cls()

    @classmethod
    def ones(cls) -> "MarkerWeights":
        return cls(1, 1, 1, 1)

    def polys(self):
        return tuple(Poly._wrap(x) for x in (self.td, self.cd, self.tu, self.cu))

    def is_symbolic(self) -> bool:
        return self.polys() == (TD, CD, TU, CU)

    def swapped(self) -> "MarkerWeights":
        """Floor and ceiling weights exchanged, as under duality."""
        return MarkerWeights(self.tu, self.cu, self.td, self.cd)

    def floor_only(self) -> "MarkerWeights":
        return MarkerWeights(self.td, self.cd, 1, 1)

    def ceiling_only(self) -> "MarkerWeights":
        return MarkerWeights(1, 1, self.tu, self.cu)

    def substitution(self) -> Dict[str, Poly]:
        return dict(zip(MARKERS, self.polys()))

    def apply(self, p: Poly) -> Poly:
        """Specialize a polynomial written in the formal marker variables."""
        if self.is_symbolic():
            return p
        return p.subs(self.substitution())


def A(r: int, t: Weight, s: Weight) -> Poly:
    """``1 - t + (t - s) zh q^r``: vanishes on the invariance family."""
    t, s = Poly._wrap(t), Poly._wrap(s)
    return 1 - t + (t - s) * ZH * q_power(r)


# -- matrix and determinant --------------------------------------------------------

def marked_hamiltonian(k: int, w: MarkerWeights = MarkerWeights()) -> PolyMatrix:
    """H_k with (0,0) scaled by CD, (1,0) by TD, (k-1,k) by TU and (k,k) by CU.

    At k = 1 the touch-up entry is (0,1) and the touch-down entry (1,0); the
    two never coincide.
    """
    if k < 1:
        raise CeilingTooLow("marked Hamiltonian needs a ceiling k >= 1")
    td, cd, tu, cu = w.polys()
    rows = [list(r) for r in hamiltonian(k).rows]
    rows[0][0] = rows[0][0] * cd
    rows[1][0] = rows[1][0] * td
    rows[k - 1][k] = rows[k - 1][k] * tu
    rows[k][k] = rows[k][k] * cu
    return PolyMatrix(rows)


def _unmarked(k: int) -> Poly:
    return F(k) if k >= -1 else ZERO


def marked_secular(k: int, w: MarkerWeights = MarkerWeights()) -> Poly:
    """det(1 - marked H_k) written through unmarked F's; valid for all k >= -1.

    Below k = 1 it reproduces the conventional values
    ``t + T - t sigma zh - T s zh - t T + t T zh`` (k = 0) and ``t T`` (k = -1).
    """
    if k < -1:
        return ZERO
    t, s, T, sig = w.polys()
    bottom = 1 - T - sig * ZH * q_power(k) + T * ZH * q_power(k)
    top = 1 - t - s * ZH + t * ZH
    return (t * T * _unmarked(k) + t * bottom * _unmarked(k - 1)
            + T * top * scale_shift(_unmarked(k - 1), 1)
            + top * bottom * scale_shift(_unmarked(k - 2), 1))


def marked_secular_det(k: int, w: MarkerWeights = MarkerWeights()) -> Poly:
    return det(1 - marked_hamiltonian(k, w))


def marked_secular_top_row(k: int, w: MarkerWeights = MarkerWeights()) -> Poly:
    """Expansion along the top row, k >= 1."""
    t, s, _, _ = w.polys()
    ceil = w.ceiling_only()
    return ((1 - s * ZH) * scale_shift(marked_secular(k - 1, ceil), 1)
            - t * Poly.monomial({"Z": 2}) * q_power(1) * scale_shift(marked_secular(k - 2, ceil), 2))


def marked_secular_bottom_row(k: int, w: MarkerWeights = MarkerWeights()) -> Poly:
    """Expansion along the bottom row, k >= 1."""
    _, _, T, sig = w.polys()
    floor = w.floor_only()
    return ((1 - sig * ZH * q_power(k)) * marked_secular(k - 1, floor)
            - T * Poly.monomial({"Z": 2}) * q_power(2 * k - 1) * marked_secular(k - 2, floor))


def marked_secular_trec(k: int, w: MarkerWeights = MarkerWeights()) -> Poly:
    """Floor markers peeled off: t * F(1,1;T,sigma) + A_0(t,s) F_{k-1}(1,1;T,sigma | zeta q)."""
    t, s, _, _ = w.polys()
    ceil = w.ceiling_only()
    return t * marked_secular(k, ceil) + A(0, t, s) * scale_shift(marked_secular(k - 1, ceil), 1)


def marked_secular_Trec(k: int, w: MarkerWeights = MarkerWeights()) -> Poly:
    """Ceiling markers peeled off."""
    _, _, T, sig = w.polys()
    floor = w.floor_only()
    return T * marked_secular(k, floor) + A(k, T, sig) * marked_secular(k - 1, floor)


# -- generating functions ------------------------------------------------------

def marked_parts(k: int, m: int, n: int, w: MarkerWeights = MarkerWeights()):
    """``(z_power, qh_power, numerator, denominator)`` of the symmetrized marked G."""
    if m > n:
        m, n = n, m
    num = marked_secular(m - 1, w.floor_only()) * scale_shift(marked_secular(k - n - 1, w.ceiling_only()), n + 1)
    return n - m, n * n - m * m, num, marked_secular(k, w)


@dataclass(frozen=True)
class MarkedResult:
    numerator: Poly
    denominator: Poly
    z_power: int
    qh_power: int
    series: Series
    k: int

    @property
    def prefactor(self) -> Poly:
        return Poly.monomial({"Z": self.z_power, "QH": self.qh_power})

    def rational(self) -> RatFunc:
        return RatFunc(self.prefactor * self.numerator, self.denominator)


def _check_query(query: MeanderQuery) -> int:
    if query.infinite:
        raise CeilingTooLow("markers need a finite ceiling")
    if query.k < 1:
        raise CeilingTooLow("markers need a ceiling k >= 1")
    return query.k


def marked_gf(query: MeanderQuery, w: MarkerWeights = MarkerWeights()) -> MarkedResult:
    k = _check_query(query)
    zp, qp, num, den = marked_parts(k, query.m, query.n, w)
    pre = Poly.monomial({"Z": zp, "QH": qp})
    series = Series.from_poly(pre * num, query.L) * series_invert(den, query.L)
    return MarkedResult(num, den, zp, qp, series, k)


def marked_rational(k: int, m: int, n: int, w: MarkerWeights = MarkerWeights()) -> RatFunc:
    zp, qp, num, den = marked_parts(k, m, n, w)
    return RatFunc(Poly.monomial({"Z": zp, "QH": qp}) * num, den)


def marked_series_oracle(query: MeanderQuery, w: MarkerWeights = MarkerWeights()) -> Series:
    """Symmetrized propagator series ``TD^[m=0] TU^[m=k] sum_l <m|H^l|n>``."""
    k = _check_query(query)
    H = marked_hamiltonian(k, w)
    td, _, tu, _ = w.polys()
    start = ONE
    if query.m == 0:
        start = start * td
    if query.m == k:
        start = start * tu
    v = [start if j == query.m else ZERO for j in range(k + 1)]
    coeffs = [v[query.n]]
    for _ in range(query.L):
        v = H.row_times(v)
        coeffs.append(v[query.n])
    return Series(coeffs, check=False)


def marked_gf_unmarked_form(k: int, m: int, n: int, w: MarkerWeights = MarkerWeights()) -> RatFunc:
    """The marked G expressed through unmarked generating functions (m <= n).

    [t + A_0 G_{m-1}] [T G_{k,mn} + A_k Gbar_k G_{k-1,mn}]
    / (A_k [t + A_0 G_{k-1}] Gbar_k + T [t + A_0 G_k]),  Gbar_k = G_{k,kk}.
    """
    if m > n:
        m, n = n, m
    t, s, T, sig = w.polys()
    a0, ak = A(0, t, s), A(k, T, sig)
    G = lambda kk: gf_rational(kk, 0, 0)
    gbar = RatFunc(F(k - 1), F(k))
    floor_m = a0 * G(m - 1) + t
    num = floor_m * (T * gf_rational(k, m, n) + ak * gbar * gf_rational(k - 1, m, n))
    den = ak * (a0 * G(k - 1) + t) * gbar + T * (a0 * G(k) + t)
    return num / den


def floor_only_form(k: int, m: int, n: int, t: Weight, s: Weight) -> RatFunc:
    """Ceiling markers set to 1: G_{k,mn} (t + A_0 G_{m-1}) / (t + A_0 G_k)."""
    if m > n:
        m, n = n, m
    a0 = A(0, t, s)
    return gf_rational(k, m, n) * (a0 * gf_rational(m - 1, 0, 0) + t) / (a0 * gf_rational(k, 0, 0) + t)


# -- invariance family ------------------------------------------------------------

def invariance_weights(k: int, t, T, zh, q, ceiling_power: int = -1) -> MarkerWeights:
    """Creep weights that make A_0(t, s) and A_k(T, sigma) vanish.

    ``s = t + (1-t)/zh`` and ``sigma = T + (1-T) q**(ceiling_power*k)/zh``; the
    default ``ceiling_power = -1`` is the member that leaves every marked G equal
    to the unmarked one. ``ceiling_power = +1`` is kept for comparison.
    """
    t, T, zh, q = (Fraction(x) for x in (t, T, zh, q))
    s = t + (1 - t) / zh
    sig = T + (1 - T) * q ** (ceiling_power * k) / zh
    return MarkerWeights(t, s, T, sig)


def _stripped_value(num: Poly, den: Poly, point: Mapping[str, Fraction]) -> Fraction:
    # both polynomials carry only even QH powers, so QH**2 -> q is exact
    d = eval_rational(den.halve_qh(), point)
    return eval_rational(num.halve_qh(), point) / d


def invariance_point_check(k: int, m: int, n: int, point: Mapping[str, Fraction],
                           ceiling_power: int = -1) -> bool:
    """Marked G on the invariance family equals G at an exact rational point.

    ``point`` assigns Z, ZH, QH (read as q), and the free weights under keys
    ``t`` and ``T``. The common prefactor Z^{n-m} q^{(n^2-m^2)/2} is dropped.
    """
    w = invariance_weights(k, point["t"], point["T"], point["ZH"], point["QH"], ceiling_power)
    at = {"Z": point["Z"], "ZH": point["ZH"], "QH": point["QH"]}
    _, _, num, den = marked_parts(k, m, n, w)
    _, _, num0, den0 = gf_parts(k, m, n)
    return _stripped_value(num, den, at) == _stripped_value(num0, den0, at)


def random_point(rng: random.Random) -> Dict[str, Fraction]:
    """Small random positive rationals away from the poles of the checks."""
    def r(lo=1, hi=9):
        return Fraction(rng.randint(lo, hi), rng.randint(hi + 1, 3 * hi))
    return {"Z": r(), "ZH": r(), "QH": r(), "t": r(), "T": r()}


# -- identity suite ----------------------------------------------------------------

def swap_markers(p: Poly) -> Poly:
    return p.subs({"TD": TU, "CD": CU, "TU": TD, "CU": CD})


def marked_identity_suite(k: int, L: int, points: int = 20, seed: int = 0) -> Report:
    if k < 1:
        raise CeilingTooLow("marked identities need k >= 1")
    rep = Report(f"marked identities k={k} L={L}")
    w = MarkerWeights()
    ft = marked_secular(k, w)
    fd = marked_secular_det(k, w)
    rep.add("F-combination = det(1 - marked H)", ft == fd, first_difference(ft, fd) or "")
    rep.add("top-row expansion", marked_secular_top_row(k, w) == fd)
    rep.add("bottom-row expansion", marked_secular_bottom_row(k, w) == fd)
    rep.add("floor markers peeled", marked_secular_trec(k, w) == fd)
    rep.add("ceiling markers peeled", marked_secular_Trec(k, w) == fd)
    rep.add("all-ones weights give F_k", marked_secular(k, MarkerWeights.ones()) == F(k))
    rep.add("all-ones weights give H_k", marked_hamiltonian(k, MarkerWeights.ones()) == hamiltonian(k))
    dual = dual_transform(swap_markers(ft), k)
    rep.add("F duality with swapped markers", dual == ft, first_difference(dual, ft) or "")
    rep.add("A_r(t,t) = 1 - t", all(A(r, TD, TD) == 1 - TD for r in range(k + 1)))

    rng = random.Random(seed)
    pts = [random_point(rng) for _ in range(points)]
    for m in range(k + 1):
        for n in range(m, k + 1):
            q = MeanderQuery(k, m, n, L)
            mg = marked_gf(q, w)
            diff = series_difference(mg.series, marked_series_oracle(q, w))
            rep.add(f"series = propagator ({m},{n})", diff is None, diff or "")
            rep.add(f"symmetric ({m},{n})",
                    mg.series == marked_series_oracle(MeanderQuery(k, n, m, L), w))
            rep.add(f"nonnegative integral ({m},{n})", mg.series.is_nonnegative_integral())
            rat = mg.rational()
            rep.add(f"unmarked form ({m},{n})", rat.equals(marked_gf_unmarked_form(k, m, n, w)))
            rep.add(f"ceiling weights 1 ({m},{n})",
                    marked_rational(k, m, n, w.floor_only()).equals(floor_only_form(k, m, n, TD, CD)))
            g_dual = marked_rational(k, k - n, k - m, w).map(lambda p: dual_transform(swap_markers(p), k))
            rep.add(f"G duality ({m},{n})", rat.equals(g_dual))
            dy = mg.rational().map(lambda p: p.subs({"ZH": 0}))
            rep.add(f"zh = 0 drops creep markers ({m},{n})",
                    not ({"CD", "CU"} & (set(dy.num.variables()) | set(dy.den.variables()))))
            ok = all(invariance_point_check(k, m, n, p) for p in pts)
            rep.add(f"invariance family ({m},{n}) at {points} points", ok)
    return rep

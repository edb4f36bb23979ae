"""Transfer Hamiltonian, secular determinants and meander generating functions.

``F(k)`` is ``det(1 - H_k)`` for the (k+1)-level Motzkin Hamiltonian, with the
conventions ``F(-1) = 1`` and ``F(k) = 0`` for ``k <= -2``. It is computed by
several independent routes (top-row recursion, determinant, Chebyshev closed
form, occupation-vector sum, exclusion-2 partition function, bosonized
partition function); the meander generating function ``G_{k,mn}`` is a ratio
of shifted ``F`` values.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Tuple, Union

from .errors import NotIntegral
from .polyring import (
    ONE,
    QH,
    U,
    V,
    Z,
    Z1,
    Z2,
    ZERO,
    ZH,
    Poly,
    PolyMatrix,
    RatFunc,
    Series,
    det,
    exact_div,
    q_binomial,
    q_power,
    qh_power,
    scale_shift,
    series_invert,
    sym_reduce,
)
from .report import Report, first_difference, series_difference

INFINITE = "inf"


# -- queries and results -------------------------------------------------------

@dataclass(frozen=True)
class MeanderQuery:
    """Ceiling ``k`` (or ``INFINITE``), start ``m``, end ``n``, series order ``L``."""

    k: Union[int, str]
    m: int
    n: int
    L: int

    def __post_init__(self):
        if self.L < 0:
            raise ValueError("L must be >= 0")
        if self.m < 0 or self.n < 0:
            raise ValueError("heights must be >= 0")
        if not self.infinite:
            if not isinstance(self.k, int) or self.k < 0:
                raise ValueError(f"bad ceiling {self.k!r}")
            if self.m > self.k or self.n > self.k:
                raise ValueError(f"heights {self.m}, {self.n} exceed ceiling {self.k}")

    @property
    def infinite(self) -> bool:
        return self.k in (INFINITE, None, float("inf"))

    @property
    def k_eff(self) -> int:
        # A length-L path cannot climb above max(m, n) + L.
        if self.infinite:
            return max(self.m, self.n) + self.L
        return self.k


@dataclass(frozen=True)
class GFResult:
    """``Z**z_power * QH**qh_power * numerator / denominator`` and its series."""

    numerator: Poly
    denominator: Poly
    z_power: int
    qh_power: int
    series: Series
    k: Optional[int] = None

    @property
    def prefactor(self) -> Poly:
        return Poly.monomial({"Z": self.z_power, "QH": self.qh_power})

    def rational(self) -> RatFunc:
        return RatFunc(self.prefactor * self.numerator, self.denominator)


# -- Hamiltonian and secular determinant ------------------------------------------

def hamiltonian(k: int) -> PolyMatrix:
    """(k+1)x(k+1) tridiagonal transfer matrix; ``H[j][j'] `` weights a step j -> j'."""
    if k < 0:
        raise ValueError("k must be >= 0")
    n = k + 1
    rows = [[ZERO] * n for _ in range(n)]
    for j in range(n):
        rows[j][j] = ZH * qh_power(2 * j)
        if j + 1 < n:
            rows[j][j + 1] = rows[j + 1][j] = Z * qh_power(2 * j + 1)
    return PolyMatrix(rows)


def secular_matrix(k: int) -> PolyMatrix:
    return 1 - hamiltonian(k)


def secular_det(k: int) -> Poly:
    if k == -1:
        return ONE
    if k < -1:
        return ZERO
    return det(secular_matrix(k))


@lru_cache(maxsize=None)
def secular_recursive(k: int) -> Poly:
    """Expansion along the top row: F_k = (1-zh) F_{k-1}(zeta q) - z^2 q F_{k-2}(zeta q^2)."""
    if k < -1:
        return ZERO
    if k == -1:
        return ONE
    if k == 0:
        return 1 - ZH
    return ((1 - ZH) * scale_shift(secular_recursive(k - 1), 1)
            - Z * Z * q_power(1) * scale_shift(secular_recursive(k - 2), 2))


def F(k: int) -> Poly:
    """The secular determinant by the fastest route."""
    return secular_recursive(k)


@lru_cache(maxsize=None)
def _cheb(r: int) -> Tuple[int, ...]:
    if r == 0:
        return (1,)
    if r == 1:
        return (0, 1)
    a, b = _cheb(r - 1), _cheb(r - 2)
    out = [0] * (r + 1)
    for i, c in enumerate(a):
        out[i + 1] += 2 * c
    for i, c in enumerate(b):
        out[i] -= c
    return tuple(out)


def z_chebyshev(N: int, r: int) -> Poly:
    """``z**N * T_r(zh / 2z)`` as an exact polynomial in Z, ZH (rational coefficients)."""
    out = ZERO
    for i, c in enumerate(_cheb(r)):
        if c:
            out = out + Poly.monomial({"Z": N - i, "ZH": i}, Fraction(c, 2 ** i))
    return out


def _qfactor_product(K: int, n: int, N: int, realization: str) -> Poly:
    # prod_{j=1}^{K} (1-q^{j+n})(1-q^{j+N-n}) / (1-q^j)^2
    if realization == "qbinomial":
        return q_binomial(K + n, n) * q_binomial(K + N - n, N - n)
    num, den = ONE, ONE
    for j in range(1, K + 1):
        num = num * (1 - q_power(j + n)) * (1 - q_power(j + N - n))
        den = den * (1 - q_power(j)) ** 2
    return exact_div(num, den)


def secular_closed(k: int, realization: str = "qbinomial") -> Poly:
    """Chebyshev double-sum form of F_k.

    Individual terms carry rational coefficients (``T_r`` of ``zh/2z``); the
    sum must come out integral, otherwise ``NotIntegral`` is raised.
    """
    if k < 0:
        return secular_recursive(k)
    total = ZERO
    for N in range(k + 2):
        K = k - N + 1
        inner = ZERO
        for n in range(N + 1):
            inner = inner + z_chebyshev(N, abs(2 * n - N)) * _qfactor_product(K, n, N, realization)
        total = total + (-1) ** N * q_power(N * (N - 1) // 2) * inner
    if not total.is_integral():
        raise NotIntegral(f"closed form for k={k} is not integral")
    return total


def _h(n: int) -> Poly:
    # complete homogeneous symmetric polynomial h_n(U, V)
    return sum((Poly.monomial({"U": i, "V": n - i}) for i in range(n + 1)), ZERO)


def secular_dual(k: int) -> Poly:
    """Occupation-vector form in U, V: each level pair j holds N_j bosons."""
    if k < 0:
        return secular_recursive(k)
    total = ZERO
    for N in range(k + 2):
        dp = [ONE] + [ZERO] * N
        for j in range(k - N + 2):
            new = [ZERO] * (N + 1)
            for c in range(N + 1):
                if not dp[c]:
                    continue
                for nj in range(N - c + 1):
                    new[c + nj] = new[c + nj] + dp[c] * q_power(j * nj) * _h(nj)
            dp = new
        total = total + (-1) ** N * q_power(N * (N - 1) // 2) * dp[N]
    return total


def spectral_factor(r: int) -> Poly:
    """Exclusion-2 level weight: s(2n) = -U q^n, s(2n+1) = -V q^n."""
    n, odd = divmod(r, 2)
    return -(V if odd else U) * q_power(n)


def secular_exclusion(k: int) -> Poly:
    """Grand partition function of exclusion-2 particles on 2k+2 levels, by brute force."""
    if k < 0:
        return secular_recursive(k)
    levels = 2 * k + 2
    total = ZERO
    # walk over independent sets of the path graph on `levels` vertices
    def rec(start: int, weight: Poly):
        nonlocal total
        total = total + weight
        for r in range(start, levels):
            rec(r + 2, weight * spectral_factor(r))
    rec(0, ONE)
    return total


def bosonic_partition(kk: int, N: int, tower: str, form: str = "qbinomial") -> Poly:
    """N bosons on the levels a*q^n, n = 0..kk, with a = -U (alpha) or -V (beta)."""
    if kk < 0 or N < 0:
        raise ValueError("kk and N must be >= 0")
    a = {"alpha": -U, "beta": -V}[tower]
    if form == "qbinomial":
        body = q_binomial(N + kk, N)
    elif form == "first":
        num = den = ONE
        for j in range(1, N + 1):
            num, den = num * (1 - q_power(j + kk)), den * (1 - q_power(j))
        body = exact_div(num, den)
    elif form == "second":
        num = den = ONE
        for j in range(1, kk + 1):
            num, den = num * (1 - q_power(j + N)), den * (1 - q_power(j))
        body = exact_div(num, den)
    else:
        raise ValueError(f"unknown form {form!r}")
    return a ** N * body


def secular_bosonic(k: int) -> Poly:
    """Two coupled bosonic towers: sum over N_alpha + N_beta = N <= k+1, in U, V."""
    if k < 0:
        return secular_recursive(k)
    total = ZERO
    for N in range(k + 2):
        kk = k - N + 1
        part = ZERO
        for na in range(N + 1):
            part = part + bosonic_partition(kk, na, "alpha") * bosonic_partition(kk, N - na, "beta")
        total = total + q_power(N * (N - 1) // 2) * part
    return total


ROUTES = ("recursive", "det", "closed", "dual", "exclusion", "bosonic")


def secular(k: int, route: str = "recursive") -> Poly:
    """F_k in Z, ZH, QH by the named route."""
    if route == "recursive":
        return secular_recursive(k)
    if route == "det":
        return secular_det(k)
    if route == "closed":
        return secular_closed(k)
    if route == "dual":
        return sym_reduce(secular_dual(k))
    if route == "exclusion":
        return sym_reduce(secular_exclusion(k))
    if route == "bosonic":
        return sym_reduce(secular_bosonic(k))
    raise ValueError(f"unknown route {route!r}")


# -- special parameter values ------------------------------------------------------

def secular_special(k: int, case: str) -> Poly:
    """Closed forms of F_k at q = 1 ('q1'), zh = 0 ('dyck') and zh = z ('uniform')."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if case == "q1":
        out = ZERO
        for N in range(k + 2):
            for n in range(N + 1):
                c = comb(k + 1 - N + n, n) * comb(k + 1 - n, N - n)
                if c:
                    out = out + Poly.monomial({"U": N - n, "V": n}, (-1) ** N * c)
        return sym_reduce(out)
    if case == "dyck":
        out = ZERO
        for n in range((k + 1) // 2 + 1):
            K = k - 2 * n + 1
            body = q_binomial(K + n, n).map_qh(2)
            out = out + Poly.monomial({"Z": 2 * n}, (-1) ** n) * q_power(2 * n * (n - 1) + n) * body
        return out
    if case == "uniform":
        out = ZERO
        for n in range((k + 1) // 3 + 1):
            for ell in range(k + 2 - 3 * n):
                K = k - 3 * n - ell + 1
                if ell > K + 1:
                    continue
                qexp = 3 * n * (3 * n - 1) // 2 + 3 * n * ell + ell * (ell - 1)
                body = q_binomial(K + n, n).map_qh(3) * q_binomial(K + 1, ell)
                # fermion factor (1 + omega^2) = omega contributes the sign (-1)^ell
                out = out + Poly.monomial({"Z": 3 * n + ell}, (-1) ** ell) * q_power(qexp) * body
        return out
    raise ValueError(f"unknown case {case!r}")


SPECIAL_SUBSTITUTIONS = {
    "q1": {"QH": 1},
    "dyck": {"ZH": 0},
    "uniform": {"ZH": Z},
}


# -- generating functions -----------------------------------------------------

def gf_parts(k: int, m: int, n: int) -> Tuple[int, int, Poly, Poly]:
    """``(z_power, qh_power, numerator, denominator)`` of G_{k,mn} for any indices.

    Valid under the F conventions even where the ceiling is below a height
    (the numerator then vanishes), which the recursion identities rely on.
    """
    if m > n:
        m, n = n, m
    num = F(m - 1) * scale_shift(F(k - n - 1), n + 1)
    return n - m, n * n - m * m, num, F(k)


def gf_rational(k: int, m: int, n: int) -> RatFunc:
    zp, qp, num, den = gf_parts(k, m, n)
    return RatFunc(Poly.monomial({"Z": zp, "QH": qp}) * num, den)


def gf_meander(query: MeanderQuery) -> GFResult:
    k = query.k_eff
    zp, qp, num, den = gf_parts(k, query.m, query.n)
    pre = Poly.monomial({"Z": zp, "QH": qp})
    series = Series.from_poly(pre * num, query.L) * series_invert(den, query.L)
    return GFResult(num, den, zp, qp, series, k)


@lru_cache(maxsize=None)
def gf_series(k: int, m: int, n: int, L: int) -> Series:
    """Series of G_{k,mn} from the rational formula; zero series when k < max(m, n)."""
    zp, qp, num, den = gf_parts(k, m, n)
    if not den:
        return Series.zero(L)
    pre = Poly.monomial({"Z": zp, "QH": qp})
    return Series.from_poly(pre * num, L) * series_invert(den, L)


def propagator_rows(k: int, m: int, L: int) -> List[List[Poly]]:
    """``<m| H_k^l`` for l = 0..L as row vectors."""
    H = hamiltonian(k)
    v = [ONE if j == m else ZERO for j in range(k + 1)]
    rows = [v]
    for _ in range(L):
        v = H.row_times(v)
        rows.append(v)
    return rows


def gf_series_oracle(query: MeanderQuery) -> Series:
    """Sum of ``<m|H^l|n>`` for l <= L by repeated matrix-vector products."""
    rows = propagator_rows(query.k_eff, query.m, query.L)
    return Series([r[query.n] for r in rows], check=False)


# -- two-step Dyck ladder ---------------------------------------------------------

def two_step(k: int) -> PolyMatrix:
    """(2k+3)-level alternating Dyck transfer matrix in Z1, Z2 and q_o = QH."""
    if k < 0:
        raise ValueError("k must be >= 0")
    n = 2 * k + 3
    rows = [[ZERO] * n for _ in range(n)]
    for j in range(k + 1):
        a = Z1 * qh_power(j)  # between 2j and 2j+1
        b = Z2 * qh_power(j)  # between 2j+1 and 2j+2
        rows[2 * j][2 * j + 1] = rows[2 * j + 1][2 * j] = a
        rows[2 * j + 1][2 * j + 2] = rows[2 * j + 2][2 * j + 1] = b
    return PolyMatrix(rows)


def embedding_identities(k: int) -> Report:
    H2 = two_step(k)
    minus = det(1 - H2)
    plus = det(1 + H2)
    target = F(k).subs({"Z": Z1 * Z2, "ZH": Z1 * Z1 + Z2 * Z2})
    rep = Report(f"two-step embedding k={k}")
    rep.add("det(1-H2D) = F_k(z1 z2, z1^2+z2^2, q_o^2)", minus == target, first_difference(minus, target) or "")
    rep.add("det(1-H2D) = det(1+H2D)", minus == plus, first_difference(minus, plus) or "")
    # H2D^2 restricted to odd levels is H_k after the parameter map
    sq_odd = _square_on_odd(H2, k)
    Hk = hamiltonian(k).map(lambda p: p.subs({"Z": Z1 * Z2, "ZH": Z1 * Z1 + Z2 * Z2}))
    rep.add("H2D^2 on odd levels = H_k", sq_odd == Hk)
    return rep


def _square_on_odd(H2: PolyMatrix, k: int) -> PolyMatrix:
    n = H2.dim
    odd = [2 * j + 1 for j in range(k + 1)]
    out = []
    for i in odd:
        row = H2.row_times(H2.rows[i])
        out.append([row[j] for j in odd])
    return PolyMatrix(out)


def embedding_check(k: int) -> bool:
    return embedding_identities(k).ok


# -- duality, recursions, continued fraction ---------------------------------------------

def dual_transform(p: Poly, k: int) -> Poly:
    """``p(zeta q^k, 1/q)`` (Laurent)."""
    return scale_shift(p.invert_qh(), k)


def duality_check(k: int) -> bool:
    f = F(k)
    return dual_transform(f, k) == f


def continued_fraction(k: int, depth: Optional[int] = None, L: int = 8) -> GFResult:
    """z*G_k unrolled from g_k(w) = 1/(w - lambda - g_{k-1}(u w)) with g_{-1} = 0.

    Denominators are cleared level by level: with g(zeta q) = N'/D',
    g(zeta) = z D' / ((1 - zh) D' - z N'). ``depth`` levels (default k+1)
    terminate the fraction; fewer levels give the lower-ceiling approximant.
    """
    if depth is None:
        depth = k + 1
    if not 1 <= depth <= k + 1:
        raise ValueError("depth must be between 1 and k+1")
    num, den = ZERO, ONE
    top = depth - 1
    for s in range(top, -1, -1):
        zs, zhs = Z * q_power(s), ZH * q_power(s)
        num, den = zs * den, (1 - zhs) * den - zs * num
    series = Series.from_poly(num, L) * series_invert(den, L)
    return GFResult(num, den, 0, 0, series, top)


def continued_fraction_check(k: int) -> bool:
    cf = continued_fraction(k)
    # num/den == z * F_{k-1}(zeta q) / F_k
    return cf.numerator * F(k) == cf.denominator * Z * scale_shift(F(k - 1), 1)


def _series_check(rep: Report, name: str, lhs: Series, rhs: Series) -> None:
    diff = series_difference(lhs, rhs)
    rep.add(name, diff is None, diff or "")


def recursion_checks(k: int, L: int, split_cap: int = 6) -> Report:
    """Exact and series-level checks of the identities satisfied by F_k and G_{k,mn}."""
    rep = Report(f"motzkin identities k={k} L={L}")
    f = F(k)
    d = secular_det(k)
    rep.add("top-row recursion = det(1-H_k)", f == d, first_difference(f, d) or "")
    rep.add("F_k(zeta q^k, 1/q) = F_k", duality_check(k))
    rep.add("H_k symmetric", hamiltonian(k).is_symmetric())

    for m in range(k + 1):
        for n in range(k + 1):
            g = gf_rational(k, m, n)
            g_dual = gf_rational(k, k - n, k - m).map(lambda p: dual_transform(p, k))
            rep.add(f"G duality ({m},{n})", g.equals(g_dual))
            # cofactor of D_k against the block-triangular shortcut
            # the empty minor (k = 0) has determinant 1
            cof = det(secular_matrix(k).minor(n, m)) * (-1) ** (m + n) if k else ONE
            zp, qp, num, _ = gf_parts(k, m, n)
            expect = Poly.monomial({"Z": zp, "QH": qp}) * num
            rep.add(f"cofactor ({m},{n})", cof == expect, first_difference(cof, expect) or "")

    gk = gf_series(k, 0, 0, L)
    gk1 = gf_series(k - 1, 0, 0, L).scale_shift(1)
    _series_check(rep, "first passage (1-zh)G_k = 1 + z^2 q G_{k-1}(zeta q) G_k",
                  (1 - ZH) * gk, 1 + Z * Z * q_power(1) * gk1 * gk)

    for m in range(k + 1):
        for n in range(m + 1, k + 1):
            g = gf_series(k, m, n, L)
            if n < k:
                _series_check(rep, f"three-term ({m},{n})",
                              (1 - ZH * q_power(n)) * g,
                              Z * qh_power(2 * n - 1) * gf_series(k, m, n - 1, L)
                              + Z * qh_power(2 * n + 1) * gf_series(k, m, n + 1, L))
            _series_check(rep, f"first passage to top ({m},{n})", g,
                          Z * qh_power(2 * n - 1) * gf_series(k, m, n - 1, L)
                          * gf_series(k - n, 0, 0, L).scale_shift(n))
            for l in range(m, n):
                _series_check(rep, f"split at {l} ({m},{n})", g,
                              Z * qh_power(2 * l + 1) * gf_series(k, l + 1, n, L)
                              * gf_series(l, m, l, L))
            rep.add(f"G symmetric ({m},{n})",
                    gf_series_oracle(MeanderQuery(k, m, n, L)) == gf_series_oracle(MeanderQuery(k, n, m, L)))

    # fixed-split propagator: sum_j <m|H^l1|j><j|H^l2|n> = <m|H^(l1+l2)|n>
    Ls = min(L, split_cap)
    powers = [propagator_rows(k, m, Ls) for m in range(k + 1)]
    ok = True
    for m in range(k + 1):
        for l in range(Ls + 1):
            for l1 in range(l + 1):
                l2 = l - l1
                for n in range(k + 1):
                    lhs = ZERO
                    for j in range(k + 1):
                        a, b = powers[m][l1][j], powers[j][l2][n]
                        if a and b:
                            lhs = lhs + a * b
                    ok = ok and lhs == powers[m][l][n]
    rep.add(f"fixed-split propagator (l <= {Ls})", ok)

    rep.add("continued fraction = z G_k", continued_fraction_check(k))
    return rep

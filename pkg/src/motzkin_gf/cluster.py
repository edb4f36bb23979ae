"""Cluster expansion of ln F_k and ln G_{k,mn} over integer compositions.

The spectrum is the exclusion-2 ladder of 2k+2 levels with weights
``s(2n) = -U q^n`` and ``s(2n+1) = -V q^n``. Everything is computed in the
symmetric U, V basis and reduced to Z, ZH at the end, so the irrational
parametrization of zh/z never appears.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from typing import List, Optional, Tuple

from .errors import NotSymmetric, Unreachable, IndexOutOfRange
from .motzkin import F, MeanderQuery, gf_meander, spectral_factor
from .polyring import ONE, ZERO, Poly, Series, q_power, series_exp, series_log, sym_reduce

Composition = Tuple[int, ...]


def compositions(a: int, max_parts: Optional[int] = None) -> List[Composition]:
    """Ordered tuples of positive integers summing to ``a``, in lexicographic order."""
    if a < 1:
        raise ValueError("a must be >= 1")
    limit = a if max_parts is None else max_parts
    out: List[Composition] = []

    def rec(rest: int, prefix: Composition):
        if rest == 0:
            out.append(prefix)
            return
        if len(prefix) == limit:
            return
        for first in range(1, rest + 1):
            rec(rest - first, prefix + (first,))

    rec(a, ())
    return out


def c2(comp: Composition) -> Fraction:
    """Exclusion-2 combinatorial weight ``(1/l_1) prod C(l_i + l_{i+1} - 1, l_{i+1})``."""
    if not comp or any(l < 1 for l in comp):
        raise ValueError(f"not a composition: {comp!r}")
    w = prod(comb(a + b - 1, b) for a, b in zip(comp, comp[1:]))
    return Fraction(w, comp[0])


def even_sum(comp: Composition) -> int:
    """Sum of the parts in even positions (l_2 + l_4 + ...)."""
    return sum(comp[1::2])


class SpectralLadder:
    """The 2k+2 exclusion-2 levels of ceiling k; ``s(r+2) = q s(r)``."""

    def __init__(self, k: int):
        if k < 0:
            raise ValueError("k must be >= 0")
        self.k = k
        self.levels = 2 * k + 2

    def s(self, r: int) -> Poly:
        if not 0 <= r < self.levels:
            raise IndexOutOfRange(f"level {r} outside 0..{self.levels - 1}")
        return spectral_factor(r)

    def __len__(self) -> int:
        return self.levels


@lru_cache(maxsize=None)
def _window_product(comp: Composition, r: int) -> Poly:
    # prod_i s(r+i-1)^{l_i}, allowed beyond the ladder (used by shifted windows)
    out = ONE
    for i, l in enumerate(comp):
        out = out * spectral_factor(r + i) ** l
    return out


def _window_sum(comp: Composition, lo: int, hi: int) -> Poly:
    total = ZERO
    for r in range(lo, hi + 1):
        total = total + _window_product(comp, r)
    return total


def _check_symmetric(p: Poly, what: str) -> None:
    if p.swap_uv() != p:
        raise NotSymmetric(f"{what} is not symmetric under U <-> V")


@lru_cache(maxsize=None)
def cluster_term_uv(k: int, a: int) -> Poly:
    """``(-z)^a b_{k,a}`` in U, V, QH before symmetric reduction."""
    if a < 1:
        raise ValueError("a must be >= 1")
    j_max = 2 * k + 2
    total = ZERO
    for comp in compositions(a, j_max):
        total = total + c2(comp) * _window_sum(comp, 0, j_max - len(comp))
    total = (-1) ** (a - 1) * total
    _check_symmetric(total, f"cluster term k={k} a={a}")
    return total


def cluster_term(k: int, a: int) -> Poly:
    """Grade-a part of ln F_k, in Z, ZH, QH."""
    return sym_reduce(cluster_term_uv(k, a))


def cluster_log_secular(k: int, A: int) -> Series:
    """ln F_k through grade A from the cluster terms."""
    return Series([ZERO] + [cluster_term(k, a) for a in range(1, A + 1)], check=False)


def cluster_exp_check(k: int, A: int) -> bool:
    """exp of the cluster sum reproduces F_k through grade A."""
    return series_exp(cluster_log_secular(k, A)) == Series.from_poly(F(k), A)


# -- ln G_{k,mn} ------------------------------------------------------------------

def _log_term_telescoped(k: int, m: int, n: int, a: int) -> Poly:
    total = ZERO
    for comp in compositions(a):
        j = len(comp)
        lo, hi = max(2 * m + 1 - j, 0), min(2 * k + 2 - j, 2 * n + 1)
        if lo > hi:
            continue
        total = total + c2(comp) * _window_sum(comp, lo, hi)
    return (-1) ** a * total


def _q_geometric(lo: int, hi: int, a: int) -> Poly:
    return sum((q_power(s * a) for s in range(lo, hi + 1)), ZERO)


def p_polynomial_uv(k: int, m: int, n: int, a: int) -> Poly:
    """Grade-a part of ln G_{k,mn} (prefactor removed) from the even/odd split of the windows.

    Even windows r = 2s give U^{a-S} V^S q^{sa + base}; odd windows r = 2s+1
    give U^S V^{a-S} q^{sa + base + S}, where S is the even-position part sum
    and base = l_3 + l_4 + 2 l_5 + 2 l_6 + ...
    """
    total = ZERO
    for comp in compositions(a):
        j = len(comp)
        S = even_sum(comp)
        base = sum(l * (i // 2) for i, l in enumerate(comp))
        even = _q_geometric(max((2 * m + 2 - j) // 2, 0), min((2 * k + 2 - j) // 2, n), a)
        odd = _q_geometric(max((2 * m + 1 - j) // 2, 0), min((2 * k + 1 - j) // 2, n), a)
        term = (Poly.monomial({"U": a - S, "V": S}) * even
                + Poly.monomial({"U": S, "V": a - S}) * q_power(S) * odd)
        total = total + c2(comp) * q_power(base) * term
    return total


def p_polynomial(k: int, m: int, n: int, a: int) -> Poly:
    p = p_polynomial_uv(k, m, n, a)
    _check_symmetric(p, f"P polynomial k={k} ({m},{n}) a={a}")
    return sym_reduce(p)


def log_gf(k: int, m: int, n: int, A: int, route: str = "telescoped") -> Series:
    """ln(G_{k,mn} / (z^{n-m} q^{(n^2-m^2)/2})) through grade A.

    ``route`` is 'telescoped' (window sums over the ladder) or 'split'
    (even/odd windows summed in closed form).
    """
    if A < 1:
        raise ValueError("A must be >= 1")
    if m > n:
        m, n = n, m
    if not 0 <= m <= n <= k:
        raise IndexOutOfRange(f"heights ({m},{n}) outside 0..{k}")
    coeffs = [ZERO]
    for a in range(1, A + 1):
        if route == "telescoped":
            uv = _log_term_telescoped(k, m, n, a)
            _check_symmetric(uv, f"log term k={k} ({m},{n}) a={a}")
            coeffs.append(sym_reduce(uv))
        elif route == "split":
            coeffs.append(p_polynomial(k, m, n, a))
        else:
            raise ValueError(f"unknown route {route!r}")
    return Series(coeffs, check=False)


def log_gf_oracle(k: int, m: int, n: int, A: int) -> Series:
    """series_log of the meander series with its monomial prefactor divided out."""
    if m > n:
        m, n = n, m
    g = gf_meander(MeanderQuery(k, m, n, A + n - m))
    return series_log(g.series.divide_monomial(n - m, n * n - m * m))


# -- extremal areas ----------------------------------------------------------------

def _check_heights(k: int, m: int, n: int) -> None:
    if k < 0 or not (0 <= m <= k and 0 <= n <= k):
        raise IndexOutOfRange(f"heights ({m},{n}) outside 0..{k}")


def area_bounds(k: int, m: int, n: int, l: int) -> Tuple[int, int]:
    """Doubled (minimal, maximal) area of length-l meanders from m to n under ceiling k."""
    _check_heights(k, m, n)
    if l < abs(n - m):
        raise Unreachable(f"no path of length {l} from {m} to {n}")
    sq = m * m + n * n
    if l + m + n <= 2 * k:
        amax = 2 * ((m + n + l) ** 2 // 4) - sq
    else:
        amax = 2 * k * (m + n + l - k) - sq
    if l <= m + n:
        amin = sq - 2 * ((m + n - l) ** 2 // 4)
    else:
        amin = sq
    return amin, amax


def q_degree_bounds(k: int, m: int, n: int, a: int) -> Tuple[int, int]:
    """(min, max) power of q in the grade-a excess term, a = l - |n - m|."""
    _check_heights(k, m, n)
    if a < 0:
        raise Unreachable("excess length must be >= 0")
    if m > n:
        m, n = n, m
    hi = a * n + a * a // 4 if a <= 2 * k - 2 * n else a * k - (k - n) ** 2
    lo = a * m - a * a // 4 if a <= 2 * m else m * m
    return lo, hi

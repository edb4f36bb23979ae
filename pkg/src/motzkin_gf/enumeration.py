"""Brute-force ground truth: DP and explicit listing of bounded Motzkin meanders.

Step weights: an up-step from height j is ``Z QH^(2j+1)``, a down-step from j is
``Z QH^(2j-1)`` and a level step at j is ``ZH QH^(2j)``; the QH exponent is the
doubled area under the step.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from .errors import CeilingTooLow, IndexOutOfRange, LengthGuard, Unreachable
from .motzkin import INFINITE, MeanderQuery
from .polyring import ONE, ZERO, Poly, Series

MAX_LIST_LENGTH = 14

STEPS = {"U": 1, "H": 0, "D": -1}


@dataclass(frozen=True)
class PathStats:
    lu: int
    lh: int
    ld: int
    A2: int
    a: int = 0  # touch-downs
    b: int = 0  # creep-downs
    c: int = 0  # touch-ups
    d: int = 0  # creep-ups

    @property
    def length(self) -> int:
        return self.lu + self.lh + self.ld

    def monomial(self, marked: bool = False) -> Poly:
        exps = {"Z": self.lu + self.ld, "ZH": self.lh, "QH": self.A2}
        if marked:
            exps.update({"TD": self.a, "CD": self.b, "TU": self.c, "CU": self.d})
        return Poly.monomial(exps)


def path_stats(steps: str, m: int, k: int, symmetrized: bool = True) -> PathStats:
    """Statistics of a step string starting at height m under ceiling k."""
    j = m
    lu = lh = ld = A2 = a = b = c = d = 0
    if symmetrized:
        a += m == 0
        c += m == k
    for st in steps:
        if st == "U":
            A2 += 2 * j + 1
            j += 1
            lu += 1
            c += j == k
        elif st == "D":
            A2 += 2 * j - 1
            j -= 1
            ld += 1
            a += j == 0
        elif st == "H":
            A2 += 2 * j
            lh += 1
            b += j == 0
            d += j == k
        else:
            raise ValueError(f"bad step {st!r}")
        if not 0 <= j <= k:
            raise ValueError(f"path {steps} leaves the strip 0..{k}")
    return PathStats(lu, lh, ld, A2, a, b, c, d)


def _resolve(k, m: int, n: int, L: int) -> int:
    if k in (INFINITE, None, float("inf")):
        if m < 0 or n < 0:
            raise IndexOutOfRange("heights must be >= 0")
        return MeanderQuery(INFINITE, m, n, L).k_eff
    if not (0 <= m <= k and 0 <= n <= k):
        raise IndexOutOfRange(f"heights ({m},{n}) outside 0..{k}")
    return k


def _step_weights(k: int, marked: bool):
    """Per-height (up, level, down) weights, marker-scaled when requested."""
    up, level, down = [], [], []
    for j in range(k + 1):
        u = Poly.monomial({"Z": 1, "QH": 2 * j + 1})
        h = Poly.monomial({"ZH": 1, "QH": 2 * j})
        dn = Poly.monomial({"Z": 1, "QH": 2 * j - 1}) if j else ZERO
        if marked:
            if j + 1 == k:
                u = u * Poly.var("TU")
            if j == 0:
                h = h * Poly.var("CD")
            if j == k:
                h = h * Poly.var("CU")
            if j == 1:
                dn = dn * Poly.var("TD")
        up.append(u if j < k else ZERO)
        level.append(h)
        down.append(dn)
    return up, level, down


def weight_table(k: int, m: int, L: int, marked: bool = False) -> List[List[Poly]]:
    """``table[l][j]``: summed weights of length-l paths from m ending at height j."""
    up, level, down = _step_weights(k, marked)
    start = ONE
    if marked:
        if m == 0:
            start = start * Poly.var("TD")
        if m == k:
            start = start * Poly.var("TU")
    row = [start if j == m else ZERO for j in range(k + 1)]
    table = [row]
    for _ in range(L):
        new = [ZERO] * (k + 1)
        for j in range(k + 1):
            w = row[j]
            if not w:
                continue
            new[j] = new[j] + w * level[j]
            if j < k:
                new[j + 1] = new[j + 1] + w * up[j]
            if j > 0:
                new[j - 1] = new[j - 1] + w * down[j]
        row = new
        table.append(row)
    return table


def enumerate(k: Union[int, str], m: int, n: int, L: int) -> Series:
    """Series of all meanders from m to n with length <= L, by dynamic programming."""
    kk = _resolve(k, m, n, L)
    return Series([row[n] for row in weight_table(kk, m, L)], check=False)


def enumerate_marked(k: int, m: int, n: int, L: int) -> Series:
    """As ``enumerate`` with the four boundary markers and the start-at-boundary factor."""
    if k in (INFINITE, None) or k < 1:
        raise CeilingTooLow("markers need a finite ceiling k >= 1")
    _resolve(k, m, n, L)
    return Series([row[n] for row in weight_table(k, m, L, marked=True)], check=False)


def list_paths(k: Union[int, str], m: int, n: int, l: int,
               symmetrized: bool = True) -> List[Tuple[str, PathStats]]:
    """Every admissible step string of length l from m to n, depth first (U < H < D)."""
    if l > MAX_LIST_LENGTH:
        raise LengthGuard(f"explicit listing is limited to l <= {MAX_LIST_LENGTH}")
    if l < 0:
        raise ValueError("l must be >= 0")
    kk = _resolve(k, m, n, l)
    out: List[Tuple[str, PathStats]] = []

    def rec(prefix: str, j: int):
        left = l - len(prefix)
        if abs(n - j) > left:
            return
        if not left:
            out.append((prefix, path_stats(prefix, m, kk, symmetrized)))
            return
        for st, dj in STEPS.items():
            if 0 <= j + dj <= kk:
                rec(prefix + st, j + dj)

    rec("", m)
    return out


def listed_weight(k, m: int, n: int, l: int, marked: bool = False) -> Poly:
    total = ZERO
    for _, st in list_paths(k, m, n, l):
        total = total + st.monomial(marked)
    return total


def extremal_area_scan(k, m: int, n: int, l: int) -> Tuple[int, int]:
    """Observed (min, max) doubled area over all listed paths."""
    areas = [st.A2 for _, st in list_paths(k, m, n, l)]
    if not areas:
        raise Unreachable(f"no path of length {l} from {m} to {n} under ceiling {k}")
    return min(areas), max(areas)


def reflect(steps: str) -> str:
    """Vertical reflection j -> k - j of a step string."""
    return steps.translate(str.maketrans("UD", "DU"))


def motzkin_numbers(N: int) -> List[int]:
    """M_0..M_N from M_n = M_{n-1} + sum_{i=0}^{n-2} M_i M_{n-2-i}."""
    M = [1]
    for n in range(1, N + 1):
        M.append(M[n - 1] + sum(M[i] * M[n - 2 - i] for i in range(n - 1)))
    return M


def path_counts(series: Series) -> List[int]:
    """Number of paths at each length (all variables set to 1)."""
    point = {v: 1 for v in ("Z", "ZH", "QH", "TD", "CD", "TU", "CU")}
    return [int(c.evaluate(point)) for c in series]

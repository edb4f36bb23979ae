"""Acceptance criteria, one test each. Every test prints a single PASS/FAIL line."""
import random
import time

import pytest

from motzkin_gf import cluster, enumeration, markers, motzkin
from motzkin_gf.motzkin import INFINITE, MeanderQuery
from motzkin_gf.polyring import ONE, sym_reduce


@pytest.fixture
def verdict(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            line = f"ACCEPTANCE {number:2d} {'PASS' if ok else 'FAIL'}: {title}"
            print("\n" + line + (f" ({detail})" if detail else ""))
        return ok
    return emit


def test_01_route_agreement(verdict):
    t0 = time.perf_counter()
    bad = []
    for k in range(7):
        ref = motzkin.secular_recursive(k)
        if not (ref == motzkin.secular_det(k) == motzkin.secular_closed(k)
                == sym_reduce(motzkin.secular_dual(k))):
            bad.append(k)
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    verdict(1, "F_k routes agree for k <= 6", ok, f"{dt:.1f}s, mismatches {bad}")
    assert ok


def test_02_tri_route_series(verdict):
    t0 = time.perf_counter()
    bad = []
    for k in range(5):
        for m in range(k + 1):
            for n in range(k + 1):
                q = MeanderQuery(k, m, n, 10)
                a = motzkin.gf_meander(q).series
                b = motzkin.gf_series_oracle(q)
                c = enumeration.enumerate(k, m, n, 10)
                if not (a == b == c and a.is_nonnegative_integral()):
                    bad.append((k, m, n))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 120
    verdict(2, "gf_meander = propagator = DP for m,n <= k <= 4, L = 10", ok, f"{dt:.1f}s, mismatches {bad}")
    assert ok


def test_03_motzkin_numbers(verdict):
    expected = [1, 1, 2, 4, 9, 21, 51, 127, 323]
    q = MeanderQuery(INFINITE, 0, 0, 8)
    counts = enumeration.path_counts(enumeration.enumerate(q.k_eff, 0, 0, 8))
    listed = [len(enumeration.list_paths(q.k_eff, 0, 0, l)) for l in range(5)]
    ok = counts == expected and listed == expected[:5] and enumeration.motzkin_numbers(8) == expected
    verdict(3, "Motzkin numbers through l = 8", ok, f"{counts}")
    assert ok


def test_04_figure_witness(verdict):
    s = enumeration.enumerate(5, 1, 2, 20)
    c = s[20].coeff({"Z": 15, "ZH": 5, "QH": 99})
    ok = c >= 1
    verdict(4, "Z^15 ZH^5 QH^99 occurs at length 20 for k=5, 1 -> 2", ok, f"coefficient {c}")
    assert ok


def test_05_two_step_embedding(verdict):
    bad = [k for k in range(5) if not motzkin.embedding_check(k)]
    ok = not bad
    verdict(5, "two-step embedding and parity identity for k <= 4", ok, f"failures {bad}")
    assert ok


def test_06_marked_suite(verdict):
    failures = []
    for k in (1, 2, 3):
        rep = markers.marked_identity_suite(k, 8, points=20, seed=k)
        failures += [f"k={k}: {c.name}" for c in rep.failures()]
        for m in range(k + 1):
            for n in range(k + 1):
                q = MeanderQuery(k, m, n, 8)
                if markers.marked_gf(q).series != enumeration.enumerate_marked(k, m, n, 8):
                    failures.append(f"k={k}: marked DP ({m},{n})")
    ok = not failures
    verdict(6, "marked series, F relations, reductions, duality, invariance family", ok,
            "; ".join(failures[:3]))
    assert ok


def test_07_cluster_suite(verdict):
    failures = []
    for k in range(5):
        if not cluster.cluster_exp_check(k, 8):
            failures.append(f"exp k={k}")
        for a in range(1, 9):
            cluster.cluster_term_uv(k, a)  # raises NotSymmetric on failure
    for k in range(4):
        for m in range(k + 1):
            for n in range(m, k + 1):
                if cluster.log_gf(k, m, n, 8) != cluster.log_gf_oracle(k, m, n, 8):
                    failures.append(f"log k={k} ({m},{n})")
    ok = not failures
    verdict(7, "cluster exponentiation and log_gf through grade 8", ok, ", ".join(failures[:3]))
    assert ok


def test_08_extremal_areas(verdict):
    bad = []
    for k in range(6):
        for m in range(k + 1):
            for n in range(k + 1):
                for l in range(abs(n - m), 11):
                    if cluster.area_bounds(k, m, n, l) != enumeration.extremal_area_scan(k, m, n, l):
                        bad.append((k, m, n, l))
    fig = [cluster.area_bounds(5, 3, 4, l)[0] for l in (5, 6, 8, 11)]
    ok = not bad and fig == [23, 25, 25, 25]
    verdict(8, "area bounds = path scan for m,n <= k <= 5, l <= 10", ok, f"mismatches {bad[:3]}, A_min2 {fig}")
    assert ok


def test_09_special_cases(verdict):
    bad = []
    for k in range(6):
        for case, sub in motzkin.SPECIAL_SUBSTITUTIONS.items():
            if motzkin.secular_special(k, case) != motzkin.F(k).subs(sub):
                bad.append((case, k))
        if not motzkin.continued_fraction_check(k):
            bad.append(("continued fraction", k))
        if not motzkin.duality_check(k):
            bad.append(("duality", k))
    ok = not bad
    verdict(9, "special cases, continued fraction, duality for k <= 5", ok, f"failures {bad}")
    assert ok


def test_10_degenerations(verdict):
    bad = []
    for k in list(range(5)) + [INFINITE]:
        s = motzkin.gf_meander(MeanderQuery(k, 0, 0, 10)).series
        for l, c in enumerate(s):
            for exps, coeff in c.terms():
                if l % 2 and exps[1] == 0 and coeff:
                    bad.append((k, l))
    for k in (1, 2, 3):
        for m in range(k + 1):
            for n in range(m, k + 1):
                r = markers.marked_rational(k, m, n).map(lambda p: p.subs({"ZH": 0}))
                used = set(r.num.variables()) | set(r.den.variables())
                s = markers.marked_gf(MeanderQuery(k, m, n, 8)).series.map(lambda p: p.subs({"ZH": 0}))
                used |= {v for c in s for v in c.variables()}
                if used & {"CD", "CU"}:
                    bad.append(("markers", k, m, n))
    ok = not bad
    verdict(10, "odd pure-Z excursion terms vanish; zh = 0 drops CD, CU", ok, f"failures {bad[:3]}")
    assert ok

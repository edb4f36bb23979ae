import pytest

from motzkin_gf.cluster import area_bounds
from motzkin_gf.enumeration import (
    MAX_LIST_LENGTH,
    enumerate,
    enumerate_marked,
    extremal_area_scan,
    list_paths,
    listed_weight,
    motzkin_numbers,
    path_counts,
    path_stats,
    reflect,
)
from motzkin_gf.errors import CeilingTooLow, IndexOutOfRange, LengthGuard, Unreachable
from motzkin_gf.polyring import ONE, ZERO, Z, ZH, QH


def test_length_zero():
    assert enumerate(3, 1, 1, 0)[0] == ONE
    assert enumerate(3, 1, 2, 0)[0] == ZERO


def test_motzkin_numbers():
    assert motzkin_numbers(6) == [1, 1, 2, 4, 9, 21, 51]
    assert path_counts(enumerate("inf", 0, 0, 6)) == motzkin_numbers(6)
    assert [len(list_paths("inf", 0, 0, l)) for l in range(5)] == [1, 1, 2, 4, 9]


def test_k1_two_paths():
    paths = dict(list_paths(1, 0, 0, 2))
    assert set(paths) == {"UD", "HH"}
    assert paths["HH"].b == 2
    assert paths["UD"].A2 == 2


def test_forced_path():
    paths = list_paths(5, 1, 4, 3)
    assert [p for p, _ in paths] == ["UUU"]
    assert paths[0][1].A2 == 4 ** 2 - 1 ** 2


@pytest.mark.parametrize("k", range(4))
def test_dp_equals_listing(k):
    for m in range(k + 1):
        for n in range(k + 1):
            s = enumerate(k, m, n, 6)
            for l in range(7):
                assert listed_weight(k, m, n, l) == s[l]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_marked_dp_equals_listing(k):
    for m in range(k + 1):
        for n in range(k + 1):
            s = enumerate_marked(k, m, n, 5)
            for l in range(6):
                assert listed_weight(k, m, n, l, marked=True) == s[l]


def test_marker_counts():
    st = path_stats("DHUUH", 1, 2)
    # D lands on the floor, H on the floor, U U reaches the ceiling, H on the ceiling
    assert (st.a, st.b, st.c, st.d) == (1, 1, 1, 1)
    assert path_stats("H", 0, 2).a == 1  # start on the floor
    assert path_stats("H", 0, 2, symmetrized=False).a == 0


def test_stats_invariants():
    for steps, st in list_paths(3, 1, 2, 7):
        assert st.lu - st.ld == 1
        assert st.a <= st.ld + 1 and st.c <= st.lu + 1
        assert st.length == 7


def test_reflection():
    k, l = 3, 6
    fwd = {p: s.A2 for p, s in list_paths(k, 1, 2, l)}
    back = {p: s.A2 for p, s in list_paths(k, k - 1, k - 2, l)}
    assert {reflect(p) for p in fwd} == set(back)
    for p, a2 in fwd.items():
        assert back[reflect(p)] == 2 * k * l - a2


def test_extremal_scan():
    assert extremal_area_scan(5, 3, 4, 5)[0] == 23
    assert extremal_area_scan(1, 0, 0, 2)[1] == 2
    lo, hi = extremal_area_scan(4, 0, 3, 3)
    assert lo == hi
    with pytest.raises(Unreachable):
        extremal_area_scan(3, 0, 3, 2)


def test_guards():
    with pytest.raises(LengthGuard):
        list_paths(3, 0, 0, MAX_LIST_LENGTH + 1)
    with pytest.raises(IndexOutOfRange):
        enumerate(2, 0, 3, 4)
    with pytest.raises(CeilingTooLow):
        enumerate_marked(0, 0, 0, 3)


def test_figure_witness_small():
    # the straight path 1 -> 2 of length 1 has area 3/2
    assert enumerate(5, 1, 2, 1)[1] == Z * QH ** 3

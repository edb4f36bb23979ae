"""Smallest and largest areas of meanders of a given length."""
from motzkin_gf import area_bounds, extremal_area_scan, list_paths

k, m, n = 5, 3, 4
for l in range(1, 12):
    lo, hi = area_bounds(k, m, n, l)
    print(l, lo / 2, hi / 2, (lo, hi) == extremal_area_scan(k, m, n, l))

# the paths that realize the minimum at l = 6
lo, _ = area_bounds(k, m, n, 6)
print([p for p, st in list_paths(k, m, n, 6) if st.A2 == lo])

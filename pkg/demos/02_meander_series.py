"""Generating functions of meanders and three independent ways to expand them."""
from motzkin_gf import MeanderQuery, enumerate, gf_meander, gf_series_oracle
from motzkin_gf.enumeration import motzkin_numbers, path_counts

q = MeanderQuery(k=3, m=0, n=2, L=6)
g = gf_meander(q)
print("prefactor:", g.prefactor)
print("numerator:", g.numerator)
print("denominator:", g.denominator)
s = g.series
for l in range(q.L + 1):
    print(l, s[l])

# rational formula, matrix powers and brute-force DP agree term by term
print(s == gf_series_oracle(q) == enumerate(3, 0, 2, 6))

# set every weight to 1: excursions without a ceiling are counted by Motzkin numbers
print(path_counts(enumerate("inf", 0, 0, 10)))
print(motzkin_numbers(10))

# a ceiling cuts them down
for k in range(4):
    print(k, path_counts(enumerate(k, 0, 0, 10)))

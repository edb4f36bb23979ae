"""ln F_k and ln G_{k,mn} as sums over compositions."""
from motzkin_gf import c2, cluster_term, compositions, log_gf
from motzkin_gf.cluster import cluster_exp_check, log_gf_oracle

for comp in compositions(4):
    print(comp, c2(comp))

for a in range(1, 4):
    print(f"grade {a}:", cluster_term(2, a))

print(cluster_exp_check(3, 8))

k, m, n = 3, 1, 2
lg = log_gf(k, m, n, 5)
for a in range(1, 6):
    print(a, lg[a])
print(lg == log_gf(k, m, n, 5, route="split") == log_gf_oracle(k, m, n, 5))

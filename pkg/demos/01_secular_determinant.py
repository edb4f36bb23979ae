"""Secular determinants F_k computed several ways, and what they look like."""
from motzkin_gf import F, hamiltonian, secular, secular_special
from motzkin_gf.motzkin import ROUTES, SPECIAL_SUBSTITUTIONS

# the transfer matrix for a ceiling at height 2
print(hamiltonian(2))

for k in range(4):
    print(f"F_{k} =", F(k))

# every route lands on the same polynomial
k = 4
ref = F(k)
for route in ROUTES:
    print(f"{route:10s}", secular(k, route) == ref)

# q = 1, Dyck (no level steps) and uniform (zh = z) specializations
for case, sub in SPECIAL_SUBSTITUTIONS.items():
    print(case, secular_special(3, case) == F(3).subs(sub), secular_special(3, case))

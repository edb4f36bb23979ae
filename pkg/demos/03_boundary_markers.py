"""Touch-down, creep-down, touch-up and creep-up markers."""
from fractions import Fraction
import random

from motzkin_gf import MarkerWeights, MeanderQuery, marked_gf, marked_hamiltonian, marked_secular
from motzkin_gf.enumeration import list_paths
from motzkin_gf.markers import invariance_point_check, random_point

print(marked_hamiltonian(2))
print("marked F_1 =", marked_secular(1))

# every listed path carries its marker counts in the exponents
for steps, st in list_paths(2, 0, 1, 3):
    print(steps, st.monomial(marked=True))
print(marked_gf(MeanderQuery(2, 0, 1, 3)).series[3])

# numeric weights: halve every touch-down, double every creep-down
w = MarkerWeights(Fraction(1, 2), 2, 1, 1)
print(marked_gf(MeanderQuery(2, 0, 0, 4), w).series[4])

# creep weights tuned against the touch weights leave G unchanged
rng = random.Random(3)
print([invariance_point_check(2, 0, 1, random_point(rng)) for _ in range(5)])
print([invariance_point_check(2, 0, 1, random_point(rng), ceiling_power=1) for _ in range(5)])

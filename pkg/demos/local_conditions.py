"""Walk through the three deformation conditions at a trivial prime.

Builds one member of each type, asks the membership solver which types it
belongs to, twists it by every cocycle of the matching N-space and counts
how many twists stay inside.
"""

import random

from tameselmer import ConditionType, ShapeParams, TrivialPrime, build_condition_member, is_in_condition, twist
from tameselmer.local_cohom import AdAction, cohomology_dims, n_space

prime = TrivialPrime.least(5)
print(f"least trivial prime for p=5: ell={prime.ell}")

dims = cohomology_dims(AdAction.trivial(prime))
print(f"Z1={dims.z1} B1={dims.b1} H1={dims.h1} H1_nr={dims.h1_nr}")

rng = random.Random(1)
for ctype in ConditionType:
    y = 5 * rng.randrange(1, 5) if ctype.base == "ram" else 25 * rng.randrange(5)
    params = ShapeParams.of(5, 4, 25 * rng.randrange(5), y)
    d = build_condition_member(prime, ctype, params)
    owners = [t.name for t in ConditionType if is_in_condition(d, t)]
    space = n_space(ctype, params, prime)
    kept = sum(bool(is_in_condition(twist(d, f, 3), ctype)) for f in space.elements())
    print(f"type {ctype.name}: sigma={d.sigma.rows} tau={d.tau.rows}")
    print(f"  member of {owners}; {kept}/{5 ** space.dim} N-twists stay in type {ctype.name}")

"""Tamagawa data before and after the index-p lattice swap.

For Type II and III actions with trivial Frobenius character the factor
delta drops from 1 to 0 on the swapped lattice; a character value of -1
already kills it on the original lattice.
"""

import random

from tameselmer import ConditionType, TrivialPrime, lattice_swap, tamagawa
from tameselmer.isogeny_selmer import brute_force_delta, random_action

rng = random.Random(7)
for p in (5, 7):
    prime = TrivialPrime.least(p)
    for ctype in (ConditionType.II, ConditionType.III):
        act = random_action(prime, 4, rng, ctype=ctype, psi_sigma=1)
        a, b = tamagawa(act), tamagawa(lattice_swap(act))
        print(f"p={p} type {ctype.name}: A {a.inertia_structure} delta={a.delta} c={a.tamagawa_order} h0={a.h0_order}")
        print(f"             A' {b.inertia_structure} delta={b.delta}")
    flipped = random_action(prime, 4, rng, ctype=ConditionType.II, psi_sigma=p**4 - 1)
    print(f"p={p} type II with psi(sigma)=-1: delta={tamagawa(flipped).delta}")

act = random_action(TrivialPrime.least(5), 3, rng, ctype=ConditionType.III, psi_sigma=1)
print("enumeration over A[p^2] gives (c, delta) =", brute_force_delta(act, level=2))

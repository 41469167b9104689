"""Weierstrass preparation and generator counts for Z_p[[T]]-modules."""

import random

from tameselmer import DistinguishedPoly, ElementaryModule, LambdaSeries, invariants, matsuno_check, weierstrass_prepare
from tameselmer.iwasawa import curated_pairs, mu_zero_equivalences

f = LambdaSeries.of(5, 6, 8, [25, 30, 5])
mu, unit, poly = weierstrass_prepare(f)
print(f"f = {f}")
print(f"mu={mu} unit={unit} P={poly.coeffs}")

m = ElementaryModule(5, 0, (1,), (DistinguishedPoly.of(5, 4, [5, 5, 0]),))
print("(mu, lambda, g) =", invariants(m))
print("mu-zero report for Lambda/(T^3+5T+5):", mu_zero_equivalences(ElementaryModule(5, 0, (), m.poly_list)))

for pair in curated_pairs(5, 6, random.Random(3)):
    g_x, g_y, ok = matsuno_check(pair)
    print(f"{pair.label:6s} g(X)={g_x} g(Y)={g_y} 2g(X)>=g(Y): {ok}")

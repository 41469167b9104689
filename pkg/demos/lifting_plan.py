"""Ledger arithmetic for a lifting plan, with the proof trace."""

from tameselmer import LiftingPlan, minimal_n, plan_bound, wiles_balance
from tameselmer.ledger import standard_table, trivial_prime_entry
from tameselmer.tame_deform import TrivialPrime

prime = TrivialPrime.least(7)
table = standard_table(7, 1, {2: 1, 3: 0})
print("balance of the base table:", wiles_balance(table))
print("with one computed trivial-prime entry:", wiles_balance(table + [trivial_prime_entry(prime)]))

report = plan_bound(LiftingPlan(7, 100, 0, 10))
for step in report.trace:
    print(f"[{step.kind:8s}] {step.claim}: {step.value}  ({step.cite})")
print("primes needed for a bound of 10:", minimal_n(10, 0, 10))

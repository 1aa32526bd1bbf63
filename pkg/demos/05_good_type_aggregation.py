"""Forty goods, two kinds: solve the two-good aggregate and expand back.

Goods with identical valuation columns behave as one big good whose value
is the column sum.  Solving the aggregate and copying each class's
allocation back preserves every buyer's total payment exactly, so the
expansion verifies against the full forty-good market.
"""

from sppe import (
    make_instance,
    partition_good_types,
    rat_str,
    solve,
    solve_by_types,
    verify_equilibrium,
)

# 25 goods of one kind, 15 of another
row_a = [3] * 25 + [8] * 15
row_b = [5] * 25 + [2] * 15
inst = make_instance(valuations=[row_a, row_b], budgets=[40, 30])

part = partition_good_types(inst)
print("type classes:", [len(group) for group in part.types], "goods each")
print("aggregated valuations:",
      [[rat_str(v) for v in row] for row in part.aggregated.valuations])

agg_eq = solve(part.aggregated)
eq = solve_by_types(inst)
print("\nmultipliers:", [rat_str(a) for a in eq.alpha])
print("price of each good, by class:",
      sorted({rat_str(p) for p in eq.prices}))
for i in range(inst.n):
    total = sum(eq.payments[i])
    agg_total = sum(agg_eq.payments[i])
    print(f"buyer {i}: pays {rat_str(total)} expanded, {rat_str(agg_total)} aggregated")

print("\nexpanded equilibrium verifies:",
      verify_equilibrium(inst, eq.alpha, eq.x).passed)

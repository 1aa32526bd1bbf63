"""Tour the bid-level geometry of a two-good market.

Each good's highest-bid level gets an axis cut at the buyers' valuations,
and each pair of goods a ratio axis cut at the valuation ratios.  Picking
one region per axis freezes who is paced, each multiplier's formula, and
who can win each auction.
"""

from fractions import Fraction

from sppe import (
    build_axes,
    derive_cell,
    enumerate_states,
    make_instance,
    rat_str,
    state_count,
    state_of_point,
)

inst = make_instance(valuations=[[2, 3], [4, 1]], budgets=[5, 5])
coords, ratios = build_axes(inst)

print("coordinate axes:")
for axis in coords:
    print(f"  good {axis.good}: cuts at", [rat_str(b) for b in axis.breakpoints])
print("ratio axes:")
for axis in ratios:
    print(f"  pair {axis.pair}: cuts at", [rat_str(b) for b in axis.breakpoints])
print("total candidate cells:", state_count((coords, ratios)))

# Locate the cell containing a concrete bid-level point and read it off.
point = (Fraction(3, 2), Fraction(2))
state = state_of_point((coords, ratios), point)
cell = derive_cell(state, inst)
print(f"\nat bid levels {[rat_str(v) for v in point]}:")
for i in range(inst.n):
    a = cell.alpha_goods[i]
    formula = "1" if a is None else f"level_{a} / {rat_str(inst.valuations[i][a])}"
    print(f"  buyer {i}: multiplier = {formula}, minimizers {cell.minimizers[i]}")
print("  top bidders per good:", cell.top_bidders)
print("  unpaced:", cell.unpaced, " paced:", cell.paced)

# The first few states in canonical order.
print("\nfirst five states in canonical order:")
for idx, st in enumerate(enumerate_states((coords, ratios))):
    if idx == 5:
        break
    print(" ", st)

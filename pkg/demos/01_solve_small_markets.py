"""Solve three tiny markets end to end and check every answer.

The walk-through mirrors the hand-solvable cases: a lone buyer, two rich
buyers, and a budget-starved buyer forced to pace.
"""

from sppe import make_instance, rat_str, solve, verify_equilibrium


def show(title, inst):
    eq = solve(inst)
    report = verify_equilibrium(inst, eq.alpha, eq.x)
    print(f"--- {title}")
    print("  multipliers:", [rat_str(a) for a in eq.alpha])
    print("  allocation :", [[rat_str(v) for v in row] for row in eq.x])
    print("  prices     :", [rat_str(p) for p in eq.prices])
    print("  payments   :", [[rat_str(v) for v in row] for row in eq.payments])
    print("  verified   :", report.passed)
    print()


# A single buyer never needs pacing: they win at the dummy's zero price.
show("one buyer, one good", make_instance(valuations=[[2]], budgets=[1]))

# Two buyers with deep pockets: the stronger one wins at the rival's bid.
show("two rich buyers", make_instance(valuations=[[2], [1]], budgets=[10, 10]))

# The strong buyer can only afford half the good: it paces down to tie the
# rival, exhausting its budget exactly, and the good splits.
show(
    "budget-starved strong buyer",
    make_instance(valuations=[[2], [1]], budgets=["1/2", 10]),
)

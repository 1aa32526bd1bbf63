"""Feed the verifier a genuine equilibrium, then break it four ways.

The verifier recomputes highest bids, second prices, and spending from
scratch, so each defect is pinned to the exact condition it violates.
"""

import json

from sppe import make_instance, solve, verify_equilibrium

inst = make_instance(valuations=[[2], [1]], budgets=["1/2", 10])
eq = solve(inst)

print("the real equilibrium:")
print(json.dumps(verify_equilibrium(inst, eq.alpha, eq.x).to_json_dict(), indent=2))

tampered = [
    ("give the good to the loser", (1, 1), [[0], [1]]),
    ("leave half the good unsold", (1, 1), [["1/2"], [0]]),
    ("let the strong buyer overspend", (1, 1), [[1], [0]]),
    ("pace a buyer who underspends", ("1/2", 1), [[0], [1]]),
]
print("\ntampered variants:")
for label, alpha, x in tampered:
    report = verify_equilibrium(inst, alpha, x)
    print(f"  {label}: fails condition ({report.first_failure()})")

"""Build and solve one cell's feasibility program, exactly.

Strict inequalities carry a shared slack on their small side; the system
is feasible exactly when the maximal slack is positive.  Everything is
rational arithmetic: the witness point satisfies each row with zero
tolerance.
"""

from sppe import (
    CellState,
    build_system,
    derive_cell,
    make_instance,
    rat_str,
    solve_feasibility,
)
from sppe.lp import DUMMY_WITNESS

inst = make_instance(valuations=[[2]], budgets=[1])

# The cell where the lone buyer is paced (bid level strictly below the
# valuation), with the dummy as the only possible price witness.
state = CellState(coord_regions=(0,), ratio_regions=())
cell = derive_cell(state, inst)
system = build_system(inst, cell, state, (DUMMY_WITNESS,))
print(system.dump())
out = solve_feasibility(system)
print("\nverdict:", out.status)
print("a paced buyer must spend its budget, but the zero price forbids it\n")

# The cell at the valuation: the buyer is unpaced and pays the dummy's zero.
state = CellState(coord_regions=(1,), ratio_regions=())
cell = derive_cell(state, inst)
system = build_system(inst, cell, state, (DUMMY_WITNESS,))
out = solve_feasibility(system)
print("at the valuation:", out.status, "with slack", rat_str(out.slack))
print("witness point:", {n: rat_str(v) for n, v in zip(system.var_names, out.point)})

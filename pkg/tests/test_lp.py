import random
from fractions import Fraction as F

import pytest

from sppe import (
    CellState,
    FeasibilitySystem,
    LinearConstraint,
    UnknownWitness,
    build_system,
    derive_cell,
    make_instance,
    solve_feasibility,
)
from sppe.lp import DUMMY_WITNESS, EQ, LE
from oracles import fm_feasible, vertex_max


def _system(nvars, rows, *, names=None):
    """Tiny helper: rows are (coeffs-over-z, strict, rhs); the slack is the
    last variable and gets the usual cap."""
    delta = nvars
    constraints = []
    for coeffs, strict, rhs in rows:
        dense = list(map(F, coeffs)) + [F(1) if strict else F(0)]
        constraints.append(LinearConstraint(tuple(dense), LE, F(rhs), "test"))
    cap = [F(0)] * nvars + [F(1)]
    constraints.append(LinearConstraint(tuple(cap), LE, F(1), "slack-cap"))
    return FeasibilitySystem(
        var_names=tuple(names or [f"z{i}" for i in range(nvars)]) + ("delta",),
        constraints=tuple(constraints),
        objective=delta,
    )


def _mixed_rows(rows, nvars):
    """The same rows in oracle form (strict flags instead of a slack)."""
    return [(list(coeffs), "<" if strict else "<=", rhs) for coeffs, strict, rhs in rows]


def test_slack_only_system_maxes_the_cap():
    out = solve_feasibility(_system(0, []))
    assert out.feasible and out.slack == 1


def test_one_dimensional_band():
    # 0 < z0 < 2 leaves slack 1 at the midpoint
    rows = [((1,), True, 2), ((-1,), True, 0)]
    out = solve_feasibility(_system(1, rows))
    assert out.feasible and out.slack == 1
    assert out.point[0] == 1


def test_contradictory_strict_pair_is_infeasible():
    rows = [((1,), True, 0), ((-1,), True, 0)]
    out = solve_feasibility(_system(1, rows))
    assert not out.feasible


def test_equality_conflict_is_infeasible():
    sys_ = FeasibilitySystem(
        var_names=("z0", "delta"),
        constraints=(
            LinearConstraint((F(1), F(0)), EQ, F(1), "test"),
            LinearConstraint((F(1), F(0)), EQ, F(2), "test"),
            LinearConstraint((F(0), F(1)), LE, F(1), "slack-cap"),
        ),
        objective=1,
    )
    assert not solve_feasibility(sys_).feasible


def test_determinism_identical_outcomes():
    rows = [((1, 1), True, 5), ((-1, 0), True, 0), ((0, -1), False, -1)]
    a = solve_feasibility(_system(2, rows))
    b = solve_feasibility(_system(2, rows))
    assert a == b


def _resubstitute(system, outcome):
    for c in system.constraints:
        lhs = sum((cf * x for cf, x in zip(c.coeffs, outcome.point)), F(0))
        if c.relation == EQ:
            assert lhs == c.rhs
        else:
            assert lhs <= c.rhs


def test_witness_point_satisfies_every_row_exactly():
    rng = random.Random(7)
    for _ in range(40):
        nv = rng.choice((2, 3))
        rows = []
        for _ in range(rng.randint(2, 5)):
            coeffs = tuple(rng.randint(-4, 4) for _ in range(nv))
            rows.append((coeffs, rng.random() < 0.5, rng.randint(-6, 10)))
        system = _system(nv, rows)
        out = solve_feasibility(system)
        if out.feasible:
            _resubstitute(system, out)
            assert out.slack > 0


def test_verdicts_match_fourier_motzkin():
    rng = random.Random(11)
    agree = 0
    for _ in range(120):
        nv = rng.choice((2, 3, 4))
        rows = []
        for _ in range(rng.randint(2, 6)):
            coeffs = tuple(rng.randint(-5, 5) for _ in range(nv))
            strict = rng.random() < 0.4
            rows.append((coeffs, strict, rng.randint(-8, 10)))
        got = solve_feasibility(_system(nv, rows)).feasible
        want = fm_feasible(_mixed_rows(rows, nv), nv)
        assert got == want
        agree += 1
    assert agree == 120


def test_verdicts_match_vertex_enumeration():
    rng = random.Random(13)
    for _ in range(40):
        nv = rng.choice((2, 3))
        rows = []
        for _ in range(rng.randint(2, 5)):
            coeffs = tuple(rng.randint(-4, 4) for _ in range(nv))
            rows.append((coeffs, rng.random() < 0.4, rng.randint(-6, 8)))
        system = _system(nv, rows)
        got = solve_feasibility(system)
        weak = [
            (list(c.coeffs), c.relation, c.rhs) for c in system.constraints
        ]
        ok, best = vertex_max(weak, nv + 1, system.objective)
        assert got.feasible == (ok and best > 0)
        if got.feasible:
            assert got.slack == best


# ---------------------------------------------------------------------------
# build_system against hand-assembled expectations.


def _cell_below(inst):
    state = CellState((0,), ())
    return state, derive_cell(state, inst)


def test_strict_positivity_row_is_slack_augmented():
    inst = make_instance([[2]], [1])
    state, der = _cell_below(inst)
    system = build_system(inst, der, state, (DUMMY_WITNESS,))
    # delta is the last catalog variable
    d = system.objective
    assert any(
        c.relation == LE and c.rhs == 0 and c.coeffs[0] == -1 and c.coeffs[d] == 1
        for c in system.constraints
    )
    assert all(c.relation in (LE, EQ) for c in system.constraints)


def test_unpaced_buyer_contributes_no_multiplier_row():
    inst = make_instance([[2]], [1])
    state = CellState((1,), ())  # bid level pinned at the valuation; unpaced
    der = derive_cell(state, inst)
    system = build_system(inst, der, state, (DUMMY_WITNESS,))
    assert not any(c.origin == "paced-range" for c in system.constraints)


def test_paced_buyer_paying_zero_is_rejected():
    # sole buyer paced in (0, 2) with a zero-price witness: the budget row
    # wants the whole budget, the price row forbids any payment
    inst = make_instance([[2]], [1])
    state, der = _cell_below(inst)
    system = build_system(inst, der, state, (DUMMY_WITNESS,))
    rows = {(c.origin, c.relation) for c in system.constraints}
    assert ("budget-exact", EQ) in rows and ("price", EQ) in rows
    assert any(
        c.origin == "cell" and c.rhs == 2 and c.coeffs[0] == 1 and c.coeffs[system.objective] == 1
        for c in system.constraints
    )
    assert not solve_feasibility(system).feasible


def test_pinned_rows_cover_non_top_bidders():
    inst = make_instance([[2], [1]], [10, 10])
    state = CellState((3,), ())  # bid level at 2: only the strong buyer tops
    der = derive_cell(state, inst)
    assert der.top_bidders == ((0,),)
    system = build_system(inst, der, state, (1,))
    pinned = [c for c in system.constraints if c.origin == "pinned"]
    assert len(pinned) == 1  # buyer 1's payment variable pinned to zero
    out = solve_feasibility(system)
    assert out.feasible


def test_build_rejects_unknown_witnesses():
    inst = make_instance([[2], [1]], [10, 10])
    state = CellState((3,), ())
    der = derive_cell(state, inst)
    with pytest.raises(UnknownWitness):
        build_system(inst, der, state, (0,))  # the winner cannot witness itself
    with pytest.raises(UnknownWitness):
        build_system(inst, der, state, (5,))
    with pytest.raises(UnknownWitness):
        build_system(inst, der, state, (1, 1))


def test_compact_cell_rows_match_per_buyer_rows():
    # the interval encoding and the sign-table encoding of a cell must agree
    # on feasibility for every state of a small market
    from sppe.geometry import InstanceGeometry, enumerate_states
    from sppe.lp import _RowBuilder, _emit_cell_rows, cell_system

    inst = make_instance([[2, 3], [4, 1], [2, 2]], [1, 1, 1])
    geo = InstanceGeometry(inst)
    for idx, state in enumerate(enumerate_states(geo.axes)):
        if idx % 7:  # sample the state space
            continue
        rb = _RowBuilder(nvars=inst.m + 1, delta=inst.m)
        _emit_cell_rows(geo, state, rb)
        rb.weak({inst.m: F(1)}, F(1), "slack-cap")
        full = FeasibilitySystem(
            var_names=tuple(f"lam_{j}" for j in range(inst.m)) + ("delta",),
            constraints=tuple(rb.rows),
            objective=inst.m,
        )
        compact = cell_system(inst, state, geo)
        assert solve_feasibility(full).feasible == solve_feasibility(compact).feasible


def test_probe_core_matches_probe_system():
    from sppe.geometry import InstanceGeometry, enumerate_states
    from sppe.lp import ProbeCore, dominance_probe_system
    from sppe.solver import _bid_monomial

    inst = make_instance([[2, 3], [4, 1], [3, 3]], [1, 1, 1])
    geo = InstanceGeometry(inst)
    checked = 0
    for idx, state in enumerate(enumerate_states(geo.axes)):
        if idx % 5:
            continue
        if not geo.consistent(state):
            continue
        der = geo.derive(state)
        core = None
        for j in range(inst.m):
            top = der.top_bidders[j]
            if len(top) != 1:
                continue
            monos = [_bid_monomial(inst, der, i, j) for i in range(inst.n)]
            for r in [DUMMY_WITNESS] + [i for i in range(inst.n) if i != top[0]]:
                want = solve_feasibility(
                    dominance_probe_system(inst, der, state, j, r, geo)
                ).feasible
                core = core or ProbeCore(inst, state, geo)
                got = core.probe_dominance(j, r, top[0], monos)
                assert got == want
                checked += 1
    assert checked >= 30


def test_dump_lists_one_constraint_per_line():
    inst = make_instance([[2]], [1])
    state, der = _cell_below(inst)
    system = build_system(inst, der, state, (DUMMY_WITNESS,))
    text = system.dump()
    assert text.splitlines()[0] == "maximize delta"
    assert len(text.splitlines()) == len(system.constraints) + 1
    assert "lam_1" in text and "y_1_1" in text

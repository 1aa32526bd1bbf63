"""Acceptance suite: every criterion at its stated tolerance.

All arithmetic is exact; no tolerance parameter appears anywhere.  Each
test records a PASS/FAIL line printed in the terminal summary.
"""

import json
import math
import random
import time
from fractions import Fraction as F

from sppe import (
    make_instance,
    partition_good_types,
    solve,
    solve_by_types,
    solve_with_stats,
    grid_oracle,
    verify_equilibrium,
)
from sppe import cli
from sppe.cli import generate_instance
from sppe.lp import LE, FeasibilitySystem, LinearConstraint, solve_feasibility
from oracles import vertex_max


def _sweep_seed_shape(seed: int) -> tuple[int, int]:
    """Deterministic (n, c) draw for the soundness sweep seeds 1..500."""
    if seed <= 450:
        c = 1 + seed % 2
        n = 2 + (seed * 7) % 29
    else:
        c = 3
        n = 2 + seed % 11
    return n, c


def test_criterion_1_soundness_sweep(acceptance_recorder):
    t_small = t_c3 = 0.0
    checked = 0
    for seed in range(1, 501):
        n, c = _sweep_seed_shape(seed)
        inst = generate_instance(
            n=n, goods=c, seed=seed, value_range=(1, 100), budget_range=(1, 50)
        )
        t0 = time.perf_counter()
        eq, _ = solve_with_stats(inst)
        dt = time.perf_counter() - t0
        if c == 3:
            t_c3 += dt
        else:
            t_small += dt
        report = verify_equilibrium(inst, eq.alpha, eq.x)
        assert report.passed, f"seed {seed} (n={n}, c={c}) failed: {report.first_failure()}"
        checked += 1
    acceptance_recorder(
        "1 soundness sweep (500 instances, exact verification)",
        checked == 500,
        f"c<=2 in {t_small:.0f}s, c=3 subset in {t_c3:.0f}s",
    )
    assert checked == 500


def test_criterion_2_golden_instances(acceptance_recorder):
    ok = True

    eq1 = solve(make_instance([[2]], [1]))
    ok &= eq1.alpha == (F(1),) and eq1.x == ((F(1),),) and eq1.prices == (F(0),)

    eq2 = solve(make_instance([[2], [1]], [10, 10]))
    ok &= eq2.alpha == (F(1), F(1)) and eq2.prices == (F(1),)
    ok &= eq2.x == ((F(1),), (F(0),))

    eq3 = solve(make_instance([[2], [1]], ["1/2", 10]))
    ok &= eq3.alpha == (F(1, 2), F(1)) and eq3.prices == (F(1),)
    ok &= eq3.x == ((F(1, 2),), (F(1, 2),))

    # cross-check against the brute-force grid at resolution 4
    g1 = grid_oracle(make_instance([[2]], [1]), resolution=4)
    ok &= {alpha for alpha, _ in g1} == {(F(1),)}
    g3 = grid_oracle(make_instance([[2], [1]], ["1/2", 10]), resolution=4)
    ok &= (eq3.alpha, eq3.x) in g3

    acceptance_recorder("2 golden instances reproduced exactly", ok)
    assert ok


def test_criterion_3_cell_count_bounds(acceptance_recorder):
    ok = True
    for n in (4, 9, 17, 25):
        inst = generate_instance(n=n, goods=1, seed=n)
        _, stats = solve_with_stats(inst)
        ok &= stats.states_enumerated <= 2 * n + 1
    for n, c in ((6, 2), (9, 2), (5, 3)):
        inst = generate_instance(n=n, goods=c, seed=n + c)
        _, stats = solve_with_stats(inst)
        ok &= stats.states_enumerated <= (2 * n + 1) ** (c * (c + 1) // 2)
    acceptance_recorder("3 cell-count bounds (exact tallies)", ok)
    assert ok


def test_criterion_4_aggregation_equivalence(acceptance_recorder):
    checked = 0
    for seed in range(1, 101):
        k = 1 + seed % 3
        m = 10 + (seed * 17) % 51
        inst = generate_instance(
            n=2 + (seed * 3) % 9, goods=0, seed=seed, types=k, m=m
        )
        eq = solve_by_types(inst)
        assert verify_equilibrium(inst, eq.alpha, eq.x).passed, f"seed {seed}"
        part = partition_good_types(inst)
        agg_eq = solve(part.aggregated)
        for i in range(inst.n):
            assert sum(eq.payments[i]) == sum(agg_eq.payments[i]), f"seed {seed}"
        checked += 1
    acceptance_recorder(
        "4 aggregation equivalence (100 instances, exact totals)", checked == 100
    )
    assert checked == 100


def test_criterion_5_strict_slack_vs_vertex_oracle(acceptance_recorder):
    rng = random.Random(2024)
    agree = 0
    for _ in range(200):
        nv = rng.choice((2, 3, 4))
        n_rows = rng.randint(2, 5 if nv == 4 else 6)
        constraints = []
        for _ in range(n_rows):
            coeffs = [F(rng.randint(-5, 5)) for _ in range(nv)]
            strict = rng.random() < 0.4
            dense = coeffs + [F(1) if strict else F(0)]
            constraints.append(
                LinearConstraint(tuple(dense), LE, F(rng.randint(-8, 10)), "random")
            )
        constraints.append(
            LinearConstraint(tuple([F(0)] * nv + [F(1)]), LE, F(1), "slack-cap")
        )
        system = FeasibilitySystem(
            var_names=tuple(f"z{i}" for i in range(nv)) + ("delta",),
            constraints=tuple(constraints),
            objective=nv,
        )
        got = solve_feasibility(system)
        weak = [(list(c.coeffs), c.relation, c.rhs) for c in system.constraints]
        ok, best = vertex_max(weak, nv + 1, nv)
        want = ok and best > 0
        assert got.feasible == want
        if got.feasible:
            assert got.slack == best
        agree += 1
    acceptance_recorder("5 strict-slack verdicts match vertex enumeration (200 systems)", agree == 200)
    assert agree == 200


def test_criterion_6_parallel_byte_equality(acceptance_recorder, capsys, tmp_path):
    same = 0
    for seed in range(1, 51):
        n = 2 + (seed * 3) % 11
        c = 1 + seed % 2
        inst = generate_instance(n=n, goods=c, seed=seed)
        path = tmp_path / f"inst_{seed}.json"
        path.write_text(json.dumps(inst.to_json_dict()))

        assert cli.main(["solve", str(path), "--quiet"]) == 0
        serial = capsys.readouterr().out
        assert cli.main(["solve", str(path), "--quiet", "--parallel", "4"]) == 0
        parallel = capsys.readouterr().out
        assert serial == parallel, f"seed {seed}"
        same += 1
    acceptance_recorder("6 serial vs --parallel 4 byte-identical (50 instances)", same == 50)
    assert same == 50


def _adversarial_cases():
    base = make_instance([[2], [1]], ["1/2", 10])
    two_goods = make_instance([[2, 3], [1, 4]], [10, 10])
    single = make_instance([[2]], [1])
    return [
        # (name, instance, alpha, x, expected first failure)
        ("allocates a loser", base, (1, 1), [[0], [1]], "a"),
        ("splits a unique win", base, (1, 1), [["1/2"], ["1/2"]], "a"),
        ("under-allocates a live good", base, (1, 1), [["1/2"], [0]], "b"),
        ("ignores a live good", two_goods, (1, 1), [[1, 0], [0, 0]], "b"),
        ("overspends the budget", base, (1, 1), [[1], [0]], "c"),
        ("overspends via a tie", base, ("1/2", 1), [[1], [0]], "c"),
        ("paced while underspending", base, ("1/2", 1), [[0], [1]], "d"),
        ("zero multiplier hides", single, (0,), [[0]], "d"),
        ("multiplier above one", base, ("3/2", 1), [[0], [1]], "bounds"),
        ("negative multiplier", base, ("-1/2", 1), [[0], [1]], "bounds"),
        ("allocation above one", base, (1, 1), [["3/2"], [0]], "bounds"),
        ("good oversold", base, (1, 1), [["3/4"], ["3/4"]], "bounds"),
    ]


def test_criterion_7_adversarial_near_equilibria(acceptance_recorder):
    hits = 0
    for name, inst, alpha, x, expected in _adversarial_cases():
        report = verify_equilibrium(inst, alpha, x)
        assert not report.passed, name
        assert report.first_failure() == expected, (
            f"{name}: expected {expected}, got {report.first_failure()}"
        )
        hits += 1
    acceptance_recorder("7 adversarial suite (12 cases, correct condition named)", hits == 12)
    assert hits == 12


def test_criterion_8_scaling_trend(acceptance_recorder):
    sizes = (10, 20, 40)
    states = []
    times = []
    for n in sizes:
        inst = generate_instance(n=n, goods=2, seed=8)
        t0 = time.perf_counter()
        _, stats = solve_with_stats(inst)
        times.append(max(time.perf_counter() - t0, 1e-4))
        states.append(stats.states_enumerated)

    def slope(ys):
        xs = [math.log(n) for n in sizes]
        ls = [math.log(y) for y in ys]
        mean_x = sum(xs) / len(xs)
        mean_y = sum(ls) / len(ls)
        num = sum((a - mean_x) * (b - mean_y) for a, b in zip(xs, ls))
        den = sum((a - mean_x) ** 2 for a in xs)
        return num / den

    s_states = slope(states)
    s_time = slope(times)
    ok = s_states <= 3.0 and s_time <= 6.4
    acceptance_recorder(
        "8 scaling trend (c=2, n in 10/20/40)",
        ok,
        f"states slope {s_states:.2f} <= 3, time slope {s_time:.2f} <= 6.4",
    )
    assert ok

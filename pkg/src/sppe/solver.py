"""End-to-end equilibrium search over cells and witness tuples.

The scan walks cell states in canonical order, keeps only states that are
consistent and could possibly carry the paced buyers' budgets, computes
the second-price witness sets, and solves one exact feasibility program
per witness tuple.  The first feasible (state, tuple) pair in canonical
order is recovered into an equilibrium, so output is deterministic and
independent of the worker count.

All skips along the way are exact necessary conditions (interval bounds
over the cell's bounding box, or emptiness of the cell itself), never
heuristics: a skipped state provably contains no feasible system.
"""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .equilibrium import Equilibrium, Provenance
from .errors import GoodsLimitExceeded, InternalInconsistency, NoEquilibriumFound
from .geometry import (
    CellDerivation,
    CellState,
    InstanceGeometry,
    Interval,
    state_count,
)
from .lp import (
    DUMMY_WITNESS,
    FeasibilityOutcome,
    ProbeCore,
    build_system,
    price_expression,
    solve_feasibility,
    y_index,
)
from .model import (
    Instance,
    PreprocessReport,
    expand_equilibrium,
    partition_good_types,
    preprocess,
    validate_instance,
)


@dataclass
class SolveConfig:
    """Solver knobs.

    ``max_goods`` guards against the sharply growing cost in the number of
    goods; ``parallel`` is the worker-process count (1 = in-process).
    """

    max_goods: int = 4
    parallel: int = 1


@dataclass
class RunStats:
    """Exact tallies of the scan; canonical indices refer to enumeration order."""

    states_enumerated: int = 0
    states_consistent: int = 0
    cells_with_nonempty_witness_sets: int = 0
    witness_tuples_tried: int = 0
    lps_solved: int = 0
    lps_feasible: int = 0
    wall_time_ms: int = 0
    winning_state_index: int | None = None
    winning_tuple: tuple[int, ...] | None = None

    def merge_counters(self, other: "RunStats") -> None:
        self.states_enumerated += other.states_enumerated
        self.states_consistent += other.states_consistent
        self.cells_with_nonempty_witness_sets += other.cells_with_nonempty_witness_sets
        self.witness_tuples_tried += other.witness_tuples_tried
        self.lps_solved += other.lps_solved
        self.lps_feasible += other.lps_feasible

    def to_json_dict(self) -> dict:
        return {
            "states_enumerated": self.states_enumerated,
            "states_consistent": self.states_consistent,
            "cells_with_nonempty_witness_sets": self.cells_with_nonempty_witness_sets,
            "witness_tuples_tried": self.witness_tuples_tried,
            "lps_solved": self.lps_solved,
            "lps_feasible": self.lps_feasible,
            "wall_time_ms": self.wall_time_ms,
            "winning_state_index": self.winning_state_index,
            "winning_tuple": None
            if self.winning_tuple is None
            else [None if r == DUMMY_WITNESS else r for r in self.winning_tuple],
        }


@dataclass(frozen=True)
class WitnessSets:
    """Per-good candidate second-price witnesses.

    ``unique_top[j]`` is the lone top bidder when good j has one (witnesses
    are then runners-up or the dummy ``DUMMY_WITNESS``); it is None for a
    tie, in which case the candidates are the tied top bidders themselves.
    """

    r_sets: tuple[tuple[int, ...], ...]
    unique_top: tuple[int | None, ...]


@dataclass(frozen=True)
class WitnessTuple:
    r: tuple[int, ...]


# ---------------------------------------------------------------------------
# Interval helpers over the positive axis (hi of None means unbounded).


def _iv_intersect(a: Interval, b: Interval) -> Interval | None:
    if a.lo > b.lo or (a.lo == b.lo and a.lo_strict):
        lo, lo_s = a.lo, a.lo_strict or (a.lo == b.lo and b.lo_strict)
    else:
        lo, lo_s = b.lo, b.lo_strict or (a.lo == b.lo and a.lo_strict)
    if a.hi is None:
        hi, hi_s = b.hi, b.hi_strict
    elif b.hi is None:
        hi, hi_s = a.hi, a.hi_strict
    elif a.hi < b.hi:
        hi, hi_s = a.hi, a.hi_strict
    elif b.hi < a.hi:
        hi, hi_s = b.hi, b.hi_strict
    else:
        hi, hi_s = a.hi, a.hi_strict or b.hi_strict
    if hi is not None and (lo > hi or (lo == hi and (lo_s or hi_s))):
        return None
    return Interval(lo, hi, lo_s, hi_s)


def _iv_div(a: Interval, b: Interval) -> Interval:
    """Exact range of x/y for x in a, y in b (positive intervals)."""
    if b.hi is None:
        lo, lo_s = Fraction(0), True
    else:
        lo, lo_s = a.lo / b.hi, a.lo_strict or b.hi_strict
    if a.hi is None or b.lo == 0:
        hi, hi_s = None, True
    else:
        hi, hi_s = a.hi / b.lo, a.hi_strict or b.lo_strict
    return Interval(lo, hi, lo_s, hi_s)


def _iv_scale(a: Interval, s: Fraction) -> Interval:
    return Interval(a.lo * s, None if a.hi is None else a.hi * s, a.lo_strict, a.hi_strict)


def _iv_pick(iv: Interval) -> Fraction:
    """A rational inside the interval (strictly inside open ends)."""
    if iv.hi is not None and iv.lo == iv.hi:
        return iv.lo
    if iv.hi is None:
        return iv.lo + 1
    return (iv.lo + iv.hi) / 2


def _point_2d(
    box0: Interval, box1: Interval, ratio_iv: Interval
) -> tuple[Fraction, Fraction] | None:
    """Exact point with coordinates in the boxes and quotient in ratio_iv."""
    feas1 = _iv_intersect(box1, _iv_div(box0, ratio_iv))
    if feas1 is None:
        return None
    lam1 = _iv_pick(feas1)
    feas0 = _iv_intersect(box0, _iv_scale(ratio_iv, lam1))
    if feas0 is None:  # cannot happen: lam1 lies in the exact projection
        return None
    return _iv_pick(feas0), lam1


def _interior_point(
    geo: InstanceGeometry,
    state: CellState,
    boxes: Sequence[Interval],
    core_of=None,
) -> tuple[Fraction, ...] | None:
    """A point of the cell's relative interior, or None if the cell is empty.

    Closed-form interval reasoning covers one and two goods exactly.  For
    three goods a candidate third coordinate is projected exactly and the
    rest solved as a two-good problem; if that particular choice fails, a
    small feasibility program over the cell rows settles the cell.
    """
    m = geo.inst.m
    if m == 1:
        return (_iv_pick(boxes[0]),)
    if m == 2:
        ratio_iv = geo.ratios[0].interval(state.ratio_regions[0])
        point = _point_2d(boxes[0], boxes[1], ratio_iv)
        return None if point is None else point
    if m == 3:
        iv01, iv02, iv12 = (
            geo.ratios[t].interval(state.ratio_regions[t]) for t in range(3)
        )
        feas2 = _iv_intersect(boxes[2], _iv_div(boxes[0], iv02))
        if feas2 is not None:
            feas2 = _iv_intersect(feas2, _iv_div(boxes[1], iv12))
        if feas2 is None:
            return None  # projection is exact per pair, so the cell is empty
        lam2 = _iv_pick(feas2)
        slice0 = _iv_intersect(boxes[0], _iv_scale(iv02, lam2))
        slice1 = _iv_intersect(boxes[1], _iv_scale(iv12, lam2))
        if slice0 is not None and slice1 is not None:
            point = _point_2d(slice0, slice1, iv01)
            if point is not None:
                return (point[0], point[1], lam2)
        # This lam2 slice missed; let the exact program decide the cell.
    core = core_of() if core_of is not None else ProbeCore(geo.inst, state, geo)
    return core.interior_point()


# ---------------------------------------------------------------------------
# Witness sets (runner-up candidates per good).


def _expr_at(const: Fraction, coeffs: dict[int, Fraction], point: Sequence[Fraction]) -> Fraction:
    total = const
    for g, c in coeffs.items():
        total += c * point[g]
    return total


def _expr_sup(
    const: Fraction, coeffs: dict[int, Fraction], boxes: Sequence[Interval]
) -> Fraction | None:
    """Supremum of a linear expression over the closed bounding box."""
    total = const
    for g, c in coeffs.items():
        if c > 0:
            hi = boxes[g].hi
            if hi is None:
                return None
            total += c * hi
        elif c < 0:
            total += c * boxes[g].lo
    return total


def _expr_inf(const: Fraction, coeffs: dict[int, Fraction], boxes: Sequence[Interval]) -> Fraction | None:
    total = const
    for g, c in coeffs.items():
        if c > 0:
            total += c * boxes[g].lo
        elif c < 0:
            hi = boxes[g].hi
            if hi is None:
                return None
            total += c * hi
    return total


def witness_sets(
    inst: Instance,
    state: CellState,
    derivation: CellDerivation,
    *,
    geometry: InstanceGeometry | None = None,
    interior: tuple[Fraction, ...] | None = None,
    boxes: Sequence[Interval] | None = None,
    stats: RunStats | None = None,
) -> WitnessSets | None:
    """Candidate second-price witnesses per good, or None when the cell dies.

    A good nobody tops kills the cell.  A tie keeps the tied bidders as
    witnesses without any probing.  A lone top bidder needs a runner-up
    (possibly the dummy) whose paced bid can top all other losing bids
    somewhere in the cell.  Per good, candidates split into chains of
    pointwise-comparable bids (constants; one chain per multiplier good),
    along which the verdict is monotone, so each chain needs at most a
    binary search of exact feasibility probes after the cheap certificates
    (bids at an interior point, bounds over the cell's box) have spoken.
    """
    geo = geometry if geometry is not None else InstanceGeometry(inst)
    n, m = inst.n, inst.m
    if any(not top for top in derivation.top_bidders):
        return None
    if boxes is None:
        boxes = [geo.coords[j].interval(state.coord_regions[j]) for j in range(m)]

    cached_core: list[ProbeCore] = []

    def core_of() -> ProbeCore:
        if not cached_core:
            cached_core.append(ProbeCore(inst, state, geo))
        return cached_core[0]

    if interior is None:
        interior = _interior_point(geo, state, boxes, core_of)

    vals = inst.valuations
    bids_at_interior: list[list[Fraction]] | None = None
    if interior is not None:
        alpha_at = [
            Fraction(1) if a is None else interior[a] / vals[i][a]
            for i, a in enumerate(derivation.alpha_goods)
        ]
        bids_at_interior = [
            [alpha_at[i] * vals[i][j] for j in range(m)] for i in range(n)
        ]

    r_sets: list[tuple[int, ...]] = []
    unique_top: list[int | None] = []
    for j in range(m):
        top = derivation.top_bidders[j]
        if len(top) >= 2:
            r_sets.append(tuple(top))
            unique_top.append(None)
            continue
        w = top[0]
        unique_top.append(w)
        accepted = _resolve_good_witnesses(
            geo, state, derivation, j, w, interior, bids_at_interior, boxes, stats,
            core_of,
        )
        if not accepted:
            return None
        r_sets.append(tuple(accepted))
    return WitnessSets(tuple(r_sets), tuple(unique_top))


def _bid_monomial(inst: Instance, derivation: CellDerivation, i: int, good: int):
    """Buyer i's in-cell bid on a good as (level_good | None, value):
    a constant bid (None, v) for unpaced buyers, else value * lam[a]."""
    v = inst.valuations[i][good]
    a = derivation.alpha_goods[i]
    if v == 0 or a is None:
        return None, v
    return a, v / inst.valuations[i][a]


def _monomial_sup(mono, boxes) -> Fraction | None:
    a, val = mono
    if a is None:
        return val
    if val == 0:
        return Fraction(0)
    hi = boxes[a].hi
    return None if hi is None else val * hi


def _monomial_inf(mono, boxes) -> Fraction:
    a, val = mono
    if a is None:
        return val
    return val * boxes[a].lo


def _resolve_good_witnesses(
    geo, state, derivation, good, winner, interior, bids_at_interior, boxes, stats,
    core_of,
) -> list[int]:
    inst = geo.inst
    n = inst.n
    rivals = [i for i in range(n) if i != winner]
    cands = [DUMMY_WITNESS] + rivals

    monos = [_bid_monomial(inst, derivation, i, good) for i in range(n)]
    dummy_mono = (None, Fraction(0))

    verdict: dict[int, bool] = {}

    if bids_at_interior is not None:
        rival_bids = [bids_at_interior[i][good] for i in rivals]
        for r in cands:
            p_val = Fraction(0) if r == DUMMY_WITNESS else bids_at_interior[r][good]
            if all(b <= p_val for i, b in zip(rivals, rival_bids) if i != r):
                verdict[r] = True

    def box_rejected(r) -> bool:
        # reject when some rival's bid tops the candidate's everywhere
        ra, rv = monos[r] if r != DUMMY_WITNESS else dummy_mono
        for i in rivals:
            if i == r:
                continue
            ia, iv = monos[i]
            if ia == ra:
                d = rv - iv  # bid_r - bid_i is d (const) or d * level
                if ra is None or d == 0:
                    sup = d
                elif d > 0:
                    hi = boxes[ra].hi
                    sup = None if hi is None else d * hi
                else:
                    sup = d * boxes[ra].lo
            else:
                sup_p = _monomial_sup((ra, rv), boxes)
                if sup_p is None:
                    continue
                sup = sup_p - _monomial_inf((ia, iv), boxes)
            if sup is not None and sup < 0:
                return True
        return False

    for r in cands:
        if r not in verdict and box_rejected(r):
            verdict[r] = False

    def probe(r) -> bool:
        if stats is not None:
            stats.lps_solved += 1
        feasible = core_of().probe_dominance(good, r, winner, monos)
        if feasible and stats is not None:
            stats.lps_feasible += 1
        return feasible

    chains: dict[tuple, list[tuple[Fraction, int]]] = {}
    for r in cands:
        if r == DUMMY_WITNESS:
            key, height = ("const",), Fraction(0)
        else:
            a, val = monos[r]
            key = ("const",) if a is None else ("lin", a)
            height = val
        chains.setdefault(key, []).append((height, r))

    for members in chains.values():
        members.sort(key=lambda hr: (hr[0], hr[1]))
        heights = [h for h, _ in members]
        rs = [r for _, r in members]

        def settle(idx: int, value: bool) -> None:
            # the verdict is monotone along the chain: anything at least as
            # high as an accepted bid is accepted, anything at most as low
            # as a rejected bid is rejected
            if value:
                for h, r in members:
                    if h >= heights[idx] and r not in verdict:
                        verdict[r] = True
                verdict[rs[idx]] = True
            else:
                for h, r in members:
                    if h <= heights[idx] and r not in verdict:
                        verdict[r] = False
                verdict[rs[idx]] = False

        for idx, r in enumerate(rs):
            if r in verdict:
                settle(idx, verdict[r])

        while True:
            unknown = [idx for idx, r in enumerate(rs) if rs[idx] not in verdict]
            if not unknown:
                break
            mid = unknown[len(unknown) // 2]
            settle(mid, probe(rs[mid]))

    return [r for r in cands if verdict[r]]


def enumerate_witness_tuples(ws: WitnessSets) -> Iterator[WitnessTuple]:
    """Canonical product over the witness sets.

    For a tied good every tied witness fixes the same payment level, so
    only the smallest-index member is enumerated.
    """
    choices: list[tuple[int, ...]] = []
    for r_set, w in zip(ws.r_sets, ws.unique_top):
        if w is None:
            choices.append((min(r_set),))
        else:
            choices.append(tuple(sorted(r_set)))
    for combo in itertools.product(*choices):
        yield WitnessTuple(combo)


# ---------------------------------------------------------------------------
# Recovery.


def recover(
    inst: Instance,
    derivation: CellDerivation,
    witness_tuple,
    outcome: FeasibilityOutcome,
    *,
    state_index: int | None = None,
) -> Equilibrium:
    """Turn a feasible witness point into an equilibrium.

    Allocations follow the payments where the price is positive; a good
    priced at zero is split uniformly over its top bidders, who pay nothing
    for it either way.
    """
    if not outcome.feasible:
        raise InternalInconsistency("recover called on an infeasible outcome")
    n, m = inst.n, inst.m
    r = tuple(getattr(witness_tuple, "r", witness_tuple))
    point = outcome.point
    lam = tuple(point[:m])

    alpha = []
    for i in range(n):
        a = derivation.alpha_goods[i]
        alpha.append(Fraction(1) if a is None else lam[a] / inst.valuations[i][a])

    prices = []
    for j in range(m):
        pc, pcoef = price_expression(inst, derivation, j, r[j])
        prices.append(_expr_at(pc, pcoef, lam))

    x = [[Fraction(0)] * m for _ in range(n)]
    payments = [[Fraction(0)] * m for _ in range(n)]
    for j in range(m):
        top = derivation.top_bidders[j]
        total = sum((point[y_index(i, j, m)] for i in top), Fraction(0))
        if total != prices[j]:
            raise InternalInconsistency(
                f"payments for good {j} sum to {total}, price is {prices[j]}"
            )
        if prices[j] > 0:
            for i in top:
                x[i][j] = point[y_index(i, j, m)] / prices[j]
                payments[i][j] = point[y_index(i, j, m)]
        else:
            share = Fraction(1, len(top))
            for i in top:
                x[i][j] = share
    return Equilibrium(
        alpha=tuple(alpha),
        x=tuple(tuple(row) for row in x),
        prices=tuple(prices),
        payments=tuple(tuple(row) for row in payments),
        lam=lam,
        provenance=Provenance(state_index=state_index, witness=r, slack=outcome.slack),
    )


# ---------------------------------------------------------------------------
# The scan.


@dataclass
class _Found:
    index: int
    state: CellState
    witness: tuple[int, ...]
    outcome: FeasibilityOutcome


def _region_span(breakpoints, iv: Interval) -> tuple[int, int]:
    """Inclusive range of region indices an interval can meet on an axis."""
    from bisect import bisect_left

    i = bisect_left(breakpoints, iv.lo)
    if i < len(breakpoints) and breakpoints[i] == iv.lo:
        first = 2 * i + 2 if iv.lo_strict else 2 * i + 1
    else:
        first = 2 * i
    if iv.hi is None:
        last = 2 * len(breakpoints)
    else:
        i2 = bisect_left(breakpoints, iv.hi)
        if i2 < len(breakpoints) and breakpoints[i2] == iv.hi:
            last = 2 * i2 if iv.hi_strict else 2 * i2 + 1
        else:
            last = 2 * i2
    return first, last


def _pruned_states(geo: InstanceGeometry, start: int, stop: int):
    """Depth-first walk of the state product clipped to [start, stop).

    Ratio-region choices incompatible with the coordinate boxes (or with
    previously chosen ratio regions, via the ratio-transitivity projection)
    are pruned with their whole subtrees; both checks are necessary
    conditions, so no non-empty cell is ever skipped.

    Yields (canonical_index, coord_regions, ratio_regions, boxes).
    """
    coords, ratios = geo.coords, geo.ratios
    m, nr = len(coords), len(ratios)
    radices = [a.region_count for a in coords] + [a.region_count for a in ratios]
    span = [1] * (m + nr + 1)
    for a in range(m + nr - 1, -1, -1):
        span[a] = span[a + 1] * radices[a]

    pair_pos = geo.pair_pos
    triangles: list[list[tuple[int, int]]] = []
    for axis in ratios:
        j, k = axis.pair
        triangles.append([(pair_pos[(x, j)], pair_pos[(x, k)]) for x in range(j)])

    choice = [0] * (m + nr)
    boxes: list[Interval | None] = [None] * m
    ratio_ivs: list[Interval | None] = [None] * nr

    def rec(a: int, base: int):
        if a == m + nr:
            yield base, tuple(choice[:m]), tuple(choice[m:]), tuple(boxes)
            return
        sub = span[a + 1]
        if a < m:
            axis = coords[a]
            for reg in range(radices[a]):
                lo = base + reg * sub
                if lo >= stop:
                    break
                if lo + sub <= start:
                    continue
                choice[a] = reg
                boxes[a] = axis.interval(reg)
                yield from rec(a + 1, lo)
            return
        t = a - m
        axis = ratios[t]
        j, k = axis.pair
        # Only regions meeting the box's exact ratio range can be non-empty;
        # earlier ratio choices restrict the range further via transitivity.
        rng = _iv_div(boxes[j], boxes[k])
        for t_xj, t_xk in triangles[t]:
            rng = _iv_intersect(rng, _iv_div(ratio_ivs[t_xk], ratio_ivs[t_xj]))
            if rng is None:
                return
        first, last = _region_span(axis.breakpoints, rng)
        for reg in range(max(first, 0), min(last, radices[a] - 1) + 1):
            lo = base + reg * sub
            if lo >= stop:
                break
            if lo + sub <= start:
                continue
            choice[a] = reg
            ratio_ivs[t] = axis.interval(reg)
            if a + 1 == m + nr:
                yield lo, tuple(choice[:m]), tuple(choice[m:]), tuple(boxes)
            else:
                yield from rec(a + 1, lo)

    if m + nr == 0:
        yield 0, (), (), ()
        return
    yield from rec(0, 0)


def _scan_range(
    geo: InstanceGeometry, start: int, stop: int, stats: RunStats
) -> _Found | None:
    inst = geo.inst
    n, m = inst.n, inst.m
    budgets = inst.budgets
    budget_total = sum(budgets, Fraction(0))

    for base, coord_rs, ratio_rs, boxes in _pruned_states(geo, start, stop):
        stats.states_enumerated += 1
        der = geo.derive_regions(coord_rs, ratio_rs)
        if der is None:
            continue
        stats.states_consistent += 1
        if any(not top for top in der.top_bidders):
            continue

        # Paced buyers must be able to spend their whole budgets.  A good's
        # price never exceeds its bid level, nor (with a lone top bidder)
        # the best rival bid; bound both over the box.  The cheap bid-level
        # bound runs first, the rival bound only on cells that survive it.
        if der.paced:
            paced_total = budget_total - sum(
                (budgets[i] for i in der.unpaced), Fraction(0)
            )
            caps = [b.hi for b in boxes]
            if _budget_killed(der, caps, budgets, paced_total):
                continue
            if any(len(top) == 1 for top in der.top_bidders):
                for j in range(m):
                    top = der.top_bidders[j]
                    if len(top) != 1:
                        continue
                    rival_cap: Fraction | None = Fraction(0)
                    for i in range(n):
                        if i == top[0]:
                            continue
                        sup = _monomial_sup(_bid_monomial(inst, der, i, j), boxes)
                        if sup is None:
                            rival_cap = None
                            break
                        if sup > rival_cap:
                            rival_cap = sup
                    if rival_cap is not None and (caps[j] is None or rival_cap < caps[j]):
                        caps[j] = rival_cap
                if _budget_killed(der, caps, budgets, paced_total):
                    continue

        state = CellState(coord_rs, ratio_rs)
        interior = _interior_point(geo, state, boxes)
        if interior is None:
            continue
        ws = witness_sets(
            inst, state, der, geometry=geo, interior=interior, boxes=boxes, stats=stats
        )
        if ws is None:
            continue
        stats.cells_with_nonempty_witness_sets += 1

        for wt in enumerate_witness_tuples(ws):
            stats.witness_tuples_tried += 1
            if _tuple_impossible(inst, der, wt.r, boxes):
                continue
            system = build_system(inst, der, state, wt, geometry=geo)
            stats.lps_solved += 1
            out = solve_feasibility(system)
            if out.feasible:
                stats.lps_feasible += 1
                return _Found(index=base, state=state, witness=wt.r, outcome=out)
    return None


def _budget_killed(der: CellDerivation, caps, budgets, paced_total) -> bool:
    """Whether the per-good price caps rule out the paced buyers' budgets."""
    if all(c is not None for c in caps) and sum(caps) < paced_total:
        return True
    for i in der.paced:
        reach = Fraction(0)
        unbounded = False
        for j, cap in enumerate(caps):
            if i in der.top_bidders[j]:
                if cap is None:
                    unbounded = True
                    break
                reach += cap
        if not unbounded and reach < budgets[i]:
            return True
    return False


def _tuple_impossible(
    inst: Instance, der: CellDerivation, r: tuple[int, ...], boxes: Sequence[Interval]
) -> bool:
    """Exact budget bounds specialised to one witness tuple's price levels."""
    m = inst.m
    budgets = inst.budgets
    sup_p: list[Fraction | None] = []
    inf_p: list[Fraction] = []
    for j in range(m):
        pc, pcoef = price_expression(inst, der, j, r[j])
        sup_p.append(_expr_sup(pc, pcoef, boxes))
        lo = _expr_inf(pc, pcoef, boxes)
        inf_p.append(Fraction(0) if lo is None else lo)

    # A good's collected price must fit inside its top bidders' budgets.
    for j in range(m):
        cap = sum((budgets[i] for i in der.top_bidders[j]), Fraction(0))
        if inf_p[j] > cap:
            return True
    if der.paced:
        if all(s is not None for s in sup_p):
            if sum(sup_p) < sum(budgets[i] for i in der.paced):
                return True
        for i in der.paced:
            reach = Fraction(0)
            unbounded = False
            for j in range(m):
                if i in der.top_bidders[j]:
                    if sup_p[j] is None:
                        unbounded = True
                        break
                    reach += sup_p[j]
            if not unbounded and reach < budgets[i]:
                return True
    return False


# ---------------------------------------------------------------------------
# Parallel scan: workers own disjoint index ranges; the lowest-range find wins.

_WORKER_GEO: InstanceGeometry | None = None


def _worker_init(payload: str) -> None:
    global _WORKER_GEO
    data = json.loads(payload)
    _WORKER_GEO = InstanceGeometry(validate_instance(data))


def _worker_scan(start: int, stop: int):
    stats = RunStats()
    found = _scan_range(_WORKER_GEO, start, stop, stats)
    packed = None
    if found is not None:
        packed = (
            found.index,
            found.state.coord_regions,
            found.state.ratio_regions,
            found.witness,
            found.outcome.point,
            found.outcome.slack,
        )
    return packed, stats


def _parallel_scan(
    red: Instance, geo: InstanceGeometry, cfg: SolveConfig, total: int, stats: RunStats
) -> _Found | None:
    n_chunks = max(1, cfg.parallel * 4)
    step = -(-total // n_chunks)
    bounds = [(a, min(a + step, total)) for a in range(0, total, step)]
    payload = json.dumps(red.to_json_dict())
    found = None
    with ProcessPoolExecutor(
        max_workers=cfg.parallel, initializer=_worker_init, initargs=(payload,)
    ) as pool:
        futures = [pool.submit(_worker_scan, a, b) for a, b in bounds]
        for fut in futures:
            packed, worker_stats = fut.result()
            stats.merge_counters(worker_stats)
            if packed is not None:
                index, coord_rs, ratio_rs, witness, point, slack = packed
                found = _Found(
                    index=index,
                    state=CellState(tuple(coord_rs), tuple(ratio_rs)),
                    witness=tuple(witness),
                    outcome=FeasibilityOutcome("feasible", tuple(point), slack),
                )
                break
        for other in futures:
            other.cancel()
    return found


# ---------------------------------------------------------------------------
# Public entry points.


def solve_with_stats(
    inst: Instance, config: SolveConfig | None = None
) -> tuple[Equilibrium, RunStats]:
    """Solve and report the scan's exact work counters."""
    cfg = config or SolveConfig()
    inst = validate_instance(inst)
    t0 = time.perf_counter()
    stats = RunStats()

    report = preprocess(inst)
    red = report.reduced

    if red.m == 0:
        eq = _reinsert_removed(
            report,
            Equilibrium(
                alpha=tuple(Fraction(1) for _ in range(red.n)),
                x=tuple(() for _ in range(red.n)),
                prices=(),
                payments=tuple(() for _ in range(red.n)),
                lam=(),
                provenance=Provenance(
                    None, None, None, note="no valued goods; every buyer pays 0 and is unpaced"
                ),
            ),
        )
        stats.wall_time_ms = int((time.perf_counter() - t0) * 1000)
        return eq, stats

    if red.m > cfg.max_goods:
        raise GoodsLimitExceeded(
            f"{red.m} goods after preprocessing exceeds the guard of {cfg.max_goods}; "
            "raise max_goods explicitly to accept the cost"
        )

    geo = InstanceGeometry(red)
    total = state_count(geo.axes)
    if cfg.parallel > 1:
        found = _parallel_scan(red, geo, cfg, total, stats)
    else:
        found = _scan_range(geo, 0, total, stats)
    if found is None:
        raise NoEquilibriumFound(
            "state scan exhausted without a feasible system; this is a solver bug"
        )

    der = geo.derive(found.state)
    eq_red = recover(red, der, found.witness, found.outcome, state_index=found.index)
    eq = _reinsert_removed(report, eq_red)
    stats.winning_state_index = found.index
    stats.winning_tuple = found.witness
    stats.wall_time_ms = int((time.perf_counter() - t0) * 1000)
    return eq, stats


def solve(inst: Instance, config: SolveConfig | None = None) -> Equilibrium:
    """Compute one exact equilibrium (the canonical-first feasible cell)."""
    return solve_with_stats(inst, config)[0]


def solve_by_types(inst: Instance, config: SolveConfig | None = None) -> Equilibrium:
    """Solve via good-type aggregation and expand back to the original goods.

    Works for any number of goods as long as the number of distinct
    valuation columns stays within the guard.
    """
    eq, _ = solve_by_types_with_stats(inst, config)
    return eq


def solve_by_types_with_stats(
    inst: Instance, config: SolveConfig | None = None
) -> tuple[Equilibrium, RunStats]:
    from .verifier import verify_equilibrium

    cfg = config or SolveConfig()
    inst = validate_instance(inst)
    part = partition_good_types(inst)
    if len(part.types) > cfg.max_goods:
        raise GoodsLimitExceeded(
            f"{len(part.types)} good types exceeds the guard of {cfg.max_goods}"
        )
    agg_eq, stats = solve_with_stats(part.aggregated, cfg)
    eq = expand_equilibrium(part, agg_eq)
    check = verify_equilibrium(inst, eq.alpha, eq.x)
    if not check.passed:
        raise InternalInconsistency(
            "expanded equilibrium failed verification; this is a solver bug"
        )
    return eq, stats


def _reinsert_removed(report: PreprocessReport, eq: Equilibrium) -> Equilibrium:
    """Put removed zero-value goods back at zero allocation and zero price."""
    if not report.removed_goods:
        return eq
    n = len(eq.alpha)
    m = len(report.good_index_map) + len(report.removed_goods)
    x = [[Fraction(0)] * m for _ in range(n)]
    payments = [[Fraction(0)] * m for _ in range(n)]
    prices = [Fraction(0)] * m
    lam = [Fraction(0)] * m
    for reduced_j, orig_j in enumerate(report.good_index_map):
        prices[orig_j] = eq.prices[reduced_j]
        lam[orig_j] = eq.lam[reduced_j]
        for i in range(n):
            x[i][orig_j] = eq.x[i][reduced_j]
            payments[i][orig_j] = eq.payments[i][reduced_j]
    prov = eq.provenance
    note = "zero-value goods reinserted with zero allocation and zero price"
    if prov is None:
        prov = Provenance(None, None, None, note=note)
    else:
        prov = Provenance(
            prov.state_index,
            prov.witness,
            prov.slack,
            note=(prov.note + "; " if prov.note else "") + note,
        )
    return Equilibrium(
        alpha=eq.alpha,
        x=tuple(tuple(row) for row in x),
        prices=tuple(prices),
        payments=tuple(tuple(row) for row in payments),
        lam=tuple(lam),
        provenance=prov,
    )

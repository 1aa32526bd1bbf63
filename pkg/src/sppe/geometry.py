"""Cell geometry of the highest-bid space.

For every good, the positive axis of its highest paced bid is split by the
buyers' valuations into alternating open intervals and single points; for
every pair of goods the ratio of the two bid levels is split the same way
by the buyers' valuation ratios.  Choosing one region per axis fixes the
relative order of each buyer's candidate multiplier terms (the constant 1
and the ratios bid-level/valuation), which is everything the solver needs
to know about a cell: who is paced, each multiplier's linear expression,
and who can top each auction.

Region indices run left to right: even indices are open intervals, odd
indices are the breakpoints themselves, so an axis with k breakpoints has
2k+1 regions.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

from .errors import InconsistentState
from .model import Instance

#: Sentinel for the constant term 1 in a buyer's minimizer set.  A buyer
#: whose minimizer set contains it is unpaced (multiplier exactly 1).
CONST_TERM = -1


class Interval(NamedTuple):
    """A subset of the positive axis; ``hi`` of None means unbounded."""

    lo: Fraction
    hi: Fraction | None
    lo_strict: bool
    hi_strict: bool

    @property
    def is_point(self) -> bool:
        return self.hi is not None and self.lo == self.hi


def _locate(breakpoints: Sequence[Fraction], value: Fraction) -> int:
    i = bisect_left(breakpoints, value)
    if i < len(breakpoints) and breakpoints[i] == value:
        return 2 * i + 1
    return 2 * i


def _interval(breakpoints: Sequence[Fraction], region: int) -> Interval:
    if region % 2 == 1:
        b = breakpoints[(region - 1) // 2]
        return Interval(b, b, False, False)
    idx = region // 2
    lo = breakpoints[idx - 1] if idx > 0 else Fraction(0)
    hi = breakpoints[idx] if idx < len(breakpoints) else None
    return Interval(lo, hi, True, True)


@dataclass(frozen=True)
class CoordinateAxis:
    """Regions of one good's bid-level axis, cut at the positive valuations."""

    good: int
    breakpoints: tuple[Fraction, ...]

    @property
    def region_count(self) -> int:
        return 2 * len(self.breakpoints) + 1

    def locate(self, value: Fraction) -> int:
        """Region index containing a positive value."""
        return _locate(self.breakpoints, value)

    def interval(self, region: int) -> Interval:
        return _interval(self.breakpoints, region)


@dataclass(frozen=True)
class RatioAxis:
    """Regions of the bid-level ratio of a good pair (j, k) with j < k."""

    pair: tuple[int, int]
    breakpoints: tuple[Fraction, ...]

    @property
    def region_count(self) -> int:
        return 2 * len(self.breakpoints) + 1

    def locate(self, value: Fraction) -> int:
        return _locate(self.breakpoints, value)

    def interval(self, region: int) -> Interval:
        return _interval(self.breakpoints, region)


Axes = tuple[tuple[CoordinateAxis, ...], tuple[RatioAxis, ...]]


def build_axes(inst: Instance) -> Axes:
    """One axis per good plus one per unordered good pair, exact breakpoints.

    Breakpoints come only from buyers with positive value for the goods
    involved, deduplicated and sorted.
    """
    coords = tuple(
        CoordinateAxis(
            good=j,
            breakpoints=tuple(sorted({row[j] for row in inst.valuations if row[j] > 0})),
        )
        for j in range(inst.m)
    )
    ratios = []
    for j, k in itertools.combinations(range(inst.m), 2):
        cuts = {
            row[j] / row[k]
            for row in inst.valuations
            if row[j] > 0 and row[k] > 0
        }
        ratios.append(RatioAxis(pair=(j, k), breakpoints=tuple(sorted(cuts))))
    return coords, tuple(ratios)


@dataclass(frozen=True)
class CellState:
    """One region choice per coordinate axis and per ratio axis."""

    coord_regions: tuple[int, ...]
    ratio_regions: tuple[int, ...]


def state_count(axes: Axes) -> int:
    coords, ratios = axes
    total = 1
    for axis in coords:
        total *= axis.region_count
    for axis in ratios:
        total *= axis.region_count
    return total


def enumerate_states(axes: Axes) -> Iterator[CellState]:
    """All states in canonical order: coordinate axes by good, then ratio
    axes by pair, regions left to right on each axis."""
    coords, ratios = axes
    nc = len(coords)
    ranges = [range(a.region_count) for a in coords] + [range(a.region_count) for a in ratios]
    for combo in itertools.product(*ranges):
        yield CellState(combo[:nc], combo[nc:])


def state_index(axes: Axes, state: CellState) -> int:
    """Canonical (mixed-radix) index of a state in enumeration order."""
    coords, ratios = axes
    radices = [a.region_count for a in coords] + [a.region_count for a in ratios]
    digits = list(state.coord_regions) + list(state.ratio_regions)
    idx = 0
    for digit, radix in zip(digits, radices):
        idx = idx * radix + digit
    return idx


def state_of_point(axes: Axes, point: Sequence[Fraction]) -> CellState:
    """The unique state whose regions contain a strictly positive point."""
    coords, ratios = axes
    if any(v <= 0 for v in point):
        raise ValueError("cell states only tile the strictly positive orthant")
    coord_regions = tuple(axis.locate(point[axis.good]) for axis in coords)
    ratio_regions = tuple(
        axis.locate(point[axis.pair[0]] / point[axis.pair[1]]) for axis in ratios
    )
    return CellState(coord_regions, ratio_regions)


@dataclass(frozen=True)
class CellDerivation:
    """Per-cell combinatorics read off a consistent state.

    ``minimizers[i]`` is buyer i's argmin set over the constant term and the
    per-good ratio terms (``CONST_TERM`` marks the constant); ``alpha_goods[i]``
    is None for an unpaced buyer and otherwise the smallest good index whose
    ratio expresses the multiplier.  ``top_bidders[j]`` collects the buyers
    whose paced bid reaches the bid level of good j.
    """

    minimizers: tuple[tuple[int, ...], ...]
    alpha_goods: tuple[int | None, ...]
    top_bidders: tuple[tuple[int, ...], ...]
    unpaced: tuple[int, ...]
    paced: tuple[int, ...]


class InstanceGeometry:
    """Precomputed lookup tables tying an instance to its axes.

    Sign queries against a state reduce to integer comparisons between a
    region index and a precomputed breakpoint position, so consistency
    checks and cell derivations do no rational arithmetic at all.  Each
    buyer's term order depends only on a handful of signs, so per-buyer
    consistency and argmin results are memoized on that sign tuple.
    """

    def __init__(self, inst: Instance):
        self.inst = inst
        self.axes = build_axes(inst)
        coords, ratios = self.axes
        self.coords = coords
        self.ratios = ratios
        self.pair_pos = {axis.pair: t for t, axis in enumerate(ratios)}
        n, m = inst.n, inst.m

        # terms[i]: goods buyer i values (the candidate ratio terms)
        self.terms: list[tuple[int, ...]] = [
            tuple(j for j in range(m) if inst.valuations[i][j] > 0) for i in range(n)
        ]
        # coord_pos[i][j]: position of v_ij among axis j's breakpoints
        self.coord_pos: list[list[int | None]] = [[None] * m for _ in range(n)]
        for i in range(n):
            for j in self.terms[i]:
                bp = coords[j].breakpoints
                self.coord_pos[i][j] = bisect_left(bp, inst.valuations[i][j])
        # ratio_pos[i][t]: position of v_ij/v_ik among ratio axis t's breakpoints
        self.ratio_pos: list[list[int | None]] = [[None] * len(ratios) for _ in range(n)]
        for i in range(n):
            vals = inst.valuations[i]
            for t, axis in enumerate(ratios):
                j, k = axis.pair
                if vals[j] > 0 and vals[k] > 0:
                    self.ratio_pos[i][t] = bisect_left(axis.breakpoints, vals[j] / vals[k])

        # Per-buyer sign probes: (kind, axis position, cut) where kind 0 reads a
        # coordinate region and kind 1 a ratio region; the probed pairs are the
        # ordered term pairs (CONST, j...) then (j, k...).
        self._probes: list[tuple[tuple[int, int, int], ...]] = []
        self._pair_lists: list[tuple[tuple[int, int], ...]] = []
        for i in range(n):
            probes = []
            pairs = []
            for j in self.terms[i]:
                probes.append((0, j, 2 * self.coord_pos[i][j] + 1))
                pairs.append((CONST_TERM, j))
            for a_pos in range(len(self.terms[i])):
                for b_pos in range(a_pos + 1, len(self.terms[i])):
                    j, k = self.terms[i][a_pos], self.terms[i][b_pos]
                    t = self.pair_pos[(j, k)]
                    probes.append((1, t, 2 * self.ratio_pos[i][t] + 1))
                    pairs.append((j, k))
            self._probes.append(tuple(probes))
            self._pair_lists.append(tuple(pairs))
        self._buyer_cache: list[dict] = [dict() for _ in range(n)]

    def _buyer_signs(self, i: int, coord_rs, ratio_rs) -> tuple[int, ...]:
        out = []
        for kind, pos, cut in self._probes[i]:
            region = coord_rs[pos] if kind == 0 else ratio_rs[pos]
            out.append(-1 if region < cut else (0 if region == cut else 1))
        return tuple(out)

    def _buyer_sign_key(self, i: int, coord_rs, ratio_rs) -> int:
        key = 0
        for kind, pos, cut in self._probes[i]:
            region = coord_rs[pos] if kind == 0 else ratio_rs[pos]
            key = 3 * key + (0 if region < cut else (1 if region == cut else 2))
        return key

    def _buyer_resolve(self, i: int, signs: tuple[int, ...]):
        """(consistent, minimizer set, alpha good, unpaced) for one buyer.

        Callers memoize on the sign key; the sign tuple fully determines
        the answer, so cached entries never go stale.
        """
        terms = (CONST_TERM,) + self.terms[i]
        rel: dict[tuple[int, int], int] = {}
        for (a, b), s in zip(self._pair_lists[i], signs):
            # stored sign is sign(term_b - term_a) for (CONST, b) probes and
            # sign(term_a - term_b) for (a, b) good pairs; normalize both ways.
            if a == CONST_TERM:
                rel[(a, b)] = -s
                rel[(b, a)] = s
            else:
                rel[(a, b)] = s
                rel[(b, a)] = -s
        for t in terms:
            rel[(t, t)] = 0

        consistent = True
        for a, b, c in itertools.permutations(terms, 3):
            ab = rel[(a, b)]
            if ab > 0:
                continue
            bc = rel[(b, c)]
            if bc > 0:
                continue
            ac = rel[(a, c)]
            if ac > 0 or (ac == 0 and (ab < 0 or bc < 0)):
                consistent = False
                break

        if not consistent:
            result = (False, (), None, False)
        else:
            best = terms[0]
            for t in terms[1:]:
                if rel[(t, best)] < 0:
                    best = t
            mins = tuple(sorted(t for t in terms if rel[(t, best)] == 0))
            unpaced = mins[0] == CONST_TERM
            alpha_good = None if unpaced else mins[0]
            result = (True, mins, alpha_good, unpaced)
        return result

    def derive_regions(self, coord_rs, ratio_rs) -> CellDerivation | None:
        """Derivation straight from region tuples; None when inconsistent."""
        n, m = self.inst.n, self.inst.m
        minimizers = []
        alpha_goods: list[int | None] = []
        top: list[list[int]] = [[] for _ in range(m)]
        unpaced_list = []
        paced_list = []
        caches = self._buyer_cache
        for i in range(n):
            key = self._buyer_sign_key(i, coord_rs, ratio_rs)
            cached = caches[i].get(key)
            if cached is None:
                cached = self._buyer_resolve(i, self._buyer_signs(i, coord_rs, ratio_rs))
                caches[i][key] = cached
            ok, mins, alpha_good, unpaced = cached
            if not ok:
                return None
            minimizers.append(mins)
            alpha_goods.append(alpha_good)
            (unpaced_list if unpaced else paced_list).append(i)
            for t in mins:
                if t != CONST_TERM:
                    top[t].append(i)
        return CellDerivation(
            minimizers=tuple(minimizers),
            alpha_goods=tuple(alpha_goods),
            top_bidders=tuple(tuple(t) for t in top),
            unpaced=tuple(unpaced_list),
            paced=tuple(paced_list),
        )

    def term_sign(self, state: CellState, i: int, a: int, b: int) -> int:
        """Sign of (term_a - term_b) for buyer i under the state's regions.

        Terms are ``CONST_TERM`` (the constant 1) or a good index j (the
        ratio bid-level/valuation); both goods must be valued by buyer i.
        """
        if a == b:
            return 0
        if a == CONST_TERM:
            return -self.term_sign(state, i, b, a)
        if b == CONST_TERM:
            # term_j vs 1 has the sign of (lambda_j - v_ij)
            cut = 2 * self.coord_pos[i][a] + 1
            region = state.coord_regions[a]
            return -1 if region < cut else (0 if region == cut else 1)
        if a > b:
            return -self.term_sign(state, i, b, a)
        t = self.pair_pos[(a, b)]
        cut = 2 * self.ratio_pos[i][t] + 1
        region = state.ratio_regions[t]
        return -1 if region < cut else (0 if region == cut else 1)

    def consistent(self, state: CellState) -> bool:
        return self.derive_regions(state.coord_regions, state.ratio_regions) is not None

    def derive(self, state: CellState) -> CellDerivation:
        derivation = self.derive_regions(state.coord_regions, state.ratio_regions)
        if derivation is None:
            raise InconsistentState(f"state {state} admits no per-buyer term ordering")
        return derivation


def check_consistency(state: CellState, inst: Instance) -> bool:
    """Whether the state's sign tables admit a total preorder per buyer.

    This is a necessary filter only: a consistent state can still describe
    an empty region of the bid-level space, in which case the downstream
    linear system is infeasible.
    """
    return InstanceGeometry(inst).consistent(state)


def derive_cell(state: CellState, inst: Instance) -> CellDerivation:
    """Minimizer sets, multiplier expressions and top bidders of a cell."""
    geo = InstanceGeometry(inst)
    if not geo.consistent(state):
        raise InconsistentState(f"state {state} admits no per-buyer term ordering")
    return geo.derive(state)

"""Market instances: validation, preprocessing, and good-type aggregation."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .equilibrium import Equilibrium
from .errors import (
    DimensionMismatch,
    NegativeValuation,
    NonPositiveBudget,
    ShapeMismatch,
)
from .rationals import rat_str, to_rat


@dataclass(frozen=True)
class Instance:
    """A pacing market: one valuation row per buyer, one budget per buyer.

    Valuations are non-negative and budgets strictly positive; build
    instances through :func:`validate_instance` or :func:`make_instance`
    so those invariants are checked up front.
    """

    valuations: tuple[tuple[Fraction, ...], ...]
    budgets: tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.budgets)

    @property
    def m(self) -> int:
        return len(self.valuations[0]) if self.valuations else 0

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "valuations": [[rat_str(v) for v in row] for row in self.valuations],
            "budgets": [rat_str(b) for b in self.budgets],
        }


def make_instance(valuations: Sequence[Sequence[object]], budgets: Sequence[object]) -> Instance:
    """Build and validate an Instance from nested number-like sequences."""
    return validate_instance({"valuations": valuations, "budgets": budgets})


def validate_instance(raw: Mapping | Instance) -> Instance:
    """Check shapes and signs, returning a well-formed Instance.

    Accepts the instance JSON contract (``n``/``m`` optional when arrays
    speak for themselves) or an existing Instance, which is re-checked.
    """
    if isinstance(raw, Instance):
        raw = {"valuations": raw.valuations, "budgets": raw.budgets}

    try:
        raw_vals = raw["valuations"]
        raw_budgets = raw["budgets"]
    except KeyError as exc:
        raise ShapeMismatch(f"missing instance field: {exc}") from None

    valuations = tuple(tuple(to_rat(v) for v in row) for row in raw_vals)
    budgets = tuple(to_rat(b) for b in raw_budgets)

    n = len(budgets)
    if n == 0:
        raise ShapeMismatch("an instance needs at least one buyer")
    if len(valuations) != n:
        raise ShapeMismatch(
            f"{len(valuations)} valuation rows for {n} budgets"
        )
    m = len(valuations[0]) if valuations else 0
    for i, row in enumerate(valuations):
        if len(row) != m:
            raise ShapeMismatch(f"valuation row {i} has {len(row)} entries, expected {m}")
    if "n" in raw and raw["n"] != n:
        raise ShapeMismatch(f"declared n={raw['n']} but found {n} buyers")
    if "m" in raw and raw["m"] != m:
        raise ShapeMismatch(f"declared m={raw['m']} but found {m} goods")

    for i, row in enumerate(valuations):
        for j, v in enumerate(row):
            if v < 0:
                raise NegativeValuation(i, j)
    for i, b in enumerate(budgets):
        if b <= 0:
            raise NonPositiveBudget(i)

    return Instance(valuations=valuations, budgets=budgets)


@dataclass(frozen=True)
class PreprocessReport:
    """Result of dropping goods nobody values.

    ``good_index_map[r]`` is the original index of reduced good ``r``;
    ``removed_goods`` lists the dropped all-zero columns.
    """

    reduced: Instance
    removed_goods: tuple[int, ...]
    good_index_map: tuple[int, ...]


def preprocess(inst: Instance) -> PreprocessReport:
    """Remove goods with an all-zero valuation column.

    Such goods can only ever trade at price zero, so they can be put back
    into any equilibrium of the reduced market with zero allocation.
    """
    kept = []
    removed = []
    for j in range(inst.m):
        if any(row[j] > 0 for row in inst.valuations):
            kept.append(j)
        else:
            removed.append(j)
    reduced = Instance(
        valuations=tuple(tuple(row[j] for j in kept) for row in inst.valuations),
        budgets=inst.budgets,
    )
    return PreprocessReport(
        reduced=reduced,
        removed_goods=tuple(removed),
        good_index_map=tuple(kept),
    )


@dataclass(frozen=True)
class TypePartition:
    """Goods grouped by identical valuation columns.

    ``types[t]`` lists the original good indices of class ``t`` (classes
    ordered by first occurrence), and ``aggregated`` is the market with one
    good per class whose valuations are the within-class sums.
    """

    types: tuple[tuple[int, ...], ...]
    aggregated: Instance

    @property
    def expansion_map(self) -> dict[int, tuple[int, ...]]:
        return dict(enumerate(self.types))


def partition_good_types(inst: Instance) -> TypePartition:
    """Group goods whose valuation columns coincide for every buyer."""
    classes: dict[tuple[Fraction, ...], int] = {}
    members: list[list[int]] = []
    for j in range(inst.m):
        col = tuple(row[j] for row in inst.valuations)
        t = classes.get(col)
        if t is None:
            classes[col] = len(members)
            members.append([j])
        else:
            members[t].append(j)

    agg_vals = tuple(
        tuple(sum((row[j] for j in group), Fraction(0)) for group in members)
        for row in inst.valuations
    )
    aggregated = Instance(valuations=agg_vals, budgets=inst.budgets)
    return TypePartition(types=tuple(tuple(g) for g in members), aggregated=aggregated)


def expand_equilibrium(part: TypePartition, agg_eq: Equilibrium) -> Equilibrium:
    """Expand an equilibrium of the aggregated market to the original goods.

    Every good in a class keeps the class allocation; prices, payments and
    bid ceilings split evenly over the class so per-buyer totals are
    preserved exactly.
    """
    k = len(part.types)
    n = part.aggregated.n
    if agg_eq.m != k or agg_eq.n != n:
        raise DimensionMismatch(
            f"aggregated equilibrium is {agg_eq.n}x{agg_eq.m}, partition has {n}x{k}"
        )

    m = sum(len(group) for group in part.types)
    x = [[Fraction(0)] * m for _ in range(n)]
    payments = [[Fraction(0)] * m for _ in range(n)]
    prices = [Fraction(0)] * m
    lam = [Fraction(0)] * m
    for t, group in enumerate(part.types):
        size = len(group)
        for j in group:
            prices[j] = agg_eq.prices[t] / size
            lam[j] = agg_eq.lam[t] / size
            for i in range(n):
                x[i][j] = agg_eq.x[i][t]
                payments[i][j] = agg_eq.payments[i][t] / size

    prov = agg_eq.provenance
    if prov is not None:
        note = (prov.note + "; " if prov.note else "") + "expanded from good types"
        prov = replace(prov, note=note)
    return Equilibrium(
        alpha=agg_eq.alpha,
        x=tuple(tuple(row) for row in x),
        prices=tuple(prices),
        payments=tuple(tuple(row) for row in payments),
        lam=tuple(lam),
        provenance=prov,
    )

"""Independent exact check of the equilibrium conditions.

Everything here is recomputed from the instance and the proposed
(multipliers, allocation) pair alone: highest bids, second prices, and
per-buyer spending.  The module deliberately shares no code with the
solver's constraint pipeline, so a solver bug cannot hide from it.

The four conditions checked, with exact arithmetic throughout:
  (a) only highest bidders receive allocation;
  (b) a good with a positive highest bid is fully allocated;
  (c) nobody spends beyond budget;
  (d) anyone spending strictly below budget is unpaced.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InstanceTooLarge
from .model import Instance
from .rationals import rat_str, to_rat


@dataclass(frozen=True)
class ConditionResult:
    ok: bool
    violation: dict | None = None

    def to_json_dict(self) -> dict:
        return {"ok": self.ok, "violation": self.violation}


@dataclass(frozen=True)
class VerificationReport:
    """Pass/fail per condition plus the recomputed derived quantities."""

    passed: bool
    bounds_ok: bool
    bounds_violation: dict | None
    conditions: dict[str, ConditionResult]
    highest_bids: tuple[Fraction, ...]
    prices: tuple[Fraction, ...]
    spends: tuple[Fraction, ...]

    def first_failure(self) -> str | None:
        """Name of the first failing check in report order, if any."""
        if not self.bounds_ok:
            return "bounds"
        for name in ("a", "b", "c", "d"):
            if not self.conditions[name].ok:
                return name
        return None

    def to_json_dict(self) -> dict:
        return {
            "pass": self.passed,
            "bounds": {"ok": self.bounds_ok, "violation": self.bounds_violation},
            "conditions": {k: v.to_json_dict() for k, v in self.conditions.items()},
            "highest_bids": [rat_str(h) for h in self.highest_bids],
            "prices": [rat_str(p) for p in self.prices],
            "spends": [rat_str(s) for s in self.spends],
        }


def _second_prices(
    inst: Instance, alpha: Sequence[Fraction]
) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...], tuple[tuple[int, ...], ...]]:
    """Highest bid, unit price and winner set per good, from scratch.

    With a unique highest bidder the price is the best losing bid (zero
    when there is none: a single bidder competes only with the implicit
    zero-bidding dummy); tied highest bidders pay the highest bid itself.
    """
    n, m = inst.n, inst.m
    highest = []
    prices = []
    winners = []
    for j in range(m):
        bids = [alpha[i] * inst.valuations[i][j] for i in range(n)]
        h = max(bids)
        top = tuple(i for i in range(n) if bids[i] == h)
        if len(top) >= 2:
            p = h
        else:
            rest = [bids[i] for i in range(n) if i != top[0]]
            p = max(rest) if rest else Fraction(0)
        highest.append(h)
        prices.append(p)
        winners.append(top)
    return tuple(highest), tuple(prices), tuple(winners)


def verify_equilibrium(inst: Instance, alpha, x) -> VerificationReport:
    """Exact verification of a proposed equilibrium; violations are report
    content, never exceptions."""
    alpha = tuple(to_rat(a) for a in alpha)
    x = tuple(tuple(to_rat(v) for v in row) for row in x)
    n, m = inst.n, inst.m

    bounds_violation = None
    if len(alpha) != n or len(x) != n or any(len(row) != m for row in x):
        bounds_violation = {"reason": "shape mismatch with the instance"}
    else:
        for i in range(n):
            if not (0 <= alpha[i] <= 1):
                bounds_violation = {"reason": "multiplier outside [0, 1]", "buyer": i,
                                    "alpha": rat_str(alpha[i])}
                break
        if bounds_violation is None:
            for i, j in itertools.product(range(n), range(m)):
                if not (0 <= x[i][j] <= 1):
                    bounds_violation = {"reason": "allocation outside [0, 1]",
                                        "buyer": i, "good": j, "x": rat_str(x[i][j])}
                    break
        if bounds_violation is None:
            for j in range(m):
                total = sum((x[i][j] for i in range(n)), Fraction(0))
                if total > 1:
                    bounds_violation = {"reason": "good allocated beyond one unit",
                                        "good": j, "total": rat_str(total)}
                    break
    bounds_ok = bounds_violation is None

    if not bounds_ok:
        empty = ConditionResult(True)
        return VerificationReport(
            passed=False,
            bounds_ok=False,
            bounds_violation=bounds_violation,
            conditions={"a": empty, "b": empty, "c": empty, "d": empty},
            highest_bids=(),
            prices=(),
            spends=(),
        )

    highest, prices, winners = _second_prices(inst, alpha)
    spends = tuple(
        sum((x[i][j] * prices[j] for j in range(m)), Fraction(0)) for i in range(n)
    )

    cond_a = ConditionResult(True)
    for i, j in itertools.product(range(n), range(m)):
        if x[i][j] > 0 and alpha[i] * inst.valuations[i][j] != highest[j]:
            cond_a = ConditionResult(False, {
                "buyer": i, "good": j,
                "bid": rat_str(alpha[i] * inst.valuations[i][j]),
                "highest": rat_str(highest[j]),
            })
            break

    cond_b = ConditionResult(True)
    for j in range(m):
        if highest[j] > 0:
            total = sum((x[i][j] for i in range(n)), Fraction(0))
            if total != 1:
                cond_b = ConditionResult(False, {
                    "good": j, "highest": rat_str(highest[j]), "allocated": rat_str(total),
                })
                break

    cond_c = ConditionResult(True)
    for i in range(n):
        if spends[i] > inst.budgets[i]:
            cond_c = ConditionResult(False, {
                "buyer": i, "spend": rat_str(spends[i]), "budget": rat_str(inst.budgets[i]),
            })
            break

    cond_d = ConditionResult(True)
    for i in range(n):
        if spends[i] < inst.budgets[i] and alpha[i] != 1:
            cond_d = ConditionResult(False, {
                "buyer": i, "spend": rat_str(spends[i]),
                "budget": rat_str(inst.budgets[i]), "alpha": rat_str(alpha[i]),
            })
            break

    conditions = {"a": cond_a, "b": cond_b, "c": cond_c, "d": cond_d}
    return VerificationReport(
        passed=all(c.ok for c in conditions.values()),
        bounds_ok=True,
        bounds_violation=None,
        conditions=conditions,
        highest_bids=highest,
        prices=prices,
        spends=spends,
    )


def grid_oracle(inst: Instance, resolution: int):
    """Brute-force near-equilibrium candidates on a multiplier grid.

    Scans every multiplier vector with coordinates k/resolution, enumerates
    the extreme allocations supported on each good's winner set (plus, for
    single-good markets, the allocation that exactly exhausts the paced
    winners' budgets), and keeps those satisfying all four conditions
    exactly.  Not a solver: a cross-check for hand-derived values on tiny
    markets.
    """
    if inst.n > 3 or inst.m > 2:
        raise InstanceTooLarge("the grid oracle accepts at most 3 buyers and 2 goods")
    if resolution < 1:
        raise ValueError("resolution must be a positive integer")

    n, m = inst.n, inst.m
    grid = [Fraction(k, resolution) for k in range(resolution + 1)]
    candidates = []
    seen = set()
    for combo in itertools.product(grid, repeat=n):
        alpha = tuple(combo)
        highest, prices, winners = _second_prices(inst, alpha)
        options_per_good = []
        for j in range(m):
            if highest[j] == 0:
                options_per_good.append([tuple(Fraction(0) for _ in range(n))])
                continue
            cols = []
            for w in winners[j]:
                col = [Fraction(0)] * n
                col[w] = Fraction(1)
                cols.append(tuple(col))
            if m == 1 and prices[j] > 0 and len(winners[j]) >= 2:
                paced = [i for i in winners[j] if alpha[i] != 1]
                unpaced = [i for i in winners[j] if alpha[i] == 1]
                col = [Fraction(0)] * n
                used = Fraction(0)
                feas = True
                for i in paced:
                    share = inst.budgets[i] / prices[j]
                    if share > 1:
                        feas = False
                        break
                    col[i] = share
                    used += share
                if feas and used <= 1 and unpaced:
                    rest = (1 - used) / len(unpaced)
                    for i in unpaced:
                        col[i] = rest
                    cols.append(tuple(col))
            options_per_good.append(cols)
        for cols in itertools.product(*options_per_good):
            x = tuple(tuple(cols[j][i] for j in range(m)) for i in range(n))
            report = verify_equilibrium(inst, alpha, x)
            if report.passed:
                key = (alpha, x)
                if key not in seen:
                    seen.add(key)
                    candidates.append((alpha, x))
    return candidates

"""Exact linear feasibility with slack-maximized strict inequalities.

Per-cell systems mix weak rows with strict ones; each strict source row
carries a shared slack variable on its small side and the system is
feasible exactly when the maximal slack is positive.  All arithmetic is
exact rational; pivoting uses Bland's rule so outcomes and witness points
are deterministic and tolerance-free.  When gmpy2 is installed its mpq
type is used inside the solver for speed; values crossing the module
boundary are always ``fractions.Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InternalInconsistency, UnknownWitness
from .geometry import CONST_TERM, CellDerivation, CellState, InstanceGeometry
from .model import Instance
from .rationals import rat_str

try:  # pragma: no cover - exercised indirectly
    from gmpy2 import mpq as _q
except ImportError:  # pragma: no cover
    _q = Fraction

LE = "<="
EQ = "="

#: Witness entry that stands for "the second price is zero".
DUMMY_WITNESS = -1


def _as_fraction(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(int(v.numerator), int(v.denominator))


@dataclass(frozen=True)
class LinearConstraint:
    """One row over the system's variable catalog.

    Strict source inequalities never appear directly; they are stored
    slack-augmented, so ``relation`` is only ever ``<=`` or ``=``.
    """

    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction
    origin: str = ""


@dataclass(frozen=True)
class FeasibilitySystem:
    """A feasibility program over nonnegative variables, maximizing a slack.

    The catalog orders bid-level variables first, then payment variables,
    then the strictness slack (index ``objective``).
    """

    var_names: tuple[str, ...]
    constraints: tuple[LinearConstraint, ...]
    objective: int

    def dump(self) -> str:
        """Human-readable listing, one constraint per line (debug aid)."""
        lines = [f"maximize {self.var_names[self.objective]}"]
        for c in self.constraints:
            terms = []
            for name, coef in zip(self.var_names, c.coeffs):
                if coef == 0:
                    continue
                if coef == 1:
                    terms.append(f"+ {name}")
                elif coef == -1:
                    terms.append(f"- {name}")
                elif coef > 0:
                    terms.append(f"+ {rat_str(coef)} {name}")
                else:
                    terms.append(f"- {rat_str(-coef)} {name}")
            lhs = " ".join(terms).lstrip("+ ") or "0"
            tag = f"  [{c.origin}]" if c.origin else ""
            lines.append(f"{lhs} {c.relation} {rat_str(c.rhs)}{tag}")
        return "\n".join(lines)


@dataclass(frozen=True)
class FeasibilityOutcome:
    """Verdict plus, when feasible, an exact witness point over the catalog."""

    status: str
    point: tuple[Fraction, ...] | None
    slack: Fraction | None

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"


# ---------------------------------------------------------------------------
# Linear expressions in the bid-level variables.

LinExpr = tuple[Fraction, dict[int, Fraction]]  # constant + good -> coefficient


def alpha_expression(inst: Instance, derivation: CellDerivation, i: int) -> LinExpr:
    """Buyer i's multiplier as a fixed linear function of the bid levels."""
    a = derivation.alpha_goods[i]
    if a is None:
        return Fraction(1), {}
    return Fraction(0), {a: 1 / inst.valuations[i][a]}


def bid_expression(inst: Instance, derivation: CellDerivation, i: int, j: int) -> LinExpr:
    """Buyer i's paced bid on good j under the cell's multiplier expression."""
    v = inst.valuations[i][j]
    if v == 0:
        return Fraction(0), {}
    const, coeffs = alpha_expression(inst, derivation, i)
    return const * v, {g: c * v for g, c in coeffs.items()}


def price_expression(inst: Instance, derivation: CellDerivation, j: int, witness: int) -> LinExpr:
    """The payment of good j: its witness's paced bid, or zero for the dummy."""
    if witness == DUMMY_WITNESS:
        return Fraction(0), {}
    return bid_expression(inst, derivation, witness, j)


# ---------------------------------------------------------------------------
# System assembly.


class _RowBuilder:
    def __init__(self, nvars: int, delta: int):
        self.nvars = nvars
        self.delta = delta
        self.rows: list[LinearConstraint] = []

    def _dense(self, coeffs: dict[int, Fraction]) -> tuple[Fraction, ...]:
        row = [Fraction(0)] * self.nvars
        for idx, c in coeffs.items():
            row[idx] = c
        return tuple(row)

    def weak(self, coeffs: dict[int, Fraction], rhs: Fraction, origin: str) -> None:
        self.rows.append(LinearConstraint(self._dense(coeffs), LE, Fraction(rhs), origin))

    def strict(self, coeffs: dict[int, Fraction], rhs: Fraction, origin: str) -> None:
        dense = dict(coeffs)
        dense[self.delta] = dense.get(self.delta, Fraction(0)) + 1
        self.rows.append(LinearConstraint(self._dense(dense), LE, Fraction(rhs), origin))

    def eq(self, coeffs: dict[int, Fraction], rhs: Fraction, origin: str) -> None:
        self.rows.append(LinearConstraint(self._dense(coeffs), EQ, Fraction(rhs), origin))


def _emit_cell_rows(geo: InstanceGeometry, state: CellState, rb: _RowBuilder) -> None:
    """The sign-table rows of the cell plus strict positivity of bid levels."""
    inst = geo.inst
    for i in range(inst.n):
        for j in geo.terms[i]:
            v = inst.valuations[i][j]
            s = geo.term_sign(state, i, j, CONST_TERM)
            if s < 0:
                rb.strict({j: Fraction(1)}, v, "cell")
            elif s == 0:
                rb.eq({j: Fraction(1)}, v, "cell")
            else:
                rb.strict({j: Fraction(-1)}, -v, "cell")
    for t, axis in enumerate(geo.ratios):
        j, k = axis.pair
        for i in range(inst.n):
            if geo.ratio_pos[i][t] is None:
                continue
            vj = inst.valuations[i][j]
            vk = inst.valuations[i][k]
            s = geo.term_sign(state, i, j, k)
            if s < 0:
                rb.strict({j: vk, k: -vj}, Fraction(0), "cell")
            elif s == 0:
                rb.eq({j: vk, k: -vj}, Fraction(0), "cell")
            else:
                rb.strict({j: -vk, k: vj}, Fraction(0), "cell")
    for j in range(inst.m):
        rb.strict({j: Fraction(-1)}, Fraction(0), "positivity")


def _emit_cell_rows_compact(geo: InstanceGeometry, state: CellState, rb: _RowBuilder) -> None:
    """Region-interval encoding of the cell: equivalent solution set to the
    per-buyer sign rows, with at most two rows per axis.

    Used for internal emptiness and dominance probes, where only the
    feasibility verdict matters; the full per-buyer emission stays in
    :func:`build_system`.
    """
    for j, axis in enumerate(geo.coords):
        iv = axis.interval(state.coord_regions[j])
        if iv.is_point:
            rb.eq({j: Fraction(1)}, iv.lo, "cell")
        else:
            rb.strict({j: Fraction(-1)}, -iv.lo, "cell")
            if iv.hi is not None:
                rb.strict({j: Fraction(1)}, iv.hi, "cell")
    for t, axis in enumerate(geo.ratios):
        j, k = axis.pair
        iv = axis.interval(state.ratio_regions[t])
        if iv.is_point:
            rb.eq({j: Fraction(1), k: -iv.lo}, Fraction(0), "cell")
        else:
            if iv.lo > 0:
                rb.strict({j: Fraction(-1), k: iv.lo}, Fraction(0), "cell")
            if iv.hi is not None:
                rb.strict({j: Fraction(1), k: -iv.hi}, Fraction(0), "cell")
    for j in range(geo.inst.m):
        rb.strict({j: Fraction(-1)}, Fraction(0), "positivity")


def _emit_dominance_rows(
    inst: Instance,
    derivation: CellDerivation,
    good: int,
    witness: int,
    winner: int,
    rb: _RowBuilder,
    bid_exprs: Sequence[LinExpr] | None = None,
) -> None:
    """Rows forcing the witness's paced bid to top every other losing bid.

    ``bid_exprs`` optionally carries the buyers' precomputed bid expressions
    for this good (they are fixed per cell, so callers probing many
    witnesses share one table).
    """
    if bid_exprs is None:
        bid_exprs = [bid_expression(inst, derivation, i, good) for i in range(inst.n)]
    pc, pcoef = (
        (Fraction(0), {}) if witness == DUMMY_WITNESS else bid_exprs[witness]
    )
    for i in range(inst.n):
        if i == winner or i == witness:
            continue
        bc, bcoef = bid_exprs[i]
        coeffs = dict(bcoef)
        for g, c in pcoef.items():
            coeffs[g] = coeffs.get(g, Fraction(0)) - c
        coeffs = {g: c for g, c in coeffs.items() if c != 0}
        rhs = pc - bc
        if not coeffs and rhs >= 0:
            continue
        rb.weak(coeffs, rhs, "witness")


def _catalog(n: int, m: int) -> tuple[str, ...]:
    names = [f"lam_{j + 1}" for j in range(m)]
    names += [f"y_{i + 1}_{j + 1}" for i in range(n) for j in range(m)]
    names.append("delta")
    return tuple(names)


def lam_index(j: int) -> int:
    return j


def y_index(i: int, j: int, m: int) -> int:
    return m + i * m + j


def delta_index(n: int, m: int) -> int:
    return m + n * m


def build_system(
    inst: Instance,
    derivation: CellDerivation,
    state: CellState,
    witness_tuple,
    geometry: InstanceGeometry | None = None,
) -> FeasibilitySystem:
    """Assemble the full per-cell, per-witness-tuple feasibility program.

    Multiplier expressions are substituted at build time, so the system
    only sees bid levels, payments, and the strictness slack.
    """
    geo = geometry if geometry is not None else InstanceGeometry(inst)
    n, m = inst.n, inst.m
    r = tuple(getattr(witness_tuple, "r", witness_tuple))
    if len(r) != m:
        raise UnknownWitness(f"witness tuple has {len(r)} entries for {m} goods")
    for j in range(m):
        top = derivation.top_bidders[j]
        if not top:
            raise UnknownWitness(f"good {j} has no top bidder in this cell")
        if len(top) >= 2:
            if r[j] not in top:
                raise UnknownWitness(f"witness {r[j]} for tied good {j} must top the auction")
        elif r[j] != DUMMY_WITNESS and (r[j] < 0 or r[j] >= n or r[j] == top[0]):
            raise UnknownWitness(f"witness {r[j]} is not a valid runner-up for good {j}")

    delta = delta_index(n, m)
    rb = _RowBuilder(nvars=delta + 1, delta=delta)

    _emit_cell_rows(geo, state, rb)

    # Paced buyers sit strictly inside (0, 1); unpaced expressions are the
    # constant 1, which adds no row.
    for i in derivation.paced:
        a = derivation.alpha_goods[i]
        rb.strict({a: Fraction(1)}, inst.valuations[i][a], "paced-range")
        rb.strict({a: Fraction(-1)}, Fraction(0), "paced-range")

    # Bid levels dominate every paced bid and are attained by top bidders.
    for i in range(n):
        for j in range(m):
            bc, bcoef = bid_expression(inst, derivation, i, j)
            coeffs = dict(bcoef)
            coeffs[j] = coeffs.get(j, Fraction(0)) - 1
            coeffs = {g: c for g, c in coeffs.items() if c != 0}
            if not coeffs and -bc >= 0:
                continue
            rb.weak(coeffs, -bc, "bid-bound")
    for j in range(m):
        for i in derivation.top_bidders[j]:
            bc, bcoef = bid_expression(inst, derivation, i, j)
            coeffs = dict(bcoef)
            coeffs[j] = coeffs.get(j, Fraction(0)) - 1
            coeffs = {g: c for g, c in coeffs.items() if c != 0}
            if not coeffs and bc == 0:
                continue
            rb.eq(coeffs, -bc, "top-bid")

    for j in range(m):
        top = derivation.top_bidders[j]
        if len(top) == 1:
            _emit_dominance_rows(inst, derivation, j, r[j], top[0], rb)

    # Payments: pinned outside the top-bidder sets, totals equal the price.
    for j in range(m):
        top = set(derivation.top_bidders[j])
        for i in range(n):
            if i not in top:
                rb.eq({y_index(i, j, m): Fraction(1)}, Fraction(0), "pinned")
        pc, pcoef = price_expression(inst, derivation, j, r[j])
        coeffs: dict[int, Fraction] = {y_index(i, j, m): Fraction(1) for i in derivation.top_bidders[j]}
        for g, c in pcoef.items():
            coeffs[g] = coeffs.get(g, Fraction(0)) - c
        rb.eq(coeffs, pc, "price")

    for i in derivation.unpaced:
        rb.weak({y_index(i, j, m): Fraction(1) for j in range(m)}, inst.budgets[i], "budget-cap")
    for i in derivation.paced:
        rb.eq({y_index(i, j, m): Fraction(1) for j in range(m)}, inst.budgets[i], "budget-exact")

    rb.weak({delta: Fraction(1)}, Fraction(1), "slack-cap")

    return FeasibilitySystem(
        var_names=_catalog(n, m),
        constraints=tuple(rb.rows),
        objective=delta,
    )


def cell_system(
    inst: Instance,
    state: CellState,
    geometry: InstanceGeometry | None = None,
) -> FeasibilitySystem:
    """Just the cell rows over (bid levels, slack); feasible iff the cell's
    relatively open region is non-empty."""
    geo = geometry if geometry is not None else InstanceGeometry(inst)
    m = inst.m
    rb = _RowBuilder(nvars=m + 1, delta=m)
    _emit_cell_rows_compact(geo, state, rb)
    rb.weak({m: Fraction(1)}, Fraction(1), "slack-cap")
    names = tuple(f"lam_{j + 1}" for j in range(m)) + ("delta",)
    return FeasibilitySystem(var_names=names, constraints=tuple(rb.rows), objective=m)


def dominance_probe_system(
    inst: Instance,
    derivation: CellDerivation,
    state: CellState,
    good: int,
    witness: int,
    geometry: InstanceGeometry | None = None,
    bid_exprs: Sequence[LinExpr] | None = None,
) -> FeasibilitySystem:
    """Cell rows plus one good's witness-dominance rows over (bid levels,
    slack); decides whether a runner-up candidate is achievable in-cell."""
    geo = geometry if geometry is not None else InstanceGeometry(inst)
    m = inst.m
    top = derivation.top_bidders[good]
    if len(top) != 1:
        raise UnknownWitness(f"good {good} does not have a unique top bidder")
    rb = _RowBuilder(nvars=m + 1, delta=m)
    _emit_cell_rows_compact(geo, state, rb)
    _emit_dominance_rows(inst, derivation, good, witness, top[0], rb, bid_exprs)
    rb.weak({m: Fraction(1)}, Fraction(1), "slack-cap")
    names = tuple(f"lam_{j + 1}" for j in range(m)) + ("delta",)
    return FeasibilitySystem(var_names=names, constraints=tuple(rb.rows), objective=m)


class ProbeCore:
    """Packed rows of one cell's compact system, reused by the feasibility
    probes run inside that cell (emptiness and witness dominance).

    Row content matches :func:`cell_system`; only the packaging differs, so
    verdicts are identical while skipping per-probe system construction.
    """

    def __init__(self, inst: Instance, state: CellState, geometry: InstanceGeometry):
        self.m = inst.m
        system = cell_system(inst, state, geometry)
        self.rows = [
            [[_q(x) for x in c.coeffs], c.relation, _q(c.rhs)]
            for c in system.constraints
        ]

    def interior_point(self) -> tuple[Fraction, ...] | None:
        """Any point of the cell's relative interior, or None when empty."""
        ok, point = _two_phase_max_var(self.rows, self.m + 1, self.m, True)
        if not ok or point[self.m] <= 0:
            return None
        return tuple(_as_fraction(v) for v in point[: self.m])

    def probe_dominance(self, good: int, witness: int, winner: int, monomials) -> bool:
        """Whether the witness's bid can top all other losing bids in-cell.

        ``monomials[i]`` is buyer i's bid on the good as (level index or
        None, value): a constant bid, or value times one bid level.
        """
        m = self.m
        zero = _q(0)
        ra, rv = (None, Fraction(0)) if witness == DUMMY_WITNESS else monomials[witness]
        extra = []
        for i, (ia, iv) in enumerate(monomials):
            if i == winner or i == witness:
                continue
            coeffs = [zero] * (m + 1)
            rhs = Fraction(0)
            if ia is None:
                rhs -= iv
            else:
                coeffs[ia] += _q(iv)
            if ra is None:
                rhs += rv
            else:
                coeffs[ra] -= _q(rv)
            if all(c == zero for c in coeffs):
                if rhs < 0:
                    return False  # a constant rival strictly outbids the witness
                continue
            extra.append([coeffs, LE, _q(rhs)])
        ok, point = _two_phase_max_var(self.rows + extra, m + 1, m, True)
        return ok and point[m] > 0


# ---------------------------------------------------------------------------
# Exact solver: light presolve, then two-phase simplex with Bland's rule.


def solve_feasibility(
    system: FeasibilitySystem, *, stop_at_positive: bool = False
) -> FeasibilityOutcome:
    """Maximize the slack exactly; feasible iff its optimum is positive.

    The returned point satisfies every stored constraint exactly; there is
    no tolerance anywhere.  With ``stop_at_positive`` the search returns as
    soon as any positive slack is certified, which yields the same verdict
    but not the maximal slack; callers that only need feasibility use it.
    """
    nv = len(system.var_names)
    rows: list[list] = [
        [[_q(x) for x in c.coeffs], c.relation, _q(c.rhs)] for c in system.constraints
    ]

    fixed: dict[int, object] = {}
    feasible, rows = _presolve(rows, nv, fixed, delta_var=system.objective)
    if not feasible:
        return FeasibilityOutcome("infeasible", None, None)

    keep = [v for v in range(nv) if v not in fixed]
    pos_of = {v: t for t, v in enumerate(keep)}
    packed = [[[coeffs[v] for v in keep], rel, rhs] for coeffs, rel, rhs in rows]

    obj_pos = pos_of.get(system.objective)  # None when presolve pinned the slack
    ok, point = _two_phase_max_var(packed, len(keep), obj_pos, stop_at_positive)
    if not ok:
        return FeasibilityOutcome("infeasible", None, None)

    full = [_q(0)] * nv
    for v, val in fixed.items():
        full[v] = val
    for v, t in pos_of.items():
        full[v] = point[t]
    slack = _as_fraction(full[system.objective])
    if slack <= 0:
        return FeasibilityOutcome("infeasible", None, slack)
    return FeasibilityOutcome("feasible", tuple(_as_fraction(v) for v in full), slack)


def _presolve(rows, nv, fixed, delta_var=None):
    """Pin singleton equalities, drop duplicate and implied rows.

    Every reduction is an exact implication over the nonnegative orthant,
    so any point satisfying the reduced system satisfies the original rows
    as well.
    """
    zero = _q(0)

    # Substitute variables pinned by singleton equality rows (payments of
    # non-top bidders, mostly) until no such row remains.
    while True:
        pins = {}
        for coeffs, rel, rhs in rows:
            support = [v for v in range(nv) if coeffs[v] != zero]
            if rel == EQ and len(support) == 1:
                v = support[0]
                val = rhs / coeffs[v]
                if val < 0:
                    return False, []
                if v in pins and pins[v] != val:
                    return False, []
                pins[v] = val
        if not pins:
            break
        for v, val in pins.items():
            if v in fixed and fixed[v] != val:
                return False, []
            fixed[v] = val
        next_rows = []
        for coeffs, rel, rhs in rows:
            for v, val in pins.items():
                if coeffs[v] != zero:
                    rhs = rhs - coeffs[v] * val
                    coeffs[v] = zero
            next_rows.append([coeffs, rel, rhs])
        rows = next_rows

    cleaned = []
    for coeffs, rel, rhs in rows:
        support = [v for v in range(nv) if coeffs[v] != zero]
        if not support:
            if rel == EQ and rhs != zero:
                return False, []
            if rel == LE and rhs < zero:
                return False, []
            continue
        lead = coeffs[support[0]]
        scale = _q(1) / lead if (rel == EQ or lead > zero) else _q(-1) / lead
        norm = tuple(c * scale for c in coeffs)
        cleaned.append((coeffs, rel, rhs, norm, rhs * scale))

    # Canonical equality forms (both orientations) kill weak twins; rows
    # carrying the slack variable kill their slack-free shadows, because a
    # nonnegative slack only tightens a <= row.
    eq_forms = set()
    slacked: dict = {}
    for _, rel, _, norm, nrhs in cleaned:
        if rel == EQ:
            eq_forms.add((norm, nrhs))
            eq_forms.add((tuple(-c for c in norm), -nrhs))
        elif delta_var is not None and norm[delta_var] > zero:
            base = norm[:delta_var] + (zero,) + norm[delta_var + 1:]
            prev = slacked.get(base)
            if prev is None or nrhs < prev:
                slacked[base] = nrhs

    result: list = []
    by_key: dict = {}
    for coeffs, rel, rhs, norm, nrhs in cleaned:
        if rel == EQ:
            key = (EQ, norm)
            prev = by_key.get(key)
            if prev is None:
                by_key[key] = nrhs
                result.append([coeffs, rel, rhs])
            elif prev != nrhs:
                return False, []
            continue
        if (norm, nrhs) in eq_forms:
            continue
        if (
            delta_var is not None
            and norm[delta_var] == zero
            and slacked.get(norm) is not None
            and slacked[norm] <= nrhs
        ):
            continue
        key = (LE, norm)
        prev = by_key.get(key)
        if prev is None:
            by_key[key] = [nrhs, len(result)]
            result.append([coeffs, rel, rhs])
        elif nrhs < prev[0]:
            prev[0] = nrhs
            result[prev[1]] = [coeffs, rel, rhs]

    return True, result


def _two_phase_max_var(rows, nv, obj_var, stop_at_positive=False):
    """Maximize variable ``obj_var`` over nonnegative variables subject to
    the given <= / = rows; ``obj_var`` of None asks for bare feasibility.
    Returns (feasible, point)."""
    zero, one = _q(0), _q(1)
    n_rows = len(rows)
    slack_of = [None] * n_rows
    n_slack = 0
    for idx, (coeffs, rel, rhs) in enumerate(rows):
        if rel == LE:
            slack_of[idx] = n_slack
            n_slack += 1

    art_start = nv + n_slack
    tableau: list[list] = []
    basis: list[int] = []
    n_art = 0
    for idx, (coeffs, rel, rhs) in enumerate(rows):
        row = list(coeffs) + [zero] * n_slack
        if slack_of[idx] is not None:
            row[nv + slack_of[idx]] = one
        if rhs < zero:
            row = [-c for c in row]
            rhs = -rhs
        s = slack_of[idx]
        if s is not None and row[nv + s] == one:
            basis.append(nv + s)
            tableau.append((row, rhs, None))
        else:
            basis.append(-1)  # placeholder for an artificial
            tableau.append((row, rhs, idx))
            n_art += 1

    width = art_start + n_art
    T = []
    art_col = art_start
    for i, (row, rhs, needs_art) in enumerate(tableau):
        full = row + [zero] * n_art + [rhs]
        if needs_art is not None:
            full[art_col] = one
            basis[i] = art_col
            art_col += 1
        T.append(full)

    def pivot(prow: int, pcol: int) -> None:
        row = T[prow]
        piv = row[pcol]
        if piv != one:
            inv = one / piv
            row = [v * inv for v in row]
            T[prow] = row
        for r in range(len(T)):
            if r == prow:
                continue
            f = T[r][pcol]
            if f != zero:
                cur = T[r]
                T[r] = [a - f * b for a, b in zip(cur, row)]
        f = obj[pcol]
        if f != zero:
            obj[:] = [a - f * b for a, b in zip(obj, row)]
        basis[prow] = pcol

    def run(active_width: int, watch_var: int | None = None) -> None:
        while True:
            if watch_var is not None and any(
                basis[i] == watch_var and T[i][-1] > zero for i in range(len(T))
            ):
                return  # a positive value certifies the verdict; stop early
            enter = -1
            for j in range(active_width):
                if obj[j] > zero:
                    enter = j
                    break
            if enter < 0:
                return
            leave = -1
            best = None
            for i in range(len(T)):
                a = T[i][enter]
                if a > zero:
                    ratio = T[i][-1] / a
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                        best = ratio
                        leave = i
            if leave < 0:
                raise InternalInconsistency("objective unbounded; slack cap row missing")
            pivot(leave, enter)

    # Phase 1: drive the artificial variables to zero.
    if n_art:
        obj = [zero] * (width + 1)
        for i in range(len(T)):
            if basis[i] >= art_start:
                row = T[i]
                for j in range(width + 1):
                    obj[j] += row[j]
        for j in range(art_start, width):
            obj[j] -= one
        run(width)
        for i in range(len(T)):
            if basis[i] >= art_start and T[i][-1] != zero:
                return False, None
        # Pivot remaining zero-valued artificials out, dropping redundant rows.
        drop = []
        for i in range(len(T)):
            if basis[i] >= art_start:
                enter = -1
                for j in range(art_start):
                    if T[i][j] != zero:
                        enter = j
                        break
                if enter >= 0:
                    pivot(i, enter)
                else:
                    drop.append(i)
        for i in reversed(drop):
            del T[i]
            del basis[i]

    T = [row[:art_start] + [row[-1]] for row in T]
    width = art_start

    if obj_var is not None:
        # Reduced costs for maximizing obj_var: c_j minus the basic-cost part.
        obj = [zero] * (width + 1)
        obj[obj_var] = one
        for i in range(len(T)):
            if basis[i] == obj_var:
                row = T[i]
                obj = [a - b for a, b in zip(obj, row)]
        run(width, watch_var=obj_var if stop_at_positive else None)

    point = [zero] * nv
    for i in range(len(T)):
        if basis[i] < nv:
            point[basis[i]] = T[i][-1]
    return True, point

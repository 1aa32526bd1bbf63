"""Equilibrium container and its exact JSON form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rationals import rat_str, to_rat


@dataclass(frozen=True)
class Provenance:
    """Where a solution came from.

    ``state_index`` is the canonical index of the winning cell state,
    ``witness`` the chosen second-price witness per good (-1 marks the
    zero-price dummy), and ``slack`` the optimal strictness margin of the
    feasibility program.  All three are ``None`` for the empty-market
    shortcut, and ``note`` records conventions applied on the way out.
    """

    state_index: int | None
    witness: tuple[int, ...] | None
    slack: Fraction | None
    note: str = ""


@dataclass(frozen=True)
class Equilibrium:
    alpha: tuple[Fraction, ...]
    x: tuple[tuple[Fraction, ...], ...]
    prices: tuple[Fraction, ...]
    payments: tuple[tuple[Fraction, ...], ...]
    lam: tuple[Fraction, ...]
    provenance: Provenance | None = None

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def m(self) -> int:
        return len(self.prices)

    def to_json_dict(self) -> dict:
        return {
            "alpha": [rat_str(a) for a in self.alpha],
            "x": [[rat_str(v) for v in row] for row in self.x],
            "prices": [rat_str(p) for p in self.prices],
            "lambda": [rat_str(v) for v in self.lam],
            "payments": [[rat_str(v) for v in row] for row in self.payments],
        }


def alpha_x_from_json(data: dict) -> tuple[tuple[Fraction, ...], tuple[tuple[Fraction, ...], ...]]:
    """Extract (alpha, x) from a solver output dict or a minimal payload."""
    alpha = tuple(to_rat(a) for a in data["alpha"])
    x = tuple(tuple(to_rat(v) for v in row) for row in data["x"])
    return alpha, x

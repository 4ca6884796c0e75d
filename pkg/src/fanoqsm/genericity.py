"""Arithmetic side conditions attached to each family."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .wps import WeightSystem, enumerate_monomials, hypersurface_well_formed_generic, wps_is_well_formed


@dataclass(frozen=True)
class CritReport:
    """Clause breakdown of the critical-point prerequisites."""

    has_weight_one: bool
    degree_at_least_twice_each: bool
    two_small_for_char_two: bool

    @property
    def ok(self) -> bool:
        return self.has_weight_one and self.degree_at_least_twice_each and self.two_small_for_char_two

    def __bool__(self) -> bool:
        return self.ok


def check_condition_crit(weights: Sequence[int], d: int, p: int) -> CritReport:
    """Prerequisites for the branch section to have only admissible critical points.

    Clauses: some weight equals 1; ``d >= 2 a_i`` for every ``i``; and when
    ``p == 2`` with an odd number ``n`` of projective coordinates minus one,
    two distinct indices with ``d >= 3 a_j``.
    """
    w = list(weights)
    n = len(w) - 1
    c1 = any(a == 1 for a in w)
    c2 = all(d >= 2 * a for a in w)
    c3 = True
    if p == 2 and n % 2 == 1:
        c3 = sum(1 for a in w if d >= 3 * a) >= 2
    return CritReport(c1, c2, c3)


@dataclass(frozen=True)
class CdgenReport:
    n_ok: bool
    delta: int
    section_exists: bool
    wf: bool

    @property
    def ok(self) -> bool:
        return self.n_ok and self.delta >= 0 and self.section_exists and self.wf


def cover_ambient(base: Sequence[int], cover_weight: int | None) -> tuple[int, ...]:
    """Weights of the space containing the quotient hypersurface ``Z``."""
    return tuple(base) + ((cover_weight,) if cover_weight is not None else ())


def check_cdgen_arithmetic(base: Sequence[int], d: int, cover_weight: int | None = None) -> CdgenReport:
    """Checkable parts of the resolution hypotheses for ``Z``.

    ``base`` are the weights of the coordinates other than the cover
    variable.  ``cover_weight`` is ``m * a_w`` for type II covers and ``None``
    when ``Z`` is the base space itself (type I).  ``delta = d - sum(base)``.
    """
    base = tuple(base)
    n = len(base) - 1
    delta = d - sum(base)
    amb = WeightSystem(cover_ambient(base, cover_weight))
    section = delta >= 0 and len(enumerate_monomials(amb, delta)) > 0
    if cover_weight is None:
        wf = wps_is_well_formed(amb)
    else:
        wf = wps_is_well_formed(amb) and hypersurface_well_formed_generic(amb, d)
    return CdgenReport(n >= 3, delta, section, wf)


def fano_index(weights: Sequence[int], d: int) -> int:
    """``sum(weights) - d``; raises for non-Fano data."""
    iota = sum(weights) - d
    if iota < 1:
        raise ValueError(f"not Fano: sum of weights {sum(weights)} <= degree {d}")
    return iota


class Rationality(enum.Enum):
    RATIONAL_BY_CRITERION = "RATIONAL_BY_CRITERION"
    NOT_BY_CRITERION = "NOT_BY_CRITERION"


def rationality_clause(weights: Sequence[int], d: int) -> str | None:
    """Which clause of the projection criterion applies, if any."""
    w = list(weights)
    if w != sorted(w):
        raise ValueError("weights must be sorted ascending")
    if d < 2 * w[-1]:
        return "d < 2*a_max"
    if d == 2 * w[-1] == 2 * w[-2]:
        return "d = 2*a_max = 2*a_next"
    return None


def rationality_classify(weights: Sequence[int], d: int) -> Rationality:
    """Rational when projection from the last coordinate point is birational."""
    if rationality_clause(weights, d) is not None:
        return Rationality.RATIONAL_BY_CRITERION
    return Rationality.NOT_BY_CRITERION

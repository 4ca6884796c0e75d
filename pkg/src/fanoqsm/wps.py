"""Combinatorics of weighted projective spaces.

Coordinates are indexed ``0..n`` in the order the weights are given.  A
monomial is a tuple of exponents, one per coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .kernels import monomials_of_degree

Monomial = tuple[int, ...]


def _gcd_all(values: Iterable[int]) -> int:
    return reduce(gcd, values, 0)


@dataclass(frozen=True)
class WeightSystem:
    """Weights ``(a_0, ..., a_n)`` of a weighted projective space."""

    weights: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(a) for a in self.weights)
        if len(w) < 2:
            raise ValueError("a weighted projective space needs at least two weights")
        if any(a < 1 for a in w):
            raise ValueError(f"weights must be positive, got {w}")
        object.__setattr__(self, "weights", w)

    @classmethod
    def of(cls, *weights: int) -> "WeightSystem":
        if len(weights) == 1 and not isinstance(weights[0], int):
            weights = tuple(weights[0])
        return cls(tuple(weights))

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, i: int) -> int:
        return self.weights[i]

    @property
    def n(self) -> int:
        return len(self.weights) - 1

    def degree(self, mono: Sequence[int]) -> int:
        if len(mono) != len(self.weights):
            raise ValueError("exponent vector has wrong length")
        return sum(a * e for a, e in zip(self.weights, mono))

    def restrict(self, on_set: Iterable[int]) -> "WeightSystem":
        idx = sorted(set(on_set))
        return WeightSystem(tuple(self.weights[i] for i in idx))

    @cached_property
    def weight_one(self) -> frozenset[int]:
        return frozenset(i for i, a in enumerate(self.weights) if a == 1)

    @cached_property
    def weight_gt_one(self) -> frozenset[int]:
        return frozenset(i for i, a in enumerate(self.weights) if a > 1)


def wps_is_well_formed(ws: WeightSystem) -> bool:
    """True iff dropping any single weight leaves weights with gcd 1."""
    w = ws.weights
    return all(_gcd_all(w[:i] + w[i + 1:]) == 1 for i in range(len(w)))


def enumerate_monomials(ws: WeightSystem, d: int) -> list[Monomial]:
    """Every exponent vector of weighted degree ``d``, lexicographically ascending."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    arr = monomials_of_degree(ws.weights, d)
    return [tuple(int(x) for x in row) for row in arr]


def partition_by_weight_one(ws: WeightSystem) -> tuple[frozenset[int], frozenset[int]]:
    return ws.weight_one, ws.weight_gt_one


def support(mono: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i, e in enumerate(mono) if e)


def vanishes_on_stratum(mono: Sequence[int], on_set: Iterable[int]) -> bool:
    """A monomial vanishes on the open stratum iff it involves an off coordinate."""
    return not support(mono) <= frozenset(on_set)


def singular_strata(ws: WeightSystem) -> list[tuple[frozenset[int], int]]:
    """Maximal index sets ``I`` with ``gcd(a_i : i in I) > 1``, with that gcd.

    Ordered by ascending smallest index, then by size.
    """
    n1 = len(ws)
    found: dict[frozenset[int], int] = {}
    for size in range(1, n1 + 1):
        for sub in combinations(range(n1), size):
            g = _gcd_all(ws.weights[i] for i in sub)
            if g > 1:
                found[frozenset(sub)] = g
    maximal = [
        (s, g) for s, g in found.items()
        if not any(s < t for t in found)
    ]
    maximal.sort(key=lambda sg: (sorted(sg[0]), len(sg[0])))
    return maximal


def hypersurface_well_formed_generic(ws: WeightSystem, d: int) -> bool:
    """Combinatorial well-formedness of a general degree-``d`` hypersurface.

    For every maximal singular stratum ``Pi_I`` of the ambient space, the
    general hypersurface ``X`` must meet it in codimension at least 2 inside
    ``X``.  ``X`` contains ``Pi_I`` exactly when every degree-``d`` monomial
    vanishes on the open stratum; otherwise it cuts it in a hypersurface.
    """
    dim_x = ws.n - 1
    for on_set, _g in singular_strata(ws):
        sub = tuple(ws.weights[i] for i in sorted(on_set))
        contains = len(monomials_of_degree(sub, d)) == 0
        dim_cap = len(on_set) - 1 if contains else len(on_set) - 2
        if dim_cap > dim_x - 2:
            return False
    return True


VAR_NAMES = ("x", "y", "z", "t", "w")


def format_monomial(mono: Sequence[int], names: Sequence[str] | None = None) -> str:
    """Render ``(0, 7, 6, 1)`` as ``y^7*z^6*t``; the empty product is ``1``."""
    if names is None:
        names = VAR_NAMES if len(mono) <= len(VAR_NAMES) else [f"x{i}" for i in range(len(mono))]
    parts = []
    for name, e in zip(names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def parse_monomial(text: str, names: Sequence[str] | None = None, nvars: int = 5) -> Monomial:
    """Inverse of :func:`format_monomial`.

    Accepts ``t*y^5*x``, ``t y^5 x``, ``ty^5x`` and the index fallback
    ``x0^2*x3``.  Repeated letters multiply.  ``1`` is the constant.
    """
    names = list(names) if names is not None else list(VAR_NAMES[:nvars])
    exps = [0] * len(names)
    s = text.replace("*", "").replace(" ", "")
    if s in ("", "1"):
        if s == "":
            raise ValueError("empty monomial")
        return tuple(exps)
    pos = 0
    lookup = {n: i for i, n in enumerate(names)}
    while pos < len(s):
        if s[pos] == "x" and pos + 1 < len(s) and s[pos + 1].isdigit():
            end = pos + 1
            while end < len(s) and s[end].isdigit():
                end += 1
            idx = int(s[pos + 1:end])
            if idx >= len(names):
                raise ValueError(f"variable index {idx} out of range in {text!r}")
        else:
            name = s[pos]
            if name not in lookup:
                raise ValueError(f"unknown variable {name!r} in {text!r}")
            idx, end = lookup[name], pos + 1
        power = 1
        if end < len(s) and s[end] == "^":
            stop = end + 1
            while stop < len(s) and s[stop].isdigit():
                stop += 1
            if stop == end + 1:
                raise ValueError(f"missing exponent in {text!r}")
            power = int(s[end + 1:stop])
            end = stop
        exps[idx] += power
        pos = end
    return tuple(exps)

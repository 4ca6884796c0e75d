"""Sparse multivariate polynomials over F_p (or Z when p == 0).

This is the reference algebra path: certificate checks go through it, and the
array kernels used by the search are tested against it.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .wps import Monomial, format_monomial


class SparsePoly:
    """Immutable polynomial stored as ``{exponent tuple: coefficient}``.

    Coefficients are kept reduced to ``0..p-1`` for prime ``p``; for ``p == 0``
    they are plain integers.  Zero coefficients are never stored.
    """

    __slots__ = ("p", "nvars", "_terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], int] | Iterable, nvars: int, p: int = 0):
        if p < 0:
            raise ValueError("characteristic must be 0 or a prime")
        self.p = p
        self.nvars = nvars
        acc: dict[Monomial, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, c in items:
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars:
                raise ValueError(f"exponent {mono} does not have {nvars} entries")
            acc[mono] = acc.get(mono, 0) + int(c)
        if p:
            acc = {m: c % p for m, c in acc.items()}
        self._terms = {m: c for m, c in acc.items() if c}
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int, p: int = 0) -> "SparsePoly":
        return cls({}, nvars, p)

    @classmethod
    def constant(cls, c: int, nvars: int, p: int = 0) -> "SparsePoly":
        return cls({(0,) * nvars: c}, nvars, p)

    @classmethod
    def monomial(cls, mono: Sequence[int], p: int = 0, coeff: int = 1) -> "SparsePoly":
        return cls({tuple(mono): coeff}, len(mono), p)

    # -- basic protocol ---------------------------------------------------
    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == SparsePoly.constant(other, self.nvars, self.p)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return (self.p, self.nvars, self._terms) == (other.p, other.nvars, other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"SparsePoly({self.to_string()!r}, p={self.p})"

    def to_string(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono in sorted(self._terms, reverse=True):
            c = self._terms[mono]
            body = format_monomial(mono, names)
            if body == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts)

    def _check(self, other: "SparsePoly") -> None:
        if self.p != other.p or self.nvars != other.nvars:
            raise ValueError("polynomials live in different rings")

    def _coerce(self, other):
        if isinstance(other, int):
            return SparsePoly.constant(other, self.nvars, self.p)
        self._check(other)
        return other

    # -- ring operations --------------------------------------------------
    def __add__(self, other) -> "SparsePoly":
        other = self._coerce(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0) + c
        return SparsePoly(acc, self.nvars, self.p)

    __radd__ = __add__

    def __neg__(self) -> "SparsePoly":
        return SparsePoly({m: -c for m, c in self._terms.items()}, self.nvars, self.p)

    def __sub__(self, other) -> "SparsePoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "SparsePoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "SparsePoly":
        other = self._coerce(other)
        acc: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                acc[m] = acc.get(m, 0) + c1 * c2
        return SparsePoly(acc, self.nvars, self.p)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SparsePoly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = SparsePoly.constant(1, self.nvars, self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure --------------------------------------------------------
    def support(self) -> frozenset[int]:
        out: set[int] = set()
        for m in self._terms:
            out.update(i for i, e in enumerate(m) if e)
        return frozenset(out)

    def weighted_degrees(self, weights: Sequence[int]) -> set[int]:
        return {sum(a * e for a, e in zip(weights, m)) for m in self._terms}

    def evaluate(self, point: Sequence[int]) -> int:
        """Value at an integer point, reduced mod p when p > 0."""
        total = 0
        for m, c in self._terms.items():
            v = c
            for x, e in zip(point, m):
                v *= pow(x, e, self.p) if self.p else x ** e
            total += v
        return total % self.p if self.p else total

    def with_char(self, p: int) -> "SparsePoly":
        """Reduce integer coefficients modulo ``p`` (only from characteristic 0)."""
        if self.p not in (0, p):
            raise ValueError("can only reduce from characteristic 0")
        return SparsePoly(self._terms, self.nvars, p)


def partial_derivative(f: SparsePoly, i: int) -> SparsePoly:
    """Formal derivative in ``x_i``; the factor ``e_i`` is reduced mod p."""
    if not 0 <= i < f.nvars:
        raise IndexError(f"variable index {i} out of range for {f.nvars} variables")
    acc = {}
    for m, c in f._terms.items():
        e = m[i]
        if e == 0:
            continue
        dm = m[:i] + (e - 1,) + m[i + 1:]
        acc[dm] = acc.get(dm, 0) + c * e
    return SparsePoly(acc, f.nvars, f.p)


def restrict_to_stratum(f: SparsePoly, on_set: Iterable[int]) -> SparsePoly:
    """Set every variable outside ``on_set`` to zero."""
    keep = frozenset(on_set)
    off = [i for i in range(f.nvars) if i not in keep]
    terms = {m: c for m, c in f._terms.items() if all(m[i] == 0 for i in off)}
    return SparsePoly(terms, f.nvars, f.p)


def as_nonzero_monomial(f: SparsePoly) -> Monomial | None:
    """The exponent vector of ``f`` if it is a single nonzero term."""
    if len(f._terms) != 1:
        return None
    (mono,) = f._terms
    return mono


def leading_coefficient(f: SparsePoly) -> int:
    if not f._terms:
        return 0
    return f._terms[max(f._terms)]


class PolyMatrix:
    """Small rectangular matrix of :class:`SparsePoly` entries."""

    MAX_SIZE = 6

    def __init__(self, rows: Sequence[Sequence[SparsePoly]]):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        first = rows[0][0]
        for r in rows:
            for e in r:
                first._check(e)
        self.rows = rows
        self.p = first.p
        self.nvars = first.nvars

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(e) for e in r] for r in self.rows])

    def restrict(self, on_set: Iterable[int]) -> "PolyMatrix":
        on = frozenset(on_set)
        return self.map(lambda e: restrict_to_stratum(e, on))

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __repr__(self) -> str:
        body = "; ".join(", ".join(e.to_string() for e in r) for r in self.rows)
        return f"PolyMatrix([{body}])"


def matrix_determinant(M: PolyMatrix) -> SparsePoly:
    """Exact determinant by cofactor expansion along the sparsest row."""
    r, c = M.shape
    if r != c:
        raise ValueError(f"determinant of a non-square {r}x{c} matrix")
    if r > PolyMatrix.MAX_SIZE:
        raise ValueError(f"matrices larger than {PolyMatrix.MAX_SIZE}x{PolyMatrix.MAX_SIZE} are not supported")
    return _det(M.rows, M.nvars, M.p)


def _det(rows, nvars, p) -> SparsePoly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    # expand along the row with the most zero entries
    pivot = min(range(n), key=lambda i: sum(1 for e in rows[i] if e))
    total = SparsePoly.zero(nvars, p)
    for j, entry in enumerate(rows[pivot]):
        if not entry:
            continue
        minor = [r[:j] + r[j + 1:] for i, r in enumerate(rows) if i != pivot]
        sub = _det(minor, nvars, p)
        if not sub:
            continue
        term = entry * sub
        total = total - term if (pivot + j) % 2 else total + term
    return total

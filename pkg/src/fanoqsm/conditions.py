"""Jacobian-minor conditions on monomial systems.

A monomial system ``lam`` is a sequence of exponent tuples of one weighted
degree.  A certificate names a subset ``xi`` of it and a variable subset ``j``
such that the (bordered) Jacobian minor, restricted to the coordinate stratum
``stratum``, is a single nonzero term.  Such a certificate bounds the rank of
the full bordered Jacobian from below on the whole stratum.

Three certificate shapes exist:

* ``STAR``: ``|xi| = |j| = |I|``, plain Jacobian.
* ``STAR_PRIME``: ``|xi| = |I|`` and ``|j| = |I| - 1``, bordered Jacobian.
* ``STAR_K``: either of the above with the extra rule that ``k`` is not in ``j``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable, Sequence

import numpy as np

from . import gf
from .kernels import bordered_jacobian_at, find_monomial_minor, gfq_rank
from .poly import PolyMatrix, SparsePoly, as_nonzero_monomial, matrix_determinant, partial_derivative
from .wps import Monomial


class CertKind(enum.Enum):
    STAR = "STAR"
    STAR_PRIME = "STAR_PRIME"
    STAR_K = "STAR_K"


@dataclass(frozen=True)
class WitnessCertificate:
    kind: CertKind
    stratum: tuple[int, ...]
    xi: tuple[Monomial, ...]
    j_vars: tuple[int, ...]
    expected: Monomial | None = None
    k: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "stratum", tuple(sorted(set(self.stratum))))
        object.__setattr__(self, "xi", tuple(tuple(int(e) for e in m) for m in self.xi))
        object.__setattr__(self, "j_vars", tuple(int(j) for j in self.j_vars))
        if self.expected is not None:
            object.__setattr__(self, "expected", tuple(int(e) for e in self.expected))
        if not self.stratum:
            raise ValueError("stratum must be non-empty")
        if len(set(self.j_vars)) != len(self.j_vars):
            raise ValueError("repeated variable in J")
        r, nx, nj = len(self.stratum), len(self.xi), len(self.j_vars)
        plain = nx == nj == r
        bordered = nx == r and nj == r - 1
        if self.kind is CertKind.STAR and not plain:
            raise ValueError(f"STAR needs |xi| = |J| = |I| = {r}, got {nx}, {nj}")
        if self.kind is CertKind.STAR_PRIME and not bordered:
            raise ValueError(f"STAR_PRIME needs |xi| = {r} and |J| = {r - 1}, got {nx}, {nj}")
        if self.kind is CertKind.STAR_K:
            if self.k is None:
                raise ValueError("STAR_K certificate needs k")
            if not (plain or bordered):
                raise ValueError(f"STAR_K shape mismatch for |I| = {r}: |xi| = {nx}, |J| = {nj}")
            if self.k in self.j_vars:
                raise ValueError("STAR_K certificate may not differentiate in x_k")

    @property
    def bordered(self) -> bool:
        return len(self.j_vars) == len(self.xi) - 1


@dataclass(frozen=True)
class ConditionVerdict:
    holds: bool
    certificate: WitnessCertificate | None = None
    determinant: Monomial | None = None
    coefficient: int = 0
    matches_expected: bool | None = None


FAIL = ConditionVerdict(False)


# -- matrices ---------------------------------------------------------------


def _polys(xi: Sequence[Sequence[int]], p: int) -> list[SparsePoly]:
    if not xi:
        raise ValueError("xi must be non-empty")
    nv = len(xi[0])
    if any(len(m) != nv for m in xi):
        raise ValueError("monomials have different arity")
    return [SparsePoly.monomial(m, p) for m in xi]


def build_jacobian(xi: Sequence[Sequence[int]], j_vars: Sequence[int], p: int) -> PolyMatrix:
    """Rows indexed by ``j_vars``, columns by ``xi``; entries are partials."""
    gs = _polys(xi, p)
    if not j_vars:
        raise ValueError("J must be non-empty for the plain Jacobian")
    return PolyMatrix([[partial_derivative(g, j) for g in gs] for j in j_vars])


def build_bordered_jacobian(xi: Sequence[Sequence[int]], j_vars: Sequence[int], p: int) -> PolyMatrix:
    """The plain Jacobian with the monomials themselves as an extra first row."""
    gs = _polys(xi, p)
    return PolyMatrix([gs] + [[partial_derivative(g, j) for g in gs] for j in j_vars])


def restricted_determinant(xi, j_vars, stratum: Iterable[int], p: int, bordered: bool) -> SparsePoly:
    builder = build_bordered_jacobian if bordered else build_jacobian
    return matrix_determinant(builder(xi, j_vars, p).restrict(stratum))


def check_witness(lam: Iterable[Sequence[int]] | None, cert: WitnessCertificate, p: int) -> ConditionVerdict:
    """Evaluate a certificate through the exact polynomial path.

    ``lam=None`` skips the membership test (used for hand-built systems such
    as those carrying a cover variable).
    """
    if lam is not None:
        members = {tuple(m) for m in lam}
        missing = [m for m in cert.xi if m not in members]
        if missing:
            raise ValueError(f"certificate monomials not in the system: {missing}")
    det = restricted_determinant(cert.xi, cert.j_vars, cert.stratum, p, cert.bordered)
    mono = as_nonzero_monomial(det)
    if mono is None:
        return ConditionVerdict(False, cert, None, 0, None if cert.expected is None else False)
    match = None if cert.expected is None else mono == cert.expected
    return ConditionVerdict(True, cert, mono, det.terms[mono], match)


# -- search -----------------------------------------------------------------


def _as_array(lam) -> np.ndarray:
    arr = np.asarray([tuple(m) for m in lam], dtype=np.int64)
    return arr.reshape(len(arr), -1) if len(arr) else arr


def _candidates(arr: np.ndarray, on: frozenset[int], j_vars: Sequence[int]) -> np.ndarray:
    """Indices of monomials whose column can be nonzero on the stratum.

    Every column entry vanishes unless the monomial lives on ``I`` apart from
    at most one off-stratum variable, which must be in ``J`` with exponent 1.
    """
    nv = arr.shape[1]
    off = [i for i in range(nv) if i not in on]
    if not off:
        return np.arange(arr.shape[0])
    sub = arr[:, off]
    count = (sub > 0).sum(axis=1)
    ok = count == 0
    allowed = [c for c, i in enumerate(off) if i in set(j_vars)]
    if allowed:
        single = (count == 1) & (sub[:, allowed].max(axis=1) == 1) & (sub[:, allowed].sum(axis=1) == 1)
        ok |= single
    return np.nonzero(ok)[0]


def _search(lam, stratum, p: int, bordered: bool, avoid: int | None, kind: CertKind) -> ConditionVerdict:
    on = frozenset(stratum)
    if not on:
        raise ValueError("stratum must be non-empty")
    arr = _as_array(lam)
    if arr.shape[0] == 0:
        return FAIL
    nv = arr.shape[1]
    r = len(on)
    size_j = r - 1 if bordered else r
    pool = [i for i in range(nv) if i != avoid]
    mask = np.array([1 if i in on else 0 for i in range(nv)], dtype=np.int64)
    for j_vars in combinations(pool, size_j):
        idx = _candidates(arr, on, j_vars)
        if len(idx) < r:
            continue
        rows = ([-1] if bordered else []) + list(j_vars)
        hit = find_monomial_minor(arr[idx], rows, mask, p)
        if hit is None:
            continue
        cols, exp, coef = hit
        xi = tuple(tuple(int(e) for e in arr[idx[c]]) for c in cols)
        cert = WitnessCertificate(kind, tuple(on), xi, j_vars, None, avoid if kind is CertKind.STAR_K else None)
        return ConditionVerdict(True, cert, tuple(int(e) for e in exp), coef)
    return FAIL


def holds_star(lam, stratum, p: int) -> ConditionVerdict:
    return _search(lam, stratum, p, False, None, CertKind.STAR)


def holds_star_prime(lam, stratum, p: int) -> ConditionVerdict:
    return _search(lam, stratum, p, True, None, CertKind.STAR_PRIME)


def holds_dagger(lam, stratum, p: int) -> ConditionVerdict:
    v = holds_star(lam, stratum, p)
    return v if v.holds else holds_star_prime(lam, stratum, p)


def holds_star_k(lam, stratum, k: int, p: int) -> ConditionVerdict:
    """Either branch of the k-avoiding condition, plain Jacobian first."""
    v = _search(lam, stratum, p, False, k, CertKind.STAR_K)
    return v if v.holds else _search(lam, stratum, p, True, k, CertKind.STAR_K)


# -- shortcut lemmas --------------------------------------------------------


@dataclass(frozen=True)
class Shortcut:
    rule: str
    certificate: WitnessCertificate


def _index(lam) -> tuple[list[Monomial], int]:
    mons = [tuple(int(e) for e in m) for m in lam]
    return mons, (len(mons[0]) if mons else 0)


def _pure_powers(mons, i: int) -> list[int]:
    """Exponents ``l > 0`` with ``x_i^l`` in the system."""
    return [m[i] for m in mons if m[i] > 0 and all(e == 0 for t, e in enumerate(m) if t != i)]


def _times_one(mons, on: Sequence[int], j: int) -> list[Monomial]:
    """Monomials supported on ``on`` apart from a single factor ``x_j``."""
    on = set(on)
    return [m for m in mons if m[j] == 1 and all(e == 0 for t, e in enumerate(m) if t != j and t not in on)]


def _unit(nv: int, i: int, e: int) -> Monomial:
    return tuple(e if t == i else 0 for t in range(nv))


def _coprime(p: int, v: int) -> bool:
    return v % p != 0 if p else v != 0


def shortcut_star(lam, stratum, p: int) -> Shortcut | None:
    """Cheap sufficient clauses for the plain condition on strata of size <= 2."""
    on = sorted(set(stratum))
    if not 1 <= len(on) <= 2:
        raise ValueError("shortcut applies to strata of size 1 or 2")
    mons, nv = _index(lam)
    if not mons:
        return None

    def cert(xi, j):
        return WitnessCertificate(CertKind.STAR, tuple(on), tuple(xi), tuple(j))

    if len(on) == 1:
        (i,) = on
        for e in _pure_powers(mons, i):
            if _coprime(p, e):
                return Shortcut("1", cert([_unit(nv, i, e)], [i]))
        for j in range(nv):
            if j != i:
                for m in _times_one(mons, on, j):
                    return Shortcut("1", cert([m], [j]))
        return None

    i1, i2 = on
    pow1 = [e for e in _pure_powers(mons, i1) if _coprime(p, e)]
    pow2 = [e for e in _pure_powers(mons, i2) if _coprime(p, e)]
    if pow1 and pow2:
        return Shortcut("2a", cert([_unit(nv, i1, pow1[0]), _unit(nv, i2, pow2[0])], [i1, i2]))
    others = [j for j in range(nv) if j not in on]
    for a, b, pw in ((i1, i2, pow2), (i2, i1, pow1)):
        if not pw:
            continue
        for j in others:
            # x_a^l x_j alone (no x_b factor) keeps the minor diagonal
            for m in _times_one(mons, [a], j):
                return Shortcut("2b", cert([m, _unit(nv, b, pw[0])], [j, b]))
    for j1 in others:
        for j2 in others:
            if j1 == j2:
                continue
            m1 = _times_one(mons, [i1], j1)
            m2 = _times_one(mons, [i2], j2)
            if m1 and m2:
                return Shortcut("2c", cert([m1[0], m2[0]], [j1, j2]))
    return None


def shortcut_star_k(lam, stratum, k: int, p: int) -> Shortcut | None:
    """Cheap sufficient clauses for the k-avoiding condition on strata of size <= 2."""
    on = sorted(set(stratum))
    if not 1 <= len(on) <= 2:
        raise ValueError("shortcut applies to strata of size 1 or 2")
    mons, nv = _index(lam)
    if not mons:
        return None

    def cert(xi, j):
        return WitnessCertificate(CertKind.STAR_K, tuple(on), tuple(xi), tuple(j), None, k)

    if len(on) == 1:
        (i,) = on
        pw = _pure_powers(mons, i)
        if pw:
            return Shortcut("1a", cert([_unit(nv, i, pw[0])], []))
        for j in range(nv):
            if j not in (i, k):
                for m in _times_one(mons, on, j):
                    if m[i] > 0:
                        return Shortcut("1b", cert([m], [j]))
        return None

    others = [j for j in range(nv) if j not in on and j != k]
    if k not in on:
        i1, i2 = on
        inside = [m for m in mons if all(e == 0 for t, e in enumerate(m) if t not in on)]
        for a, b in combinations(inside, 2):
            if _coprime(p, b[i1] - a[i1]):
                return Shortcut("2a", cert([a, b], [i1]))
            if _coprime(p, b[i2] - a[i2]):
                return Shortcut("2a", cert([a, b], [i2]))
        for a, b in ((i1, i2), (i2, i1)):
            pa = _pure_powers(mons, a)
            if not pa:
                continue
            for j in others:
                for m in _times_one(mons, [b], j):
                    if m[b] > 0:
                        return Shortcut("2b", cert([_unit(nv, a, pa[0]), m], [j]))
        for j1 in others:
            for j2 in others:
                if j1 == j2:
                    continue
                m1 = [m for m in _times_one(mons, [i1], j1) if m[i1] > 0]
                m2 = [m for m in _times_one(mons, [i2], j2) if m[i2] > 0]
                if m1 and m2:
                    return Shortcut("2c", cert([m1[0], m2[0]], [j1, j2]))
        return None

    (i,) = [t for t in on if t != k]
    for j1 in others:
        for j2 in others:
            if j1 < j2:
                m1 = _times_one(mons, on, j1)
                m2 = _times_one(mons, on, j2)
                if m1 and m2:
                    return Shortcut("3a", cert([m1[0], m2[0]], [j1, j2]))
    inside = [m for m in mons if all(e == 0 for t, e in enumerate(m) if t not in on)]
    for j in others:
        m1 = _times_one(mons, on, j)
        if m1 and inside:
            return Shortcut("3b", cert([m1[0], inside[0]], [j]))
    for ak in _pure_powers(mons, k):
        for m in inside:
            if m[i] > 0 and _coprime(p, m[i]):
                return Shortcut("3c", cert([_unit(nv, k, ak), m], [i]))
    for m in inside:
        if m[i] == 1 and m[k] > 0:
            for b in _pure_powers(mons, i):
                if _coprime(p, b - 1):
                    return Shortcut("3d", cert([m, _unit(nv, i, b)], [i]))
    return None


@dataclass(frozen=True)
class ZShortcut:
    """A matched case of the three-variable criterion for ``v x_k + f``.

    ``roles`` are the variable indices playing ``x_1, x_2, x_3``; ``witness``
    the monomials the case names; ``residual`` holds the extra checks of
    case 5 keyed by stratum.
    """

    case: int
    roles: tuple[int, int, int]
    witness: tuple[Monomial, ...]
    residual: tuple[tuple[tuple[int, ...], ConditionVerdict], ...] = field(default_factory=tuple)


def shortcut_Z_qsm(lam, k: int, p: int) -> ZShortcut | None:
    """First case (1..5) of the three-variable criterion that applies."""
    mons, nv = _index(lam)
    if mons and nv != 4:
        raise ValueError("the three-variable criterion needs exactly four base variables")
    if not 0 <= k < 4:
        raise ValueError("k out of range")
    if not mons:
        return None
    rest = [i for i in range(4) if i != k]

    def pure(i):
        return _pure_powers(mons, i)

    def cofactor(i: int, j: int) -> list[Monomial]:
        """``x_i^l x_j`` with ``l >= 1``."""
        return [m for m in _times_one(mons, [i], j) if m[i] > 0]

    roles_list = list(permutations(rest))
    # case 1
    for x1, x2, x3 in roles_list:
        l1, l2, l3 = pure(x1), pure(x2), pure(x3)
        if l1 and l2 and l3 and sum(_coprime(p, v) for v in (l1[0], l2[0], l3[0])) >= 2:
            return ZShortcut(1, (x1, x2, x3), tuple(_unit(4, i, l[0]) for i, l in ((x1, l1), (x2, l2), (x3, l3))))
    # case 2
    for x1, x2, x3 in roles_list:
        l1, l2 = pure(x1), pure(x2)
        if not (l1 and l2):
            continue
        for m in cofactor(x3, x1):
            if _coprime(p, m[x3]) and (_coprime(p, l1[0]) or _coprime(p, l2[0])):
                return ZShortcut(2, (x1, x2, x3), (_unit(4, x1, l1[0]), _unit(4, x2, l2[0]), m))
    # case 3
    for x1, x2, x3 in roles_list:
        l1 = [e for e in pure(x1) if p and e % p == 0]
        if not l1:
            continue
        m2, m3 = cofactor(x2, x1), cofactor(x3, x2)
        if m2 and m3:
            return ZShortcut(3, (x1, x2, x3), (_unit(4, x1, l1[0]), m2[0], m3[0]))
    # case 4
    for x1, x2, x3 in roles_list:
        for a in cofactor(x1, x2):
            for b in cofactor(x2, x3):
                for c in cofactor(x3, x1):
                    if _coprime(p, a[x1] * b[x2] * c[x3] + 1):
                        return ZShortcut(4, (x1, x2, x3), (a, b, c))
    # case 5
    for x1, x2, x3 in roles_list:
        if x2 > x3:
            continue
        l1 = pure(x1)
        if not l1:
            continue
        m2, m3 = cofactor(x1, x2), cofactor(x1, x3)
        if not (m2 and m3):
            continue
        residual = []
        for sub in ((x2,), (x3,), (x2, x3)):
            residual.append((sub, holds_star_k(mons, sub, k, p)))
        if all(v.holds for _, v in residual):
            return ZShortcut(5, (x1, x2, x3), (_unit(4, x1, l1[0]), m2[0], m3[0]), tuple(residual))
    return None


# -- pointwise rank oracle --------------------------------------------------


def oracle_rank_at_points(lam, stratum, p: int, e: int = 1, samples: int = 50, seed: int = 0) -> int:
    """Minimum rank of the full bordered Jacobian over sampled stratum points.

    Points have nonzero coordinates in ``F_{p^e}`` on ``stratum`` and zero
    elsewhere.  An empty system has rank 0.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    arr = _as_array(lam)
    if arr.shape[0] == 0:
        return 0
    F = gf.field(p, e)
    rng = np.random.default_rng(seed)
    nv = arr.shape[1]
    on = sorted(set(stratum))
    best = None
    for _ in range(samples):
        point = np.zeros(nv, dtype=np.int64)
        point[on] = rng.integers(1, F.q, size=len(on))
        mat = bordered_jacobian_at(arr, point, p, F.exp_table, F.log_table)
        r = int(gfq_rank(mat, p, e, F.exp_table, F.log_table))
        best = r if best is None else min(best, r)
    return best

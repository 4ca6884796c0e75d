"""Hot numeric kernels.

Every function here takes and returns plain numpy arrays / ints so that the
same source runs under ``numba.njit`` or as ordinary Python (see
:mod:`fanoqsm._accel`).  Higher-level modules never call numba directly.
"""

from __future__ import annotations

import itertools

import numpy as np

from ._accel import jit

# ---------------------------------------------------------------------------
# weighted-degree monomial enumeration
# ---------------------------------------------------------------------------


@jit
def _walk_monomials(weights, d, out, write):
    n = weights.shape[0]
    e = np.zeros(n, dtype=np.int64)
    rem = np.zeros(n, dtype=np.int64)
    rem[0] = d
    e[0] = -1
    level = 0
    count = 0
    while level >= 0:
        if level == n - 1:
            if rem[level] % weights[level] == 0:
                e[level] = rem[level] // weights[level]
                if write:
                    for i in range(n):
                        out[count, i] = e[i]
                count += 1
            level -= 1
            continue
        e[level] += 1
        if e[level] * weights[level] > rem[level]:
            level -= 1
            continue
        rem[level + 1] = rem[level] - e[level] * weights[level]
        level += 1
        e[level] = -1
    return count


def monomials_of_degree(weights, d: int) -> np.ndarray:
    """All exponent vectors of weighted degree ``d``, ascending lex order."""
    w = np.asarray(weights, dtype=np.int64)
    if d < 0:
        return np.zeros((0, w.shape[0]), dtype=np.int64)
    dummy = np.zeros((1, w.shape[0]), dtype=np.int64)
    n = _walk_monomials(w, d, dummy, False)
    out = np.zeros((n, w.shape[0]), dtype=np.int64)
    _walk_monomials(w, d, out, True)
    return out


# ---------------------------------------------------------------------------
# restricted Jacobian minors of monomial sets
# ---------------------------------------------------------------------------


@jit
def _entry_tables(cand, rows, on_mask, p):
    """Restricted entries of the (bordered) Jacobian for each candidate.

    ``rows[t] == -1`` is the border row (the monomial itself), otherwise the
    partial derivative in variable ``rows[t]``.  Every entry is a single
    monomial times a scalar, so it is stored as (coefficient, exponents).
    """
    N, nv = cand.shape
    R = rows.shape[0]
    coef = np.zeros((N, R), dtype=np.int64)
    exps = np.zeros((N, R, nv), dtype=np.int64)
    for c in range(N):
        for t in range(R):
            v = rows[t]
            if v < 0:
                k = 1
            else:
                k = cand[c, v]
                if p > 0:
                    k = k % p
            if k == 0:
                continue
            ok = True
            for i in range(nv):
                x = cand[c, i]
                if i == v:
                    x -= 1
                exps[c, t, i] = x
                if x > 0 and on_mask[i] == 0:
                    ok = False
            if ok:
                coef[c, t] = k
    return coef, exps


@jit
def _det_single_term(coef, exps, cols, perms, signs, p, term_exp, term_coef, out_exp):
    """Leibniz expansion of the square minor on ``cols``.

    Returns the coefficient of the unique surviving term (written into
    ``out_exp``) or 0 when the determinant is zero or has several terms.
    """
    R = cols.shape[0]
    nv = exps.shape[2]
    nterms = 0
    for s in range(perms.shape[0]):
        c = signs[s]
        for t in range(R):
            a = coef[cols[perms[s, t]], t]
            if a == 0:
                c = 0
                break
            c = c * a
            if p > 0:
                c = c % p
        if c == 0:
            continue
        for i in range(nv):
            acc = 0
            for t in range(R):
                acc += exps[cols[perms[s, t]], t, i]
            out_exp[i] = acc
        hit = -1
        for u in range(nterms):
            same = True
            for i in range(nv):
                if term_exp[u, i] != out_exp[i]:
                    same = False
                    break
            if same:
                hit = u
                break
        if hit < 0:
            for i in range(nv):
                term_exp[nterms, i] = out_exp[i]
            term_coef[nterms] = c
            nterms += 1
        else:
            term_coef[hit] += c
            if p > 0:
                term_coef[hit] = term_coef[hit] % p
    found = -1
    for u in range(nterms):
        if term_coef[u] != 0:
            if found >= 0:
                return 0
            found = u
    if found < 0:
        return 0
    for i in range(nv):
        out_exp[i] = term_exp[found, i]
    return term_coef[found]


@jit
def _search_minor(coef, exps, perms, signs, p, out_cols, out_exp):
    """First column subset (lex order) whose restricted minor is a monomial."""
    N = coef.shape[0]
    R = coef.shape[1]
    nv = exps.shape[2]
    if N < R:
        return 0
    # a row that is zero for every candidate kills every minor
    for t in range(R):
        any_nz = False
        for c in range(N):
            if coef[c, t] != 0:
                any_nz = True
                break
        if not any_nz:
            return 0
    term_exp = np.zeros((perms.shape[0], nv), dtype=np.int64)
    term_coef = np.zeros(perms.shape[0], dtype=np.int64)
    cols = np.zeros(R, dtype=np.int64)
    for t in range(R):
        cols[t] = t
    while True:
        val = _det_single_term(coef, exps, cols, perms, signs, p, term_exp, term_coef, out_exp)
        if val != 0:
            for t in range(R):
                out_cols[t] = cols[t]
            return val
        # next combination
        t = R - 1
        while t >= 0 and cols[t] == N - R + t:
            t -= 1
        if t < 0:
            return 0
        cols[t] += 1
        for u in range(t + 1, R):
            cols[u] = cols[u - 1] + 1


_PERM_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def permutations_with_sign(r: int) -> tuple[np.ndarray, np.ndarray]:
    if r not in _PERM_CACHE:
        perms = np.array(list(itertools.permutations(range(r))), dtype=np.int64).reshape(-1, r)
        signs = np.empty(perms.shape[0], dtype=np.int64)
        for s, perm in enumerate(perms):
            inv = sum(1 for a in range(r) for b in range(a + 1, r) if perm[a] > perm[b])
            signs[s] = -1 if inv % 2 else 1
        _PERM_CACHE[r] = (perms, signs)
    return _PERM_CACHE[r]


def find_monomial_minor(cand, rows, on_mask, p: int):
    """Search column subsets of the restricted (bordered) Jacobian.

    ``cand`` is an (N, nvars) exponent array, ``rows`` lists the row kinds
    (-1 for the border row, a variable index for a partial derivative).
    Returns ``(columns, exponent, coefficient)`` for the first subset of
    ``len(rows)`` candidates in lexicographic index order whose restricted
    determinant is a single nonzero term, or ``None``.
    """
    cand = np.ascontiguousarray(cand, dtype=np.int64)
    rows = np.asarray(rows, dtype=np.int64)
    mask = np.asarray(on_mask, dtype=np.int64)
    R = rows.shape[0]
    nv = cand.shape[1]
    coef, exps = _entry_tables(cand, rows, mask, p)
    perms, signs = permutations_with_sign(R)
    out_cols = np.zeros(R, dtype=np.int64)
    out_exp = np.zeros(nv, dtype=np.int64)
    val = _search_minor(coef, exps, perms, signs, p, out_cols, out_exp)
    if val == 0:
        return None
    return out_cols, out_exp, int(val)


def restricted_entries(cand, rows, on_mask, p: int):
    """Entry tables used by the search; exposed for tests and benchmarks."""
    return _entry_tables(
        np.ascontiguousarray(cand, dtype=np.int64),
        np.asarray(rows, dtype=np.int64),
        np.asarray(on_mask, dtype=np.int64),
        p,
    )


# ---------------------------------------------------------------------------
# arithmetic in F_q, q = p**e, elements encoded as base-p digit integers
# ---------------------------------------------------------------------------


@jit
def gfq_add(a, b, p, e):
    r = 0
    scale = 1
    for _ in range(e):
        r += ((a % p + b % p) % p) * scale
        a //= p
        b //= p
        scale *= p
    return r


@jit
def gfq_neg(a, p, e):
    r = 0
    scale = 1
    for _ in range(e):
        r += ((p - a % p) % p) * scale
        a //= p
        scale *= p
    return r


@jit
def gfq_mul(a, b, q, exp_t, log_t):
    if a == 0 or b == 0:
        return 0
    return exp_t[(log_t[a] + log_t[b]) % (q - 1)]


@jit
def gfq_inv(a, q, exp_t, log_t):
    return exp_t[(q - 1 - log_t[a]) % (q - 1)]


@jit
def gfq_rank(mat, p, e, exp_t, log_t):
    """Rank of a matrix over F_q by Gaussian elimination (copies ``mat``)."""
    q = exp_t.shape[0] + 1
    A = mat.copy()
    m, n = A.shape
    rank = 0
    for col in range(n):
        if rank == m:
            break
        piv = -1
        for r in range(rank, m):
            if A[r, col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for c in range(n):
                tmp = A[rank, c]
                A[rank, c] = A[piv, c]
                A[piv, c] = tmp
        inv = gfq_inv(A[rank, col], q, exp_t, log_t)
        for r in range(rank + 1, m):
            if A[r, col] == 0:
                continue
            f = gfq_neg(gfq_mul(A[r, col], inv, q, exp_t, log_t), p, e)
            for c in range(col, n):
                if A[rank, c] != 0:
                    A[r, c] = gfq_add(A[r, c], gfq_mul(f, A[rank, c], q, exp_t, log_t), p, e)
        rank += 1
    return rank


@jit
def bordered_jacobian_at(exps, point, p, exp_t, log_t):
    """Evaluate the full bordered Jacobian of monomials ``exps`` at ``point``.

    Row 0 holds the monomial values, row ``1 + i`` the partials in ``x_i``.
    ``point`` holds F_q codes; zero coordinates are allowed.
    """
    q = exp_t.shape[0] + 1
    N, nv = exps.shape
    out = np.zeros((nv + 1, N), dtype=np.int64)
    for c in range(N):
        for row in range(nv + 1):
            v = row - 1
            k = 1
            if v >= 0:
                k = exps[c, v] % p
            if k == 0:
                continue
            lg = 0
            zero = False
            for i in range(nv):
                x = exps[c, i]
                if i == v:
                    x -= 1
                if x == 0:
                    continue
                if point[i] == 0:
                    zero = True
                    break
                lg += x * log_t[point[i]]
            if zero:
                continue
            val = exp_t[lg % (q - 1)]
            # k is an element of the prime field, i.e. the constant digit
            out[row, c] = gfq_mul(val, k, q, exp_t, log_t)
    return out

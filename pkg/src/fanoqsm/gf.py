"""Finite fields F_{p^e} as log/antilog tables.

Elements are encoded as integers ``c_0 + c_1 p + ... + c_{e-1} p^{e-1}``,
i.e. residues of F_p[X] modulo a monic irreducible of degree ``e``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _digits(a: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(a % p)
        a //= p
    return out


def _undigits(ds, p: int) -> int:
    v = 0
    for c in reversed(ds):
        v = v * p + c
    return v


def _polymulmod(a: list[int], b: list[int], modulus: list[int], p: int) -> list[int]:
    """Multiply digit lists modulo the monic ``modulus`` (lowest degree first)."""
    e = len(modulus) - 1
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, e - 1, -1):
        c = prod[deg]
        if c:
            for i in range(e + 1):
                prod[deg - e + i] = (prod[deg - e + i] - c * modulus[i]) % p
    return prod[:e]


def _has_root_free_factorisation(modulus: list[int], p: int) -> bool:
    """Irreducibility by exhaustive trial division (tiny degrees only)."""
    e = len(modulus) - 1
    for deg in range(1, e // 2 + 1):
        for tail in product(range(p), repeat=deg):
            divisor = list(tail) + [1]
            rem = list(modulus)
            for top in range(e, deg - 1, -1):
                c = rem[top]
                if c:
                    for i in range(deg + 1):
                        rem[top - deg + i] = (rem[top - deg + i] - c * divisor[i]) % p
            if not any(rem[:deg]):
                return False
    return True


def find_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree ``e`` over F_p."""
    if e == 1:
        return (0, 1)
    for tail in product(range(p), repeat=e):
        modulus = list(tail) + [1]
        if modulus[0] == 0:
            continue
        if _has_root_free_factorisation(modulus, p):
            return tuple(modulus)
    raise ValueError(f"no irreducible polynomial of degree {e} over F_{p}")  # pragma: no cover


class FiniteField:
    """F_q with ``exp``/``log`` tables over a multiplicative generator."""

    def __init__(self, p: int, e: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be positive")
        self.p, self.e = p, e
        self.q = p ** e
        self.modulus = tuple(modulus) if modulus is not None else find_irreducible(p, e)
        if len(self.modulus) != e + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e (lowest coefficient first)")
        if e > 1 and not _has_root_free_factorisation(list(self.modulus), p):
            raise ValueError("modulus is reducible")
        self.exp_table, self.log_table = self._tables()

    def mul_slow(self, a: int, b: int) -> int:
        ds = _polymulmod(_digits(a, self.p, self.e), _digits(b, self.p, self.e), list(self.modulus), self.p)
        return _undigits(ds, self.p)

    def _tables(self) -> tuple[np.ndarray, np.ndarray]:
        q = self.q
        for g in range(2, q) if q > 2 else [1]:
            exp_t = np.zeros(q - 1, dtype=np.int64)
            x = 1
            seen = set()
            for i in range(q - 1):
                if x in seen:
                    break
                seen.add(x)
                exp_t[i] = x
                x = self.mul_slow(x, g)
            else:
                if x == 1:
                    log_t = np.zeros(q, dtype=np.int64)
                    log_t[exp_t] = np.arange(q - 1)
                    return exp_t, log_t
        raise ValueError("no multiplicative generator found")  # pragma: no cover

    def add(self, a: int, b: int) -> int:
        da, db = _digits(a, self.p, self.e), _digits(b, self.p, self.e)
        return _undigits([(x + y) % self.p for x, y in zip(da, db)], self.p)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)])

    def nonzero(self) -> np.ndarray:
        return np.arange(1, self.q, dtype=np.int64)


@lru_cache(maxsize=None)
def field(p: int, e: int = 1) -> FiniteField:
    return FiniteField(p, e)

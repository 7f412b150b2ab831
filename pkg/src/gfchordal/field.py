"""Table-driven arithmetic in the small Galois fields GF(q), q <= 9.

An element of GF(p^d) is encoded as the integer whose base-p digits are the
coefficients of its polynomial representative, lowest degree first.  So in
GF(4) = GF(2)[x]/(x^2+x+1) the element x is 2 and x+1 is 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import UnsupportedOrderError

SUPPORTED_ORDERS = (2, 3, 4, 5, 7, 8, 9)

# (p, d, modulus coefficients low -> high, monic of degree d)
_PRESETS = {
    2: (2, 1, (0, 1)),
    3: (3, 1, (0, 1)),
    5: (5, 1, (0, 1)),
    7: (7, 1, (0, 1)),
    4: (2, 2, (1, 1, 1)),  # x^2 + x + 1
    8: (2, 3, (1, 1, 0, 1)),  # x^3 + x + 1
    9: (3, 2, (1, 0, 1)),  # x^2 + 1
}


def _digits(e: int, p: int, d: int) -> list[int]:
    out = []
    for _ in range(d):
        out.append(e % p)
        e //= p
    return out


def _undigits(cs: Sequence[int], p: int) -> int:
    e = 0
    for c in reversed(cs):
        e = e * p + c
    return e


def _polymulmod(a: list[int], b: list[int], modulus: Sequence[int], p: int) -> list[int]:
    d = len(modulus) - 1
    prod = [0] * (2 * d - 1 if d else 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    # reduce using the monic modulus, top degree first
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            for j in range(d + 1):
                prod[k - d + j] = (prod[k - d + j] - c * modulus[j]) % p
    return (prod + [0] * d)[:d]


@dataclass(frozen=True)
class FieldSpec:
    q: int
    p: int
    d: int
    modulus: tuple[int, ...]
    add_table: tuple[tuple[int, ...], ...] = field(repr=False)
    mul_table: tuple[tuple[int, ...], ...] = field(repr=False)
    inv_table: tuple[int, ...] = field(repr=False)
    neg_table: tuple[int, ...] = field(repr=False)

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_table[a]

    def power(self, a: int, n: int) -> int:
        out = 1
        for _ in range(n):
            out = self.mul_table[out][a]
        return out

    @property
    def elements(self) -> range:
        return range(self.q)

    def automorphisms(self) -> list[tuple[int, ...]]:
        """The d field automorphisms x -> x^(p^j), as lookup tuples, identity first."""
        out = []
        for j in range(self.d):
            out.append(tuple(self.power(a, self.p**j) for a in range(self.q)))
        return out

    # vector helpers; vectors are tuples of element encodings

    def normalize(self, v: Sequence[int]) -> tuple[int, ...]:
        """Scale ``v`` so that its first nonzero coordinate is 1."""
        for c in v:
            if c:
                if c == 1:
                    return tuple(v)
                s = self.inv_table[c]
                mul = self.mul_table[s]
                return tuple(mul[x] for x in v)
        raise ValueError("cannot normalize the zero vector")

    def is_normalized(self, v: Sequence[int]) -> bool:
        for c in v:
            if c:
                return c == 1
        return False

    def __hash__(self):
        return hash((self.q, self.modulus))

    def __str__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldSpec:
    if q not in _PRESETS:
        raise UnsupportedOrderError(f"GF({q}) is not supported; choose one of {SUPPORTED_ORDERS}")
    p, d, modulus = _PRESETS[q]
    polys = [_digits(e, p, d) for e in range(q)]
    add = tuple(
        tuple(_undigits([(x + y) % p for x, y in zip(polys[a], polys[b])], p) for b in range(q))
        for a in range(q)
    )
    mul = tuple(
        tuple(_undigits(_polymulmod(polys[a], polys[b], modulus, p), p) for b in range(q))
        for a in range(q)
    )
    inv = [0] * q
    for a in range(1, q):
        inv[a] = next(b for b in range(1, q) if mul[a][b] == 1)
    neg = tuple(next(b for b in range(q) if add[a][b] == 0) for a in range(q))
    return FieldSpec(q, p, d, modulus, add, mul, tuple(inv), neg)

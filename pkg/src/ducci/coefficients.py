"""Coefficients of D^r as a circulant linear map, reduced mod m.

Row r holds a_{r,1..n}, where a_{r,s} is the coefficient of x_{s-i+1} in
coordinate i of D^r(x). The rows obey a_{r,s} = a_{r-1,s} + a_{r-1,s-1}
with s taken cyclically (a_{r,0} = a_{r,n}).

For n = 3 the row is written (a_r, b_r, c_r).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator

from .core import ModulusMismatch, check_modulus

MAX_EXPANSION_J = 64


@dataclass(frozen=True)
class CoeffRow:
    r: int
    n: int
    m: int
    coeffs: tuple[int, ...]

    def basic_image(self) -> tuple[int, ...]:
        """D^r(0,...,0,1) = (a_{r,n}, ..., a_{r,1})."""
        return self.coeffs[::-1]


@dataclass(frozen=True)
class CoeffTriple:
    r: int
    m: int
    a: int
    b: int
    c: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


def _next_row(row: tuple[int, ...], m: int) -> tuple[int, ...]:
    # row[s-1] with s = 0 wraps to row[-1]
    return tuple([(row[s] + row[s - 1]) % m for s in range(len(row))])


def coeff_rows(n: int, m: int) -> Iterator[CoeffRow]:
    """Rows r = 0, 1, 2, ... of the recurrence, without end."""
    check_modulus(m)
    if n < 2:
        raise ValueError("dimension must be at least 2")
    row = ((1 % m),) + (0,) * (n - 1)
    r = 0
    while True:
        yield CoeffRow(r, n, m, row)
        row = _next_row(row, m)
        r += 1


def coeff_row(r: int, n: int, m: int) -> CoeffRow:
    if r < 0:
        raise ValueError("step index must be non-negative")
    for row in coeff_rows(n, m):
        if row.r == r:
            return row
    raise AssertionError("unreachable")


def coeff_triples(m: int) -> Iterator[CoeffTriple]:
    for row in coeff_rows(3, m):
        yield CoeffTriple(row.r, m, *row.coeffs)


def compose_triples(t: CoeffTriple, r: CoeffTriple) -> CoeffTriple:
    """The triple at index t.r + r.r, from the n = 3 composition law."""
    if t.m != r.m:
        raise ModulusMismatch(f"cannot compose triples mod {t.m} and mod {r.m}")
    m = t.m
    return CoeffTriple(
        t.r + r.r,
        m,
        (t.a * r.a + t.b * r.c + t.c * r.b) % m,
        (t.a * r.b + t.b * r.a + t.c * r.c) % m,
        (t.a * r.c + t.b * r.b + t.c * r.a) % m,
    )


def coeff_triple(r: int, m: int, method: str = "doubling") -> CoeffTriple:
    """(a_r, b_r, c_r) mod m.

    ``method="linear"`` runs the recurrence r times; ``"doubling"`` uses
    repeated squaring of the composition law and takes O(log r) products.
    """
    check_modulus(m)
    if r < 0:
        raise ValueError("step index must be non-negative")
    if method == "linear":
        row = coeff_row(r, 3, m)
        return CoeffTriple(r, m, *row.coeffs)
    if method != "doubling":
        raise ValueError(f"unknown method {method!r}")

    result = CoeffTriple(0, m, 1 % m, 0, 0)
    base = CoeffTriple(1, m, 1 % m, 1 % m, 0)
    k = r
    while k:
        if k & 1:
            result = compose_triples(base, result)
        k >>= 1
        if k:
            base = compose_triples(base, base)
    return result


# (r mod 6) -> (coordinate that stands apart, offset): the other two are
# equal, and the odd one out equals them plus the offset.
_MOD6 = {
    0: ("a", +1),
    1: ("c", -1),
    2: ("b", +1),
    3: ("a", -1),
    4: ("c", +1),
    5: ("b", -1),
}


def check_mod6_relation(tr: CoeffTriple) -> bool:
    """Whether tr satisfies the equal-pair relation fixed by r mod 6.

    r = 0: a = b+1 = c+1      r = 3: a = b-1 = c-1
    r = 1: c = a-1 = b-1      r = 4: c = a+1 = b+1
    r = 2: b = a+1 = c+1      r = 5: b = a-1 = c-1
    """
    m = tr.m
    odd, offset = _MOD6[tr.r % 6]
    vals = {"a": tr.a, "b": tr.b, "c": tr.c}
    lone = vals.pop(odd)
    x, y = vals.values()
    return x % m == y % m and lone % m == (x + offset) % m


def check_doubling(r: int, m: int) -> bool:
    """Doubling of one coordinate from step r-1 to r.

    r = 0 mod 3: a_r = 2a_{r-1} = 2c_{r-1}
    r = 1 mod 3: c_r = 2c_{r-1} = 2b_{r-1}
    r = 2 mod 3: b_r = 2b_{r-1} = 2a_{r-1}
    """
    if r < 2:
        raise ValueError("doubling relation needs r >= 2")
    prev = coeff_triple(r - 1, m)
    cur = coeff_triple(r, m)
    return doubling_holds(prev, cur)


def doubling_holds(prev: CoeffTriple, cur: CoeffTriple) -> bool:
    m = cur.m
    case = cur.r % 3
    if case == 0:
        lhs, p1, p2 = cur.a, prev.a, prev.c
    elif case == 1:
        lhs, p1, p2 = cur.c, prev.c, prev.b
    else:
        lhs, p1, p2 = cur.b, prev.b, prev.a
    return lhs % m == 2 * p1 % m == 2 * p2 % m


def b_expansion(j: int, k: int, m: int) -> int:
    """b_{jk} mod m from b_k by the binomial expansion, for k = 0 mod 6.

    b_{jk} = sum_{i=0}^{j-1} 3^(j-i-1) * C(j, j-i) * b_k^(j-i)
    """
    check_modulus(m)
    if k % 6 != 0 or k < 0:
        raise ValueError(f"k must be a non-negative multiple of 6, got {k}")
    if not 1 <= j <= MAX_EXPANSION_J:
        raise ValueError(f"j must be in [1, {MAX_EXPANSION_J}], got {j}")
    bk = coeff_triple(k, m).b
    total = 0
    for i in range(j):
        e = j - i
        total += pow(3, e - 1, m) * (comb(j, e) % m) * pow(bk, e, m)
    return total % m

"""Integer helpers for the closed-form period."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm, prod

from sympy import factorint, isprime

MAX_FACTOR_INPUT = 2**63


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __iter__(self):
        return iter(self.factors)

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def product(self) -> int:
        return prod(p**e for p, e in self.factors)


def factorize(v: int) -> Factorization:
    if not 1 <= v < MAX_FACTOR_INPUT:
        raise ValueError(f"can only factor 1 <= v < 2^63, got {v}")
    return Factorization(v, tuple(sorted(factorint(v).items())))


def _require_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or not isprime(p):
        raise ValueError(f"{p} is not an odd prime")


def mult_order_2(p: int) -> int:
    """Smallest k >= 1 with 2^k = 1 mod p."""
    _require_odd_prime(p)
    k = p - 1
    for q, _ in factorize(p - 1):
        while k % q == 0 and pow(2, k // q, p) == 1:
            k //= q
    return k


def euler_phi(v: int) -> int:
    result = v
    for p, _ in factorize(v):
        result = result // p * (p - 1)
    return result


def euler_sum_check(a: int, v: int) -> bool:
    """Evaluate 1 + a + ... + a^(phi(v)-1) mod v and report whether it is 0.

    Requires gcd(a, v) = gcd(a - 1, v) = 1.
    """
    if a < 2 or v < 2:
        raise ValueError("need a >= 2 and v >= 2")
    if gcd(a, v) != 1 or gcd(a - 1, v) != 1:
        raise ValueError(f"gcd condition fails for a={a}, v={v}")
    total = 0
    term = 1
    for _ in range(euler_phi(v)):
        total = (total + term) % v
        term = term * a % v
    return total == 0


@dataclass(frozen=True)
class FermatProbe:
    p: int
    residue: int
    is_wieferich: bool


def fermat_quotient_probe(p: int) -> FermatProbe:
    """2^(p-1) mod p^2; a Wieferich prime is one where this is 1."""
    _require_odd_prime(p)
    if p >= 2**31:
        raise ValueError("probe is limited to p < 2^31")
    residue = pow(2, p - 1, p * p)
    return FermatProbe(p, residue, residue == 1)


def lcm_all(values) -> int:
    return lcm(*values) if values else 1


def two_adic(v: int) -> int:
    if v < 1:
        raise ValueError("need a positive integer")
    return (v & -v).bit_length() - 1

"""Batteries that check the coefficient and number-theory identities in bulk."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import islice
from math import gcd

from sympy import primerange

from .coefficients import (
    b_expansion,
    check_mod6_relation,
    coeff_rows,
    coeff_triple,
    coeff_triples,
    compose_triples,
    doubling_holds,
)
from .core import ModTuple, step_budget, step_raw
from .ntheory import euler_sum_check, factorize, fermat_quotient_probe, mult_order_2
from .orbit import orbit_info
from .period import formula_period

MAX_REPORTED_FAILURES = 5


@dataclass
class BatteryResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    failure_count: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def fail(self, msg: str) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_REPORTED_FAILURES:
            self.failures.append(msg)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        s = f"{status} {self.name}: {self.checked} checked, {self.failure_count} failed"
        for f in self.failures:
            s += f"\n    {f}"
        for n in self.notes:
            s += f"\n    note: {n}"
        return s


def row_sums(max_r: int, moduli, dims=(3, 4, 5)) -> BatteryResult:
    res = BatteryResult("row-sum")
    for m in moduli:
        for n in dims:
            power = 1 % m
            for row in islice(coeff_rows(n, m), max_r + 1):
                res.checked += 1
                if sum(row.coeffs) % m != power:
                    res.fail(f"m={m} n={n} r={row.r}")
                power = power * 2 % m
    return res


def basic_sequence(max_r: int, moduli, dims=(3, 4)) -> BatteryResult:
    res = BatteryResult("basic-sequence")
    for m in moduli:
        for n in dims:
            x = ModTuple.basic(m, n).entries
            for row in islice(coeff_rows(n, m), min(max_r, 200) + 1):
                res.checked += 1
                if row.basic_image() != x:
                    res.fail(f"m={m} n={n} r={row.r}")
                x = step_raw(x, m)
    return res


def _linear_triples(m: int, count: int):
    return list(islice(coeff_triples(m), count))


def composition(max_r: int, moduli, pairs: int = 500, seed: int = 0) -> BatteryResult:
    res = BatteryResult("composition")
    rng = random.Random(seed)
    for m in moduli:
        table = _linear_triples(m, 2 * max_r + 1)
        for _ in range(pairs):
            r = rng.randint(0, max_r)
            t = rng.randint(0, max_r)
            res.checked += 1
            if compose_triples(table[t], table[r]) != table[r + t]:
                res.fail(f"m={m} r={r} t={t}")
    return res


def doubling_agreement(max_r: int, moduli) -> BatteryResult:
    res = BatteryResult("doubling-vs-linear")
    for m in moduli:
        for lin in islice(coeff_triples(m), max_r + 1):
            res.checked += 1
            if coeff_triple(lin.r, m) != lin:
                res.fail(f"m={m} r={lin.r}")
    return res


def mod6_relations(max_r: int, moduli) -> BatteryResult:
    res = BatteryResult("mod6-relation")
    for m in moduli:
        for tr in islice(coeff_triples(m), max_r + 1):
            res.checked += 1
            if not check_mod6_relation(tr):
                res.fail(f"m={m} r={tr.r} triple={tr.as_tuple()}")
    return res


def doubling_relations(max_r: int, moduli) -> BatteryResult:
    res = BatteryResult("doubling-relation")
    for m in moduli:
        prev = None
        for tr in islice(coeff_triples(m), max_r + 1):
            if tr.r >= 2:
                res.checked += 1
                if not doubling_holds(prev, tr):
                    res.fail(f"m={m} r={tr.r}")
            prev = tr
    return res


def b_expansions(moduli, max_j: int = 6, ks=(6, 12, 18)) -> BatteryResult:
    res = BatteryResult("b-expansion")
    for m in moduli:
        table = _linear_triples(m, max_j * max(ks) + 1)
        for k in ks:
            for j in range(1, max_j + 1):
                res.checked += 1
                if b_expansion(j, k, m) != table[j * k].b:
                    res.fail(f"m={m} j={j} k={k}")
    return res


def six_divides_period(moduli) -> BatteryResult:
    res = BatteryResult("six-divides-period")
    budget = step_budget()
    for m in moduli:
        if m < 3:
            continue
        if formula_period(m) > budget:
            res.notes.append(f"m={m} skipped: over step budget")
            continue
        res.checked += 1
        per = orbit_info(ModTuple.basic(m, 3)).per
        if per % 6:
            res.fail(f"m={m} period={per}")
    return res


def euler_sums(limit: int = 200, moduli=()) -> BatteryResult:
    res = BatteryResult("euler-sum")
    pairs = [(a, v) for a in range(2, limit + 1) for v in range(2, limit + 1)]
    pairs += [(2, v) for v in moduli if v > limit]
    for a, v in pairs:
        if gcd(a, v) != 1 or gcd(a - 1, v) != 1:
            continue
        res.checked += 1
        if not euler_sum_check(a, v):
            res.fail(f"a={a} v={v}")
    return res


def order_divides(limit: int = 10**4) -> BatteryResult:
    res = BatteryResult("order-divides-p-1")
    for p in primerange(3, limit + 1):
        res.checked += 1
        if (p - 1) % mult_order_2(p):
            res.fail(f"p={p}")
    return res


def fermat_probes(moduli) -> BatteryResult:
    """Probe 2^(p-1) mod p^2 for the odd prime factors of the moduli.

    Informational: a Wieferich hit is reported as a note, not a failure.
    """
    res = BatteryResult("fermat-quotient-probe")
    seen = set()
    for m in moduli:
        for p, _ in factorize(m):
            if p == 2 or p in seen or p >= 2**31:
                continue
            seen.add(p)
            res.checked += 1
            if fermat_quotient_probe(p).is_wieferich:
                res.notes.append(f"{p} is a Wieferich prime: 2^{p - 1} = 1 mod {p}^2")
    return res


def run_all(max_r: int, moduli, seed: int = 0) -> list[BatteryResult]:
    moduli = list(moduli)
    results = [
        row_sums(max_r, moduli),
        basic_sequence(max_r, moduli),
        composition(max_r, moduli, seed=seed),
        doubling_agreement(max_r, moduli),
        mod6_relations(max_r, moduli),
        doubling_relations(max_r, moduli),
        b_expansions(moduli),
        six_divides_period(moduli),
        euler_sums(moduli=moduli),
        order_divides(),
        fermat_probes(moduli),
    ]
    return results

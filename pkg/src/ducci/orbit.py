"""Orbits of the Ducci map: Len/Per, predecessors, the cycle subgroup, graphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import BudgetExceeded, ModTuple, check_modulus, enum_budget, step_raw


@dataclass(frozen=True)
class OrbitInfo:
    len: int
    per: int
    cycle_entry: ModTuple


def sequence(u: ModTuple, count: int) -> list[ModTuple]:
    """[u, D(u), ..., D^count(u)]."""
    if count < 0:
        raise ValueError("count must be non-negative")
    m = u.m
    x = u.entries
    out = [u]
    for _ in range(count):
        x = step_raw(x, m)
        out.append(ModTuple(m, x))
    return out


def iterate(u: ModTuple, k: int) -> ModTuple:
    """D^k(u)."""
    m = u.m
    x = u.entries
    for _ in range(k):
        x = step_raw(x, m)
    return ModTuple(m, x)


def orbit_info(u: ModTuple) -> OrbitInfo:
    """Pre-period and period of u's Ducci sequence by Brent's method.

    Memory use is constant: only the moving point and the power-of-two
    anchor are kept.
    """
    m = u.m
    x0 = u.entries

    power = per = 1
    anchor = x0
    hare = step_raw(x0, m)
    while anchor != hare:
        if power == per:
            anchor = hare
            power *= 2
            per = 0
        hare = step_raw(hare, m)
        per += 1

    # Second pass: a lead pointer `per` steps ahead meets the trailing
    # pointer exactly at the cycle entry.
    lead = x0
    for _ in range(per):
        lead = step_raw(lead, m)
    trail = x0
    length = 0
    while trail != lead:
        trail = step_raw(trail, m)
        lead = step_raw(lead, m)
        length += 1
    return OrbitInfo(length, per, ModTuple(m, trail))


def basic_len_per(m: int, n: int) -> OrbitInfo:
    """(L_m(n), P_m(n)): Len and Per of (0,...,0,1)."""
    check_modulus(m)
    if n < 2:
        raise ValueError("dimension must be at least 2")
    return orbit_info(ModTuple.basic(m, n))


def _predecessors_raw(u: tuple[int, ...], m: int) -> list[tuple[int, ...]]:
    n = len(u)
    # With v_1 = x the rest is forced: v_{k+1} = u_k - v_k. Write
    # v_n = c + sign * x and impose v_n + v_1 = u_n.
    c = 0
    for k in range(n - 1):
        c = u[k] - c
    sign = 1 if n % 2 == 1 else -1
    target = (u[-1] - c) % m
    if sign == -1:
        # n even: the closing equation does not involve x.
        starts: range | list[int] = range(m) if target == 0 else []
    elif m % 2 == 1:
        starts = [target * ((m + 1) // 2) % m]
    elif target % 2 == 0:
        starts = [target // 2, target // 2 + m // 2]
    else:
        starts = []

    out = []
    for x in starts:
        v = [x]
        for k in range(n - 1):
            v.append((u[k] - v[k]) % m)
        out.append(tuple(v))
    out.sort()
    return out


def predecessors(u: ModTuple) -> list[ModTuple]:
    """All v with D(v) = u, in lexicographic order."""
    return [ModTuple(u.m, v) for v in _predecessors_raw(u.entries, u.m)]


def _check_space(m: int, n: int, budget: int | None) -> int:
    check_modulus(m)
    if n < 2:
        raise ValueError("dimension must be at least 2")
    budget = enum_budget() if budget is None else budget
    size = m**n
    if size > budget:
        raise BudgetExceeded(f"Z_{m}^{n} enumeration", size, budget)
    return budget


def kernel(m: int, n: int, budget: int | None = None) -> list[ModTuple]:
    """K(Z_m^n): tuples lying on some Ducci cycle, sorted.

    Computed as the stable image of repeated application of D to the whole
    group.
    """
    _check_space(m, n, budget)
    current = set(itertools.product(range(m), repeat=n))
    while True:
        image = {step_raw(x, m) for x in current}
        if len(image) == len(current):
            break
        current = image
    return [ModTuple(m, x) for x in sorted(current)]


@dataclass
class TransitionGraph:
    m: int
    n: int
    nodes: list[ModTuple]
    edges: dict[ModTuple, ModTuple]
    component_roots: list[ModTuple] | None = field(default=None)

    def edge_list(self) -> list[tuple[ModTuple, ModTuple]]:
        return [(v, self.edges[v]) for v in self.nodes]

    def cycles(self) -> list[list[ModTuple]]:
        """Each cycle once, starting from its smallest node."""
        on_cycle: set[ModTuple] = set()
        for v in self.nodes:
            seen = set()
            x = v
            while x not in seen:
                seen.add(x)
                x = self.edges[x]
            if x in on_cycle:
                continue
            y = x
            while True:
                on_cycle.add(y)
                y = self.edges[y]
                if y == x:
                    break
        result = []
        done: set[ModTuple] = set()
        for v in sorted(on_cycle):
            if v in done:
                continue
            cyc = [v]
            done.add(v)
            y = self.edges[v]
            while y != v:
                cyc.append(y)
                done.add(y)
                y = self.edges[y]
            result.append(cyc)
        return result


def build_graph(
    m: int,
    n: int,
    roots: list[ModTuple] | None = None,
    budget: int | None = None,
) -> TransitionGraph:
    """Functional graph of D on Z_m^n, or the weak components of `roots`."""
    check_modulus(m)
    if n < 2:
        raise ValueError("dimension must be at least 2")
    if not roots:
        _check_space(m, n, budget)
        raw = list(itertools.product(range(m), repeat=n))
        nodes = [ModTuple(m, x) for x in raw]
        edges = {v: ModTuple(m, step_raw(v.entries, m)) for v in nodes}
        return TransitionGraph(m, n, nodes, edges, None)

    budget = enum_budget() if budget is None else budget
    for r in roots:
        if r.m != m or r.n != n:
            raise ValueError(f"root {r} is not in Z_{m}^{n}")
    seen: set[tuple[int, ...]] = set()
    frontier = [r.entries for r in roots]
    for x in frontier:
        seen.add(x)
    while frontier:
        x = frontier.pop()
        nbrs = [step_raw(x, m)] + _predecessors_raw(x, m)
        for y in nbrs:
            if y not in seen:
                seen.add(y)
                if len(seen) > budget:
                    raise BudgetExceeded("component closure", len(seen), budget)
                frontier.append(y)
    nodes = [ModTuple(m, x) for x in sorted(seen)]
    edges = {v: ModTuple(m, step_raw(v.entries, m)) for v in nodes}
    return TransitionGraph(m, n, nodes, edges, list(roots))

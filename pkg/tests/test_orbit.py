import itertools
import random

import pytest

from ducci.core import BudgetExceeded, ModTuple, ducci_step, rotate
from ducci.orbit import (
    basic_len_per,
    build_graph,
    iterate,
    kernel,
    orbit_info,
    predecessors,
    sequence,
)

from oracles import all_tuples, brute_predecessors, naive_len_per, naive_step, on_cycle


def T(*xs, m):
    return ModTuple(m, xs)


def test_sequence_worked_example():
    got = sequence(T(3, 4, 4, m=6), 7)
    expected = [(3, 4, 4), (1, 2, 1), (3, 3, 2), (0, 5, 5), (5, 4, 5), (3, 3, 4), (0, 1, 1), (1, 2, 1)]
    assert [v.entries for v in got] == expected


def test_sequence_small_cases():
    assert sequence(T(0, 0, 0, m=4), 2) == [T(0, 0, 0, m=4)] * 3
    got = [v.entries for v in sequence(T(0, 0, 1, m=2), 4)]
    assert got == [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 0), (0, 1, 1)]
    assert sequence(T(1, 1, m=3), 0) == [T(1, 1, m=3)]
    with pytest.raises(ValueError):
        sequence(T(1, 1, m=3), -1)


@pytest.mark.parametrize(
    "u, length, per",
    [
        (T(0, 0, 1, m=6), 1, 6),
        (T(1, 2, 1, m=6), 0, 6),
        (T(0, 0, 1, m=3), 0, 6),
        (T(0, 0, 0, m=7), 0, 1),
        (T(3, 4, 4, m=6), 1, 6),
    ],
)
def test_orbit_info_examples(u, length, per):
    info = orbit_info(u)
    assert (info.len, info.per) == (length, per)
    assert info.cycle_entry == iterate(u, length)


@pytest.mark.parametrize("m, n, expected", [(6, 3, (1, 6)), (2, 3, (1, 3)), (3, 3, (0, 6)), (1, 3, (0, 1))])
def test_basic_len_per(m, n, expected):
    info = basic_len_per(m, n)
    assert (info.len, info.per) == expected


def _assert_minimal(u, info):
    a = iterate(u, info.len)
    assert iterate(a, info.per) == a
    if info.len > 0:
        b = iterate(u, info.len - 1)
        assert iterate(b, info.per) != b
    x = a
    for _ in range(1, info.per):
        x = ducci_step(x)
        assert x != a


def test_minimality_and_divisor_property_exhaustive():
    for m in range(1, 7):
        basic = basic_len_per(m, 3)
        for xs in all_tuples(m, 3):
            u = ModTuple(m, xs)
            info = orbit_info(u)
            assert (info.len, info.per) == naive_len_per(xs, m)
            _assert_minimal(u, info)
            assert basic.per % info.per == 0
            assert info.len <= basic.len


@pytest.mark.parametrize("n", [2, 4, 5, 6, 7])
def test_orbit_info_other_dimensions(n):
    rng = random.Random(n)
    for _ in range(200):
        m = rng.randint(1, 30)
        xs = tuple(rng.randrange(m) for _ in range(n))
        info = orbit_info(ModTuple(m, xs))
        assert (info.len, info.per) == naive_len_per(xs, m)


@pytest.mark.parametrize(
    "u, expected",
    [
        (T(1, 2, 1, m=6), [T(0, 1, 1, m=6), T(3, 4, 4, m=6)]),
        (T(0, 0, 1, m=3), [T(2, 1, 2, m=3)]),
        (T(0, 0, 1, m=6), []),
    ],
)
def test_predecessor_examples(u, expected):
    assert predecessors(u) == expected


def test_predecessor_example_oracle():
    # (0,0,1) mod 6 has no predecessor: brute force over all 216 tuples
    assert brute_predecessors((0, 0, 1), 6) == []


@pytest.mark.parametrize("m, n", [(m, n) for m in range(1, 9) for n in (2, 3, 4)] + [(3, 5), (4, 5), (2, 6)])
def test_predecessors_match_brute_force(m, n):
    by_image = {}
    for v in all_tuples(m, n):
        by_image.setdefault(naive_step(v, m), []).append(v)
    for u in all_tuples(m, n):
        got = [p.entries for p in predecessors(ModTuple(m, u))]
        assert got == sorted(by_image.get(u, []))


@pytest.mark.parametrize("m", [2, 4, 6, 8, 10])
def test_predecessor_dichotomy(m):
    half = m // 2
    with_preds = 0
    for xs in all_tuples(m, 3):
        preds = predecessors(ModTuple(m, xs))
        assert len(preds) in (0, 2)
        if preds:
            with_preds += 1
            a, b = preds
            assert all((y - x) % m == half for x, y in zip(a, b))
    assert with_preds == m**3 // 2


@pytest.mark.parametrize("m, n", [(m, n) for m in (3, 5, 7) for n in (3, 5)])
def test_bijective_for_odd_odd(m, n):
    if m**n > 20000:
        rng = random.Random(m * n)
        sample = [tuple(rng.randrange(m) for _ in range(n)) for _ in range(2000)]
    else:
        sample = all_tuples(m, n)
    for xs in sample:
        assert len(predecessors(ModTuple(m, xs))) == 1


def test_kernel_examples():
    assert len(kernel(3, 3)) == 27
    assert [v.entries for v in kernel(2, 3)] == [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]
    assert kernel(1, 3) == [T(0, 0, 0, m=1)]


def test_kernel_example_oracle():
    assert [xs for xs in all_tuples(2, 3) if on_cycle(xs, 2)] == [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]


@pytest.mark.parametrize("m, n", [(4, 3), (6, 3), (8, 3), (9, 3), (10, 3), (4, 4), (6, 4), (3, 5), (2, 7)])
def test_kernel_matches_oracle_and_is_subgroup(m, n):
    k = kernel(m, n)
    assert [v.entries for v in k] == [xs for xs in all_tuples(m, n) if on_cycle(xs, m)]
    ks = set(k)
    assert ModTuple.zero(m, n) in ks
    for u in k:
        for v in k:
            assert u + v in ks
        for s in range(n):
            assert rotate(u, s) in ks


@pytest.mark.parametrize("m", [2, 4, 8, 16])
def test_d_squared_is_rotation_on_cycles_for_powers_of_two(m):
    for u in kernel(m, 3):
        assert iterate(u, 2) == rotate(u, 1)


@pytest.mark.parametrize("p, exhaustive", [(5, True), (11, True), (17, False), (23, False)])
def test_d_p_minus_1_is_double_rotation(p, exhaustive):
    if exhaustive:
        sample = all_tuples(p, 3)
    else:
        rng = random.Random(p)
        sample = [tuple(rng.randrange(p) for _ in range(3)) for _ in range(10**4)]
    for xs in sample:
        u = ModTuple(p, xs)
        assert iterate(u, p - 1) == rotate(u, 2)


def test_kernel_budget():
    with pytest.raises(BudgetExceeded):
        kernel(10, 3, budget=999)
    assert len(kernel(10, 3, budget=1000)) > 0


def test_kernel_budget_from_env(monkeypatch):
    monkeypatch.setenv("DUCCI_BUDGET", "100")
    with pytest.raises(BudgetExceeded):
        kernel(5, 3)


FIGURE_Z6 = {
    ((0, 0, 1), (0, 1, 1)),
    ((0, 1, 1), (1, 2, 1)),
    ((3, 4, 4), (1, 2, 1)),
    ((1, 2, 1), (3, 3, 2)),
    ((4, 5, 4), (3, 3, 2)),
    ((3, 3, 2), (0, 5, 5)),
    ((0, 0, 5), (0, 5, 5)),
    ((0, 5, 5), (5, 4, 5)),
    ((3, 2, 2), (5, 4, 5)),
    ((5, 4, 5), (3, 3, 4)),
    ((2, 1, 2), (3, 3, 4)),
    ((3, 3, 4), (0, 1, 1)),
}

FIGURE_Z3 = {
    ((0, 0, 1), (0, 1, 1)),
    ((0, 1, 1), (1, 2, 1)),
    ((1, 2, 1), (0, 0, 2)),
    ((0, 0, 2), (0, 2, 2)),
    ((0, 2, 2), (2, 1, 2)),
    ((2, 1, 2), (0, 0, 1)),
}


def _edge_set(g):
    return {(a.entries, b.entries) for a, b in g.edge_list()}


def test_graph_component_z6():
    g = build_graph(6, 3, [T(3, 4, 4, m=6)])
    assert len(g.nodes) == 12
    assert _edge_set(g) == FIGURE_Z6
    cycles = g.cycles()
    assert len(cycles) == 1 and len(cycles[0]) == 6


def test_graph_component_z3():
    g = build_graph(3, 3, [T(0, 0, 1, m=3)])
    assert _edge_set(g) == FIGURE_Z3
    assert [len(c) for c in g.cycles()] == [6]


def test_full_graph():
    g = build_graph(2, 3)
    assert len(g.nodes) == 8 and len(g.edges) == 8
    assert g.component_roots is None
    nodes = set(g.nodes)
    assert all(g.edges[v] in nodes for v in g.nodes)


def test_component_is_weakly_connected_closure():
    # Components of the full graph, found by union-find, must match build_graph(root).
    m, n = 6, 3
    parent = {xs: xs for xs in all_tuples(m, n)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for xs in all_tuples(m, n):
        parent[find(xs)] = find(naive_step(xs, m))
    comps = {}
    for xs in all_tuples(m, n):
        comps.setdefault(find(xs), set()).add(xs)
    for comp in comps.values():
        root = min(comp)
        g = build_graph(m, n, [ModTuple(m, root)])
        assert {v.entries for v in g.nodes} == comp


def test_graph_budget():
    with pytest.raises(BudgetExceeded):
        build_graph(6, 3, budget=100)
    with pytest.raises(BudgetExceeded):
        build_graph(5, 3, [T(0, 0, 1, m=5)], budget=10)


def test_graph_rejects_foreign_root():
    with pytest.raises(ValueError):
        build_graph(6, 3, [T(0, 0, 1, m=5)])

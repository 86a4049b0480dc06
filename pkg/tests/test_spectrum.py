import random

import pytest

from gsplines import (
    FactoredElement,
    UnrelatedGraphs,
    base_change_commutes,
    contract_edge,
    delete_edge,
    delete_vertex,
    fiber_over,
    make_factor,
    normalize,
    spectrum_diff,
    spectrum_report,
)
from conftest import ZZ, int_graph, int_label


def classes(partition):
    return tuple(tuple(c) for c in partition)


# --- spectrum_report -----------------------------------------------------------


def test_triangle_report(triangle):
    rep = spectrum_report(triangle)
    assert rep.relevant_primes == (3, 5, 7)
    assert rep.fibers[3] == (("u", "v"), ("w",))
    assert rep.fibers[5] == (("u",), ("v", "w"))
    assert rep.fibers[7] == (("u", "w"), ("v",))
    # 3 nodes, 3 links, connected: cycle rank 1
    assert len(rep.links) == 3
    assert rep.hole_count == 1
    assert rep.components == 1
    assert rep.generic_points == 3


def test_path_report(path_graph):
    rep = spectrum_report(path_graph)
    assert rep.hole_count == 0
    assert rep.components == 1


def test_edgeless_report():
    g = int_graph(["u", "v", "w"], [])
    rep = spectrum_report(g)
    assert rep.components == 3
    assert rep.hole_count == 0
    assert rep.relevant_primes == ()


def test_zero_label_edge_report():
    g = normalize(ZZ, ["u", "v"], [("u", "v", FactoredElement.zero())])
    rep = spectrum_report(g)
    assert rep.components == 1
    assert rep.hole_count == 0
    assert rep.fully_glued_pairs == (("u", "v"),)
    assert rep.generic_points == 1


def test_multi_factor_label_creates_parallel_links():
    # One edge labeled by 6 = 2*3 glues at two distinct points: the gluing
    # multigraph has two parallel links, hence one hole.
    g = int_graph(["u", "v"], [("u", "v", 6)])
    rep = spectrum_report(g)
    assert len(rep.links) == 2
    assert rep.hole_count == 1


def test_trees_with_single_factor_labels_have_no_holes():
    rng = random.Random(43)
    for _ in range(20):
        nv = rng.randrange(1, 7)
        vs = [f"v{i}" for i in range(nv)]
        edges = []
        for i in range(1, nv):
            parent = rng.randrange(i)
            edges.append((vs[parent], vs[i], rng.choice([2, 3, 5, 7, 9])))
        g = int_graph(vs, edges)
        assert spectrum_report(g).hole_count == 0


def test_components_match_underlying_graph():
    rng = random.Random(67)
    from gsplines import connected_components

    for _ in range(20):
        nv = rng.randrange(1, 7)
        vs = [f"v{i}" for i in range(nv)]
        edges = []
        for _ in range(rng.randrange(0, nv + 2)):
            if nv < 2:
                break
            a, b = rng.sample(vs, 2)
            edges.append((a, b, rng.choice([0, 2, 3, 6])))
        g = int_graph(vs, edges)
        assert spectrum_report(g).components == len(connected_components(g))


def test_single_cycle_coprime_labels_one_hole():
    g = int_graph(
        ["a", "b", "c", "d"],
        [("a", "b", 2), ("b", "c", 3), ("c", "d", 5), ("a", "d", 7)],
    )
    assert spectrum_report(g).hole_count == 1


# --- fiber_over -----------------------------------------------------------------


def test_fiber_examples(triangle):
    assert fiber_over(triangle, make_factor(3, ZZ)) == (("u", "v"), ("w",))
    assert fiber_over(triangle, make_factor(2, ZZ)) == (("u",), ("v",), ("w",))
    g = normalize(
        ZZ,
        ["u", "v"],
        [("u", "v", FactoredElement.zero())],
    )
    assert fiber_over(g, make_factor(11, ZZ)) == (("u", "v"),)


def test_fiber_counts(triangle):
    rep = spectrum_report(triangle)
    for p in rep.relevant_primes:
        divisible = sum(
            1
            for e in triangle.edges
            if any(f.element == p for f in e.label.factors)
        )
        # one p-divisible edge here, never a p-cycle, so classes = |V| - edges
        assert len(rep.fibers[p]) == len(triangle.vertices) - divisible


# --- base change ------------------------------------------------------------------


def test_base_change_triangle(triangle):
    check = base_change_commutes(triangle, [make_factor(3, ZZ)])
    assert check.commutes, check.discrepancies
    assert check.restricted.hole_count == 0
    assert spectrum_report(triangle).hole_count == 1


def test_base_change_empty_invert(triangle):
    assert base_change_commutes(triangle, []).commutes


def test_base_change_hexchain(hexchain):
    inv = [make_factor(p, ZZ) for p in (3, 5, 2, 11, 13)]
    check = base_change_commutes(hexchain, inv)
    assert check.commutes, check.discrepancies
    assert check.restricted.relevant_primes == (7,)
    assert check.restricted.hole_count == 1  # hexagon three's cycle survives


def test_base_change_random():
    rng = random.Random(47)
    primes = [2, 3, 5, 7, 11]
    for _ in range(60):
        nv = rng.randrange(2, 7)
        vs = [f"v{i}" for i in range(nv)]
        edges = []
        for _ in range(rng.randrange(0, nv + 3)):
            a, b = rng.sample(vs, 2)
            n = rng.choice([0, 1, 1, 1])
            label = 0
            if n:
                label = rng.choice(primes) * rng.choice([1, rng.choice(primes)])
            edges.append((a, b, label))
        g = int_graph(vs, edges)
        invert = [make_factor(p, ZZ) for p in rng.sample(primes, rng.randrange(0, 4))]
        check = base_change_commutes(g, invert)
        assert check.commutes, (edges, invert, check.discrepancies)


# --- diffs -----------------------------------------------------------------------


def test_diff_delete_edge(triangle):
    after = delete_edge(triangle, "u", "v")
    diff = spectrum_diff(triangle, after)
    assert diff.before.hole_count == 1
    assert diff.after.hole_count == 0
    assert diff.after.components == 1
    assert diff.narrative[0] == "operation: delete-edge u-v"
    assert "holeCount: 1 -> 0" in diff.narrative


def test_diff_two_vertex_split(triangle):
    g = int_graph(["u", "v"], [("u", "v", 3)])
    after = delete_edge(g, "u", "v")
    diff = spectrum_diff(g, after)
    assert diff.before.components == 1
    assert diff.after.components == 2
    assert "components: 1 -> 2 (copies no longer glued)" in diff.narrative


def test_diff_contract(triangle):
    after = contract_edge(triangle, "u", "v")
    diff = spectrum_diff(triangle, after)
    assert diff.after.hole_count == 1
    assert "vertices identified: u, v -> u~v" in diff.narrative


def test_diff_delete_vertex(triangle):
    after = delete_vertex(triangle, "w")
    diff = spectrum_diff(triangle, after)
    assert diff.narrative[0] == "operation: delete-vertex w"
    assert diff.after.components == 1


def test_diff_unrelated(triangle):
    other = int_graph(["a", "b"], [("a", "b", 3)])
    with pytest.raises(UnrelatedGraphs):
        spectrum_diff(triangle, other)
    both = delete_edge(delete_edge(triangle, "u", "v"), "v", "w")
    with pytest.raises(UnrelatedGraphs):
        spectrum_diff(triangle, both)


def test_delete_edge_never_increases_holes():
    rng = random.Random(53)
    for _ in range(20):
        nv = rng.randrange(2, 6)
        vs = [f"v{i}" for i in range(nv)]
        edges = []
        for _ in range(rng.randrange(1, nv + 3)):
            a, b = rng.sample(vs, 2)
            edges.append((a, b, rng.choice([2, 3, 5, 6, 0])))
        g = int_graph(vs, edges)
        if not g.edges:
            continue
        e = rng.choice(g.edges)
        after = delete_edge(g, e.a, e.b)
        assert spectrum_report(after).hole_count <= spectrum_report(g).hole_count


def test_contract_preserves_component_count():
    rng = random.Random(59)
    for _ in range(20):
        nv = rng.randrange(2, 6)
        vs = [f"v{i}" for i in range(nv)]
        edges = []
        for _ in range(rng.randrange(1, nv + 3)):
            a, b = rng.sample(vs, 2)
            edges.append((a, b, rng.choice([2, 3, 5, 6])))
        g = int_graph(vs, edges)
        if not g.edges:
            continue
        e = rng.choice(g.edges)
        after = contract_edge(g, e.a, e.b)
        assert spectrum_report(after).components == spectrum_report(g).components

import itertools
import time

import networkx as nx
import pytest

from coblecheck.dynkin import (RootGraph, classify_connected, enumerate_parabolics,
                               induced_d4_vertices, radical_fiber_class, vinberg_check)
from coblecheck.errors import NotAffine, NotConnected


def shape_type(g: nx.Graph, weights: dict) -> tuple[str, str]:
    """Independent oracle: classify a connected weighted graph by its shape alone."""
    n = g.number_of_nodes()
    if any(w == 2 for w in weights.values()):
        return ("affine", "A~1") if n == 2 else ("indefinite", "")
    degs = dict(g.degree())
    if n >= 3 and all(d == 2 for d in degs.values()):
        return "affine", f"A~{n - 1}"
    if not nx.is_tree(g):
        return "indefinite", ""
    if n == 1 or max(degs.values()) <= 2:
        return "finite", f"A{n}"
    branch = [v for v, d in degs.items() if d >= 3]
    if len(branch) == 1:
        c = branch[0]
        if degs[c] == 4:
            return ("affine", "D~4") if n == 5 else ("indefinite", "")
        if degs[c] > 4:
            return "indefinite", ""
        h = g.copy()
        h.remove_node(c)
        arms = sorted(len(comp) for comp in nx.connected_components(h))
        p, q, r = arms
        if p == 1 and q == 1:
            return "finite", f"D{n}"
        table = {(1, 2, 2): ("finite", "E6"), (1, 2, 3): ("finite", "E7"),
                 (1, 2, 4): ("finite", "E8"), (2, 2, 2): ("affine", "E~6"),
                 (1, 3, 3): ("affine", "E~7"), (1, 2, 5): ("affine", "E~8")}
        return table.get((p, q, r), ("indefinite", ""))
    if len(branch) == 2 and all(degs[b] == 3 for b in branch):
        leaves = [sum(1 for w in g[b] if degs[w] == 1) for b in branch]
        if leaves == [2, 2]:
            return "affine", f"D~{n - 1}"
    return "indefinite", ""


def _sweep_cases():
    for g in nx.graph_atlas_g()[1:]:
        n = g.number_of_nodes()
        if n > 6:
            break
        if not nx.is_connected(g):
            continue
        edges = list(g.edges())
        if n <= 4:
            weightings = itertools.product((1, 2), repeat=len(edges))
        else:
            # all-single plus every single doubled edge keeps the sweep fast
            weightings = [tuple(1 for _ in edges)] + [
                tuple(2 if i == k else 1 for i in range(len(edges))) for k in range(len(edges))]
        for ws in weightings:
            yield g, dict(zip(edges, ws))


def test_affine_recognition_agrees_with_shape_on_all_small_graphs():
    count = 0
    for g, weights in _sweep_cases():
        names = {v: f"v{v}" for v in g.nodes()}
        rg = RootGraph(list(names.values()), [(names[a], names[b], w) for (a, b), w in weights.items()])
        cl = classify_connected(rg, rg.vertices)
        assert (cl.kind, cl.type) == shape_type(g, weights), (sorted(weights.items()), cl)
        count += 1
    assert count > 500


def test_affine_multiplicities_are_the_radical():
    rg = RootGraph(["a", "b", "c", "d", "e"], [("a", "c", 1), ("b", "c", 1), ("c", "d", 1),
                                               ("c", "e", 1)])
    cl = classify_connected(rg, rg.vertices)
    assert cl.type == "D~4"
    assert dict(zip(cl.vertices, cl.multiplicities))["c"] == 2
    assert radical_fiber_class(cl)["c"] == 2


def test_radical_requires_affine():
    rg = RootGraph(["a", "b"], [("a", "b", 1)])
    with pytest.raises(NotAffine):
        radical_fiber_class(classify_connected(rg, rg.vertices))


def test_classify_rejects_disconnected():
    rg = RootGraph(["a", "b"], [])
    with pytest.raises(NotConnected):
        classify_connected(rg, ["a", "b"])


def test_rootgraph_rejects_bad_edges():
    with pytest.raises(ValueError):
        RootGraph(["a", "b"], [("a", "b", 3)])
    with pytest.raises(ValueError):
        RootGraph(["a"], [("a", "a", 1)])
    with pytest.raises(ValueError):
        RootGraph(["a", "b"], [("a", "b", 1), ("b", "a", 1)])


def test_induced_d4_needs_independent_leaves():
    claw = RootGraph(list("cxyz"), [("c", "x", 1), ("c", "y", 1), ("c", "z", 1)])
    assert induced_d4_vertices(claw) == set("cxyz")
    tri = RootGraph(list("cxyz"), [("c", "x", 1), ("c", "y", 1), ("c", "z", 1), ("x", "y", 1)])
    assert induced_d4_vertices(tri) == set()


def test_vinberg_on_all_bundled_graphs_is_fast(registry):
    t = time.perf_counter()
    for fx in registry.table1_graphs():
        assert vinberg_check(fx.graph, 9).passed, fx.name
    assert time.perf_counter() - t < 10


def test_deleting_e11_breaks_vinberg(registry):
    g = registry.graph("E7+A1(2)").graph
    assert vinberg_check(g, 9).passed
    r = vinberg_check(g.delete("E11"), 9)
    assert not r.passed
    assert [c.type for c in r.counterexamples] == ["E~7"]


def test_vii_has_two_disjoint_a4_fibrations(registry):
    idx = enumerate_parabolics(registry.graph("VII").graph)
    ranks = {p.rank for p in idx.maximal}
    assert ranks == {8}
    assert any(p.types == ("A~4", "A~4") for p in idx.maximal)


def test_witnesses_have_rank_eight(registry):
    r = vinberg_check(registry.graph("VIII").graph, 9)
    assert r.witnesses and all(p.rank == 8 for p in r.witnesses.values())

import pytest

from coblecheck.cm import (Assumption, EffectiveRoot, blowable, boundary_count, build_cm,
                           classify_root, contribution, decompose_fiber, match_extremal,
                           pair_rule_check, propagate_labels, roots_graph,
                           special_fibration_filter)
from coblecheck.dynkin import RootGraph, classify_connected
from coblecheck.errors import ModelInconsistent, NotARoot, Unsatisfiable
from coblecheck.surface import blowup_fiber

N_SETS = {"E8": [1], "E7+A1(2)": [2], "E7+A1(1)": [1], "E6+A2": [1, 3], "D8": [1],
          "VII": [2, 10], "VIII": [4]}


@pytest.mark.parametrize("name", sorted(N_SETS))
def test_boundary_count_reproduces_table(registry, name):
    fx = registry.graph(name)
    lr = propagate_labels(fx.graph, fx.assumptions)
    bc = boundary_count(fx.graph, lr.labelings, fx.fibration, fx.assumptions)
    assert list(bc.n_values) == N_SETS[name]


def test_d4d4_has_no_halphen_scenario(registry):
    fx = registry.graph("D4D4")
    lr = propagate_labels(fx.graph)
    with pytest.raises(Unsatisfiable):
        boundary_count(fx.graph, lr.labelings, fx.fibration)


@pytest.mark.parametrize("name,forced", [
    ("E8", [f"E{i}" for i in range(1, 11)]),
    ("E7+A1(2)", [f"E{i}" for i in range(1, 11)]),
    ("E7+A1(1)", [f"E{i}" for i in range(1, 12)]),
    ("D8", [f"E{i}" for i in range(1, 11)]),
])
def test_forced_minus2_labels(registry, name, forced):
    lr = propagate_labels(registry.graph(name).graph)
    assert sorted(v for v, k in lr.forced.items() if k == "minus2") == sorted(forced)


def test_vii_fifteen_vertices_take_one_kind(registry):
    fx = registry.graph("VII")
    lr = propagate_labels(fx.graph, fx.assumptions)
    ps = [v for v in fx.graph.vertices if v.startswith("P")]
    assert len(ps) == 15
    assert sorted(lr.restrictions(ps)) == [("minus1root",) * 15, ("minus2",) * 15]


def test_propagation_detects_clash():
    g = RootGraph(list("cxyz"), [("c", "x", 1), ("c", "y", 1), ("c", "z", 1)],
                  kinds={"x": "minus1root"})
    with pytest.raises(Unsatisfiable) as e:
        propagate_labels(g)
    assert e.value.clashes


def test_assumption_excluding_everything():
    g = RootGraph(["a"], [])
    a = Assumption((("a", "minus2"),), (("a", "minus1root"),))
    b = Assumption((("a", "minus1root"),), (("a", "minus2"),))
    with pytest.raises(Unsatisfiable):
        propagate_labels(g, [a, b])


def test_special_fibration_filter_rejects_exactly_five():
    types = ["I0*", "I1*", "I2*", "I3*", "I4*", "II*", "III*", "IV*", "I3", "III", "IV"]
    rejected = {t for t in types if not special_fibration_filter(t, True, True)}
    assert rejected == {"II*", "III*", "I2*", "I3*", "I4*"}
    assert all(special_fibration_filter(t, m, s) for t in types
               for m, s in [(False, True), (True, False), (False, False)])


def test_extremal_tables(registry):
    assert match_extremal(["E~8"], "quasi-elliptic", registry.tables) == [("II*",)]
    assert set(match_extremal(["E~6", "A~2"], "elliptic", registry.tables)) == {
        ("IV*", "IV"), ("IV*", "I3", "I1")}
    assert match_extremal(["A~4", "A~4"], "elliptic", registry.tables) == [("I5", "I5", "I1", "I1")]


def test_contribution_rule():
    assert [contribution(t) for t in ("I1", "I5", "II", "III", "IV")] == [1, 5, 1, 2, 4]
    assert not blowable("I0*") and blowable("IV")


def test_build_cm_requires_boundary(registry):
    m = build_cm(registry.configs["VIII-model"])
    assert m.n == 4 and len(m.cm_basis) == 10
    with pytest.raises(ModelInconsistent):
        build_cm(registry.configs["E8-host"])


def test_classify_roots_in_blown_up_i3():
    h = blowup_fiber("I3")
    r = classify_root({"E1": 2, "B1": "1/2", "B2": "1/2"}, h.result)
    assert r.kind == "minus1root" and r.curve == "E1" and set(r.boundaries) == {"B1", "B2"}
    with pytest.raises(NotARoot):
        classify_root({"E1": 1}, h.result)
    with pytest.raises(NotARoot):
        classify_root({"E1": 2, "B1": 1}, h.result)


def test_pair_rule_minus1_roots_sharing_a_boundary():
    h = blowup_fiber("I3")
    a = EffectiveRoot.minus1("E1", "B1", "B2")
    b = EffectiveRoot.minus1("E2", "B2", "B3")
    rep = pair_rule_check(a, b, h.result)
    assert rep.pairing == 1 and rep.consistent


@pytest.mark.parametrize("t,shape,kinds", [
    ("I5", "A~4", {"minus1root": 5}),
    ("III", "A~1", {"minus1root": 1, "minus2": 1}),
    ("IV", "A~2", {"minus1root": 3}),
])
def test_fiber_decompositions(t, shape, kinds):
    h = blowup_fiber(t)
    parts = decompose_fiber(h)
    g = roots_graph(parts, h.result)
    assert classify_connected(g, g.vertices).type == shape
    got = {}
    for k in g.kinds.values():
        got[k] = got.get(k, 0) + 1
    assert got == kinds


def test_cm_model_realizes_graph_weights(registry):
    from coblecheck.cli import _model_realization
    from coblecheck.lattice import inner
    for name, model in [("E8", "E8-model"), ("E7+A1(2)", "E7+A1(2)-model"), ("VIII", "VIII-model")]:
        g = registry.graph(name).graph
        m, real = _model_realization(registry, model)
        for a in g.vertices:
            for b in g.vertices:
                assert inner(real[a], real[b], m.cm_gram) == g.pairing(a, b)

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coblecheck.cm import build_cm
from coblecheck.errors import DegenerateInput, NotARoot, NotLatticeVector
from coblecheck.lattice import (DivisorClass, GramMatrix, determinant, inner, isotropic_primitive,
                                matrix_rank, nullspace, orthogonal_complement, reflect, signature)


def test_divisor_arithmetic_is_exact():
    a = DivisorClass({"E1": 1, "E2": Fraction(1, 2)})
    b = DivisorClass({"E2": Fraction(1, 2), "E3": -1})
    assert a + b == DivisorClass({"E1": 1, "E2": 1, "E3": -1})
    assert (a - a) == DivisorClass()
    assert 2 * a == DivisorClass({"E1": 2, "E2": 1})
    assert not a.is_integral() and (2 * a).is_integral()
    assert DivisorClass({"E1": 0}) == DivisorClass()


def test_floats_rejected():
    with pytest.raises(TypeError):
        DivisorClass({"E1": 0.5})


def test_gram_must_be_symmetric():
    with pytest.raises(ValueError, match="not symmetric"):
        GramMatrix(["a", "b"], [[-2, 1], [0, -2]])


def test_signature_of_hyperbolic_plane_and_e8():
    assert tuple(signature([[0, 1], [1, 0]])) == (1, 1, 0)
    e8 = [[-2 if i == j else 0 for j in range(8)] for i in range(8)]
    for a, b in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)]:
        e8[a][b] = e8[b][a] = 1
    assert tuple(signature(e8)) == (0, 8, 0)
    assert determinant(e8) == 1


def test_nullspace_and_rank():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert matrix_rank(rows) == 2
    (k,) = nullspace(rows)
    assert all(sum(Fraction(r[i]) * k[i] for i in range(3)) == 0 for r in rows)


def test_reflection_rejects_non_root():
    g = GramMatrix.diagonal(["h", "e"], [1, -1])
    with pytest.raises(NotARoot):
        reflect(DivisorClass({"e": 1}), DivisorClass({"h": 1}), g)


def test_orthogonal_complement_of_a_wall():
    g = GramMatrix.diagonal(["h", "e1", "e2"], [1, -1, -1])
    comp = orthogonal_complement(g, [{"h": 1}, {"e1": 1}, {"e2": 1}], [{"h": 1}], integral=True)
    assert len(comp.basis) == 2
    assert tuple(signature(comp.gram)) == (0, 2, 0)
    with pytest.raises(DegenerateInput):
        orthogonal_complement(g, [{"h": 1}], [{"e1": 1}])


def test_isotropic_primitive():
    g = GramMatrix([["a", "b"][i] for i in range(2)], [[0, 1], [1, 0]])
    assert isotropic_primitive({"a": 1}, g, g.basis)
    assert not isotropic_primitive({"a": 2}, g, g.basis)
    with pytest.raises(NotLatticeVector):
        isotropic_primitive({"a": Fraction(1, 2)}, g, g.basis)


@pytest.mark.parametrize("name", ["E8-model", "E7+A1(2)-model", "VIII-model"])
def test_cm_signature_is_1_9(registry, name):
    m = build_cm(registry.configs[name])
    assert tuple(signature(m.cm_gram)) == (1, 9, 0)
    assert m.cm_gram.is_even()


def _random_vector(rng, labels):
    return DivisorClass({l: Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for l in labels})


def test_reflections_preserve_the_form_on_every_graph(registry):
    """1000 random exact-rational pairs per bundled graph."""
    rng = random.Random(20261016)
    for fx in registry.graphs.values():
        g = fx.graph.gram()
        labels = list(g.basis)
        for _ in range(1000):
            alpha = DivisorClass({rng.choice(labels): 1})
            x, y = _random_vector(rng, labels), _random_vector(rng, labels)
            sx, sy = reflect(alpha, x, g), reflect(alpha, y, g)
            assert inner(sx, sy, g) == inner(x, y, g)
            assert reflect(alpha, sx, g) == x


small = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@settings(max_examples=200, deadline=None)
@given(st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3),
       st.integers(0, 2))
def test_reflection_is_an_isometry_property(xs, ys, k):
    g = GramMatrix(["a", "b", "c"], [[-2, 1, 0], [1, -2, 2], [0, 2, -2]])
    alpha = DivisorClass({"abc"[k]: 1})
    x = DivisorClass(dict(zip("abc", xs)))
    y = DivisorClass(dict(zip("abc", ys)))
    assert inner(reflect(alpha, x, g), reflect(alpha, y, g), g) == inner(x, y, g)

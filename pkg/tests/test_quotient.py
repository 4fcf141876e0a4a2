from fractions import Fraction

import pytest

from coblecheck.errors import InconsistentIntegrality, InfeasibleScenario, ParityError
from coblecheck.lattice import DivisorClass
from coblecheck.quotient import (BUDGET_MARKER, canonical_pullback, eta_budget,
                                 euler_identity_check, pullback_self_intersection,
                                 pushforward_pairing, pushforward_self_intersection,
                                 pushforward_two_K, quotient_surface)


def test_pushforward_of_minus_two_curves():
    assert pushforward_self_intersection(-2, True) == -1
    assert pushforward_self_intersection(-2, False) == -4
    assert pushforward_self_intersection(-4, True) == -2
    with pytest.raises(ParityError):
        pushforward_self_intersection(-1, True)


@pytest.mark.parametrize("c2", range(-8, 9, 2))
def test_pullback_inverts_pushforward(c2):
    for integral in (True, False):
        assert pullback_self_intersection(pushforward_self_intersection(c2, integral), integral) == c2


def test_pushforward_pairing_weights():
    assert pushforward_pairing(Fraction(1), True, True) == Fraction(1, 2)
    assert pushforward_pairing(Fraction(1), False, True) == 1
    assert pushforward_pairing(Fraction(1), False, False) == 2


def test_two_K_pushforward():
    pk = canonical_pullback({"E1": -1}, {"E1": "-1/2", "E2": 1})
    assert pk == DivisorClass({"E1": Fraction(-1, 2), "E2": -1})
    with pytest.raises(InconsistentIntegrality):
        pushforward_two_K(pk, ["E2"])
    assert pushforward_two_K(pk, ["E1"]) == DivisorClass({"E1": -1, "E2": -1})


def test_e8_scenario(registry):
    q = quotient_surface(registry.scenarios["E8"])
    assert q.two_K_before == DivisorClass({"E1'": 2, "E2'": -1, "E3'": 2, "E5'": 2})
    assert q.boundary == ["E2'"]
    assert q.passed and all(v is True for v in q.checks.values())


def test_viii_scenario(registry):
    q = quotient_surface(registry.scenarios["VIII"])
    assert q.boundary == ["E1'", "E2'", "E5'", "E6'"]
    assert q.n == 4 and all(v is True for v in q.checks.values())


def test_complete_scenarios_satisfy_global_identities(registry):
    complete = [s for s in registry.scenarios.values() if s.complete]
    assert {s.name for s in complete} == {"E8", "VIII"}
    for s in complete:
        e = euler_identity_check(s)
        assert e.D_squared == -12 and e.K_dot_D == -4 and e.passed


def test_partial_scenarios_are_undecided_not_failed(registry):
    for s in registry.scenarios.values():
        q = quotient_surface(s)
        assert q.passed
        if not s.complete:
            assert None in q.checks.values()
            assert euler_identity_check(s).passed is None


def test_boundary_size_matches_graph_n_set(registry):
    n_of = {"E8": {1}, "E7+A1(2)": {2}, "E7+A1(1)": {1}, "E6+A2(1)": {1}, "E6+A2(3)": {3},
            "D8": {1}, "VIII": {4}}
    for name, s in registry.scenarios.items():
        assert {quotient_surface(s).n} == n_of[name]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_eta_budget(n):
    assert eta_budget(n, -2) == 4 - n
    assert eta_budget(n, None) == (BUDGET_MARKER, 4 - n)


@pytest.mark.parametrize("n", range(5, 11))
def test_eta_budget_infeasible(n):
    with pytest.raises(InfeasibleScenario):
        eta_budget(n, -2)


def test_eta_budget_range():
    with pytest.raises(InfeasibleScenario):
        eta_budget(0, -2)

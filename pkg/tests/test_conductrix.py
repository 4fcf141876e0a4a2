import pytest

from coblecheck.conductrix import (SIMPLE_TYPES, ConductrixProblem, comparison_check,
                                   examine_conductrix, simple_fiber_conductrix, solve_conductrix,
                                   solve_quasi_elliptic, sr_classify, validate_conductrix)
from coblecheck.errors import Inadmissible, SearchBoundExceeded

EXCLUDE = {"E3": 1, "E4": 1, "E5": 1, "E6": 1, "E7": 2, "E8": 2, "E9": 2}


@pytest.mark.parametrize("t", SIMPLE_TYPES)
def test_simple_fiber_search_matches_floor_formula(t):
    p = ConductrixProblem.make(t)
    res = solve_conductrix(p)
    closed = simple_fiber_conductrix(t)
    if closed.is_zero:
        assert res.conductrices == []
    else:
        assert res.conductrices == [closed]


def _all_problems():
    for t in SIMPLE_TYPES:
        yield ConductrixProblem.make(t)
        yield ConductrixProblem.make(t, multiple=True)
    yield ConductrixProblem.make("I1*", multiple=True, two_section="E3")


@pytest.mark.parametrize("p", list(_all_problems()), ids=lambda p: p.describe())
def test_every_output_validates(p):
    for c in solve_conductrix(p).conductrices:
        rep = validate_conductrix(c, p, p.host())
        assert rep.passed, dict(rep.items())


def test_multiple_i1_star_with_two_section():
    p = ConductrixProblem.make("I1*", multiple=True, two_section="E3")
    assert [c.pretty() for c in solve_conductrix(p).conductrices] == ["E3 + E4 + E5 + E6"]


def test_multiple_iv_has_no_conductrix():
    assert solve_conductrix(ConductrixProblem.make("IV", multiple=True)).conductrices == []


def test_exclusion_pattern_is_infeasible():
    p = ConductrixProblem.make("I4*", multiple=True)
    ok, reason, _ = examine_conductrix(p, EXCLUDE)
    assert not ok and "blown-up-point" in reason
    assert [c.pretty() for c in solve_conductrix(p).conductrices] == ["E5 + E6 + E7 + E8 + E9"]


def test_examine_rejects_foreign_labels():
    with pytest.raises(ValueError):
        examine_conductrix(ConductrixProblem.make("I3"), {"Z": 1})


def test_problem_validation():
    with pytest.raises(ValueError):
        ConductrixProblem.make("I1*", two_section="E3")          # simple fiber
    with pytest.raises(ValueError):
        ConductrixProblem.make("I1*", multiple=True, two_section="E5")
    with pytest.raises(ValueError):
        ConductrixProblem.make("I3", kind="parabolic")


def test_sr_table():
    assert sr_classify(False, 0) == {(1, 2)}
    assert sr_classify(True, -2, is_whole=True) == {(1, 6), (2, 1)}
    with pytest.raises(Inadmissible):
        sr_classify(True, 2)


def test_quasi_multiple_ii_star_needs_wider_search():
    first = solve_quasi_elliptic("II*", True, slack=1)
    assert all(isinstance(v, SearchBoundExceeded) for v in first.values())
    wider = solve_quasi_elliptic("II*", True, slack=2)
    sols = [c for v in wider.values() for c in v.conductrices]
    assert sols and all(c.coeff("cusp") == 1 for c in sols)


@pytest.mark.parametrize("t", ["III", "IV", "I0*"])
def test_quasi_simple_fibers_contain_curve_of_cusps(t):
    for v in solve_quasi_elliptic(t, False).values():
        for c in v.conductrices:
            assert c.coeff("cusp") == 1


def test_comparison_identity(registry):
    doc = registry.comparisons["I1*+I3+I2"]
    assert comparison_check(doc["A"], doc["A_prime"], doc["G0"], doc["Ginf"])
    bad = dict(doc["G0"])
    bad[next(iter(bad))] += 1
    assert not comparison_check(doc["A"], doc["A_prime"], bad, doc["Ginf"])


def test_oversized_fiber_rejected():
    from coblecheck.errors import TooLarge
    with pytest.raises(TooLarge):
        ConductrixProblem.make("I10")

from fractions import Fraction

import pytest

from coblecheck.errors import BadIncidence, CannotBlowUp, UnknownCurve
from coblecheck.lattice import DivisorClass
from coblecheck.surface import (Curve, CurveConfiguration, UnderDetermined, adjunction_check,
                                blowup_fiber, build_blowup_basis, check_fiber_identities,
                                dynkin_of_type, kodaira_fiber, normalize_type, plane)

TYPES = ["I2", "I3", "I7", "III", "IV", "I0*", "I1*", "I4*", "II*", "III*", "IV*"]


@pytest.mark.parametrize("t", TYPES)
def test_kodaira_fiber_is_isotropic_and_orthogonal(t):
    f = kodaira_fiber(t)
    c = f.configuration()
    F = f.fiber_class()
    assert c.intersect(F, F) == 0
    assert all(c.intersect(F, {x: 1}) == 0 for x in f.labels)


@pytest.mark.parametrize("t,total", [("II*", 30), ("III*", 18), ("IV*", 12), ("I0*", 6), ("I4*", 14)])
def test_fiber_multiplicity_sums(t, total):
    assert sum(kodaira_fiber(t).multiplicities.values()) == total


def test_normalize_and_dynkin_names():
    assert normalize_type("I_1^*") == "I1*"
    assert dynkin_of_type("II*") == "E~8"
    assert dynkin_of_type("I5") == "A~4"
    with pytest.raises(CannotBlowUp):
        normalize_type("V")


def test_plane_blowup_classes():
    m = build_blowup_basis([{"L": 1}], curves={"L": 1})
    c = m.configuration()
    assert c.curve("L").self_intersection == 0
    assert c.curve("e1").self_intersection == -1
    with pytest.raises(BadIncidence):
        plane({"L": 1}).blow_up("e1", {"L": 2})


@pytest.mark.parametrize("t", ["I1", "I2", "I5", "II", "III", "IV"])
def test_blown_up_fiber_identities(t):
    h = blowup_fiber(t)
    r = check_fiber_identities(h.result, h.fiber)
    assert r.passed
    assert h.fiber == h.reduced_boundary + 2 * h.G
    for b in h.boundary:
        assert h.result.curve(b).self_intersection == -4
    assert adjunction_check(h.result).passed


def test_starred_and_multiple_fibers_are_not_blown_up():
    with pytest.raises(CannotBlowUp):
        blowup_fiber("I0*")
    with pytest.raises(CannotBlowUp):
        blowup_fiber(kodaira_fiber("I3", multiple=True))


def test_configuration_unknown_pairs_raise():
    c = CurveConfiguration([Curve("A", "minus2", -2), Curve("B", "minus1", -1)], {},
                           {"A": 0}, unknown_pairs=[("A", "B")])
    assert not c.complete
    with pytest.raises(UnderDetermined):
        c.intersect({"A": 1}, {"B": 1})
    with pytest.raises(UnknownCurve):
        c.pairing("A", "Z")


def test_role_and_self_intersection_must_agree():
    with pytest.raises(ValueError):
        CurveConfiguration([Curve("B", "boundary", -2)])

"""Curve configurations, Kodaira fibers and blow-up models."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import BadIncidence, CannotBlowUp, UnknownCurve
from .lattice import Basis, DivisorClass, GramMatrix, inner

ROLES = ("boundary", "minus2", "minus1", "other")


class UnderDetermined(UnknownCurve):
    """A pairing needed for the computation is flagged unknown in the fixture."""


@dataclass(frozen=True)
class Curve:
    label: str
    role: str
    self_intersection: int | None     # None: not recorded in the source


class CurveConfiguration:
    """Named curves with a symmetric pairing table and a canonical class.

    Two storage modes coexist.  *Intrinsic*: pairings between curve labels are
    given directly.  *Extrinsic*: every curve has a class in an ambient lattice
    (usually a blow-up basis {h, e_1, ...}) and pairings are derived.  When both
    are supplied they are cross-checked on construction.
    """

    def __init__(self, curves: Sequence[Curve], pairs: Mapping | None = None,
                 canonical: Mapping | None = None, *, ambient: GramMatrix | None = None,
                 classes: Mapping[str, Mapping] | None = None,
                 canonical_ambient: Mapping | None = None,
                 unknown_pairs: Iterable[tuple[str, str]] = (), name: str = ""):
        self.name = name
        self.curves = tuple(curves)
        self.labels = tuple(c.label for c in self.curves)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("curve labels must be unique")
        self._curve = {c.label: c for c in self.curves}
        for c in self.curves:
            if c.role not in ROLES:
                raise ValueError(f"{c.label}: unknown role {c.role!r}")
            expect = {"boundary": -4, "minus2": -2, "minus1": -1}.get(c.role)
            if expect is not None and c.self_intersection not in (expect, None):
                raise ValueError(
                    f"{c.label}: role {c.role} needs self-intersection {expect}, "
                    f"got {c.self_intersection}")
        self.ambient = ambient
        self.classes = {k: DivisorClass(v) for k, v in (classes or {}).items()}
        self.unknown = {frozenset(p) for p in unknown_pairs}
        self._pairs: dict[frozenset, Fraction] = {}
        if ambient is not None:
            for lab in self.labels:
                if lab not in self.classes:
                    raise ValueError(f"curve {lab} has no ambient class")
            for i, a in enumerate(self.labels):
                sq = inner(self.classes[a], self.classes[a], ambient)
                if sq != self._curve[a].self_intersection:
                    raise ValueError(f"{a}: class squares to {sq}, declared "
                                     f"{self._curve[a].self_intersection}")
                for b in self.labels[i + 1:]:
                    v = inner(self.classes[a], self.classes[b], ambient)
                    if v:
                        self._pairs[frozenset((a, b))] = v
        for (a, b), m in (pairs.items() if isinstance(pairs, Mapping) else pairs or []):
            if a not in self._curve or b not in self._curve:
                raise UnknownCurve(f"pair ({a}, {b}) names an unknown curve")
            if a == b:
                if self._curve[a].self_intersection is None or Fraction(m) != self._curve[a].self_intersection:
                    raise ValueError(f"diagonal entry for {a} disagrees with declared self-intersection")
                continue
            key = frozenset((a, b))
            m = Fraction(m)
            if ambient is not None and self._pairs.get(key, 0) != m:
                raise ValueError(f"pair ({a}, {b}) = {m} disagrees with ambient classes")
            if key in self._pairs and self._pairs[key] != m:
                raise ValueError(f"pair ({a}, {b}) given twice with different values")
            if m:
                self._pairs[key] = m
        self.canonical_ambient = DivisorClass(canonical_ambient) if canonical_ambient is not None else None
        self.canonical = DivisorClass(canonical) if canonical is not None else None

    # -- access -------------------------------------------------------------
    def curve(self, label: str) -> Curve:
        try:
            return self._curve[label]
        except KeyError:
            raise UnknownCurve(f"unknown curve {label!r}") from None

    def __contains__(self, label):
        return label in self._curve

    def role(self, label: str) -> str:
        return self.curve(label).role

    def by_role(self, role: str) -> list[str]:
        return [c.label for c in self.curves if c.role == role]

    @property
    def boundary(self) -> list[str]:
        return self.by_role("boundary")

    def pairing(self, a: str, b: str) -> Fraction:
        if a == b:
            s = self.curve(a).self_intersection
            if s is None:
                raise UnderDetermined(f"self-intersection of {a} is not known")
            return Fraction(s)
        self.curve(a), self.curve(b)
        key = frozenset((a, b))
        if key in self.unknown:
            raise UnderDetermined(f"pairing ({a}, {b}) is flagged unknown")
        return self._pairs.get(key, Fraction(0))

    def pair_known(self, a: str, b: str) -> bool:
        if a == b:
            return self.curve(a).self_intersection is not None
        return frozenset((a, b)) not in self.unknown

    @property
    def complete(self) -> bool:
        return not self.unknown and all(c.self_intersection is not None for c in self.curves)

    def gram(self, labels: Sequence[str] | None = None) -> GramMatrix:
        labels = list(labels or self.labels)
        return GramMatrix.from_pairing(labels, self.pairing)

    def nonzero_pairs(self) -> list[tuple[str, str, Fraction]]:
        pos = {l: i for i, l in enumerate(self.labels)}
        out = []
        for key, v in self._pairs.items():
            a, b = sorted(key, key=pos.__getitem__)
            out.append((a, b, v))
        return sorted(out, key=lambda t: (pos[t[0]], pos[t[1]]))

    def intersect(self, x: Mapping, y: Mapping) -> Fraction:
        """Pairing of two divisors written in curve labels."""
        total = Fraction(0)
        for a, ca in x.items():
            for b, cb in y.items():
                total += Fraction(ca) * Fraction(cb) * self.pairing(a, b)
        return total

    # -- canonical class -----------------------------------------------------
    def K_dot(self, x: Mapping) -> Fraction:
        if self.canonical is not None:
            return self.intersect(self.canonical, x)
        if self.canonical_ambient is not None and self.ambient is not None:
            return inner(self.canonical_ambient, self.to_ambient(x), self.ambient)
        raise ValueError(f"configuration {self.name!r} declares no canonical class")

    def K_squared(self) -> Fraction:
        if self.canonical is not None:
            return self.intersect(self.canonical, self.canonical)
        if self.canonical_ambient is not None and self.ambient is not None:
            return inner(self.canonical_ambient, self.canonical_ambient, self.ambient)
        raise ValueError(f"configuration {self.name!r} declares no canonical class")

    def to_ambient(self, x: Mapping) -> DivisorClass:
        out = DivisorClass()
        for k, c in x.items():
            if k in self.classes:
                out = out + Fraction(c) * self.classes[k]
            elif self.ambient is not None and k in self.ambient.basis:
                out = out + DivisorClass({k: c})
            else:
                raise UnknownCurve(f"{k!r} is neither a curve nor an ambient label")
        return out

    @property
    def rho(self) -> int | None:
        return len(self.ambient.basis) if self.ambient is not None else None

    def with_pair(self, a: str, b: str, value) -> "CurveConfiguration":
        """Copy with one pairing overwritten (used to build negative controls)."""
        pairs = {(x, y): v for x, y, v in self.nonzero_pairs()}
        pairs.pop((a, b), None)
        pairs.pop((b, a), None)
        pairs[(a, b)] = value
        return CurveConfiguration(self.curves, pairs, self.canonical,
                                  unknown_pairs=[tuple(p) for p in self.unknown],
                                  name=self.name + "*")

    def __repr__(self):
        return f"CurveConfiguration({self.name!r}, {len(self.curves)} curves)"


# ----------------------------------------------------------------------------
# Kodaira fibers

@dataclass(frozen=True)
class FiberSpec:
    kodaira_type: str
    multiple: bool
    components: tuple                  # ((label, multiplicity), ...)
    edges: tuple                       # ((a, b, intersection), ...)
    points: tuple = ()                 # ((frozenset(labels), transversal), ...)
    self_intersections: tuple = ()     # per component; -2 unless irreducible

    @property
    def labels(self) -> tuple:
        return tuple(l for l, _ in self.components)

    @property
    def multiplicities(self) -> dict:
        return dict(self.components)

    def fiber_class(self) -> DivisorClass:
        """Class of the (half) fiber as written by its multiplicities."""
        return DivisorClass(self.components)

    def pairing(self, a: str, b: str) -> int:
        if a == b:
            return dict(zip(self.labels, self.self_intersections))[a]
        for x, y, m in self.edges:
            if {x, y} == {a, b}:
                return m
        return 0

    def gram(self) -> GramMatrix:
        return GramMatrix.from_pairing(self.labels, self.pairing)

    def configuration(self) -> CurveConfiguration:
        curves = [Curve(l, "minus2" if s == -2 else "other", s)
                  for l, s in zip(self.labels, self.self_intersections)]
        pairs = {(a, b): m for a, b, m in self.edges}
        return CurveConfiguration(curves, pairs, canonical={}, name=self.kodaira_type)

    def is_starred(self) -> bool:
        return self.kodaira_type.endswith("*")

    def end_components(self) -> list[str]:
        deg = {l: 0 for l in self.labels}
        for a, b, _ in self.edges:
            deg[a] += 1
            deg[b] += 1
        return [l for l in self.labels if deg[l] <= 1]


_TYPE_RE = re.compile(r"^(I(\d+)\*?|I(\d+)|II\*?|III\*?|IV\*?)$")


def normalize_type(t: str) -> str:
    t = t.strip().replace("_", "").replace("^", "")
    if not _TYPE_RE.match(t):
        raise CannotBlowUp(f"unrecognised Kodaira type {t!r}")
    return t


def kodaira_fiber(kodaira_type: str, multiple: bool = False, prefix: str = "E") -> FiberSpec:
    """Component graph of a Kodaira fiber with its standard multiplicities.

    Labelling: I_n is the cycle E1..En; I_m* has leaves E1, E2 on E5 and E3, E4 on
    the far end E(m+5) of the chain E5..E(m+5); II* is the chain E1..E8 with E9 on
    E6; III* is the chain E1..E7 with E8 on E4; IV* is the chain E1..E5 with
    E6, E7 hanging off E3.
    """
    t = normalize_type(kodaira_type)
    L = lambda i: f"{prefix}{i}"
    points = []
    if t in ("II", "I1", "I0"):
        if t == "I0":
            raise CannotBlowUp("I0 is a smooth fiber")
        comps = ((L(1), 1),)
        return FiberSpec(t, multiple, comps, (), (), (0,))
    if t.startswith("I") and not t.startswith("II") and not t.startswith("IV") and not t.endswith("*"):
        n = int(t[1:])
        comps = tuple((L(i), 1) for i in range(1, n + 1))
        if n == 2:
            edges = ((L(1), L(2), 2),)
            points = [(frozenset((L(1), L(2))), True), (frozenset((L(1), L(2))), True)]
        else:
            edges = tuple((L(i), L(i % n + 1), 1) for i in range(1, n + 1))
        return FiberSpec(t, multiple, comps, _canon_edges(edges), _points(edges, points),
                         (-2,) * n)
    if t == "III":
        edges = ((L(1), L(2), 2),)
        points = [(frozenset((L(1), L(2))), False)]
        return FiberSpec(t, multiple, ((L(1), 1), (L(2), 1)), edges, tuple(points), (-2, -2))
    if t == "IV":
        comps = tuple((L(i), 1) for i in (1, 2, 3))
        edges = ((L(1), L(2), 1), (L(1), L(3), 1), (L(2), L(3), 1))
        points = [(frozenset((L(1), L(2), L(3))), True)]
        return FiberSpec(t, multiple, comps, edges, tuple(points), (-2,) * 3)
    if t.endswith("*") and t.startswith("I") and t[1].isdigit():
        m = int(t[1:-1])
        chain = list(range(5, m + 6))
        mult = {1: 1, 2: 1, 3: 1, 4: 1}
        mult.update({c: 2 for c in chain})
        edges = [(L(1), L(5), 1), (L(2), L(5), 1), (L(3), L(chain[-1]), 1), (L(4), L(chain[-1]), 1)]
        edges += [(L(a), L(a + 1), 1) for a in chain[:-1]]
        comps = tuple((L(i), mult[i]) for i in range(1, m + 6))
        return FiberSpec(t, multiple, comps, _canon_edges(edges), _points(edges, []),
                         (-2,) * len(comps))
    table = {
        "II*": ([1, 2, 3, 4, 5, 6, 4, 2, 3], [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (6, 9)]),
        "III*": ([1, 2, 3, 4, 3, 2, 1, 2], [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (4, 8)]),
        "IV*": ([1, 2, 3, 2, 1, 2, 1], [(1, 2), (2, 3), (3, 4), (4, 5), (3, 6), (6, 7)]),
    }
    if t in table:
        mults, es = table[t]
        comps = tuple((L(i + 1), m) for i, m in enumerate(mults))
        edges = [(L(a), L(b), 1) for a, b in es]
        return FiberSpec(t, multiple, comps, _canon_edges(edges), _points(edges, []),
                         (-2,) * len(comps))
    raise CannotBlowUp(f"no component model for type {t}")


def _canon_edges(edges):
    return tuple((a, b, m) for a, b, m in edges)


def _points(edges, extra):
    """Transversal intersection points, one per single edge, plus extras."""
    pts = list(extra)
    covered = {p for p, _ in extra}
    for a, b, m in edges:
        if m == 1 and frozenset((a, b)) not in covered:
            pts.append((frozenset((a, b)), True))
    return tuple(pts)


def dynkin_of_type(kodaira_type: str) -> str:
    t = normalize_type(kodaira_type)
    if t in ("II*", "III*", "IV*"):
        return {"II*": "E~8", "III*": "E~7", "IV*": "E~6"}[t]
    if t == "III":
        return "A~1"
    if t == "IV":
        return "A~2"
    if t.endswith("*"):
        return f"D~{int(t[1:-1]) + 4}"
    if t.startswith("I"):
        n = int(t[1:])
        return f"A~{n - 1}" if n >= 2 else ""
    return ""


# ----------------------------------------------------------------------------
# blow-up engine

@dataclass
class BlowupModel:
    """A surface presented by a base lattice plus a sequence of point blow-ups.

    Curves carry classes in the ambient basis; each blow-up replaces the class of
    every curve through the point by its proper transform C - m e.
    """
    basis: list
    form: dict                       # label -> self-pairing (diagonal ambient form)
    base_gram: GramMatrix | None     # optional non-diagonal block on the base labels
    K: DivisorClass
    curves: dict = field(default_factory=dict)   # label -> DivisorClass
    log: list = field(default_factory=list)

    def gram(self) -> GramMatrix:
        n = len(self.basis)
        rows = [[0] * n for _ in range(n)]
        base = set(self.base_gram.basis.names) if self.base_gram else set()
        for i, a in enumerate(self.basis):
            for j, b in enumerate(self.basis):
                if a in base and b in base:
                    rows[i][j] = self.base_gram.entry(a, b)
                elif i == j:
                    rows[i][j] = self.form[a]
        return GramMatrix(self.basis, rows)

    def pair(self, x, y) -> Fraction:
        return inner(x, y, self.gram())

    def blow_up(self, label: str, on: Mapping[str, int] | None = None) -> "BlowupModel":
        """Blow up a point lying on the named curves with the given multiplicities."""
        on = dict(on or {})
        if label in self.basis:
            raise BadIncidence(f"exceptional label {label} already used")
        g = self.gram()
        names = sorted(on)
        for c in names:
            if c not in self.curves:
                raise BadIncidence(f"point declared on unknown curve {c}")
            m = on[c]
            if m < 1:
                raise BadIncidence(f"multiplicity of {c} at the point must be positive")
            if m >= 2:
                x = self.curves[c]
                pa = (inner(x, x, g) + inner(self.K, x, g)) / 2 + 1
                if pa < m * (m - 1) // 2:
                    raise BadIncidence(f"{c} has arithmetic genus {pa}; cannot have a point of multiplicity {m}")
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                ab = inner(self.curves[a], self.curves[b], g)
                if ab < on[a] * on[b]:
                    raise BadIncidence(
                        f"{a} and {b} meet with multiplicity {ab}; they cannot share a point "
                        f"with multiplicities {on[a]}, {on[b]}")
        new = BlowupModel(self.basis + [label], {**self.form, label: -1}, self.base_gram,
                          self.K + DivisorClass({label: 1}), dict(self.curves), self.log + [(label, on)])
        for c, m in on.items():
            new.curves[c] = self.curves[c] - m * DivisorClass({label: 1})
        new.curves[label] = DivisorClass({label: 1})
        return new

    def rename(self, mapping: Mapping[str, str]) -> "BlowupModel":
        return BlowupModel(self.basis, self.form, self.base_gram, self.K,
                           {mapping.get(k, k): v for k, v in self.curves.items()}, self.log)

    def configuration(self, roles: Mapping[str, str] | None = None, keep=None,
                      name: str = "") -> CurveConfiguration:
        g = self.gram()
        keep = list(keep or self.curves)
        roles = dict(roles or {})
        curves = []
        for lab in keep:
            sq = int(inner(self.curves[lab], self.curves[lab], g))
            role = roles.get(lab) or {-4: "boundary", -2: "minus2", -1: "minus1"}.get(sq, "other")
            curves.append(Curve(lab, role, sq))
        return CurveConfiguration(curves, ambient=g,
                                  classes={l: self.curves[l] for l in keep},
                                  canonical_ambient=self.K, name=name)


def plane(curves: Mapping[str, int] | None = None) -> BlowupModel:
    """P^2 with K = -3h and plane curves of the given degrees."""
    return BlowupModel(["h"], {"h": 1}, None, DivisorClass({"h": -3}),
                       {k: DivisorClass({"h": d}) for k, d in (curves or {}).items()})


def build_blowup_basis(points: Sequence[Mapping], curves: Mapping[str, int] | None = None,
                       names: Sequence[str] | None = None) -> BlowupModel:
    """Blow up P^2 at a sequence of points; each point lists the curves through it
    (curve -> multiplicity).  Exceptional classes are called e1, e2, ..."""
    model = plane(curves)
    for i, on in enumerate(points):
        label = names[i] if names else f"e{i + 1}"
        model = model.blow_up(label, on)
    return model


def local_fiber_model(fiber: FiberSpec) -> BlowupModel:
    """Ambient lattice spanned by the fiber components.

    The canonical class of a relatively minimal genus-1 surface is a rational
    multiple of the fiber, which lies in the radical of this lattice, so K = 0
    computes every pairing with classes supported here exactly.
    """
    g = fiber.gram()
    return BlowupModel(list(fiber.labels), {}, g, DivisorClass(),
                       {l: DivisorClass({l: 1}) for l in fiber.labels})


# ----------------------------------------------------------------------------
# Halphen blow-ups of reduced fibers

@dataclass
class HalphenBlowup:
    source: FiberSpec
    result: CurveConfiguration
    fiber: DivisorClass          # total transform in curve labels
    G: DivisorClass
    boundary: tuple
    exceptional: tuple

    @property
    def reduced_boundary(self) -> DivisorClass:
        return DivisorClass({b: 1 for b in self.boundary})


def blowup_fiber(f: FiberSpec | str) -> HalphenBlowup:
    if isinstance(f, str):
        f = kodaira_fiber(f)
    t = f.kodaira_type
    if f.multiple:
        raise CannotBlowUp("only reduced fibers are blown up")
    if t.endswith("*") or t == "I0":
        raise CannotBlowUp(f"type {t} fibers are never blown up")
    m = local_fiber_model(f)
    comps = list(f.labels)
    if t == "II" or t == "I1":
        m = m.blow_up("e1", {comps[0]: 2})
        m = m.rename({comps[0]: "B1", "e1": "E1"})
        fiber = DivisorClass({"B1": 1, "E1": 2})
        G = DivisorClass({"E1": 1})
        bnd, exc = ("B1",), ("E1",)
        if t == "II":
            m = m.rename({"B1": "B", "E1": "E"})
            fiber, G, bnd, exc = DivisorClass({"B": 1, "E": 2}), DivisorClass({"E": 1}), ("B",), ("E",)
    elif t == "III":
        a, b = comps
        m = m.blow_up("e1", {a: 1, b: 1})
        m = m.blow_up("e2", {a: 1, b: 1, "e1": 1})
        m = m.rename({a: "B1", b: "B2", "e1": "E1", "e2": "E2"})
        fiber = DivisorClass({"B1": 1, "B2": 1, "E1": 2, "E2": 4})
        G = DivisorClass({"E1": 1, "E2": 2})
        bnd, exc = ("B1", "B2"), ("E1", "E2")
    elif t == "IV":
        a, b, c = comps
        m = m.blow_up("e0", {a: 1, b: 1, c: 1})
        for i, x in enumerate((a, b, c), start=1):
            m = m.blow_up(f"e{i}", {x: 1, "e0": 1})
        m = m.rename({a: "B1", b: "B2", c: "B3", "e0": "B4", "e1": "E1", "e2": "E2", "e3": "E3"})
        fiber = DivisorClass({"B1": 1, "B2": 1, "B3": 1, "B4": 3, "E1": 4, "E2": 4, "E3": 4})
        G = DivisorClass({"B4": 1, "E1": 2, "E2": 2, "E3": 2})
        bnd, exc = ("B1", "B2", "B3", "B4"), ("E1", "E2", "E3")
    elif t.startswith("I"):
        n = len(comps)
        # node between component i and i+1 becomes E_i, so E_i meets B_i and B_{i+1}
        for i in range(n):
            m = m.blow_up(f"e{i + 1}", {comps[i]: 1, comps[(i + 1) % n]: 1})
        m = m.rename({**{comps[i]: f"B{i + 1}" for i in range(n)},
                      **{f"e{i + 1}": f"E{i + 1}" for i in range(n)}})
        fiber = DivisorClass({**{f"B{i}": 1 for i in range(1, n + 1)},
                              **{f"E{i}": 2 for i in range(1, n + 1)}})
        G = DivisorClass({f"E{i}": 1 for i in range(1, n + 1)})
        bnd = tuple(f"B{i}" for i in range(1, n + 1))
        exc = tuple(f"E{i}" for i in range(1, n + 1))
    else:
        raise CannotBlowUp(f"type {t} cannot be blown up")
    keep = list(bnd) + list(exc)
    conf = m.configuration(keep=keep, name=f"blown-up {t}",
                           roles={**{x: "boundary" for x in bnd}})
    return HalphenBlowup(f, conf, fiber, G, bnd, exc)


@dataclass
class FiberIdentityReport:
    F_squared: Fraction
    F_dot_K: Fraction
    passed: bool


def check_fiber_identities(c: CurveConfiguration, F: Mapping) -> FiberIdentityReport:
    f2 = c.intersect(F, F)
    fk = c.K_dot(F)
    return FiberIdentityReport(f2, fk, f2 == 0 and fk == 0)


@dataclass
class AdjunctionReport:
    per_curve: dict                  # label -> (C^2, K.C, ok)
    boundary_K: dict                 # boundary label -> K.B
    K_squared: Fraction | None
    expected_K_squared: int | None
    passed: bool


def adjunction_check(c: CurveConfiguration, full_model: bool = False,
                     rational: Iterable[str] | None = None) -> AdjunctionReport:
    """C^2 + K.C = -2 on rational curves and K.B = 2 on boundaries.

    ``rational`` restricts the adjunction test (default: every curve with a
    negative self-intersection, which on these surfaces are all rational).
    """
    labels = list(rational) if rational is not None else [
        x.label for x in c.curves if x.self_intersection < 0]
    per = {}
    ok = True
    for lab in labels:
        s = c.curve(lab).self_intersection
        k = c.K_dot({lab: 1})
        good = s + k == -2
        per[lab] = (s, k, good)
        ok &= good
    bk = {}
    for b in c.boundary:
        bk[b] = c.K_dot({b: 1})
        ok &= bk[b] == 2
    k2 = exp = None
    if full_model:
        k2 = c.K_squared()
        exp = -len(c.boundary)
        ok &= k2 == exp
    return AdjunctionReport(per, bk, k2, exp, ok)

"""Conductrices on Kodaira fibers: closed form, constraint search, validation."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .cm import special_fibration_filter
from .errors import Inadmissible, SearchBoundExceeded, TooLarge
from .lattice import DivisorClass
from .surface import Curve, CurveConfiguration, FiberSpec, kodaira_fiber

CUSP = "cusp"
SECTION = "section"
MAX_MULT = 6
MAX_COMPONENTS = 9                         # rank 10 leaves room for at most nine


@dataclass(frozen=True)
class ConductrixProblem:
    fiber: FiberSpec
    kind: str = "elliptic"                 # or "quasi-elliptic"
    two_section: str | None = None         # component met by a (-2) 2-section
    cusp: str | None = None                # component met by the curve of cusps

    @property
    def multiple(self) -> bool:
        return self.fiber.multiple

    @property
    def quasi(self) -> bool:
        return self.kind == "quasi-elliptic"

    @classmethod
    def make(cls, kodaira_type: str, *, multiple=False, kind="elliptic",
             two_section=None, cusp=None) -> "ConductrixProblem":
        f = kodaira_fiber(kodaira_type, multiple)
        if kind == "quasi-elliptic" and cusp is None:
            cusp = default_cusp(f)
        p = cls(f, kind, two_section, cusp)
        p.validate()
        return p

    def validate(self):
        labels = self.fiber.labels
        if len(labels) > MAX_COMPONENTS:
            raise TooLarge(f"{self.fiber.kodaira_type} has {len(labels)} components; "
                           f"at most {MAX_COMPONENTS} fit in a rank-10 lattice")
        if self.kind not in ("elliptic", "quasi-elliptic"):
            raise ValueError(f"unknown fibration kind {self.kind!r}")
        if self.quasi != (self.cusp is not None):
            raise ValueError("a curve of cusps is present exactly for quasi-elliptic fibrations")
        if self.cusp is not None and self.cusp not in labels + ("tangent",):
            raise ValueError(f"cusp attachment {self.cusp} is not a fiber component")
        if self.two_section is not None:
            if self.quasi:
                raise ValueError("in the quasi-elliptic case the 2-section is the curve of cusps")
            if not self.multiple:
                raise ValueError("a (-2) 2-section is only modelled for multiple fibers")
            m = self.fiber.multiplicities
            if self.two_section not in labels or m[self.two_section] != 1 or \
                    self.two_section not in self.fiber.end_components():
                raise ValueError(f"2-section must meet a simple end component, got {self.two_section}")

    # local configuration: fiber components plus the horizontal curves
    def curves(self) -> list[str]:
        out = list(self.fiber.labels)
        if self.cusp is not None:
            out.append(CUSP)
        if self.two_section is not None:
            out.append(SECTION)
        return out

    def pairing(self, a: str, b: str) -> int:
        if a == b:
            return -2
        if {a, b} & {CUSP, SECTION}:
            other = b if a in (CUSP, SECTION) else a
            if other in (CUSP, SECTION):
                return 0
            att = self.cusp if CUSP in (a, b) else self.two_section
            if att == "tangent":
                return 1
            return 1 if other == att else 0
        return self.fiber.pairing(a, b)

    def host(self) -> CurveConfiguration:
        labels = self.curves()
        pairs = {}
        for a, b in itertools.combinations(labels, 2):
            v = self.pairing(a, b)
            if v:
                pairs[(a, b)] = v
        # every curve here is a (-2)-curve, so K pairs to zero with all of them
        return CurveConfiguration([Curve(l, "minus2", -2) for l in labels], pairs, canonical={},
                                  name=f"{'2' if self.multiple else ''}{self.fiber.kodaira_type} local")

    def points(self) -> list[tuple[tuple, frozenset]]:
        """Intersection points as (curves through it, non-transversal pairs)."""
        pts = []
        tangent = None
        for curves, transversal in self.fiber.points:
            if transversal:
                pts.append((tuple(sorted(curves)), frozenset()))
            else:
                tangent = (tuple(sorted(curves)), frozenset([frozenset(curves)]))
        if tangent is not None:
            if self.cusp == "tangent":
                tangent = (tangent[0] + (CUSP,), tangent[1])
            pts.append(tangent)
        if self.cusp not in (None, "tangent"):
            pts.append(((self.cusp, CUSP), frozenset()))
        if self.two_section is not None:
            pts.append(((self.two_section, SECTION), frozenset()))
        return pts

    def describe(self) -> str:
        s = f"{'multiple ' if self.multiple else ''}{self.fiber.kodaira_type}, {self.kind}"
        if self.cusp == "tangent":
            s += ", curve of cusps through the tangency point"
        elif self.cusp:
            s += f", cusp at {self.cusp}"
        if self.two_section:
            s += f", (-2) 2-section at {self.two_section}"
        return s


def default_cusp(f: FiberSpec) -> str:
    """Multiple fiber: the curve of cusps meets a simple component of the half
    fiber once.  Simple fiber: it meets a double component once, or passes
    through the tangency point of a type III fiber."""
    if f.kodaira_type == "III" and not f.multiple:
        return "tangent"
    want = 1 if f.multiple else 2
    for l, m in f.components:
        if m == want:
            return l
    raise ValueError(f"no component of multiplicity {want} in {f.kodaira_type}")


@dataclass(frozen=True)
class Conductrix:
    multiplicities: tuple                 # ((label, k), ...) in problem curve order, k > 0

    @property
    def divisor(self) -> DivisorClass:
        return DivisorClass(self.multiplicities)

    def coeff(self, label: str) -> int:
        return dict(self.multiplicities).get(label, 0)

    @property
    def is_zero(self) -> bool:
        return not self.multiplicities

    def pretty(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(l if k == 1 else f"{k}{l}" for l, k in self.multiplicities)


def _conductrix(labels, vec) -> Conductrix:
    return Conductrix(tuple((l, int(k)) for l, k in zip(labels, vec) if k))


# ----------------------------------------------------------------------------
# closed form

def simple_fiber_conductrix(f: FiberSpec | str) -> Conductrix:
    if isinstance(f, str):
        f = kodaira_fiber(f)
    return _conductrix(f.labels, [m // 2 for _, m in f.components])


# ----------------------------------------------------------------------------
# s / r invariants

def sr_classify(contains: bool, a_dot_c: int, is_whole: bool = False) -> frozenset:
    """Admissible (s, r) for a (-2)-curve C from containment and A.C."""
    if not contains:
        if is_whole:
            raise Inadmissible("A = C requires C to lie in A")
        table = {0: {(1, 2)}, 1: {(1, 0)}}
    elif is_whole:
        if a_dot_c != -2:
            raise Inadmissible(f"A = C forces A.C = -2, got {a_dot_c}")
        table = {-2: {(1, 6), (2, 1)}}
    else:
        table = {-1: {(1, 4), (2, 0)}, 0: {(1, 2)}, 1: {(1, 0)}}
    if a_dot_c not in table:
        raise Inadmissible(f"A.C = {a_dot_c} is impossible for a (-2)-curve "
                           f"{'in' if contains else 'not in'} A")
    out = frozenset(table[a_dot_c])
    for s, r in out:   # genus of the curve upstairs must vanish
        assert Fraction(-s * a_dot_c, 2) + Fraction((-2 - r) * s * s, 4) + 1 == 0
    return out


def _sr_feasible(p: ConductrixProblem, a: Mapping[str, int], adot: Mapping[str, int], trace: list):
    """Search s-choices; a point where two s = 1 curves cross transversally is
    blown up, and each curve carries at most r blown-up points."""
    curves = p.curves()
    opts = []
    whole = sum(1 for v in a.values() if v) == 1 and sum(a.values()) == 1
    for c in curves:
        try:
            opts.append(sorted(sr_classify(a.get(c, 0) > 0, adot[c],
                                           whole and a.get(c, 0) == 1)))
        except Inadmissible as exc:
            trace.append(f"{c}: {exc}")
            return None
    pts = p.points()
    for choice in itertools.product(*opts):
        sr = dict(zip(curves, choice))
        load = {c: 0 for c in curves}
        for through, bad in pts:
            blown = any(sr[x][0] == 1 and sr[y][0] == 1 and frozenset((x, y)) not in bad
                        for x, y in itertools.combinations(through, 2))
            if blown:
                for x in through:
                    load[x] += 1
        if all(load[c] <= sr[c][1] for c in curves):
            return sr
    trace.append("no (s, r) assignment survives the blown-up-point count")
    return None


# ----------------------------------------------------------------------------
# search

@dataclass
class Solution:
    conductrix: Conductrix
    sr: dict
    trace: list
    status: str = "derived, unconfirmed against figure"


@dataclass
class SolveResult:
    problem: ConductrixProblem
    solutions: list
    candidates: int                        # vectors with A^2 = -2 before exact filters
    rejected: dict                         # conductrix text -> first failing reason
    searched: int

    @property
    def conductrices(self) -> list[Conductrix]:
        return [s.conductrix for s in self.solutions]


def _grid(bounds, lower=None):
    """All integer vectors lower_i <= a_i <= bounds[i], as an (N, k) int64 array."""
    if not len(bounds):
        return np.zeros((1, 0), dtype=np.int64)
    lower = lower or [0] * len(bounds)
    axes = [np.arange(lo, b + 1, dtype=np.int64) for lo, b in zip(lower, bounds)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def _squares_minus_two(bounds, lower, G):
    """Grid vectors with A^2 = -2, scanned one slice of the first axis at a time."""
    hits, searched = [], 0
    rest = _grid(bounds[1:], lower[1:])
    GR = G[1:, 1:]
    qrest = ((rest @ GR) * rest).sum(axis=1)
    cross = 2 * (rest @ G[0, 1:])
    for first in range(lower[0], bounds[0] + 1):
        q = qrest + first * cross + first * first * G[0, 0]
        sel = rest[q == -2]
        hits.append(np.concatenate([np.full((len(sel), 1), first, dtype=np.int64), sel], axis=1))
        searched += len(rest)
    return np.concatenate(hits), searched


def _one_connected(vec, G) -> bool:
    """A1.A2 >= 1 for every split A = A1 + A2 into nonzero effective parts."""
    vec = np.asarray(vec, dtype=np.int64)
    parts = _grid(vec).astype(np.int64)
    parts = parts[(parts.sum(axis=1) > 0) & ((vec - parts).sum(axis=1) > 0)]
    if not len(parts):
        return True
    rest = vec - parts
    prod = ((parts @ G) * rest).sum(axis=1)
    return bool((prod >= 1).all())


def _connected_support(labels, vec, G) -> bool:
    sup = [i for i, k in enumerate(vec) if k]
    if not sup:
        return False
    seen, stack = {sup[0]}, [sup[0]]
    while stack:
        i = stack.pop()
        for j in sup:
            if j not in seen and G[i][j] > 0:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(sup)


def interior_components(f: FiberSpec) -> list[str]:
    if not (f.is_starred()):
        return []
    ends = set(f.end_components())
    return [l for l in f.labels if l not in ends]


def solve_conductrix(p: ConductrixProblem, slack: int = 1) -> SolveResult:
    f = p.fiber
    mult = f.multiplicities
    if max(mult.values()) > MAX_MULT:
        raise SearchBoundExceeded(f"component multiplicity {max(mult.values())} exceeds {MAX_MULT}")
    labels = p.curves()
    k = len(labels)
    G = np.array([[p.pairing(a, b) for b in labels] for a in labels], dtype=np.int64)
    bounds = [mult[l] + slack if l in mult else 1 for l in labels]
    if SECTION in labels:
        bounds[labels.index(SECTION)] = 0          # the 2-section is horizontal, never in A
    # coefficients forced by hascusp and eachtype start at 1; the filters re-check them
    interior = set(interior_components(f))
    lower = [1 if (l == CUSP or l in interior) else 0 for l in labels]
    cand, searched = _squares_minus_two(bounds, lower, G)
    rejected, sols = {}, []
    for row in cand:
        vec = [int(x) for x in row]
        c = _conductrix(labels, vec)
        reason, trace, sr = _examine(p, labels, vec, G)
        if reason is not None:
            rejected[c.pretty()] = reason
            continue
        if any(vec[i] == bounds[i] for i in range(k) if labels[i] in mult):
            raise SearchBoundExceeded(f"solution {c.pretty()} reaches the search bound "
                                      f"(slack {slack})")
        sols.append(Solution(c, sr, trace))
    sols.sort(key=lambda s: (sum(k for _, k in s.conductrix.multiplicities),
                             [-s.conductrix.coeff(l) for l in labels]))
    return SolveResult(p, sols, len(cand), rejected, searched)


def _examine(p, labels, vec, G):
    """(first failing reason or None, trace, s/r assignment) for one vector."""
    k = len(labels)
    a = dict(zip(labels, vec))
    a2 = int(sum(vec[i] * G[i][j] * vec[j] for i in range(k) for j in range(k)))
    if a2 != -2:
        return f"A^2 = {a2}", [], None
    reason = _filters(p, labels, vec, a, G)
    if reason is not None:
        return reason, [], None
    trace = ["A^2 = -2", "support connected", "-1 <= A.C <= 1 for every curve C != A",
             "containment and multiplicity rules"]
    adot = {labels[j]: int(sum(vec[i] * G[i][j] for i in range(k))) for j in range(k)}
    sr = _sr_feasible(p, a, adot, trace)
    if sr is None:
        return trace[-1], trace, None
    # the most expensive test goes last
    if not _one_connected(vec, G):
        return "not numerically 1-connected", trace, None
    trace.append("numerically 1-connected")
    trace.append("s/r: " + ", ".join(f"{c}:{sr[c]}" for c in labels))
    return None, trace, sr


def examine_conductrix(p: ConductrixProblem, a: Mapping[str, int]):
    """Run every solver filter on a single candidate; (accepted, reason, trace)."""
    labels = p.curves()
    unknown = set(a) - set(labels)
    if unknown:
        raise ValueError(f"labels {sorted(unknown)} are not curves of the problem")
    G = np.array([[p.pairing(x, y) for y in labels] for x in labels], dtype=np.int64)
    reason, trace, _ = _examine(p, labels, [int(a.get(l, 0)) for l in labels], G)
    return reason is None, reason, trace


def _filters(p, labels, vec, a, G):
    f = p.fiber
    k = len(labels)
    fvec = np.array([f.multiplicities[l] for l in f.labels])
    interior = set(interior_components(f))
    if p.quasi and a.get(CUSP, 0) != 1:
        return "curve of cusps must be a simple component of A"
    if not _connected_support(labels, vec, G):
        return "support not connected"
    whole = sum(vec) == 1
    for j in range(k):
        if whole and vec[j] == 1:
            continue
        ac = sum(vec[i] * G[i][j] for i in range(k))
        if not -1 <= ac <= 1:
            return f"A.{labels[j]} = {ac} outside [-1, 1]"
    fpart = np.array([a[l] for l in f.labels])
    if f.is_starred() and fpart.any():
        missing = [l for l in interior if a.get(l, 0) == 0]
        if missing:
            return f"interior components {sorted(missing)} not in A"
    if (fpart >= fvec).all():
        return "A contains the " + ("half fiber" if p.multiple else "fiber")
    if not p.quasi and (fpart > fvec).any():
        return "A not contained in the (half) fiber"
    if p.two_section is not None and a[p.two_section] == 0:
        return f"end component {p.two_section} met by the 2-section must lie in A"
    if not p.multiple:
        for l, m in f.components:
            got = a.get(l, 0)
            if m % 2 and got != (m - 1) // 2:
                return f"odd multiplicity {m} on {l} forces coefficient {(m - 1) // 2}"
            if not m % 2 and got < m // 2:
                return f"even multiplicity {m} on {l} forces coefficient >= {m // 2}"
    return None


# ----------------------------------------------------------------------------
# validation and comparison

@dataclass
class ValidationReport:
    A_squared: Fraction
    A_dot_K: Fraction
    one_connected: bool
    boundary_disjoint: bool

    @property
    def passed(self) -> bool:
        return (self.A_squared == -2 and self.A_dot_K == 0 and self.one_connected
                and self.boundary_disjoint)

    def items(self):
        return [("A^2 = -2", self.A_squared == -2), ("A.K = 0", self.A_dot_K == 0),
                ("numerically 1-connected", self.one_connected),
                ("disjoint from boundary", self.boundary_disjoint)]


def validate_conductrix(a: Conductrix, p: ConductrixProblem | None,
                        host: CurveConfiguration) -> ValidationReport:
    d = a.divisor
    a2 = host.intersect(d, d)
    ak = host.K_dot(d)
    labels = [l for l, _ in a.multiplicities]
    vec = [k for _, k in a.multiplicities]
    G = np.array([[int(host.pairing(x, y)) for y in labels] for x in labels], dtype=np.int64)
    one = _one_connected(vec, G) if vec else False
    bnd = host.boundary
    disjoint = not (set(labels) & set(bnd)) and all(host.intersect(d, {b: 1}) == 0 for b in bnd)
    return ValidationReport(a2, ak, one, disjoint)


def comparison_check(a: Mapping, a_prime: Mapping, g0: Mapping, ginf: Mapping) -> bool:
    """A = A' - G_0 - G_inf, coefficient by coefficient."""
    return DivisorClass(a) == DivisorClass(a_prime) - DivisorClass(g0) - DivisorClass(ginf)


STARRED = ("I0*", "I1*", "I2*", "I3*", "I4*", "II*", "III*", "IV*")
SIMPLE_TYPES = ("I1", "I2", "I3", "I4", "I5", "I6", "I7", "I8", "I9", "II", "III", "IV") + STARRED


def cusp_attachments(f: FiberSpec) -> list[str]:
    """Places the curve of cusps may meet F with C.F = 2."""
    if f.kodaira_type == "III" and not f.multiple:
        return ["tangent"]
    want = 1 if f.multiple else 2
    return [l for l, m in f.components if m == want]


def solve_quasi_elliptic(kodaira_type: str, multiple: bool, slack: int = 1) -> dict:
    """Solve for every admissible cusp attachment; attachment -> SolveResult or error."""
    f = kodaira_fiber(kodaira_type, multiple)
    out = {}
    for att in cusp_attachments(f):
        p = ConductrixProblem.make(kodaira_type, multiple=multiple, kind="quasi-elliptic", cusp=att)
        try:
            out[att] = solve_conductrix(p, slack=slack)
        except SearchBoundExceeded as exc:
            out[att] = exc
    return out

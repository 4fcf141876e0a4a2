"""Divisor bookkeeping for quotients by a p-closed rational vector field (p = 2)."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InconsistentIntegrality, InfeasibleScenario, ParityError
from .lattice import DivisorClass
from .surface import Curve, CurveConfiguration, UnderDetermined, adjunction_check

P = 2


@dataclass
class DerivationScenario:
    name: str
    host: CurveConfiguration
    divisor_D: DivisorClass
    integral_curves: frozenset
    deg_isolated: int = 0
    p: int = P
    contraction_order: tuple = ()        # fixture-declared; empty = host order
    provenance: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)

    def __post_init__(self):
        self.divisor_D = DivisorClass(self.divisor_D)
        self.integral_curves = frozenset(self.integral_curves)
        missing = [c for c in self.integral_curves if c not in self.host]
        if missing:
            raise UnderDetermined(f"integral curves {missing} are not host curves")
        if self.p != P:
            raise ValueError("only p = 2 is supported")

    @property
    def divisorial(self) -> bool:
        return self.deg_isolated == 0

    @property
    def complete(self) -> bool:
        return self.provenance.get("status") == "reconstructed-complete"

    @property
    def K_Y(self) -> DivisorClass:
        return self.host.canonical


def pushforward_self_intersection(c2: int, integral: bool) -> int:
    """C'^2 for the image of C: C^2/2 when integral, 2C^2 otherwise."""
    if integral:
        if c2 % 2:
            raise ParityError(f"an integral curve with odd self-intersection {c2} cannot be a pullback")
        return c2 // 2
    return 2 * c2


def pullback_self_intersection(c2_image: int, integral: bool) -> int:
    return 2 * c2_image if integral else _halve(c2_image)


def _halve(x: int) -> int:
    if x % 2:
        raise ParityError(f"{x} is not twice an integer")
    return x // 2


def canonical_pullback(K_Y: Mapping, D: Mapping) -> DivisorClass:
    """pi^* K' = K_Y - (p - 1)(D)."""
    return DivisorClass(K_Y) - (P - 1) * DivisorClass(D)


def pushforward_two_K(pullback_K: Mapping, integral_curves: Iterable[str]) -> DivisorClass:
    """2K' on the quotient, curve by curve.

    pi^*(C') = C for integral C and 2C otherwise, so a coefficient a on C gives
    b = a (integral) or b = a/2; doubling gives 2a or a.
    """
    integral = set(integral_curves)
    out = {}
    for c, a in DivisorClass(pullback_K).items():
        b = 2 * a if c in integral else a
        if Fraction(b).denominator != 1:
            raise InconsistentIntegrality(f"coefficient {b} on {c} is not integral")
        out[c] = b
    return DivisorClass(out)


def pushforward_pairing(c1c2: Fraction, integral1: bool, integral2: bool) -> Fraction:
    lam = (1 if integral1 else 2) * (1 if integral2 else 2)
    return Fraction(lam) * c1c2 / P


@dataclass
class EulerReport:
    K_dot_D: Fraction | None
    D_squared: Fraction | None
    c2_computed: Fraction | None
    c2_expected: Fraction | None
    passed: bool | None                  # None when the host is under-determined
    detail: str = ""


def euler_identity_check(s: DerivationScenario, c2_Y: int | None = None) -> EulerReport:
    """c2(Y) = deg<D> - K.(D) - (D)^2; by default c2(Y) = 12 - K_Y^2 (rational Y)."""
    try:
        kd = s.host.intersect(s.K_Y, s.divisor_D)
        dd = s.host.intersect(s.divisor_D, s.divisor_D)
        if c2_Y is None:
            c2_Y = 12 - s.host.intersect(s.K_Y, s.K_Y)
    except UnderDetermined as exc:
        return EulerReport(None, None, None, None, None, f"under-determined: {exc}")
    c2 = s.deg_isolated - kd - dd
    return EulerReport(kd, dd, c2, Fraction(c2_Y), c2 == c2_Y)


BUDGET_MARKER = "isolated-singularity budget"


def eta_budget(n: int, A_squared: int | None):
    """deg<eta> = 12 - n + 4A^2 when A != 0; a marker when A = 0."""
    if not 1 <= n <= 10:
        raise InfeasibleScenario(f"n = {n} outside 1..10")
    if A_squared is None:
        return (BUDGET_MARKER, 4 - n)
    d = 12 - n + 4 * A_squared
    if d < 0:
        raise InfeasibleScenario(f"deg<eta> = {d} < 0 for n = {n}, A^2 = {A_squared}")
    return d


@dataclass
class QuotientResult:
    quotient_config: CurveConfiguration
    two_K_quotient: DivisorClass          # after contraction
    two_K_before: DivisorClass            # straight pushforward, bar-labels
    pullback_K: DivisorClass
    boundary: list
    contracted: list
    images: dict                          # curve -> (C^2, image self-intersection or None)
    checks: dict                          # name -> True / False / None (not decidable)
    notes: list

    @property
    def n(self) -> int:
        return len(self.boundary)

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.checks.values())


def bar(label: str) -> str:
    return label + "'"


def quotient_surface(s: DerivationScenario) -> QuotientResult:
    if not s.divisorial:
        raise InfeasibleScenario("deg<D> > 0: the quotient is singular; only the divisorial case is handled")
    host = s.host
    integral = s.integral_curves
    notes = []
    images = {}
    for c in host.curves:
        sq = c.self_intersection
        images[c.label] = (sq, None if sq is None else
                           pushforward_self_intersection(sq, c.label in integral))
    pull = canonical_pullback(s.K_Y, s.divisor_D)
    twoK = pushforward_two_K(pull, integral)
    twoK_bar = twoK.rename({c: bar(c) for c in twoK})

    # pairing table on the quotient; None marks an unknown entry
    labels = list(host.labels)
    table: dict = {}
    for i, a in enumerate(labels):
        for b in labels[i:]:
            if host.pair_known(a, b):
                table[frozenset((a, b)) if a != b else (a,)] = pushforward_pairing(
                    host.pairing(a, b), a in integral, b in integral)
            else:
                table[frozenset((a, b)) if a != b else (a,)] = None

    def get(a, b):
        return table[(a,) if a == b else frozenset((a, b))]

    def put(a, b, v):
        table[(a,) if a == b else frozenset((a, b))] = v

    checks = {}
    contracted = []
    order = list(s.contraction_order) or [c for c in labels if twoK.coeff(c) == 2]
    alive = list(labels)
    current = DivisorClass(twoK)
    for e in order:
        se = get(e, e)
        if se is None and current.coeff(e) == 2:
            # partial host: the declared order is taken on trust
            notes.append(f"{bar(e)} contracted as declared; its self-intersection is not recorded")
            checks[f"contract {bar(e)}"] = None
        elif se != -1 or current.coeff(e) != 2:
            checks[f"contract {bar(e)}"] = False
            notes.append(f"{bar(e)} has self-intersection {se} and 2K-coefficient "
                         f"{current.coeff(e)}; not a blow-down exceptional curve")
            continue
        alive.remove(e)
        for i, a in enumerate(alive):
            for b in alive[i:]:
                ae, be, ab = get(a, e), get(b, e), get(a, b)
                put(a, b, None if None in (ae, be, ab) else ab + ae * be)
        current = current - DivisorClass({e: 2})
        contracted.append(e)
        checks.setdefault(f"contract {bar(e)}", True)
    neg = [c for c in alive if current.coeff(c) < 0]
    boundary = [bar(c) for c in neg]
    for c in neg:
        sq = get(c, c)
        checks[f"{bar(c)} is a (-4)-curve"] = None if sq is None else sq == -4
        checks[f"{bar(c)} has coefficient -1 in 2K"] = current.coeff(c) == -1
    checks["2K is integral"] = current.is_integral()
    leftover = [c for c in current if current.coeff(c) > 0]
    checks["2K has no positive part after contraction"] = not leftover
    # quotient configuration on the surviving images
    curves, pairs, unknown = [], {}, []
    for a in alive:
        sq = get(a, a)
        sqi = None if sq is None else int(sq)
        role = {-4: "boundary", -2: "minus2", -1: "minus1"}.get(sqi, "other")
        if role == "boundary" and a not in neg:
            role = "other"
        curves.append(Curve(bar(a), role, sqi))
    for i, a in enumerate(alive):
        for b in alive[i + 1:]:
            v = get(a, b)
            if v is None:
                unknown.append((bar(a), bar(b)))
            elif v:
                if v.denominator != 1:
                    checks[f"{bar(a)}.{bar(b)} integral"] = False
                pairs[(bar(a), bar(b))] = v
    K = Fraction(1, 2) * current.rename({c: bar(c) for c in current})
    qc = CurveConfiguration(curves, pairs, K, unknown_pairs=unknown, name=f"{s.name} quotient")
    for c in neg:
        try:
            checks[f"K.{bar(c)} = 2"] = qc.K_dot({bar(c): 1}) == 2
        except UnderDetermined:
            checks[f"K.{bar(c)} = 2"] = None
    try:
        adj = adjunction_check(qc, rational=[x.label for x in qc.curves
                                             if x.self_intersection is not None and x.self_intersection < 0
                                             and all(qc.pair_known(x.label, y) for y in K)])
        checks["adjunction on quotient curves"] = adj.passed
    except UnderDetermined:
        checks["adjunction on quotient curves"] = None
    if not host.complete:
        notes.append("host pairings partly unknown; checks marked None are not decidable")
    return QuotientResult(qc, current.rename({c: bar(c) for c in current}), twoK_bar, pull,
                          boundary, [bar(c) for c in contracted], images, checks, notes)

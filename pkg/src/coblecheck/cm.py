"""Coble–Mukai lattice, effective roots, root-kind propagation, boundary counts."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .dynkin import (RootGraph, classify_connected, induced_d4_vertices)
from .errors import (DecompositionError, DegenerateInput, ModelInconsistent, NotARoot,
                     Unsatisfiable)
from .lattice import (Basis, DivisorClass, GramMatrix, inner, nullspace,
                      orthogonal_complement, signature)
from .surface import CurveConfiguration, HalphenBlowup, dynkin_of_type, normalize_type

HALF = Fraction(1, 2)


# ----------------------------------------------------------------------------
# the lattice

@dataclass
class CobleModel:
    configuration: CurveConfiguration
    cm_basis: Basis
    cm_gram: GramMatrix
    embedding: dict              # cm label -> DivisorClass in ambient coordinates

    @property
    def n(self) -> int:
        return len(self.configuration.boundary)

    def coordinates(self, x: Mapping) -> DivisorClass:
        """Write an ambient (or curve-label) class in the CM basis; exact solve."""
        amb = self.configuration.ambient.basis
        t = self.configuration.to_ambient(x)
        labels = list(self.cm_basis)
        cols = [self.embedding[l] for l in labels]
        rows = [[c.coeff(a) for c in cols] + [-t.coeff(a)] for a in amb]
        for k in nullspace(rows, len(labels) + 1):
            if k[-1]:
                return DivisorClass({l: k[i] / k[-1] for i, l in enumerate(labels)})
        raise ModelInconsistent("class does not lie in CM(S)")


def build_cm(c: CurveConfiguration) -> CobleModel:
    """Orthogonal complement of the boundary inside Pic(S) + sum Z(B_i/2)."""
    if c.ambient is None:
        raise ModelInconsistent("a CM lattice needs an ambient Picard basis")
    bnd = c.boundary
    n = len(bnd)
    if n < 1:
        raise ModelInconsistent("configuration has no boundary curves")
    if c.rho != 10 + n:
        raise ModelInconsistent(f"Picard rank {c.rho} does not equal 10 + n = {10 + n}")
    k2 = c.K_squared()
    if k2 != -n:
        raise ModelInconsistent(f"K^2 = {k2}, expected {-n}")
    g = c.ambient
    gens = [DivisorClass({a: 1}) for a in g.basis]
    gens += [HALF * c.classes[b] for b in bnd]
    walls = [c.classes[b] for b in bnd]
    try:
        comp = orthogonal_complement(g, gens, walls, prefix="w", integral=True)
    except DegenerateInput as exc:
        raise ModelInconsistent(str(exc)) from exc
    sig = signature(comp.gram)
    if len(comp.basis) != 10 or (sig.n_plus, sig.n_minus, sig.n_zero) != (1, 9, 0):
        raise ModelInconsistent(f"CM(S) has rank {len(comp.basis)} and signature {tuple(sig)}")
    if not comp.gram.is_even():
        raise ModelInconsistent("CM(S) pairing is not even")
    return CobleModel(c, comp.basis, comp.gram, dict(zip(comp.basis, comp.vectors)))


# ----------------------------------------------------------------------------
# roots

@dataclass(frozen=True)
class EffectiveRoot:
    kind: str                     # "minus2root" | "minus1root"
    cls: DivisorClass             # in curve labels
    curve: str | None = None      # the (-2)-curve, or the (-1)-curve E
    boundaries: tuple = ()        # (B_j, B_k) for a minus1root

    @classmethod
    def minus1(cls, e: str, bj: str, bk: str) -> "EffectiveRoot":
        return cls("minus1root", DivisorClass({e: 2, bj: HALF, bk: HALF}), e, (bj, bk))

    @classmethod
    def minus2(cls, c: str) -> "EffectiveRoot":
        return cls("minus2root", DivisorClass({c: 1}), c)


def _conf(m):
    return m.configuration if isinstance(m, CobleModel) else m


def classify_root(r: Mapping, m) -> EffectiveRoot:
    """Recognise a (-2)-root or a (-1)-root 2E + B_j/2 + B_k/2 from its class."""
    c = _conf(m)
    r = DivisorClass(r)
    sq = c.intersect(r, r)
    if sq != -2:
        raise NotARoot(f"class squares to {sq}, not -2")
    for b in c.boundary:
        if c.intersect(r, {b: 1}):
            raise NotARoot(f"class pairs nontrivially with boundary {b}; it is not in CM(S)")
    if r.is_integral():
        only = [k for k, v in r.items()]
        curve = only[0] if len(only) == 1 and r[only[0]] == 1 else None
        return EffectiveRoot("minus2root", r, curve)
    halves = [k for k, v in r.items() if v.denominator != 1]
    rest = [k for k in r if k not in halves]
    if (len(halves) == 2 and all(r[h] == HALF and c.role(h) == "boundary" for h in halves)
            and len(rest) == 1 and c.role(rest[0]) == "minus1" and r[rest[0]] == 2):
        return EffectiveRoot("minus1root", r, rest[0], tuple(halves))
    raise NotARoot("half-integral class without the 2E + B_j/2 + B_k/2 shape")


@dataclass
class PairRuleReport:
    pairing: Fraction
    rule: str
    consistent: bool
    detail: str


def pair_rule_check(r1: EffectiveRoot, r2: EffectiveRoot, c: CurveConfiguration) -> PairRuleReport:
    p = c.intersect(r1.cls, r2.cls)
    if r1.kind == r2.kind == "minus1root":
        disjoint = c.pairing(r1.curve, r2.curve) == 0 if r1.curve != r2.curve else False
        shared = len(set(r1.boundaries) & set(r2.boundaries))
        predicted = disjoint and shared == 1
        return PairRuleReport(p, "minus1-minus1", (p == 1) == predicted,
                              f"curves disjoint={disjoint}, shared boundaries={shared}")
    if {r1.kind, r2.kind} == {"minus1root", "minus2root"}:
        return PairRuleReport(p, "mixed-even", p.denominator == 1 and p % 2 == 0,
                              "a (-1)-root and a (-2)-root pair evenly")
    return PairRuleReport(p, "minus2-minus2", p.denominator == 1, "integral pairing")


def decompose_fiber(h: HalphenBlowup, m=None) -> list[tuple[EffectiveRoot, int]]:
    """Split a blown-up I_n / III / IV fiber into effective roots."""
    c = _conf(m) if m is not None else h.result
    t = h.source.kodaira_type
    if t == "III":
        parts = [(EffectiveRoot.minus1("E2", "B1", "B2"), 2), (EffectiveRoot.minus2("E1"), 2)]
    elif t == "IV":
        parts = [(EffectiveRoot.minus1(f"E{i}", f"B{i}", "B4"), 2) for i in (1, 2, 3)]
    elif t.startswith("I") and not t.startswith("II") and not t.startswith("IV") and t != "I1":
        n = len(h.boundary)
        parts = [(EffectiveRoot.minus1(f"E{i}", f"B{i}", f"B{i % n + 1}"), 1) for i in range(1, n + 1)]
    else:
        raise DecompositionError(f"type {t} does not split into effective roots")
    total = DivisorClass()
    for root, k in parts:
        got = classify_root(root.cls, c)
        if got.kind != root.kind:
            raise DecompositionError(f"{root.cls.pretty()} classified as {got.kind}")
        total = total + k * root.cls
    if total != h.fiber:
        raise DecompositionError(f"roots sum to {total.pretty()}, fiber is {h.fiber.pretty()}")
    return parts


def roots_graph(parts: Sequence[tuple[EffectiveRoot, int]], c: CurveConfiguration) -> RootGraph:
    names = [r.curve for r, _ in parts]
    edges = []
    for (i, (a, _)), (j, (b, _)) in itertools.combinations(enumerate(parts), 2):
        w = c.intersect(a.cls, b.cls)
        if w:
            edges.append((names[i], names[j], int(w)))
    kinds = {r.curve: "minus1root" if r.kind == "minus1root" else "minus2" for r, _ in parts}
    return RootGraph(names, edges, kinds)


# ----------------------------------------------------------------------------
# kind propagation

@dataclass(frozen=True)
class Assumption:
    """Conditional constraint taken from a case proof rather than derived here."""
    when: tuple          # ((vertex, kind), ...) all must hold
    force: tuple         # ((vertex, kind), ...) then required
    ref: str = ""
    anchor: str = ""

    def allows(self, labeling: Mapping[str, str]) -> bool:
        if all(labeling[v] == k for v, k in self.when):
            return all(labeling[v] == k for v, k in self.force)
        return True


@dataclass
class LabelResult:
    forced: dict                 # vertex -> kind fixed by propagation
    classes: list                # parity classes (tuples), free ones only
    labelings: list              # every consistent total labeling, deterministic order
    reasons: dict                # vertex -> why it is forced

    def restrictions(self, vertices: Iterable[str]) -> list:
        vs = list(vertices)
        seen = []
        for lab in self.labelings:
            t = tuple(lab[v] for v in vs)
            if t not in seen:
                seen.append(t)
        return seen


def _parity_classes(g: RootGraph) -> list[list[str]]:
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b, w in g.edges():
        if w % 2:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb, key=g._pos.get)] = min(ra, rb, key=g._pos.get)
    groups: dict = {}
    for v in g.vertices:
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values(), key=lambda grp: g._pos[grp[0]])


def propagate_labels(g: RootGraph, assumptions: Sequence[Assumption] = ()) -> LabelResult:
    """Induced D4 forces (-2); odd edges force equal kinds; enumerate the rest."""
    reasons = {}
    fixed = {}
    for v, k in g.kinds.items():
        if k != "unknown":
            fixed[v] = k
            reasons[v] = "declared"
    for v in induced_d4_vertices(g):
        if fixed.get(v, "minus2") != "minus2":
            raise Unsatisfiable(f"{v} lies in an induced D4 but is declared {fixed[v]}",
                                [(v, "D4"), (v, "declared")])
        fixed[v] = "minus2"
        reasons.setdefault(v, "induced D4")
    forced, free = {}, []
    for grp in _parity_classes(g):
        kinds = {fixed[v] for v in grp if v in fixed}
        if len(kinds) > 1:
            clash = [(v, fixed[v]) for v in grp if v in fixed]
            raise Unsatisfiable(f"odd-edge class {grp} carries both kinds", clash)
        if kinds:
            k = kinds.pop()
            for v in grp:
                forced[v] = k
                reasons.setdefault(v, "odd edge parity")
        else:
            free.append(tuple(grp))
    labelings = []
    for choice in itertools.product(("minus2", "minus1root"), repeat=len(free)):
        lab = dict(forced)
        for grp, k in zip(free, choice):
            lab.update({v: k for v in grp})
        lab = {v: lab[v] for v in g.vertices}
        if all(a.allows(lab) for a in assumptions):
            labelings.append(lab)
    if not labelings:
        raise Unsatisfiable("assumption records exclude every labeling",
                            [(a.ref, a.anchor) for a in assumptions])
    return LabelResult({v: forced[v] for v in g.vertices if v in forced}, free, labelings, reasons)


# ----------------------------------------------------------------------------
# extremal tables

def default_tables() -> dict:
    from .fixtures import load_registry
    return load_registry().tables


def fiber_diagram(t: str) -> str:
    return dynkin_of_type(t)


def match_extremal(types: Iterable[str], kind: str, tables: Mapping | None = None) -> list[tuple]:
    """Table entries whose reducible fibers have exactly the given diagram types."""
    tables = tables or default_tables()
    want = Counter(types)
    out = []
    for entry in tables[kind]["entries"]:
        fibers = tuple(entry["fibers"])
        got = Counter(d for d in map(fiber_diagram, fibers) if d)
        if got == want:
            out.append(fibers)
    return out


# ----------------------------------------------------------------------------
# boundary bookkeeping

CONTRIBUTION_NOTE = "I_k -> k, II -> 1, III -> 2, IV -> 4 (B_4 is a boundary curve)"


def contribution(t: str) -> int:
    t = normalize_type(t)
    if t == "II":
        return 1
    if t == "III":
        return 2
    if t == "IV":
        return 4
    if t.startswith("I") and not t.endswith("*"):
        return int(t[1:])
    raise ValueError(f"type {t} is never blown up")


def blowable(t: str) -> bool:
    t = normalize_type(t)
    return t in ("II", "III", "IV") or (t.startswith("I") and not t.endswith("*")
                                         and not t.startswith("II") and not t.startswith("IV"))


def special_fibration_filter(fiber_type: str, multiple: bool, two_section: bool) -> bool:
    """False exactly for 2II*, 2III*, 2I_m* (m = 2, 3, 4) with a (-2) 2-section."""
    t = normalize_type(fiber_type)
    if not (multiple and two_section):
        return True
    return t not in ("II*", "III*", "I2*", "I3*", "I4*")


@dataclass(frozen=True)
class Fibration:
    kind: str                            # "elliptic" | "quasi-elliptic"
    components: tuple                    # tuples of vertex labels
    two_section: str | None = None
    ref: str = ""
    anchor: str = ""


@dataclass(frozen=True)
class Slot:
    type: str
    component: tuple | None              # None: irreducible fiber not in the graph
    generic: bool = False                # quasi-elliptic cuspidal fiber outside the table


@dataclass
class BoundaryScenario:
    n: int
    labeling: dict
    entry: tuple
    index: int
    statuses: tuple                      # ((slot, status), ...)
    pairs: dict                          # minus1root vertex -> (b_j, b_k)

    def describe(self) -> str:
        blown = [s.type + ("" if s.component else "(irreducible)") for s, st in self.statuses
                 if st == "blown"]
        mult = [s.type for s, st in self.statuses if st == "multiple"]
        return (f"n={self.n}: index {self.index}, fibers {'+'.join(self.entry) or '-'}, "
                f"blown {blown}, multiple {mult or 'none'}")


@dataclass
class BoundaryCountResult:
    n_values: tuple
    scenarios: list                      # one witness per (n, labeling-restriction)
    rejections: Counter

    def witness(self, n: int) -> BoundaryScenario:
        return next(s for s in self.scenarios if s.n == n)


def _cyclic_order(g: RootGraph, comp: Sequence[str]) -> list[str]:
    comp = list(comp)
    if len(comp) <= 2:
        return comp
    order = [comp[0]]
    while len(order) < len(comp):
        nxt = sorted((w for w in g.adj[order[-1]] if w in comp and w not in order), key=g._pos.get)
        if not nxt:
            raise Unsatisfiable(f"component {comp} is not a cycle")
        order.append(nxt[0])
    return order


def _pair_solver(g: RootGraph, labeling: Mapping, fixed: Mapping, n: int):
    """Assign boundary pairs to every minus1root so that w(u, v) = |pair_u & pair_v|."""
    m1 = [v for v in g.vertices if labeling[v] == "minus1root"]
    for u, v in itertools.combinations([x for x in m1 if x in fixed], 2):
        if len(set(fixed[u]) & set(fixed[v])) != g.weight(u, v):
            return None
    todo = [v for v in m1 if v not in fixed]
    assign = dict(fixed)

    def ok(v, pair):
        for u in m1:
            if u in assign and u != v and len(set(assign[u]) & set(pair)) != g.weight(u, v):
                return False
        return True

    def rec(i):
        if i == len(todo):
            return True
        v = todo[i]
        used = sorted({b for p in assign.values() for b in p})
        fresh = [b for b in range(n) if b not in used][:2]
        pool = used + fresh
        for a, b in itertools.combinations(pool, 2):
            if a in fresh and b in fresh and (a, b) != tuple(fresh):
                continue
            if a in used and b in fresh and b != fresh[0]:
                continue
            if ok(v, (a, b)):
                assign[v] = (a, b)
                if rec(i + 1):
                    return True
                del assign[v]
        return False

    return assign if rec(0) else None


def boundary_count(g: RootGraph, labelings: Sequence[Mapping], fibration: Fibration,
                   assumptions: Sequence[Assumption] = (), tables: Mapping | None = None,
                   max_n: int = 10) -> BoundaryCountResult:
    """Halphen bookkeeping over every labeling and matching extremal entry.

    Index 2: one reduced fiber blown up, at most one multiple fiber.
    Index 1: two reduced fibers blown up, no multiple fibers.
    """
    tables = tables or default_tables()
    comps = [tuple(g.order(c)) for c in fibration.components]
    ctypes = [classify_connected(g, c) for c in comps]
    for c, cl in zip(comps, ctypes):
        if cl.kind != "affine":
            raise Unsatisfiable(f"fibration component {list(c)} is {cl.kind}, not affine")
    radical = [dict(zip(cl.vertices, cl.multiplicities)) for cl in ctypes]
    entries = match_extremal([cl.type for cl in ctypes], fibration.kind, tables)
    rejections: Counter = Counter()
    if not entries:
        raise Unsatisfiable("no extremal table entry matches the fibration",
                            [(fibration.kind, tuple(cl.type for cl in ctypes))])
    s = fibration.two_section
    half = []
    for c, rad in zip(comps, radical):
        if s is None or s in c:
            half.append(None)
        else:
            half.append(sum(m * g.weight(s, v) for v, m in rad.items()))
    scenarios, found = [], {}
    labelings = [lab for lab in labelings if all(a.allows(lab) for a in assumptions)]
    for li, lab in enumerate(labelings):
        for entry in entries:
            for slots in _assignments(entry, comps, ctypes, fibration.kind):
                for index in (2, 1):
                    for statuses in _statuses(slots, index, comps, half, lab, g, rejections):
                        sc = _evaluate(g, lab, entry, index, slots, statuses, fibration,
                                       rejections, max_n)
                        if sc is not None:
                            key = (sc.n, tuple(sorted(lab.items())))
                            if key not in found:
                                found[key] = sc
                                scenarios.append(sc)
    ns = tuple(sorted({sc.n for sc in scenarios}))
    if not ns:
        raise Unsatisfiable("no Halphen scenario is consistent with the graph",
                            sorted(rejections.items()))
    scenarios.sort(key=lambda sc: (sc.n, labelings.index(sc.labeling)))
    return BoundaryCountResult(ns, scenarios, rejections)


def _assignments(entry, comps, ctypes, kind):
    """All ways of matching graph components to the reducible fibers of an entry."""
    fibers = list(entry)
    red = [i for i, t in enumerate(fibers) if fiber_diagram(t)]
    seen = set()
    for perm in itertools.permutations(range(len(comps))):
        if any(fiber_diagram(fibers[red[k]]) != ctypes[perm[k]].type for k in range(len(red))):
            continue
        slots = []
        for i, t in enumerate(fibers):
            comp = comps[perm[red.index(i)]] if i in red else None
            slots.append(Slot(t, comp))
        if kind == "quasi-elliptic":
            slots += [Slot("II", None, generic=True), Slot("II", None, generic=True)]
        key = tuple(slots)
        if key not in seen:
            seen.add(key)
            yield tuple(slots)


def _statuses(slots, index, comps, half, lab, g, rejections):
    opts = []
    for sl in slots:
        allowed = []
        for st in ("simple", "multiple", "blown"):
            if sl.component is None:
                if st == "multiple":
                    continue          # an extra multiple fiber off the graph changes nothing
                if st == "blown" and not blowable(sl.type):
                    continue
                allowed.append(st)
                continue
            i = comps.index(sl.component)
            kinds = [lab[v] for v in sl.component]
            if st == "blown":
                if not blowable(sl.type):
                    continue
                t = sl.type
                if t == "III":
                    good = sorted(kinds) == ["minus1root", "minus2"]
                else:
                    good = all(k == "minus1root" for k in kinds)
                halfish = t in ("III", "IV")
            else:
                good = all(k == "minus2" for k in kinds)
                halfish = st == "multiple"
            if not good:
                rejections["root kinds do not fit fiber status"] += 1
                continue
            h = half[i]
            if h is not None:
                if h not in (1, 2):
                    rejections["2-section degree on fiber is neither 1 nor 2"] += 1
                    continue
                if (h == 1) != halfish:
                    rejections["half/full fiber test against the 2-section"] += 1
                    continue
            allowed.append(st)
        opts.append(allowed)
    for combo in itertools.product(*opts):
        blown = sum(st == "blown" for st in combo)
        mult = sum(st == "multiple" for st in combo)
        if index == 2 and (blown != 1 or mult > 1):
            continue
        if index == 1 and (blown != 2 or mult):
            continue
        yield tuple(zip(slots, combo))


def _evaluate(g, lab, entry, index, slots, statuses, fib, rejections, max_n):
    s = fib.two_section
    if fib.kind == "elliptic" and s is not None and lab[s] == "minus2":
        for sl, st in statuses:
            if sl.component is not None and st == "multiple" and sl.type.endswith("*"):
                if not special_fibration_filter(sl.type, True, True):
                    rejections["special elliptic fibration with a multiple fiber"] += 1
                    return None
    n = sum(contribution(sl.type) for sl, st in statuses if st == "blown")
    if not 1 <= n <= max_n:
        rejections["n outside 1..10"] += 1
        return None
    fixed, off = {}, 0
    for sl, st in statuses:
        if st != "blown":
            continue
        k = contribution(sl.type)
        if sl.component is not None:
            t = sl.type
            if t == "III":
                v = next(x for x in sl.component if lab[x] == "minus1root")
                fixed[v] = (off, off + 1)
            elif t == "IV":
                for i, v in enumerate(_cyclic_order(g, sl.component)):
                    fixed[v] = (off + i, off + 3)
            else:
                cyc = _cyclic_order(g, sl.component)
                for i, v in enumerate(cyc):
                    fixed[v] = tuple(sorted((off + i, off + (i + 1) % k)))
        off += k
    pairs = _pair_solver(g, lab, fixed, n)
    if pairs is None:
        rejections["no boundary pairs realise the (-1)-root pairings"] += 1
        return None
    return BoundaryScenario(n, dict(lab), entry, index, tuple(statuses),
                            {v: (f"B{a + 1}", f"B{b + 1}") for v, (a, b) in pairs.items()})

"""Root graphs, Dynkin recognition by Gram radical, parabolic enumeration, Vinberg."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import MissingRealization, NotAffine, NotConnected, TooLarge
from .lattice import (DivisorClass, GramMatrix, _natural_key, matrix_rank, nullspace,
                      primitive_integer, signature)

KINDS = ("minus2", "minus1root")
MAX_VERTICES = 24


class RootGraph:
    """Weighted graph of effective roots; edge weight is the pairing (1 or 2)."""

    def __init__(self, vertices: Sequence[str], edges: Iterable[tuple],
                 kinds: Mapping[str, str] | None = None, name: str = ""):
        self.name = name
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex labels must be unique")
        vs = set(self.vertices)
        self.weights: dict[frozenset, int] = {}
        for a, b, w in edges:
            if a == b:
                raise ValueError(f"self-loop at {a}")
            if a not in vs or b not in vs:
                raise ValueError(f"edge ({a}, {b}) uses an unknown vertex")
            if w not in (1, 2):
                raise ValueError(f"edge ({a}, {b}) has weight {w}; only 1 and 2 are allowed")
            key = frozenset((a, b))
            if key in self.weights:
                raise ValueError(f"duplicate edge ({a}, {b})")
            self.weights[key] = w
        kinds = dict(kinds or {})
        for v, k in kinds.items():
            if k not in KINDS + ("unknown",):
                raise ValueError(f"vertex {v}: kind {k!r} not recognised")
        self.kinds = {v: kinds.get(v, "unknown") for v in self.vertices}
        self._pos = {v: i for i, v in enumerate(self.vertices)}
        self.adj = {v: set() for v in self.vertices}
        for key in self.weights:
            a, b = tuple(key)
            self.adj[a].add(b)
            self.adj[b].add(a)

    def weight(self, a: str, b: str) -> int:
        return self.weights.get(frozenset((a, b)), 0)

    def pairing(self, a: str, b: str) -> int:
        return -2 if a == b else self.weight(a, b)

    def edges(self) -> list[tuple[str, str, int]]:
        out = []
        for key, w in self.weights.items():
            a, b = sorted(key, key=self._pos.__getitem__)
            out.append((a, b, w))
        return sorted(out, key=lambda e: (self._pos[e[0]], self._pos[e[1]]))

    def order(self, subset: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(subset, key=self._pos.__getitem__))

    def gram(self, subset: Iterable[str] | None = None) -> GramMatrix:
        labels = self.order(subset) if subset is not None else self.vertices
        return GramMatrix.from_pairing(labels, self.pairing)

    def is_connected(self, subset: Iterable[str]) -> bool:
        sub = set(subset)
        if not sub:
            return False
        start = next(iter(sub))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in self.adj[v] & sub:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == sub

    def delete(self, *labels: str) -> "RootGraph":
        keep = [v for v in self.vertices if v not in labels]
        return RootGraph(keep, [e for e in self.edges() if e[0] in keep and e[1] in keep],
                         {v: self.kinds[v] for v in keep}, name=f"{self.name}-{'-'.join(labels)}")

    def add_vertex(self, label: str, edges: Iterable[tuple[str, int]], kind="unknown"):
        return RootGraph(self.vertices + (label,),
                         self.edges() + [(label, b, w) for b, w in edges],
                         {**self.kinds, label: kind}, name=self.name)

    def __repr__(self):
        return f"RootGraph({self.name!r}, {len(self.vertices)} vertices, {len(self.weights)} edges)"


# ----------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class Classification:
    kind: str                       # "finite" | "affine" | "indefinite"
    type: str                       # e.g. "A3", "D~5", "E~8", "" for indefinite
    vertices: tuple = ()
    multiplicities: tuple = ()      # radical coefficients, same order as vertices

    @property
    def rank(self) -> int:
        n = len(self.vertices)
        return n - 1 if self.kind == "affine" else n


def _finite_name(n: int, det: int) -> str:
    if det == n + 1:
        return f"A{n}"
    if det == 4 and n >= 4:
        return f"D{n}"
    return {(6, 3): "E6", (7, 2): "E7", (8, 1): "E8"}.get((n, det), f"?{n}")


def _affine_name(mults: Sequence[int]) -> str:
    n = len(mults)
    top = max(mults)
    if top == 1:
        return f"A~{n - 1}"
    if top == 2:
        return f"D~{n - 1}"
    return {3: "E~6", 4: "E~7", 6: "E~8"}.get(top, "?")


def classify_gram(labels: Sequence[str], g: GramMatrix) -> Classification:
    sig = signature(g)
    n = len(labels)
    if sig.n_minus == n:
        det = abs(g.determinant())
        return Classification("finite", _finite_name(n, int(det)), tuple(labels))
    if sig.n_plus == 0 and sig.n_zero == 1:
        ker = nullspace(g.entries)
        v = primitive_integer(ker[0])
        if all(x < 0 for x in v):
            v = [-x for x in v]
        if all(x > 0 for x in v):
            return Classification("affine", _affine_name(v), tuple(labels), tuple(v))
    return Classification("indefinite", "", tuple(labels))


def classify_connected(graph: RootGraph, subset: Iterable[str]) -> Classification:
    sub = graph.order(set(subset))
    if not graph.is_connected(sub):
        raise NotConnected(f"subset {list(sub)} is not connected")
    return classify_gram(sub, graph.gram(sub))


# ----------------------------------------------------------------------------
# parabolic subdiagrams

@dataclass(frozen=True)
class AffineComponent:
    vertices: tuple
    type: str
    multiplicities: tuple

    @property
    def rank(self) -> int:
        return len(self.vertices) - 1

    def radical(self) -> DivisorClass:
        return DivisorClass(zip(self.vertices, self.multiplicities))


@dataclass(frozen=True)
class ParabolicSubdiagram:
    components: tuple  # of AffineComponent, canonically sorted

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    @property
    def types(self) -> tuple:
        return tuple(c.type for c in self.components)

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for c in self.components for v in c.vertices)


@dataclass
class ParabolicIndex:
    connected: list            # every connected affine subdiagram, canonical order
    maximal: list              # maximal-by-inclusion parabolic subdiagrams
    graph: RootGraph = field(repr=False, default=None)


def _connected_subsets(graph: RootGraph):
    """Yield (frozenset, Classification) for every connected subset that is
    finite or affine.  Indefinite subsets are pruned since supersets of an
    indefinite principal minor stay indefinite, and affine ones are maximal."""
    pos = graph._pos
    cache: dict[frozenset, Classification] = {}
    # ESU-style enumeration: each connected set is grown from its least vertex.
    for root in graph.vertices:
        r = pos[root]
        stack = [(frozenset([root]), frozenset(w for w in graph.adj[root] if pos[w] > r))]
        while stack:
            cur, ext = stack.pop()
            if cur in cache:
                continue
            cls = classify_gram(graph.order(cur), graph.gram(cur))
            cache[cur] = cls
            if cls.kind == "indefinite":
                continue
            yield cur, cls
            if cls.kind == "affine":
                continue
            ext = set(ext)
            while ext:
                w = min(ext, key=pos.__getitem__)
                ext.discard(w)
                new = cur | {w}
                excl = set()
                for u in cur:
                    excl |= graph.adj[u]
                add = {x for x in graph.adj[w] if pos[x] > r and x not in new and x not in excl}
                stack.append((new, frozenset(ext | add)))


def _component_key(graph: RootGraph, c: AffineComponent):
    return tuple(graph._pos[v] for v in c.vertices)


def connected_parabolics(graph: RootGraph) -> list[AffineComponent]:
    if len(graph.vertices) > MAX_VERTICES:
        raise TooLarge(f"{len(graph.vertices)} vertices exceeds the guard of {MAX_VERTICES}")
    comps = [AffineComponent(cls.vertices, cls.type, cls.multiplicities)
             for _, cls in _connected_subsets(graph) if cls.kind == "affine"]
    comps.sort(key=lambda c: (len(c.vertices), _component_key(graph, c)))
    return comps


def _compatible(graph: RootGraph, a: AffineComponent, b: AffineComponent) -> bool:
    sa = set(a.vertices)
    for v in b.vertices:
        if v in sa or graph.adj[v] & sa:
            return False
    return True


def enumerate_parabolics(graph: RootGraph) -> ParabolicIndex:
    comps = connected_parabolics(graph)
    n = len(comps)
    compat = [[_compatible(graph, comps[i], comps[j]) for j in range(n)] for i in range(n)]
    maximal = []

    # Bron-Kerbosch on the compatibility graph: maximal cliques are exactly the
    # maximal parabolic subdiagrams.
    def bk(r, p, x):
        if not p and not x:
            if r:
                parts = sorted((comps[i] for i in r), key=lambda c: _component_key(graph, c))
                maximal.append(ParabolicSubdiagram(tuple(parts)))
            return
        pivot = max(p | x, key=lambda u: sum(1 for v in p if compat[u][v]))
        for v in sorted(p - {w for w in p if compat[pivot][w]}):
            nb = {w for w in range(n) if compat[v][w]}
            bk(r | {v}, p & nb, x & nb)
            p = p - {v}
            x = x | {v}

    bk(frozenset(), frozenset(range(n)), frozenset())
    maximal.sort(key=lambda p: (-p.rank, [_component_key(graph, c) for c in p.components]))
    return ParabolicIndex(comps, maximal, graph)


# ----------------------------------------------------------------------------
# Vinberg criterion

@dataclass
class VinbergResult:
    verdict: str                      # "pass" | "fail"
    witnesses: dict                   # component vertices -> completing ParabolicSubdiagram
    counterexamples: list             # components with no completion
    r: int

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def vinberg_check(graph: RootGraph, lattice_rank_r: int,
                  index: ParabolicIndex | None = None) -> VinbergResult:
    """Every connected parabolic must sit in a parabolic subdiagram of rank r - 1.

    The witness recorded is the lexicographically least completion, comparing
    the sorted tuples of component keys.
    """
    target = lattice_rank_r - 1
    index = index or enumerate_parabolics(graph)
    comps = sorted(index.connected, key=lambda c: _component_key(graph, c))
    n = len(comps)
    compat = [[_compatible(graph, comps[i], comps[j]) for j in range(n)] for i in range(n)]
    witnesses, bad = {}, []
    for i, c in enumerate(comps):
        need = target - c.rank
        found = None

        def search(start, chosen, need):
            nonlocal found
            if need == 0:
                found = list(chosen)
                return True
            for j in range(start, n):
                if j == i or not compat[i][j] or comps[j].rank > need:
                    continue
                if all(compat[j][k] for k in chosen):
                    chosen.append(j)
                    if search(j + 1, chosen, need - comps[j].rank):
                        return True
                    chosen.pop()
            return False

        if need >= 0 and search(0, [], need):
            parts = sorted([c] + [comps[j] for j in found], key=lambda x: _component_key(graph, x))
            witnesses[c.vertices] = ParabolicSubdiagram(tuple(parts))
        else:
            bad.append(c)
    return VinbergResult("pass" if not bad else "fail", witnesses, bad, lattice_rank_r)


def nondegeneracy_check(graph: RootGraph, ambient: GramMatrix,
                        realization: Mapping[str, Mapping]) -> bool:
    """True iff the realized vertex classes span the whole ambient space."""
    missing = [v for v in graph.vertices if v not in realization]
    if missing:
        raise MissingRealization(f"no realization for vertices {missing}")
    rows = []
    for v in graph.vertices:
        x = realization[v]
        row = [Fraction(0)] * len(ambient.basis)
        for k, c in x.items():
            row[ambient.basis.index(k)] += Fraction(c)
        rows.append(row)
    return matrix_rank(rows) == len(ambient.basis)


def gram_rank(graph: RootGraph) -> int:
    return graph.gram().rank()


def radical_fiber_class(component) -> DivisorClass:
    """Primitive positive radical generator of an affine component."""
    if isinstance(component, AffineComponent):
        return component.radical()
    if isinstance(component, Classification):
        if component.kind != "affine":
            raise NotAffine(f"component of kind {component.kind} has no fiber class")
        return DivisorClass(zip(component.vertices, component.multiplicities))
    raise NotAffine("expected an affine component")


def induced_d4_vertices(graph: RootGraph) -> set[str]:
    """Vertices lying on some induced D4 (a weight-1 claw with independent leaves)."""
    out = set()
    for c in graph.vertices:
        nb = sorted((w for w in graph.adj[c] if graph.weight(c, w) == 1), key=graph._pos.get)
        for i in range(len(nb)):
            for j in range(i + 1, len(nb)):
                if graph.weight(nb[i], nb[j]):
                    continue
                for k in range(j + 1, len(nb)):
                    if graph.weight(nb[i], nb[k]) or graph.weight(nb[j], nb[k]):
                        continue
                    out.update((c, nb[i], nb[j], nb[k]))
    return out


def natural_sorted(labels: Iterable[str]) -> list[str]:
    return sorted(labels, key=_natural_key)

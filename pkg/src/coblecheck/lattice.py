"""Exact rational bilinear-form arithmetic.

Everything here works over :class:`fractions.Fraction` (or plain ``int`` where the
data are integral).  No routine in this module touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import DegenerateInput, NotARoot, NotLatticeVector, UnknownCurve

Rational = Fraction


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; pass int, str or Fraction")
    return Fraction(x)


@dataclass(frozen=True)
class Basis:
    names: tuple

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate basis labels: {dup}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, label):
        return label in self._index

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownCurve(f"unknown label {label!r}") from None


class DivisorClass(Mapping):
    """Sparse exact-rational coefficient vector keyed by curve label.

    Zero coefficients are never stored, so equality is coefficient equality.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coefficients: Mapping | Iterable = ()):
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        c = {}
        for k, v in items:
            v = _q(v)
            if v:
                c[k] = c.get(k, 0) + v
                if not c[k]:
                    del c[k]
        self._c = c
        self._hash = None

    @classmethod
    def unit(cls, label: str) -> "DivisorClass":
        return cls({label: 1})

    def __getitem__(self, key):
        return self._c[key]

    def coeff(self, key) -> Fraction:
        return self._c.get(key, Fraction(0))

    def __iter__(self):
        return iter(self._c)

    def __len__(self):
        return len(self._c)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, DivisorClass):
            return self._c == other._c
        if isinstance(other, Mapping):
            return self == DivisorClass(other)
        return NotImplemented

    def __add__(self, other):
        out = dict(self._c)
        for k, v in other.items():
            out[k] = out.get(k, 0) + v
        return DivisorClass(out)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __mul__(self, scalar):
        s = _q(scalar)
        return DivisorClass({k: s * v for k, v in self._c.items()})

    __rmul__ = __mul__

    @property
    def support(self) -> frozenset:
        return frozenset(self._c)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self._c.values())

    def is_effective(self) -> bool:
        return all(v >= 0 for v in self._c.values())

    def rename(self, mapping: Mapping[str, str]) -> "DivisorClass":
        return DivisorClass((mapping.get(k, k), v) for k, v in self._c.items())

    def to_json(self) -> dict:
        return {k: (str(v) if v.denominator != 1 else int(v)) for k, v in sorted(self._c.items())}

    def pretty(self, order: Sequence[str] | None = None) -> str:
        keys = [k for k in order if k in self._c] if order else sorted(self._c, key=_natural_key)
        if not keys:
            return "0"
        parts = []
        for k in keys:
            v = self._c[k]
            sign = "-" if v < 0 else "+"
            a = abs(v)
            body = k if a == 1 else f"{a}{k}" if a.denominator == 1 else f"({a}){k}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"DivisorClass({self.pretty()})"


def _natural_key(label: str):
    import re
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", label)]


class GramMatrix:
    """Symmetric exact matrix indexed by a :class:`Basis`."""

    __slots__ = ("basis", "entries")

    def __init__(self, basis: Basis | Iterable[str], entries: Sequence[Sequence]):
        basis = basis if isinstance(basis, Basis) else Basis(basis)
        n = len(basis)
        rows = tuple(tuple(_q(x) for x in row) for row in entries)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"Gram matrix shape does not match basis of length {n}")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(
                        f"Gram matrix not symmetric at ({basis.names[i]}, {basis.names[j]})")
        self.basis = basis
        self.entries = rows

    @classmethod
    def from_pairing(cls, labels: Sequence[str], pairing) -> "GramMatrix":
        return cls(labels, [[pairing(a, b) for b in labels] for a in labels])

    @classmethod
    def diagonal(cls, labels: Sequence[str], diag: Sequence) -> "GramMatrix":
        n = len(labels)
        return cls(labels, [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __len__(self):
        return len(self.basis)

    def entry(self, a: str, b: str) -> Fraction:
        return self.entries[self.basis.index(a)][self.basis.index(b)]

    def restrict(self, labels: Sequence[str]) -> "GramMatrix":
        idx = [self.basis.index(x) for x in labels]
        return GramMatrix(labels, [[self.entries[i][j] for j in idx] for i in idx])

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.entries for x in row)

    def is_even(self) -> bool:
        return self.is_integral() and all(self.entries[i][i] % 2 == 0 for i in range(len(self)))

    def determinant(self) -> Fraction:
        return determinant(self.entries)

    def rank(self) -> int:
        return matrix_rank(self.entries)

    def __eq__(self, other):
        return (isinstance(other, GramMatrix) and self.basis == other.basis
                and self.entries == other.entries)

    def __repr__(self):
        return f"GramMatrix({list(self.basis.names)})"


# ----------------------------------------------------------------------------
# pairing, reflection, signature

def inner(x: Mapping, y: Mapping, g: GramMatrix) -> Fraction:
    """x^T G y with unknown labels rejected."""
    idx = g.basis.index
    ex = [(idx(k), _q(v)) for k, v in x.items()]
    ey = [(idx(k), _q(v)) for k, v in y.items()]
    rows = g.entries
    total = Fraction(0)
    for i, a in ex:
        row = rows[i]
        for j, b in ey:
            e = row[j]
            if e:
                total += a * b * e
    return total


def reflect(alpha: DivisorClass, x: DivisorClass, g: GramMatrix) -> DivisorClass:
    """s_alpha(x) = x + (x.alpha) alpha for a (-2)-vector alpha."""
    a2 = inner(alpha, alpha, g)
    if a2 != -2:
        raise NotARoot(f"reflection vector has square {a2}, expected -2")
    return DivisorClass(x) + inner(x, alpha, g) * DivisorClass(alpha)


class Signature(NamedTuple):
    n_plus: int
    n_minus: int
    n_zero: int


def signature(g: GramMatrix | Sequence[Sequence]) -> Signature:
    """Inertia by symmetric congruence reduction.

    Pivot rule: first nonzero diagonal entry; when the diagonal vanishes, the first
    nonzero off-diagonal entry (i, j) is moved onto the diagonal by e_i -> e_i + e_j.
    """
    rows = g.entries if isinstance(g, GramMatrix) else g
    a = [[_q(x) for x in row] for row in rows]
    n = len(a)
    plus = minus = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if j > i and a[i][j]), None)
            if pair is None:
                break
            i, j = pair
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            plus += 1
        else:
            minus += 1
        active.remove(piv)
        prow = a[piv]
        for i in active:
            f = prow[i]
            if not f:
                continue
            f = f / p
            ri = a[i]
            for j in active:
                if prow[j]:
                    ri[j] -= f * prow[j]
        for i in active:
            a[i][piv] = a[piv][i] = Fraction(0)
    return Signature(plus, minus, n - plus - minus)


# ----------------------------------------------------------------------------
# plain exact linear algebra on row lists

def row_echelon(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[_q(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncol = len(m[0])
    pivots = []
    r = 0
    for c in range(ncol):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def matrix_rank(rows: Sequence[Sequence]) -> int:
    return len(row_echelon(rows)[0])


def determinant(rows: Sequence[Sequence]) -> Fraction:
    m = [[_q(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : M v = 0}, one vector per free column, in column order."""
    ncols = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    red, piv = row_echelon(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in zip(red, piv):
            v[pc] = -r[f]
        basis.append(v)
    return basis


def primitive_integer(v: Sequence) -> list[int]:
    """Scale a rational vector to a primitive integer vector (sign kept)."""
    v = [_q(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


def integer_row_reduce(rows: Sequence[Sequence[int]], track: bool = False):
    """Unimodular row reduction of an integer matrix to echelon (Hermite-style) form.

    Returns (reduced rows, transform) where transform @ rows == reduced when
    ``track`` is set.  Rows of the reduced matrix below the rank are zero.
    """
    m = [list(map(int, r)) for r in rows]
    nr = len(m)
    ncol = len(m[0]) if m else 0
    t = [[int(i == j) for j in range(nr)] for i in range(nr)] if track else None
    r = 0
    for c in range(ncol):
        if r == nr:
            break
        while True:
            nz = [i for i in range(r, nr) if m[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[p] = m[p], m[r]
            if track:
                t[r], t[p] = t[p], t[r]
            done = True
            for i in range(r + 1, nr):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if track:
                        t[i] = [x - q * y for x, y in zip(t[i], t[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if any(m[i][c] for i in range(r, nr)):
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
                if track:
                    t[r] = [-x for x in t[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if track:
                        t[i] = [x - q * y for x, y in zip(t[i], t[r])]
            r += 1
    return m, t


def lattice_basis(vectors: Sequence[Sequence]) -> list[list[Fraction]]:
    """Z-basis (Hermite form) of the group generated by rational vectors."""
    if not vectors:
        return []
    den = 1
    for v in vectors:
        for x in v:
            x = _q(x)
            den = den * x.denominator // gcd(den, x.denominator)
    ints = [[int(_q(x) * den) for x in v] for v in vectors]
    red, _ = integer_row_reduce(ints)
    return [[Fraction(x, den) for x in r] for r in red if any(r)]


def integer_left_kernel(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Z-basis of {c in Z^k : sum_i c_i rows[i] = 0}."""
    if not rows:
        return []
    red, t = integer_row_reduce(rows, track=True)
    return [t[i] for i in range(len(red)) if not any(red[i])]


# ----------------------------------------------------------------------------
# complements and isotropy

class Complement(NamedTuple):
    basis: Basis
    gram: GramMatrix
    vectors: tuple  # DivisorClass per basis label, in ambient coordinates


def _coords(x: Mapping, basis: Basis) -> list[Fraction]:
    v = [Fraction(0)] * len(basis)
    for k, c in x.items():
        v[basis.index(k)] += _q(c)
    return v


def orthogonal_complement(g: GramMatrix, generators: Sequence[Mapping],
                          walls: Sequence[Mapping], prefix: str = "v",
                          integral: bool = False) -> Complement:
    """Basis of {x in span(generators) : x.w = 0 for every wall}.

    With ``integral`` the result is a Z-basis of the complement inside the group
    generated by ``generators``; otherwise a Q-basis in reduced echelon form.
    """
    amb = g.basis
    gens = [_coords(x, amb) for x in generators]
    wl = [_coords(w, amb) for w in walls]
    if wl:
        if matrix_rank(gens + wl) != (matrix_rank(gens) if gens else 0):
            raise DegenerateInput("walls are not contained in the span of the generators")
    ent = g.entries

    def pair(u, w):
        return sum((u[i] * ent[i][j] * w[j] for i in range(len(u)) if u[i]
                    for j in range(len(w)) if w[j]), Fraction(0))

    if integral:
        zb = lattice_basis(gens)
        if wl:
            m = [[pair(b, w) for w in wl] for b in zb]
            den = 1
            for row in m:
                for x in row:
                    den = den * x.denominator // gcd(den, x.denominator)
            ker = integer_left_kernel([[int(x * den) for x in row] for row in m])
            vecs = [[sum(c * b[i] for c, b in zip(k, zb)) for i in range(len(amb))] for k in ker]
            vecs = lattice_basis(vecs)
        else:
            vecs = zb
    else:
        sp, _ = row_echelon(gens)
        if wl:
            m = [[pair(b, w) for b in sp] for w in wl]
            ker = nullspace(m, len(sp))
            vecs = [[sum(c * b[i] for c, b in zip(k, sp)) for i in range(len(amb))] for k in ker]
            vecs, _ = row_echelon(vecs)
        else:
            vecs = sp
    span_rank = matrix_rank(gens) if gens else 0
    wall_rank = matrix_rank(wl) if wl else 0
    if len(vecs) != span_rank - wall_rank:
        raise DegenerateInput(
            f"complement has rank {len(vecs)}, expected {span_rank} - {wall_rank}; "
            "walls are dependent or isotropic against the span")
    labels = [f"{prefix}{i + 1}" for i in range(len(vecs))]
    classes = tuple(DivisorClass(zip(amb.names, v)) for v in vecs)
    gram = GramMatrix(labels, [[pair(u, w) for w in vecs] for u in vecs])
    return Complement(Basis(labels), gram, classes)


def isotropic_primitive(f: Mapping, g: GramMatrix, lattice_basis: Basis) -> bool:
    coords = _coords(f, lattice_basis)
    if any(c.denominator != 1 for c in coords):
        raise NotLatticeVector("vector has non-integral lattice coordinates")
    if inner(f, f, g) != 0:
        return False
    d = 0
    for c in coords:
        d = gcd(d, int(c))
    return d == 1

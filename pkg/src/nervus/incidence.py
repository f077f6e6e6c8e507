"""Incidence algebras, path algebras of acyclic digraphs, and Zapatrin's differential.

Interval products compose when the inner endpoints agree:
``e(P<=Q) * e(R<=S) = e(P<=S)`` if ``Q == R``, else zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import MalformedInputError, ValidationError
from .linalg import Q, Field, SparseMatrix, get_field, rank
from .poset import Poset


def _clean(terms: Mapping, field: Field) -> dict:
    out = {}
    for k, c in terms.items():
        c = field(c)
        if c:
            out[k] = c
    return out


def _same_poset(u, v) -> None:
    if u.poset != v.poset:
        raise MalformedInputError("elements live over different posets")


class _Linear:
    """Shared vector-space arithmetic for formal combinations."""

    __slots__ = ("poset", "terms", "field")

    def __init__(self, poset: Poset, terms: Mapping, field: Field | str = Q):
        self.poset = poset
        self.field = get_field(field)
        self.terms = _clean(terms, self.field)
        self._validate()

    def _validate(self):
        pass

    def _new(self, terms):
        return type(self)(self.poset, terms, self.field)

    def __add__(self, other):
        _same_poset(self, other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return self._new(t)

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        a = self.field(a)
        return self._new({k: a * c for k, c in self.terms.items()})

    def __rmul__(self, a):
        return self.scale(a)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.poset == other.poset and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return f"{type(self).__name__}(0)"
        body = " + ".join(f"{c}*{list(k)}" for k, c in self.terms.items())
        return f"{type(self).__name__}({body})"


class IncidenceElement(_Linear):
    """Combination of intervals e(p<=q)."""

    __slots__ = ()

    def _validate(self):
        for p, q in self.terms:
            if not self.poset.le(p, q):
                raise ValidationError(f"({p!r}, {q!r}) is not an interval")

    @classmethod
    def basis(cls, poset: Poset, p, q, field: Field | str = Q) -> "IncidenceElement":
        return cls(poset, {(p, q): 1}, field)

    def __mul__(self, other):
        if isinstance(other, IncidenceElement):
            return incidence_product(self, other)
        return self.scale(other)


def incidence_unit(poset: Poset, field: Field | str = Q) -> IncidenceElement:
    return IncidenceElement(poset, {(p, p): 1 for p in poset.elements}, field)


def incidence_product(u: IncidenceElement, v: IncidenceElement) -> IncidenceElement:
    _same_poset(u, v)
    by_start: dict = {}
    for (r, s), c in v.terms.items():
        by_start.setdefault(r, []).append((s, c))
    out: dict = {}
    for (p, q), a in u.terms.items():
        for s, b in by_start.get(q, ()):
            out[(p, s)] = out.get((p, s), 0) + a * b
    return IncidenceElement(u.poset, out, u.field)


class ChainElement(_Linear):
    """Combination of strictly increasing chains; a chain of n+1 elements has degree n."""

    __slots__ = ()

    def _validate(self):
        for c in self.terms:
            if not c:
                raise ValidationError("empty chain")
            for a, b in zip(c, c[1:]):
                if not self.poset.lt(a, b):
                    raise ValidationError(f"chain {list(c)} is not strictly increasing")

    @classmethod
    def basis(cls, poset: Poset, chain: Sequence, field: Field | str = Q) -> "ChainElement":
        return cls(poset, {tuple(chain): 1}, field)

    def degrees(self) -> set:
        return {len(c) - 1 for c in self.terms}

    def component(self, n: int) -> "ChainElement":
        return self._new({c: x for c, x in self.terms.items() if len(c) - 1 == n})

    def __mul__(self, other):
        if isinstance(other, ChainElement):
            return chain_product(self, other)
        return self.scale(other)


def chain_product(u: ChainElement, v: ChainElement) -> ChainElement:
    """Concatenate chains whose endpoints meet (shared element kept once); degrees add."""
    _same_poset(u, v)
    by_start: dict = {}
    for c, x in v.terms.items():
        by_start.setdefault(c[0], []).append((c, x))
    out: dict = {}
    for c, a in u.terms.items():
        for d, b in by_start.get(c[-1], ()):
            k = c + d[1:]
            out[k] = out.get(k, 0) + a * b
    return ChainElement(u.poset, out, u.field)


@dataclass(frozen=True)
class _Neighbourhoods:
    below: dict
    above: dict
    between: dict


@lru_cache(maxsize=64)
def _neighbourhoods(k: Poset) -> _Neighbourhoods:
    els = k.elements
    below = {x: [y for y in k.linear_extension if y != x and k.le(y, x)] for x in els}
    above = {x: [y for y in k.linear_extension if y != x and k.le(x, y)] for x in els}
    return _Neighbourhoods(below, above, {})


def _insertions(k: Poset, nb: _Neighbourhoods, c: tuple):
    """Yield (sign, chain) for every admissible insertion into c."""
    n = len(c) - 1
    for y in nb.below[c[0]]:
        yield 1, (y,) + c
    for m in range(1, n + 1):
        key = (c[m - 1], c[m])
        mids = nb.between.get(key)
        if mids is None:
            mids = [y for y in nb.above[c[m - 1]] if y != c[m] and k.le(y, c[m])]
            nb.between[key] = mids
        s = -1 if m % 2 else 1
        for y in mids:
            yield s, c[:m] + (y,) + c[m:]
    s = -1 if (n + 1) % 2 else 1
    for y in nb.above[c[-1]]:
        yield s, c + (y,)


def zapatrin_d(u: ChainElement) -> ChainElement:
    """Insert every admissible y: below x_0 with +1, into gap m with (-1)^m, above x_n with (-1)^(n+1)."""
    nb = _neighbourhoods(u.poset)
    out: dict = {}
    for c, a in u.terms.items():
        for s, d in _insertions(u.poset, nb, c):
            out[d] = out.get(d, 0) + (a if s > 0 else -a)
    return ChainElement(u.poset, out, u.field)


def zapatrin_matrices(k: Poset, field: Field | str = Q) -> dict[int, SparseMatrix]:
    """Matrix of d from degree n to degree n+1 in the chain bases of ``k.chains``."""
    field = get_field(field)
    nb = _neighbourhoods(k)
    chains = k.chains
    index = [{c: i for i, c in enumerate(level)} for level in chains]
    one, neg = field(1), field(-1)
    out = {}
    for n in range(len(chains) - 1):
        cols = []
        for c in chains[n]:
            col = {}
            for s, d in _insertions(k, nb, c):
                col[index[n + 1][d]] = one if s > 0 else neg
            cols.append(col)
        out[n] = SparseMatrix(len(chains[n + 1]), len(chains[n]), tuple(cols))
    return out


def zapatrin_cohomology(k: Poset, field: Field | str = Q) -> tuple:
    field = get_field(field)
    mats = zapatrin_matrices(k, field)
    ranks = {n: rank(m, field) for n, m in mats.items()}
    return tuple(len(level) - ranks.get(n, 0) - ranks.get(n - 1, 0) for n, level in enumerate(k.chains))


def dd_vanishes(k: Poset, field: Field | str = Q) -> bool:
    mats = zapatrin_matrices(k, field)
    return all((mats[n + 1] @ mats[n]).is_zero() for n in mats if n + 1 in mats)


def leibniz_defects(k: Poset, field: Field | str = Q) -> list:
    """Basis pairs (u, v) where d(uv) != du·v + (-1)^deg(u) u·dv."""
    bad = []
    basis = [c for level in k.chains for c in level]
    elems = {c: ChainElement.basis(k, c, field) for c in basis}
    ds = {c: zapatrin_d(e) for c, e in elems.items()}
    for a in basis:
        u, du = elems[a], ds[a]
        sign = 1 if (len(a) - 1) % 2 == 0 else -1
        for b in basis:
            v, dv = elems[b], ds[b]
            lhs = zapatrin_d(u * v)
            rhs = du * v + (u * dv).scale(sign)
            if lhs != rhs:
                bad.append((a, b))
    return bad


def is_acyclic(nodes: Sequence, edges: Iterable) -> bool:
    succ = {v: [] for v in nodes}
    indeg = {v: 0 for v in nodes}
    for a, b in edges:
        succ[a].append(b)
        indeg[b] += 1
    ready = [v for v in nodes if indeg[v] == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return seen == len(nodes)


@dataclass(frozen=True)
class PathAlgebra:
    """k-linear span of all directed paths (length-0 included) of a finite acyclic digraph."""

    nodes: tuple
    edges: tuple

    def __post_init__(self):
        known = set(self.nodes)
        if len(known) != len(self.nodes):
            raise MalformedInputError("duplicate digraph node")
        for a, b in self.edges:
            if a not in known or b not in known:
                raise MalformedInputError(f"edge ({a!r}, {b!r}) names an unknown node")
        if len(set(self.edges)) != len(self.edges):
            raise MalformedInputError("repeated edge")
        if not is_acyclic(self.nodes, self.edges):
            raise ValidationError("digraph has a cycle; its path basis would be infinite")

    @cached_property
    def basis(self) -> tuple:
        succ = {v: [] for v in self.nodes}
        for a, b in self.edges:
            succ[a].append(b)
        pos = {v: i for i, v in enumerate(self.nodes)}
        paths = []
        stack = [(v,) for v in self.nodes]
        while stack:
            p = stack.pop()
            paths.append(p)
            stack.extend(p + (w,) for w in succ[p[-1]])
        return tuple(sorted(paths, key=lambda p: (len(p), [pos[v] for v in p])))

    @cached_property
    def index(self) -> dict:
        return {p: i for i, p in enumerate(self.basis)}

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @staticmethod
    def compose(a: tuple, b: tuple):
        """a followed by b, or None when a does not end where b starts."""
        if a[-1] != b[0]:
            return None
        return a + b[1:]

    @cached_property
    def table(self) -> dict:
        """(i, j) -> k for basis products that do not vanish."""
        out = {}
        for i, a in enumerate(self.basis):
            for j, b in enumerate(self.basis):
                c = self.compose(a, b)
                if c is not None:
                    out[(i, j)] = self.index[c]
        return out


def path_algebra(nodes: Sequence, edges: Iterable) -> PathAlgebra:
    return PathAlgebra(tuple(nodes), tuple(tuple(e) for e in edges))


class PathAlgebraElement:
    __slots__ = ("algebra", "terms", "field")

    def __init__(self, algebra: PathAlgebra, terms: Mapping, field: Field | str = Q):
        self.algebra = algebra
        self.field = get_field(field)
        self.terms = _clean(terms, self.field)
        for p in self.terms:
            if p not in algebra.index:
                raise ValidationError(f"{list(p)} is not a path")

    def __mul__(self, other: "PathAlgebraElement") -> "PathAlgebraElement":
        out: dict = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                c = PathAlgebra.compose(a, b)
                if c is not None:
                    out[c] = out.get(c, 0) + x * y
        return PathAlgebraElement(self.algebra, out, self.field)

    def __eq__(self, other):
        if not isinstance(other, PathAlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    __hash__ = None


@dataclass(frozen=True)
class HasseEpimorphism:
    """Linear map from the path algebra of the Hasse diagram onto the incidence algebra."""

    poset: Poset
    source: PathAlgebra

    @cached_property
    def target_basis(self) -> tuple:
        return tuple(self.poset.intervals())

    def image(self, path: tuple) -> tuple:
        return (path[0], path[-1])

    def apply(self, x: PathAlgebraElement) -> IncidenceElement:
        out: dict = {}
        for p, c in x.terms.items():
            k = self.image(p)
            out[k] = out.get(k, 0) + c
        return IncidenceElement(self.poset, out, x.field)

    def matrix(self, field: Field | str = Q) -> SparseMatrix:
        field = get_field(field)
        idx = {iv: i for i, iv in enumerate(self.target_basis)}
        cols = tuple({idx[self.image(p)]: field.one} for p in self.source.basis)
        return SparseMatrix(len(self.target_basis), len(self.source.basis), cols)

    def is_surjective(self) -> bool:
        return {self.image(p) for p in self.source.basis} == set(self.target_basis)

    def is_multiplicative(self) -> bool:
        """phi(a.b) == phi(a) * phi(b) for every ordered pair of basis paths."""
        basis = self.source.basis
        imgs = [IncidenceElement.basis(self.poset, *self.image(p)) for p in basis]
        zero = IncidenceElement(self.poset, {})
        for i in range(len(basis)):
            for j in range(len(basis)):
                k = self.source.table.get((i, j))
                lhs = zero if k is None else imgs[k]
                if lhs != imgs[i] * imgs[j]:
                    return False
        return True


def hasse_epimorphism(k: Poset) -> HasseEpimorphism:
    return HasseEpimorphism(k, path_algebra(k.elements, k.hasse_edges))

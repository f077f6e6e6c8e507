"""Finite simplicial complexes, simplicial maps, chain complexes and homology."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import InternalInvariantError, MalformedInputError, NotSimplicialError
from .linalg import Q, ColumnReducer, Field, SparseMatrix, get_field, nullspace, rank

Vertex = Hashable
Simplex = tuple  # vertices in increasing rank


def default_order(labels: Iterable[Vertex]) -> tuple:
    """Lexicographic for strings, numeric for numbers; mixed labels sort by ``str``."""
    labels = list(dict.fromkeys(labels))
    try:
        return tuple(sorted(labels))
    except TypeError:
        return tuple(sorted(labels, key=str))


def label_str(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, tuple):
        return "(" + ",".join(label_str(x) for x in v) + ")"
    return str(v)


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """A downward-closed family of nonempty vertex sets.

    ``vertices`` lists the vertex set in rank order; every simplex is stored as
    a tuple sorted by that rank. Build instances with :func:`complex_from_maximal`
    or :meth:`from_simplices`.
    """

    vertices: tuple
    simplices: tuple  # simplices[n] = sorted tuple of n-simplices
    rank_of: Mapping = dc_field(repr=False)

    @classmethod
    def from_simplices(cls, simplices: Iterable[Iterable[Vertex]], order: Sequence[Vertex] | None = None,
                       check: bool = True) -> "SimplicialComplex":
        """Build from an already downward-closed family (closure is verified when ``check``)."""
        faces = {frozenset(s) for s in simplices}
        if frozenset() in faces:
            raise MalformedInputError("empty simplex")
        verts = {v for s in faces for v in s}
        order = _resolve_order(verts, order)
        rank_of = {v: i for i, v in enumerate(order)}
        by_dim: dict[int, list] = {}
        for s in faces:
            t = tuple(sorted(s, key=rank_of.__getitem__))
            by_dim.setdefault(len(t) - 1, []).append(t)
        top = max(by_dim, default=-1)
        simp = tuple(
            tuple(sorted(by_dim.get(n, ()), key=lambda t: tuple(rank_of[v] for v in t)))
            for n in range(top + 1)
        )
        out = cls(order, simp, rank_of)
        if check:
            for n in range(1, top + 1):
                below = out._sets[n - 1]
                for s in simp[n]:
                    for i in range(len(s)):
                        if s[:i] + s[i + 1:] not in below:
                            raise MalformedInputError(f"not downward closed: face of {list(s)} missing")
        return out

    @cached_property
    def _sets(self) -> tuple:
        return tuple(frozenset(level) for level in self.simplices)

    @cached_property
    def _index(self) -> tuple:
        return tuple({s: i for i, s in enumerate(level)} for level in self.simplices)

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def __len__(self) -> int:
        return sum(len(level) for level in self.simplices)

    def n_simplices(self, n: int) -> tuple:
        if 0 <= n < len(self.simplices):
            return self.simplices[n]
        return ()

    def all_simplices(self):
        for level in self.simplices:
            yield from level

    def canonical(self, vs: Iterable[Vertex]) -> Simplex:
        return tuple(sorted(set(vs), key=self.rank_of.__getitem__))

    def __contains__(self, vs) -> bool:
        try:
            s = self.canonical(vs)
        except KeyError:
            return False
        n = len(s) - 1
        return 0 <= n < len(self.simplices) and s in self._sets[n]

    def index(self, s: Simplex) -> int:
        return self._index[len(s) - 1][s]

    def f_vector(self) -> tuple:
        return tuple(len(level) for level in self.simplices)

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * c for n, c in enumerate(self.f_vector()))

    def maximal_simplices(self) -> list:
        out = []
        for n, level in enumerate(self.simplices):
            above = self._sets[n + 1] if n + 1 < len(self.simplices) else frozenset()
            cofaced = set()
            for t in above:
                for i in range(len(t)):
                    cofaced.add(t[:i] + t[i + 1:])
            out.extend(s for s in level if s not in cofaced)
        return out

    def skeleton(self, k: int) -> "SimplicialComplex":
        return SimplicialComplex(self.vertices, self.simplices[: k + 1], self.rank_of)

    def relabel(self, mapping: Mapping, order: Sequence | None = None) -> "SimplicialComplex":
        return SimplicialComplex.from_simplices(
            ([mapping[v] for v in s] for s in self.all_simplices()), order=order, check=False)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertices == other.vertices and self.simplices == other.simplices

    def __hash__(self):
        return hash((self.vertices, self.simplices))

    def __repr__(self):
        return f"SimplicialComplex(f={self.f_vector()})"


def _resolve_order(verts, order) -> tuple:
    if order is None:
        return default_order(verts)
    order = tuple(order)
    if len(set(order)) != len(order):
        raise MalformedInputError("vertex order repeats a name")
    missing = set(verts) - set(order)
    if missing:
        raise MalformedInputError(f"simplex uses undeclared vertices {sorted(map(str, missing))}")
    return order


def complex_from_maximal(simplices: Iterable[Iterable[Vertex]], vertices: Sequence[Vertex] | None = None,
                         order: Sequence[Vertex] | None = None) -> SimplicialComplex:
    """Downward closure of the given vertex sets.

    ``vertices`` declares the vertex names (extra isolated vertices allowed);
    ``order`` fixes the vertex ranks, defaulting to lexicographic.
    """
    gens = [frozenset(s) for s in simplices]
    if any(not s for s in gens):
        raise MalformedInputError("empty vertex set inside a simplex")
    declared = set(vertices) if vertices is not None else None
    if declared is not None:
        bad = {v for s in gens for v in s} - declared
        if bad:
            raise MalformedInputError(f"undeclared vertices {sorted(map(str, bad))}")
    verts = declared if declared is not None else {v for s in gens for v in s}
    if order is None and vertices is not None:
        order = default_order(vertices)
    order = _resolve_order(verts, order)
    rank_of = {v: i for i, v in enumerate(order)}
    faces: set = {(v,) for v in verts}
    for s in set(gens):
        t = tuple(sorted(s, key=rank_of.__getitem__))
        if t in faces:
            continue
        for k in range(2, len(t) + 1):
            faces.update(combinations(t, k))
    return SimplicialComplex.from_simplices(faces, order=order, check=False)


@dataclass(frozen=True)
class SimplicialMap:
    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: Mapping

    def __call__(self, v):
        return self.vertex_map[v]

    def image(self, s: Iterable[Vertex]) -> Simplex:
        return self.target.canonical(self.vertex_map[v] for v in s)

    def compose(self, after: "SimplicialMap") -> "SimplicialMap":
        """``after ∘ self``."""
        if after.source != self.target:
            raise MalformedInputError("maps are not composable")
        return SimplicialMap(self.source, after.target,
                             {v: after.vertex_map[w] for v, w in self.vertex_map.items()})

    @classmethod
    def identity(cls, k: SimplicialComplex) -> "SimplicialMap":
        return cls(k, k, {v: v for v in k.vertices})


def check_simplicial_map(f: Mapping, source: SimplicialComplex, target: SimplicialComplex) -> SimplicialMap:
    """Validate a vertex map; raises :class:`NotSimplicialError` on the first bad simplex."""
    missing = [v for v in source.vertices if v not in f]
    if missing:
        raise MalformedInputError(f"vertex map undefined on {[label_str(v) for v in missing]}")
    tv = set(target.rank_of)
    for v in source.vertices:
        if f[v] not in tv:
            raise NotSimplicialError((v,), {f[v]})
    for s in source.all_simplices():
        img = {f[v] for v in s}
        if img not in target:
            raise NotSimplicialError(s, img)
    return SimplicialMap(source, target, {v: f[v] for v in source.vertices})


@dataclass(frozen=True)
class GradedChainComplex:
    """Ordered simplex bases per degree plus the (co)boundary matrices.

    For ``kind == "chain"``, ``maps[n]`` is the boundary C_n -> C_{n-1} (n >= 1).
    For ``kind == "cochain"``, ``maps[n]`` is the coboundary C^n -> C^{n+1}.
    """

    field: Field
    bases: tuple
    maps: Mapping
    kind: str = "chain"

    @property
    def top(self) -> int:
        return len(self.bases) - 1

    def dim(self, n: int) -> int:
        return len(self.bases[n]) if 0 <= n < len(self.bases) else 0

    def matrix(self, n: int) -> SparseMatrix:
        if n in self.maps:
            return self.maps[n]
        if self.kind == "chain":
            return SparseMatrix.zeros(self.dim(n - 1), self.dim(n))
        return SparseMatrix.zeros(self.dim(n + 1), self.dim(n))

    def squares_to_zero(self) -> bool:
        step = -1 if self.kind == "chain" else 1
        for n in self.maps:
            nxt = n + step
            if nxt in self.maps and not (self.maps[nxt] @ self.maps[n]).is_zero():
                return False
        return True


def _boundary_matrix(k: SimplicialComplex, n: int, field: Field) -> SparseMatrix:
    rows = k._index[n - 1]
    one, neg = field(1), field(-1)
    cols = []
    for s in k.simplices[n]:
        col = {}
        for i in range(len(s)):
            col[rows[s[:i] + s[i + 1:]]] = one if i % 2 == 0 else neg
        cols.append(col)
    return SparseMatrix(len(k.simplices[n - 1]), len(k.simplices[n]), tuple(cols))


def boundary_complex(k: SimplicialComplex, field: Field | str = Q) -> GradedChainComplex:
    """Chain complex with ∂ = Σ(−1)^i d_i, d_i deleting the i-th vertex in rank order."""
    field = get_field(field)
    maps = {n: _boundary_matrix(k, n, field) for n in range(1, len(k.simplices))}
    return GradedChainComplex(field, k.simplices, maps, "chain")


def coboundary_complex(k: SimplicialComplex, field: Field | str = Q) -> GradedChainComplex:
    """Transposes of the boundary matrices, the basis identified with its dual."""
    field = get_field(field)
    maps = {n - 1: _boundary_matrix(k, n, field).transpose() for n in range(1, len(k.simplices))}
    return GradedChainComplex(field, k.simplices, maps, "cochain")


def betti_numbers(cc: GradedChainComplex) -> tuple:
    """β_n = dim C_n − rank(out of C_n) − rank(into C_n)."""
    ranks = {n: rank(m, cc.field) for n, m in cc.maps.items()}
    out = []
    for n in range(len(cc.bases)):
        if cc.kind == "chain":
            b = cc.dim(n) - ranks.get(n, 0) - ranks.get(n + 1, 0)
        else:
            b = cc.dim(n) - ranks.get(n, 0) - ranks.get(n - 1, 0)
        out.append(b)
    return tuple(out)


def betti(k: SimplicialComplex, field: Field | str = Q) -> tuple:
    return betti_numbers(boundary_complex(k, field))


def permutation_sign(seq: Sequence[int]) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def induced_chain_map(f: SimplicialMap, field: Field | str = Q) -> dict[int, SparseMatrix]:
    """Per-degree matrices of f#: degenerate images vanish, others carry the sorting sign."""
    field = get_field(field)
    src, tgt = f.source, f.target
    out = {}
    for n in range(len(src.simplices)):
        cols = []
        for s in src.simplices[n]:
            img = [f.vertex_map[v] for v in s]
            if len(set(img)) < len(img):
                cols.append({})
                continue
            ranks = [tgt.rank_of[w] for w in img]
            t = tuple(sorted(img, key=tgt.rank_of.__getitem__))
            cols.append({tgt.index(t): field(permutation_sign(ranks))})
        out[n] = SparseMatrix(len(tgt.n_simplices(n)), len(src.simplices[n]), tuple(cols))
    return out


def chain_map_commutes(f: SimplicialMap, field: Field | str = Q) -> bool:
    field = get_field(field)
    fs = induced_chain_map(f, field)
    cs, ct = boundary_complex(f.source, field), boundary_complex(f.target, field)
    for n in range(1, len(f.source.simplices)):
        lhs = ct.matrix(n) @ fs[n]
        rhs = fs[n - 1] @ cs.matrix(n)
        if lhs != rhs:
            return False
    return True


def _cycles(cc: GradedChainComplex, n: int) -> list[dict]:
    if n == 0:
        return [{i: cc.field.one} for i in range(cc.dim(0))]
    return nullspace(cc.matrix(n), cc.field)


def _seeded_reducer(cc: GradedChainComplex, n: int) -> ColumnReducer:
    red = ColumnReducer(cc.field)
    if n + 1 in cc.maps:
        for col in cc.maps[n + 1].cols:
            red.add(col)
    return red


def homology_basis(cc: GradedChainComplex, n: int) -> list[dict]:
    """Deterministic cycle representatives for H_n.

    Kernel vectors are taken in reduction order and kept when independent of
    the boundaries and of the representatives already chosen.
    """
    if cc.kind != "chain":
        raise ValueError("homology_basis needs a chain complex")
    if not 0 <= n <= cc.top:
        return []
    red = _seeded_reducer(cc, n)
    reps = []
    for z in _cycles(cc, n):
        _, rem, _ = red.add(z)
        if rem:
            reps.append(z)
    return reps


def homology_map(f: SimplicialMap, degree: int, field: Field | str = Q) -> list[list]:
    """Matrix of H_degree(f) in the bases of :func:`homology_basis` (rows: target)."""
    field = get_field(field)
    cs, ct = boundary_complex(f.source, field), boundary_complex(f.target, field)
    if degree < 0 or degree > max(cs.top, ct.top):
        return []
    src = homology_basis(cs, degree)
    tgt = homology_basis(ct, degree)
    fn = induced_chain_map(f, field).get(degree)
    red = _seeded_reducer(ct, degree)
    offset = red.count
    for h in tgt:
        red.add(h)
    out = [[field.zero] * len(src) for _ in tgt]
    for j, z in enumerate(src):
        w = fn.apply(z) if fn is not None else {}
        rem, acc = red.reduce(w)
        if rem:
            raise InternalInvariantError("image of a cycle is not a cycle")
        for i in range(len(tgt)):
            c = acc.get(offset + i)
            if c:
                out[i][j] = field(c)
    return out


def _face_graph(k: SimplicialComplex):
    import networkx as nx

    g = nx.Graph()
    for n, level in enumerate(k.simplices):
        for s in level:
            g.add_node(s, dim=n)
            if n:
                g.add_edges_from((s, s[:i] + s[i + 1:]) for i in range(len(s)))
    return g


def find_isomorphism(k: SimplicialComplex, l: SimplicialComplex) -> dict | None:
    """A vertex bijection carrying the simplices of ``k`` exactly onto those of ``l``, or None.

    Matches the labelled face-incidence graphs, so the search is exact.
    """
    from networkx.algorithms.isomorphism import GraphMatcher

    if k.f_vector() != l.f_vector():
        return None
    gm = GraphMatcher(_face_graph(k), _face_graph(l), node_match=lambda a, b: a["dim"] == b["dim"])
    for iso in gm.isomorphisms_iter():
        f = {s[0]: iso[s][0] for s in k.n_simplices(0)}
        if all(set(iso[s]) == {f[v] for v in s} for s in k.all_simplices()):
            return f
    return None

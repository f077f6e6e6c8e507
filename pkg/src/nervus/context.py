"""Dyadic Chu spaces (formal contexts), Chu transforms, and their nerves."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Hashable, Iterable, Mapping, Sequence

from .complex import SimplicialComplex, SimplicialMap, check_simplicial_map, complex_from_maximal
from .errors import (AdjointnessError, EnumerationLimitError, InternalInvariantError, MalformedInputError,
                     NotASplittingError, NotSimplicialError)

DEFAULT_SPLITTING_CAP = 1024


@dataclass(frozen=True)
class ChuSpace:
    """Objects, attributes, and a satisfaction relation.

    ``rows[i]`` is a bitmask over attribute positions: bit ``j`` is set when
    object ``i`` satisfies attribute ``j``.
    """

    objects: tuple
    attributes: tuple
    rows: tuple

    def __post_init__(self):
        if len(set(self.objects)) != len(self.objects):
            raise MalformedInputError("duplicate object label")
        if len(set(self.attributes)) != len(self.attributes):
            raise MalformedInputError("duplicate attribute label")
        if len(self.rows) != len(self.objects):
            raise MalformedInputError("relation has wrong number of rows")
        limit = 1 << len(self.attributes)
        if any(not 0 <= r < limit for r in self.rows):
            raise MalformedInputError("relation row wider than attribute list")

    @classmethod
    def from_pairs(cls, objects: Sequence, attributes: Sequence, pairs: Iterable) -> "ChuSpace":
        objects, attributes = tuple(objects), tuple(attributes)
        oi = {x: i for i, x in enumerate(objects)}
        ai = {a: j for j, a in enumerate(attributes)}
        rows = [0] * len(objects)
        for pair in pairs:
            x, a = pair
            if x not in oi:
                raise MalformedInputError(f"pair names unknown object {x!r}")
            if a not in ai:
                raise MalformedInputError(f"pair names unknown attribute {a!r}")
            rows[oi[x]] |= 1 << ai[a]
        return cls(objects, attributes, tuple(rows))

    @classmethod
    def from_matrix(cls, objects: Sequence, attributes: Sequence, matrix: Sequence[Sequence]) -> "ChuSpace":
        objects, attributes = tuple(objects), tuple(attributes)
        if len(matrix) != len(objects) or any(len(r) != len(attributes) for r in matrix):
            raise MalformedInputError("matrix dimensions do not match labels")
        rows = tuple(sum(1 << j for j, b in enumerate(r) if b) for r in matrix)
        return cls(objects, attributes, rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.objects), len(self.attributes)

    @property
    def matrix(self) -> tuple:
        m = len(self.attributes)
        return tuple(tuple(bool(r >> j & 1) for j in range(m)) for r in self.rows)

    def pairs(self) -> list:
        return [(x, a) for x, r in zip(self.objects, self.rows)
                for j, a in enumerate(self.attributes) if r >> j & 1]

    @cached_property
    def _obj_index(self) -> dict:
        return {x: i for i, x in enumerate(self.objects)}

    @cached_property
    def _attr_index(self) -> dict:
        return {a: j for j, a in enumerate(self.attributes)}

    def _oi(self, x) -> int:
        try:
            return self._obj_index[x]
        except KeyError:
            raise MalformedInputError(f"unknown object {x!r}") from None

    def _ai(self, a) -> int:
        try:
            return self._attr_index[a]
        except KeyError:
            raise MalformedInputError(f"unknown attribute {a!r}") from None

    def satisfies(self, x, a) -> bool:
        return bool(self.rows[self._oi(x)] >> self._ai(a) & 1)

    def row(self, x) -> frozenset:
        r = self.rows[self._oi(x)]
        return frozenset(a for j, a in enumerate(self.attributes) if r >> j & 1)

    def extent(self, a) -> frozenset:
        j = self._ai(a)
        return frozenset(x for x, r in zip(self.objects, self.rows) if r >> j & 1)

    @property
    def columns(self) -> tuple:
        """Bitmask over objects per attribute."""
        cols = [0] * len(self.attributes)
        for i, r in enumerate(self.rows):
            j = 0
            while r:
                if r & 1:
                    cols[j] |= 1 << i
                r >>= 1
                j += 1
        return tuple(cols)


def dual(p: ChuSpace) -> ChuSpace:
    """Swap objects and attributes; the relation is transposed."""
    return ChuSpace(p.attributes, p.objects, p.columns)


def corestrict(p: ChuSpace, sample: Iterable) -> ChuSpace:
    """Keep only the sampled attributes, in the order given."""
    sample = tuple(dict.fromkeys(sample))
    idx = [p._ai(a) for a in sample]
    rows = tuple(sum(1 << k for k, j in enumerate(idx) if r >> j & 1) for r in p.rows)
    return ChuSpace(p.objects, sample, rows)


def cech_nerve(p: ChuSpace) -> SimplicialComplex:
    """Vertices: attributes with a witness. Simplices: attribute sets with a common witness."""
    cols = p.columns
    support = tuple(a for a, c in zip(p.attributes, cols) if c)
    rows = [[a for j, a in enumerate(p.attributes) if r >> j & 1] for r in p.rows]
    return complex_from_maximal([r for r in rows if r], order=support)


def vietoris_nerve(p: ChuSpace) -> SimplicialComplex:
    """The Čech nerve of the dual: objects sharing an attribute span a simplex."""
    return cech_nerve(dual(p))


def cover_to_context(points: Sequence, cover: Mapping[Hashable, Iterable]) -> ChuSpace:
    """Encode a space with named cover sets: x ⊨ U iff x ∈ U."""
    pts = tuple(points)
    known = set(pts)
    pairs = []
    for name, members in cover.items():
        for x in members:
            if x not in known:
                raise MalformedInputError(f"cover member {name!r} names unknown point {x!r}")
            pairs.append((x, name))
    return ChuSpace.from_pairs(pts, tuple(cover), pairs)


@dataclass(frozen=True)
class ChuTransform:
    source: ChuSpace
    target: ChuSpace
    f_o: Mapping  # source objects -> target objects
    f_a: Mapping  # target attributes -> source attributes


def validate_transform(f_o: Mapping, f_a: Mapping, p: ChuSpace, q: ChuSpace) -> ChuTransform:
    """Check totality and f_o(x) ⊨_Q y ⟺ x ⊨_P f_a(y); raises on the first bad pair."""
    for x in p.objects:
        if x not in f_o:
            raise MalformedInputError(f"f_o undefined on {x!r}")
        if f_o[x] not in q.objects:
            raise MalformedInputError(f"f_o({x!r}) = {f_o[x]!r} is not a target object")
    for y in q.attributes:
        if y not in f_a:
            raise MalformedInputError(f"f_a undefined on {y!r}")
        if f_a[y] not in p.attributes:
            raise MalformedInputError(f"f_a({y!r}) = {f_a[y]!r} is not a source attribute")
    for x in p.objects:
        fx = f_o[x]
        for y in q.attributes:
            if q.satisfies(fx, y) != p.satisfies(x, f_a[y]):
                raise AdjointnessError(x, y)
    return ChuTransform(p, q, {x: f_o[x] for x in p.objects}, {y: f_a[y] for y in q.attributes})


def identity_transform(p: ChuSpace) -> ChuTransform:
    return ChuTransform(p, p, {x: x for x in p.objects}, {a: a for a in p.attributes})


def _image_sample(t: ChuTransform, sample) -> tuple:
    sample = tuple(dict.fromkeys(sample))
    for q in sample:
        if q not in t.target.attributes:
            raise MalformedInputError(f"sample names unknown attribute {q!r}")
    return sample, tuple(dict.fromkeys(t.f_a[q] for q in sample))


def _as_simplicial(vmap, k, l) -> SimplicialMap:
    try:
        return check_simplicial_map(vmap, k, l)
    except NotSimplicialError as exc:
        raise InternalInvariantError(f"induced map not simplicial: {exc}") from exc


def induced_vietoris_map(t: ChuTransform, sample: Iterable | None = None) -> SimplicialMap:
    """V(P, f_a(F)) -> V(Q, F) with vertex map f_o."""
    sample = t.target.attributes if sample is None else sample
    sample, pulled = _image_sample(t, sample)
    k = vietoris_nerve(corestrict(t.source, pulled))
    l = vietoris_nerve(corestrict(t.target, sample))
    return _as_simplicial({x: t.f_o[x] for x in k.vertices}, k, l)


@dataclass(frozen=True)
class Splitting:
    """p -> q with f_a(q) = p, for each p in the image of the sample."""

    choice: Mapping

    def __getitem__(self, p):
        return self.choice[p]


def enumerate_splittings(f_a: Mapping, sample: Iterable, cap: int = DEFAULT_SPLITTING_CAP) -> list[Splitting]:
    """All sections of f_a restricted to the sample, in lexicographic fiber order."""
    fibers: dict = {}
    for q in dict.fromkeys(sample):
        fibers.setdefault(f_a[q], []).append(q)
    total = 1
    for fib in fibers.values():
        total *= len(fib)
    if total > cap:
        raise EnumerationLimitError(f"{total} splittings exceed the cap of {cap}")
    keys = list(fibers)
    return [Splitting(dict(zip(keys, pick))) for pick in product(*(fibers[k] for k in keys))]


def induced_cech_map(t: ChuTransform, sample: Iterable | None, splitting: Splitting | Mapping) -> SimplicialMap:
    """N(P, f_a(F)) -> N(Q, F), sending p to the chosen preimage ρ(p)."""
    sample = t.target.attributes if sample is None else sample
    sample, pulled = _image_sample(t, sample)
    rho = splitting.choice if isinstance(splitting, Splitting) else splitting
    sset = set(sample)
    for p in pulled:
        if p not in rho:
            raise NotASplittingError(f"splitting undefined on {p!r}")
        q = rho[p]
        if q not in sset or t.f_a[q] != p:
            raise NotASplittingError(f"f_a(rho({p!r})) != {p!r}")
    k = cech_nerve(corestrict(t.source, pulled))
    l = cech_nerve(corestrict(t.target, sample))
    return _as_simplicial({p: rho[p] for p in k.vertices}, k, l)

"""Finite posets, Sorkin quotients, order complexes and face posets."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Sequence

from .complex import SimplicialComplex, label_str
from .context import ChuSpace
from .errors import MalformedInputError, PosetError


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, eq=False)
class Poset:
    """A finite partial order.

    ``up[i]`` is a bitmask of the indices ``j`` with ``elements[i] <= elements[j]``.
    The Hasse diagram is always derived from the full relation.
    """

    elements: tuple
    up: tuple

    def __post_init__(self):
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise MalformedInputError("duplicate poset element")
        if len(self.up) != n:
            raise MalformedInputError("order table has wrong length")
        for i, u in enumerate(self.up):
            if not u >> i & 1:
                raise PosetError(f"order is not reflexive at {label_str(self.elements[i])}")
            for j in _bits(u & ~(1 << i)):
                if self.up[j] >> i & 1:
                    raise PosetError(
                        f"antisymmetry fails: {label_str(self.elements[i])} and {label_str(self.elements[j])}")
                if self.up[j] & ~u:
                    raise PosetError(f"order is not transitive through {label_str(self.elements[j])}")

    @classmethod
    def from_relation(cls, elements: Sequence, le: Iterable) -> "Poset":
        """Reflexive-transitive closure of the given pairs; antisymmetry is verified."""
        elements = tuple(elements)
        idx = {x: i for i, x in enumerate(elements)}
        if len(idx) != len(elements):
            raise MalformedInputError("duplicate poset element")
        up = [1 << i for i in range(len(elements))]
        for pair in le:
            a, b = pair
            if a not in idx or b not in idx:
                raise MalformedInputError(f"order pair names unknown element: {pair!r}")
            up[idx[a]] |= 1 << idx[b]
        for k in range(len(elements)):
            bk = 1 << k
            uk = up[k]
            for i in range(len(elements)):
                if up[i] & bk:
                    up[i] |= uk
        return cls(elements, tuple(up))

    @classmethod
    def from_function(cls, elements: Sequence, le) -> "Poset":
        elements = tuple(elements)
        up = tuple(sum(1 << j for j, b in enumerate(elements) if le(a, b)) for a in elements)
        return cls(elements, up)

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self is other or (self.elements == other.elements and self.up == other.up)

    def __hash__(self):
        return hash((self.elements, self.up))

    def __repr__(self):
        return f"Poset({len(self)} elements, {len(self.hasse_edges)} covers)"

    def _i(self, x) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise MalformedInputError(f"unknown poset element {x!r}") from None

    def le(self, a, b) -> bool:
        return bool(self.up[self._i(a)] >> self._i(b) & 1)

    def lt(self, a, b) -> bool:
        return a != b and self.le(a, b)

    @cached_property
    def down(self) -> tuple:
        d = [0] * len(self.elements)
        for i, u in enumerate(self.up):
            for j in _bits(u):
                d[j] |= 1 << i
        return tuple(d)

    def up_set(self, x) -> frozenset:
        return frozenset(self.elements[j] for j in _bits(self.up[self._i(x)]))

    def down_set(self, x) -> frozenset:
        return frozenset(self.elements[j] for j in _bits(self.down[self._i(x)]))

    def strictly_between(self, a, b) -> list:
        i, j = self._i(a), self._i(b)
        mask = self.up[i] & self.down[j] & ~(1 << i) & ~(1 << j)
        return [self.elements[k] for k in _bits(mask)]

    @cached_property
    def cover_masks(self) -> tuple:
        out = []
        for i, u in enumerate(self.up):
            strict = u & ~(1 << i)
            cov = strict
            for j in _bits(strict):
                cov &= ~(self.up[j] & ~(1 << j))
            out.append(cov)
        return tuple(out)

    @cached_property
    def hasse_edges(self) -> tuple:
        """Covering pairs (a, b): a < b with nothing strictly between."""
        return tuple((self.elements[i], self.elements[j])
                     for i, c in enumerate(self.cover_masks) for j in _bits(c))

    @cached_property
    def linear_extension(self) -> tuple:
        """Kahn's algorithm, ties broken by element position."""
        indeg = [0] * len(self.elements)
        for c in self.cover_masks:
            for j in _bits(c):
                indeg[j] += 1
        heap = [i for i, d in enumerate(indeg) if d == 0]
        heapq.heapify(heap)
        out = []
        while heap:
            i = heapq.heappop(heap)
            out.append(self.elements[i])
            for j in _bits(self.cover_masks[i]):
                indeg[j] -= 1
                if indeg[j] == 0:
                    heapq.heappush(heap, j)
        return tuple(out)

    def intervals(self) -> list:
        return [(self.elements[i], self.elements[j]) for i, u in enumerate(self.up) for j in _bits(u)]

    @cached_property
    def chains(self) -> tuple:
        """Strictly increasing chains grouped by length - 1, each level sorted by linear-extension rank."""
        pos = {self.index[x]: r for r, x in enumerate(self.linear_extension)}
        by_len: dict[int, list] = {}
        stack = [(i,) for i in range(len(self.elements))]
        while stack:
            c = stack.pop()
            by_len.setdefault(len(c) - 1, []).append(c)
            last = c[-1]
            for j in _bits(self.up[last] & ~(1 << last)):
                stack.append(c + (j,))
        top = max(by_len, default=-1)
        return tuple(
            tuple(tuple(self.elements[i] for i in c)
                  for c in sorted(by_len[n], key=lambda c: tuple(pos[i] for i in c)))
            for n in range(top + 1)
        )

    def reversed(self) -> "Poset":
        return Poset(self.elements, self.down)

    def to_json(self) -> dict:
        return {"elements": [label_str(x) for x in self.elements],
                "le": [[label_str(a), label_str(b)] for a, b in self.hasse_edges]}

    def to_dot(self, name: str = "hasse") -> str:
        def q(x):
            return '"' + label_str(x).replace("\\", "\\\\").replace('"', '\\"') + '"'

        lines = [f"digraph {name} {{"]
        lines += [f"  {q(x)};" for x in self.elements]
        lines += [f"  {q(a)} -> {q(b)};" for a, b in self.hasse_edges]
        lines.append("}")
        return "\n".join(lines) + "\n"


def order_complex(k: Poset) -> SimplicialComplex:
    """Strictly increasing chains as simplices; vertices ranked by a linear extension."""
    return SimplicialComplex.from_simplices(
        (c for level in k.chains for c in level), order=k.linear_extension, check=False)


def face_poset(k: SimplicialComplex) -> Poset:
    """Nonempty simplices ordered by inclusion (faces below cofaces)."""
    elements = tuple(k.all_simplices())
    idx = {s: i for i, s in enumerate(elements)}
    up = [1 << i for i in range(len(elements))]
    for t in elements:
        bt = 1 << idx[t]
        for r in range(1, len(t)):
            for s in combinations(t, r):
                up[idx[s]] |= bt
    return Poset(elements, tuple(up))


def barycentric(k: SimplicialComplex) -> SimplicialComplex:
    return order_complex(face_poset(k))


@dataclass(frozen=True)
class SorkinQuotient:
    poset: Poset
    class_of: Mapping  # object -> class label
    rows: Mapping  # class label -> frozenset of attributes true on the class
    members: Mapping  # class label -> tuple of objects

    def class_with_row(self, row: Iterable) -> Hashable:
        row = frozenset(row)
        for c, r in self.rows.items():
            if r == row:
                return c
        raise KeyError(row)


def row_label(attrs: Sequence) -> str:
    return "{" + ", ".join(label_str(a) for a in attrs) + "}"


def sorkin_quotient(p: ChuSpace) -> SorkinQuotient:
    """Identify objects with equal attribute rows; [x] <= [x'] iff row(x') ⊆ row(x)."""
    first: dict[int, int] = {}
    for r in p.rows:
        first.setdefault(r, len(first))
    masks = list(first)
    attrs = p.attributes
    labels = tuple(row_label([attrs[j] for j in _bits(m)]) for m in masks)
    up = []
    for m in masks:
        u = 0
        for k, m2 in enumerate(masks):
            if m2 & ~m == 0:
                u |= 1 << k
        up.append(u)
    poset = Poset(labels, tuple(up))
    class_of = {x: labels[first[r]] for x, r in zip(p.objects, p.rows)}
    rows = {labels[k]: frozenset(attrs[j] for j in _bits(m))
            for k, m in enumerate(masks)}
    members: dict = {c: [] for c in labels}
    for x, c in class_of.items():
        members[c].append(x)
    return SorkinQuotient(poset, class_of, rows, {c: tuple(v) for c, v in members.items()})


def minimal_open_set(q: SorkinQuotient, cls) -> frozenset:
    """U_[x]: the classes below [x]."""
    if cls not in q.poset.index:
        raise MalformedInputError(f"unknown class {cls!r}")
    return q.poset.down_set(cls)

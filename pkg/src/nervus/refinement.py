"""Čech refinement relations relative to a carrier function on objects.

A relation ``p -> q`` between attributes of P and Q is sound for a carrier
``f`` when every witness of ``p`` is carried to a witness of ``q``. Refinement
maps are total functional choices inside such a relation; they are typed on
attributes (P_a -> Q_a).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, combinations
from typing import Iterable, Mapping

from .context import ChuSpace, ChuTransform
from .errors import MalformedInputError, RefinementError
from .poset import SorkinQuotient, sorkin_quotient


@dataclass(frozen=True)
class RefinementRelation:
    source: ChuSpace
    target: ChuSpace
    carrier: Mapping
    pairs: frozenset

    def related(self, p) -> list:
        return [q for q in self.target.attributes if (p, q) in self.pairs]

    def is_total(self) -> bool:
        return all(self.related(p) for p in self.source.attributes)


@dataclass(frozen=True)
class RefinementMap:
    source: ChuSpace
    target: ChuSpace
    carrier: Mapping
    rho: Mapping


def identity_carrier(p: ChuSpace) -> dict:
    return {x: x for x in p.objects}


def _check_carrier(f: Mapping, p: ChuSpace, q: ChuSpace) -> None:
    for x in p.objects:
        if x not in f:
            raise MalformedInputError(f"carrier undefined on {x!r}")
        if f[x] not in q._obj_index:
            raise MalformedInputError(f"carrier sends {x!r} outside the target objects")


def _pushed_extents(f: Mapping, p: ChuSpace, q: ChuSpace) -> list[int]:
    """Per Q attribute: bitmask over P's objects x with f(x) satisfying it."""
    qi = q._obj_index
    out = [0] * len(q.attributes)
    for i, x in enumerate(p.objects):
        row, bit = q.rows[qi[f[x]]], 1 << i
        while row:
            low = row & -row
            out[low.bit_length() - 1] |= bit
            row ^= low
    return out


def check_refinement_relation(pairs: Iterable, f: Mapping, p: ChuSpace, q: ChuSpace) -> RefinementRelation:
    """Soundness: x ⊨_P a and a -> b imply f(x) ⊨_Q b. Raises naming the first bad (x, a, b)."""
    _check_carrier(f, p, q)
    pairs = frozenset((a, b) for a, b in pairs)
    ordered = sorted(pairs, key=lambda ab: (p._ai(ab[0]), q._ai(ab[1])))
    for a, b in ordered:
        ja, jb = p._ai(a), q._ai(b)
        for x in (x for x, r in zip(p.objects, p.rows) if r >> ja & 1):
            if not q.rows[q._oi(f[x])] >> jb & 1:
                raise RefinementError(f"unsound pair: {x!r} ⊨ {a!r} and {a!r} -> {b!r}, "
                                      f"but f({x!r}) = {f[x]!r} does not satisfy {b!r}")
    return RefinementRelation(p, q, dict(f), pairs)


def maximal_refinement_relation(f: Mapping, p: ChuSpace, q: ChuSpace) -> RefinementRelation:
    """p -> q iff {x | x ⊨ p} ⊆ {x | f(x) ⊨ q}; empty extents relate to everything."""
    _check_carrier(f, p, q)
    pushed = dict(zip(q.attributes, _pushed_extents(f, p, q)))
    pairs = frozenset((a, b) for a, ext in zip(p.attributes, p.columns)
                      for b in q.attributes if ext & ~pushed[b] == 0)
    return RefinementRelation(p, q, dict(f), pairs)


def chu_refinement_relation(t: ChuTransform) -> RefinementRelation:
    """{(f_a(q), q)} for a Chu transform, carried by f_o."""
    return check_refinement_relation(((t.f_a[b], b) for b in t.target.attributes),
                                     t.f_o, t.source, t.target)


def check_refinement_map(rho: Mapping, f: Mapping, p: ChuSpace, q: ChuSpace) -> RefinementMap:
    """ρ: P_a -> Q_a with every p -> ρ(p) sound."""
    _check_carrier(f, p, q)
    pushed = _pushed_extents(f, p, q)
    for a, ext in zip(p.attributes, p.columns):
        if a not in rho:
            raise MalformedInputError(f"refinement map undefined on {a!r}")
        b = rho[a]
        if b not in q._attr_index:
            raise MalformedInputError(f"refinement map sends {a!r} to unknown attribute {b!r}")
        if ext & ~pushed[q._ai(b)]:
            raise RefinementError(f"refinement map fails at {a!r} -> {b!r}")
    return RefinementMap(p, q, dict(f), {a: rho[a] for a in p.attributes})


@dataclass(frozen=True)
class FinExtension:
    """X -> Y on finite attribute subsets: each p in X relates to some q in Y. Evaluated per query."""

    relation: RefinementRelation

    def holds(self, xs: Iterable, ys: Iterable) -> bool:
        ys = set(ys)
        pairs = self.relation.pairs
        return all(any((a, b) in pairs for b in ys) for a in set(xs))

    __call__ = holds


def extend_to_fin(rel: RefinementRelation) -> FinExtension:
    return FinExtension(rel)


def subsets(items) -> Iterable[frozenset]:
    items = list(items)
    return (frozenset(c) for c in chain.from_iterable(combinations(items, r) for r in range(len(items) + 1)))


@dataclass(frozen=True)
class SorkinMap:
    fine: SorkinQuotient
    coarse: SorkinQuotient
    mapping: Mapping  # fine class -> coarse class

    def is_monotone(self) -> bool:
        fp, cp = self.fine.poset, self.coarse.poset
        return all(cp.le(self.mapping[a], self.mapping[b]) for a, b in fp.intervals())

    def is_surjective(self) -> bool:
        return set(self.mapping.values()) == set(self.coarse.poset.elements)


def sorkin_refinement_map(fine: ChuSpace, coarse: ChuSpace, witness: RefinementRelation | None = None,
                          coarse_quotient: SorkinQuotient | None = None) -> SorkinMap:
    """The natural map X_F' -> X_F: class of x in the fine quotient to class of x in the coarse one.

    ``witness`` (identity carrier) certifies that every fine attribute lies in
    some coarse one; the maximal relation is used when omitted.
    ``coarse_quotient`` lets the target be a quotient built from a different
    object sample; coarse classes are then matched by attribute row.
    """
    if set(fine.objects) != set(coarse.objects):
        raise MalformedInputError("fine and coarse contexts must share their object set")
    ident = identity_carrier(fine)
    if witness is None:
        witness = maximal_refinement_relation(ident, fine, coarse)
    else:
        witness = check_refinement_relation(witness.pairs, ident, fine, coarse)
    bare = [a for a in fine.attributes if not witness.related(a)]
    if bare:
        raise RefinementError(f"fine attribute {bare[0]!r} lies in no coarse attribute")
    fq = sorkin_quotient(fine)
    cq = sorkin_quotient(coarse)
    mapping: dict = {}
    for x in fine.objects:
        a = fq.class_of[x]
        b = cq.class_of[x]
        if coarse_quotient is not None:
            try:
                b = coarse_quotient.class_with_row(cq.rows[b])
            except KeyError:
                raise RefinementError(f"coarse row of {x!r} is not a class of the target quotient") from None
        if mapping.setdefault(a, b) != b:
            raise RefinementError(f"fine class {a!r} splits across coarse classes")
    out = SorkinMap(fq, coarse_quotient or cq, mapping)
    if not out.is_monotone():
        raise RefinementError("induced map of Sorkin posets is not monotone")
    return out

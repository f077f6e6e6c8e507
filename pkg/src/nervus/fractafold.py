"""Test-bed spaces: Cantor towers, star covers, carpets, sponges, solenoids, Rössler clouds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Sequence

import numpy as np

from .complex import (SimplicialComplex, SimplicialMap, betti, check_simplicial_map, complex_from_maximal,
                      homology_map, label_str)
from .config import Caps, require
from .context import ChuSpace, cech_nerve
from .errors import DivergenceError, MalformedInputError
from .geometry import PointCloud
from .linalg import Q, Field, get_field
from .poset import sorkin_quotient
from .refinement import check_refinement_map, identity_carrier, sorkin_refinement_map

DEFAULT_CAPS = Caps()


def _frac(x: Fraction) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class Interval:
    """A real interval with exact endpoints and per-end closedness."""

    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def contains(self, x) -> bool:
        x = Fraction(x)
        above = x >= self.lo if self.lo_closed else x > self.lo
        below = x <= self.hi if self.hi_closed else x < self.hi
        return above and below

    def subset_of(self, other: "Interval") -> bool:
        lo_ok = other.lo < self.lo or (other.lo == self.lo and (other.lo_closed or not self.lo_closed))
        hi_ok = self.hi < other.hi or (other.hi == self.hi and (other.hi_closed or not self.hi_closed))
        return lo_ok and hi_ok

    @property
    def label(self) -> str:
        return f"{'[' if self.lo_closed else '('}{_frac(self.lo)},{_frac(self.hi)}{']' if self.hi_closed else ')'}"

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class IntervalSystem:
    """The 2^n closed intervals of the n-th middle-thirds stage."""

    level: int
    intervals: tuple

    def children(self, i: int) -> tuple[int, int]:
        return 2 * i, 2 * i + 1


def cantor_intervals(n: int) -> IntervalSystem:
    ivs = [Interval(Fraction(0), Fraction(1))]
    for _ in range(n):
        nxt = []
        for iv in ivs:
            third = (iv.hi - iv.lo) / 3
            nxt.append(Interval(iv.lo, iv.lo + third))
            nxt.append(Interval(iv.hi - third, iv.hi))
        ivs = nxt
    return IntervalSystem(n, tuple(ivs))


def cantor_cover(n: int) -> tuple:
    """Per interval [l, r]: the two half-open stars [l, r) and (l, r]."""
    out = []
    for iv in cantor_intervals(n).intervals:
        out.append(Interval(iv.lo, iv.hi, True, False))
        out.append(Interval(iv.lo, iv.hi, False, True))
    return tuple(out)


def cantor_points(n: int) -> tuple:
    """Symbolic points: left endpoint, midpoint witness, right endpoint of each interval."""
    pts = []
    for iv in cantor_intervals(n).intervals:
        pts += [iv.lo, (iv.lo + iv.hi) / 2, iv.hi]
    return tuple(pts)


def interval_context(points: Iterable, cover: Sequence[Interval]) -> ChuSpace:
    """Membership by exact comparison after scaling every endpoint to a common integer grid."""
    pts = tuple(Fraction(x) for x in points)
    objects, attrs = [_frac(x) for x in pts], [iv.label for iv in cover]
    ends = [e for iv in cover for e in (iv.lo, iv.hi)]
    den = math.lcm(*(x.denominator for x in pts + tuple(ends))) if pts or ends else 1
    big = max((abs(x) * den for x in pts + tuple(ends)), default=0)
    if big >= 2 ** 62:
        return ChuSpace.from_matrix(objects, attrs, [[iv.contains(x) for iv in cover] for x in pts])

    def grid(xs):
        return np.array([int(x * den) for x in xs], dtype=np.int64)

    x = grid(pts)[:, None]
    lo, hi = grid(iv.lo for iv in cover), grid(iv.hi for iv in cover)
    lo_c = np.array([iv.lo_closed for iv in cover], dtype=bool)
    hi_c = np.array([iv.hi_closed for iv in cover], dtype=bool)
    inside = np.where(lo_c, x >= lo, x > lo) & np.where(hi_c, x <= hi, x < hi)
    rows = tuple(int.from_bytes(np.packbits(r, bitorder="little").tobytes(), "little") for r in inside)
    return ChuSpace(tuple(objects), tuple(attrs), rows)


def _check_level(n: int, cap: int) -> None:
    if n < 1:
        raise MalformedInputError("Cantor level must be at least 1")
    require(n, cap, "Cantor level")


def cantor_context(n: int, cap: int = DEFAULT_CAPS.cantor) -> ChuSpace:
    _check_level(n, cap)
    return interval_context(cantor_points(n), cantor_cover(n))


def cantor_projection(n: int) -> dict:
    """Level-(n+1) point label -> the level-n point label with the same level-n cover row."""
    cover = cantor_cover(n)
    rep = {}
    for x in cantor_points(n):
        rep.setdefault(tuple(iv.contains(x) for iv in cover), _frac(x))
    return {_frac(x): rep[tuple(iv.contains(x) for iv in cover)] for x in cantor_points(n + 1)}


@dataclass(frozen=True)
class Tower:
    """Complexes from coarsest to finest with bonds[j]: complexes[j+1] -> complexes[j]."""

    levels: tuple
    complexes: tuple
    bonds: tuple

    def __post_init__(self):
        if len(self.bonds) != max(len(self.complexes) - 1, 0) or len(self.levels) != len(self.complexes):
            raise MalformedInputError("tower needs one bonding map between consecutive levels")
        for j, f in enumerate(self.bonds):
            if f.source != self.complexes[j + 1] or f.target != self.complexes[j]:
                raise MalformedInputError(f"bonding map {j} has the wrong endpoints")

    def composite(self, finer: int, coarser: int) -> SimplicialMap:
        """Map from level index ``finer`` down to level index ``coarser``."""
        f = SimplicialMap.identity(self.complexes[finer])
        for j in range(finer - 1, coarser - 1, -1):
            f = f.compose(self.bonds[j])
        return f


@dataclass(frozen=True)
class CantorTower:
    tower: Tower
    contexts: tuple
    quotients: tuple
    sorkin_maps: tuple  # sorkin_maps[j]: quotient of level j+1 -> quotient of level j


def cantor_tower(n: int, cap: int = DEFAULT_CAPS.cantor) -> CantorTower:
    """Levels 1..n. Čech bonding maps send [J) to [I) and (J] to (I] for the parent I of J."""
    _check_level(n, cap)
    contexts = tuple(cantor_context(j, cap) for j in range(1, n + 1))
    nerves = tuple(cech_nerve(p) for p in contexts)
    quotients = tuple(sorkin_quotient(p) for p in contexts)
    bonds, smaps = [], []
    for j in range(1, n):
        fine_cover, coarse_cover = cantor_cover(j + 1), cantor_cover(j)
        rho = {}
        for k, iv in enumerate(fine_cover):
            parent = coarse_cover[2 * (k // 4) + k % 2]
            rho[iv.label] = parent.label
        fine = contexts[j]
        coarse_on_fine = interval_context(cantor_points(j + 1), coarse_cover)
        check_refinement_map(rho, identity_carrier(fine), fine, coarse_on_fine)
        bonds.append(check_simplicial_map(rho, nerves[j], nerves[j - 1]))
        smaps.append(sorkin_refinement_map(fine, coarse_on_fine, coarse_quotient=quotients[j - 1]))
    return CantorTower(Tower(tuple(range(1, n + 1)), nerves, tuple(bonds)), contexts, quotients, tuple(smaps))


def star_cover(k: SimplicialComplex) -> ChuSpace:
    """Objects: simplices (points of their open cells). Attribute U_v: cells having v as a vertex."""
    objects = tuple(k.all_simplices())
    attrs = tuple(f"U_{label_str(v)}" for v in k.vertices)
    rank = k.rank_of
    rows = tuple(sum(1 << rank[v] for v in s) for s in objects)
    return ChuSpace(objects, attrs, rows)


def _kuhn_cells(corner: tuple) -> list[tuple]:
    """Freudenthal–Kuhn split of a unit cube: one simplex per axis permutation."""
    d = len(corner)
    out = []
    for perm in permutations(range(d)):
        v = list(corner)
        cell = [tuple(v)]
        for axis in perm:
            v[axis] += 1
            cell.append(tuple(v))
        out.append(tuple(cell))
    return out


def _digits(x: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        out.append(x % 3)
        x //= 3
    return out


def carpet_squares(n: int) -> list[tuple]:
    side = 3 ** n
    keep = []
    for i, j in product(range(side), repeat=2):
        if not any(a == 1 and b == 1 for a, b in zip(_digits(i, n), _digits(j, n))):
            keep.append((i, j))
    return keep


def sponge_cubes(n: int) -> list[tuple]:
    side = 3 ** n
    keep = []
    for c in product(range(side), repeat=3):
        ds = [_digits(x, n) for x in c]
        if not any(sum(d[k] == 1 for d in ds) >= 2 for k in range(n)):
            keep.append(c)
    return keep


def carpet_complex(n: int, cap: int = DEFAULT_CAPS.carpet) -> SimplicialComplex:
    """Level-n Sierpiński carpet: retained grid squares, two triangles each. Vertices are (x, y)."""
    if n < 1:
        raise MalformedInputError("carpet level must be at least 1")
    require(n, cap, "carpet level")
    return complex_from_maximal([t for sq in carpet_squares(n) for t in _kuhn_cells(sq)])


def sponge_complex(n: int, cap: int = DEFAULT_CAPS.sponge) -> SimplicialComplex:
    """Level-n Menger sponge: retained unit cubes, six Kuhn tetrahedra each. Vertices are (x, y, z)."""
    if n < 1:
        raise MalformedInputError("sponge level must be at least 1")
    require(n, cap, "sponge level")
    return complex_from_maximal([t for c in sponge_cubes(n) for t in _kuhn_cells(c)])


def cycle_complex(size: int) -> SimplicialComplex:
    if size < 3:
        raise MalformedInputError("a cycle needs at least 3 vertices")
    return complex_from_maximal([(i, (i + 1) % size) for i in range(size)], order=range(size))


def solenoid_tower(m: int, k: int, cap: int = DEFAULT_CAPS.solenoid) -> Tower:
    """Cycles of m·2^j vertices for j = 0..k; bonding map i -> i mod m·2^(j-1) (degree-two cover)."""
    if m < 3 or k < 1:
        raise MalformedInputError("solenoid needs base m >= 3 and k >= 1")
    require(m * 2 ** k, cap, "finest solenoid cycle size")
    cycles = tuple(cycle_complex(m * 2 ** j) for j in range(k + 1))
    bonds = tuple(
        check_simplicial_map({i: i % (m * 2 ** j) for i in range(m * 2 ** (j + 1))}, cycles[j + 1], cycles[j])
        for j in range(k)
    )
    return Tower(tuple(range(k + 1)), cycles, bonds)


@dataclass(frozen=True)
class OdeParams:
    a: float = 0.15
    b: float = 0.2
    c: float = 10.0
    dt: float = 0.01
    steps: int = 30000
    transient: int = 5000
    start: tuple = (1.0, 1.0, 1.0)

    def __post_init__(self):
        if not self.dt > 0:
            raise MalformedInputError("step size must be positive")
        if not 0 <= self.transient < self.steps:
            raise MalformedInputError("transient must be non-negative and below the total step count")


def rossler_trajectory(params: OdeParams) -> np.ndarray:
    """Classical fixed-step RK4; returns the ``steps`` states after the start state."""
    a, b, c, h = params.a, params.b, params.c, params.dt

    def f(x, y, z):
        return -(y + z), x + a * y, b + x * z - c * z

    x, y, z = map(float, params.start)
    out = np.empty((params.steps, 3))
    isfinite = math.isfinite
    for i in range(params.steps):
        k1 = f(x, y, z)
        k2 = f(x + h / 2 * k1[0], y + h / 2 * k1[1], z + h / 2 * k1[2])
        k3 = f(x + h / 2 * k2[0], y + h / 2 * k2[1], z + h / 2 * k2[2])
        k4 = f(x + h * k3[0], y + h * k3[1], z + h * k3[2])
        x += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        y += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        z += h / 6 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])
        if not (isfinite(x) and isfinite(y) and isfinite(z)):
            raise DivergenceError(i + 1)
        out[i] = (x, y, z)
    return out


def rossler_cloud(params: OdeParams = OdeParams(), count: int = 400) -> PointCloud:
    """Drop the transient, then take ``count`` evenly spaced states."""
    traj = rossler_trajectory(params)[params.transient:]
    if not 0 < count <= len(traj):
        raise MalformedInputError(f"subsample count must be in 1..{len(traj)}")
    idx = [i * len(traj) // count for i in range(count)]
    return PointCloud(traj[idx])


@dataclass(frozen=True)
class TowerHomology:
    levels: tuple
    betti: tuple  # per level
    bonding: tuple  # bonding[j][degree] = matrix of H_degree(bonds[j])


def tower_homology(t: Tower, field: Field | str = Q) -> TowerHomology:
    field = get_field(field)
    bettis = tuple(betti(k, field) for k in t.complexes)
    mats = []
    for j, f in enumerate(t.bonds):
        top = min(len(bettis[j]), len(bettis[j + 1]))
        mats.append({n: homology_map(f, n, field) for n in range(top)})
    return TowerHomology(t.levels, bettis, tuple(mats))

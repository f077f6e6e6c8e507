"""Point clouds, ε-Rips complexes and Čech-ball complexes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.sparse.csgraph import minimum_spanning_tree

from .complex import SimplicialComplex
from .errors import MalformedInputError

MAX_DIM = 16
TOL = 1e-9  # closed-ball slack for both constructions


@dataclass(frozen=True, eq=False)
class PointCloud:
    points: np.ndarray
    labels: tuple = field(default=())

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim == 1 and pts.size == 0:
            pts = pts.reshape(0, 0)
        if pts.ndim != 2:
            raise MalformedInputError("points must form an n x d array")
        if pts.shape[1] > MAX_DIM:
            raise MalformedInputError(f"dimension {pts.shape[1]} exceeds {MAX_DIM}")
        if not np.all(np.isfinite(pts)):
            raise MalformedInputError("non-finite coordinate")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        labels = tuple(self.labels) or tuple(range(len(pts)))
        if len(labels) != len(pts) or len(set(labels)) != len(labels):
            raise MalformedInputError("labels must be unique, one per point")
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.points)

    @property
    def dim(self) -> int:
        return self.points.shape[1]


def euclidean(points: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - points[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


Metric = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class Ball:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("negative radius")

    def contains(self, p, tol: float = TOL) -> bool:
        return float(np.linalg.norm(np.asarray(p, dtype=float) - self.center)) <= self.radius + tol


def _dist(p, q) -> float:
    return math.sqrt(sum((a - b) * (a - b) for a, b in zip(p, q)))


def _solve(g: list, rhs: list) -> list | None:
    """Gaussian elimination with partial pivoting; None when numerically singular."""
    k = len(g)
    m = [row[:] + [b] for row, b in zip(g, rhs)]
    scale = max((abs(x) for row in g for x in row), default=1.0) or 1.0
    for col in range(k):
        piv = max(range(col, k), key=lambda r: abs(m[r][col]))
        if abs(m[piv][col]) <= 1e-12 * scale:
            return None
        m[col], m[piv] = m[piv], m[col]
        for r in range(col + 1, k):
            f = m[r][col] / m[col][col]
            if f:
                for c in range(col, k + 1):
                    m[r][c] -= f * m[col][c]
    x = [0.0] * k
    for r in range(k - 1, -1, -1):
        x[r] = (m[r][k] - sum(m[r][c] * x[c] for c in range(r + 1, k))) / m[r][r]
    return x


def _circumball(support: list) -> tuple[tuple, float]:
    """Smallest ball with every support point on its boundary (center in their affine hull)."""
    p0 = support[0]
    if len(support) == 1:
        return p0, 0.0
    a = [[x - y for x, y in zip(p, p0)] for p in support[1:]]
    g = [[sum(x * y for x, y in zip(u, v)) for v in a] for u in a]
    lam = _solve(g, [0.5 * g[i][i] for i in range(len(a))])
    if lam is None:
        lam = np.linalg.lstsq(np.array(g), 0.5 * np.diag(g), rcond=None)[0].tolist()
    c = tuple(x + sum(l * row[i] for l, row in zip(lam, a)) for i, x in enumerate(p0))
    return c, max(_dist(p, c) for p in support)


def _outside(p, ball, tol) -> bool:
    if ball is None:
        return True
    c, r = ball
    return _dist(p, c) > r + tol * max(1.0, r)


def _mtf(pts: list, n: int, support: list, d: int, tol: float):
    ball = _circumball(support) if support else None
    if len(support) == d + 1:
        return ball
    for i in range(n):
        p = pts[i]
        if _outside(p, ball, tol):
            ball = _mtf(pts, i, support + [p], d, tol)
            pts.insert(0, pts.pop(i))
    return ball


def min_enclosing_ball(points: Sequence) -> Ball:
    """Welzl's algorithm with the move-to-front pivot rule; no randomness."""
    pts = [tuple(float(x) for x in p) for p in points]
    if not pts:
        raise MalformedInputError("minimum enclosing ball of an empty set")
    c, r = _mtf(pts, len(pts), [], len(pts[0]), 1e-12)
    return Ball(np.array(c), r)


def _labels_complex(cloud: PointCloud, simplices: list) -> SimplicialComplex:
    lab = cloud.labels
    return SimplicialComplex.from_simplices(
        (tuple(lab[i] for i in s) for s in simplices), order=lab, check=False)


def _upper_masks(adj: np.ndarray) -> list[int]:
    n = len(adj)
    out = []
    for i in range(n):
        row = np.flatnonzero(adj[i, i + 1:]) + i + 1
        m = 0
        for j in row.tolist():
            m |= 1 << j
        out.append(m)
    return out


def _expand(n: int, upper: list[int], maxdim: int, accept=None) -> list:
    """Incremental clique expansion: extend each simplex by higher common neighbours."""
    level = [((i,), upper[i]) for i in range(n)]
    out = [s for s, _ in level]
    for _ in range(maxdim):
        nxt = []
        for s, mask in level:
            m = mask
            while m:
                low = m & -m
                j = low.bit_length() - 1
                m ^= low
                t = s + (j,)
                if accept is None or accept(t):
                    nxt.append((t, mask & upper[j]))
        if not nxt:
            break
        out.extend(t for t, _ in nxt)
        level = nxt
    return out


def rips_complex(cloud: PointCloud, eps: float, maxdim: int = 3, metric: Metric = euclidean) -> SimplicialComplex:
    """σ is a simplex iff all pairwise distances are ≤ ε and |σ| ≤ maxdim + 1."""
    if eps < 0 or maxdim < 0:
        raise MalformedInputError("eps and maxdim must be non-negative")
    if len(cloud) == 0:
        return SimplicialComplex.from_simplices([])
    dist = metric(cloud.points)
    upper = _upper_masks(dist <= eps + TOL)
    return _labels_complex(cloud, _expand(len(cloud), upper, maxdim))


def cech_ball_complex(cloud: PointCloud, eps: float, maxdim: int = 3, metric: Metric = euclidean) -> SimplicialComplex:
    """σ is a simplex iff its minimum enclosing ball has radius ≤ ε (closed convention).

    Candidates are cofaces of accepted simplices within the 2ε-neighbourhood graph.
    """
    if eps < 0 or maxdim < 0:
        raise MalformedInputError("eps and maxdim must be non-negative")
    if len(cloud) == 0:
        return SimplicialComplex.from_simplices([])
    pts = [tuple(p) for p in cloud.points.tolist()]
    dist = metric(cloud.points)
    upper = _upper_masks(dist <= 2 * eps + TOL)
    balls = {(i,): (pts[i], 0.0) for i in range(len(pts))}

    def accept(t):
        parent, p = t[:-1], pts[t[-1]]
        c, r = balls[parent]
        if _dist(p, c) > r + 1e-12 * max(1.0, r):
            # the new point lies on the boundary of the enlarged ball
            c, r = _mtf([pts[i] for i in parent], len(parent), [p], len(p), 1e-12)
            if r > eps + TOL:
                return False
        balls[t] = (c, r)
        return True

    return _labels_complex(cloud, _expand(len(cloud), upper, maxdim, accept))


def connecting_epsilon(cloud: PointCloud, metric: Metric = euclidean) -> float:
    """Smallest ε whose Rips 1-skeleton is connected: the longest minimum-spanning-tree edge."""
    if len(cloud) < 2:
        return 0.0
    dist = metric(cloud.points)
    # csgraph treats zero weights as missing edges; coincident points are already connected at any ε
    mst = minimum_spanning_tree(np.where(dist == 0, np.finfo(float).tiny, dist))
    return float(mst.data.max()) if mst.nnz else 0.0

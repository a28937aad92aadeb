"""Exact brute-force ground truth for beta of finite point sets.

beta(A, m) for a finite set A asks for the smallest ratio delta/diam(A)
such that A splits into m parts of diameter <= delta.  Feasibility of a
given delta is graph m-colorability: draw an edge between points at
distance strictly greater than delta, and ask for a proper coloring
with at most m colors (color classes = parts).  Candidate deltas are
the pairwise distances themselves (plus 0), so a binary search over the
sorted candidates pins down the exact optimum.

Strict ">" in the edge rule makes parts of diameter exactly delta
feasible, which is the right semantics for an infimum.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .geometry import Norm, norm_eval, vsub
from .numbers import all_rational

MAX_POINTS = 14
MAX_PARTS = 9


@dataclass(frozen=True)
class DistanceGraph:
    """Points plus the edges at distance strictly above a threshold."""

    points: tuple
    threshold: object
    edges: frozenset  # pairs (i, j) with i < j

    def adjacency(self) -> List[set]:
        adj = [set() for _ in self.points]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj


@dataclass(frozen=True)
class ExactBetaResult:
    value: object
    witness_partition: tuple  # m tuples of point indices (some may be empty)
    threshold: object
    diameter: object


def distance_graph(points: Sequence, threshold, norm: Norm) -> DistanceGraph:
    pts = tuple(tuple(p) for p in points)
    edges = set()
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if norm_eval(vsub(pts[i], pts[j]), norm) > threshold:
                edges.add((i, j))
    return DistanceGraph(pts, threshold, frozenset(edges))


def m_colorable(G: DistanceGraph, m: int) -> Tuple[bool, Optional[tuple]]:
    """Exact backtracking m-coloring; returns (ok, colors) with colors
    indexed like G.points when ok."""
    n = len(G.points)
    if n > MAX_POINTS:
        raise ValueError("colorability budget is %d vertices" % MAX_POINTS)
    if m <= 0:
        return (n == 0, () if n == 0 else None)
    adj = G.adjacency()
    order = sorted(range(n), key=lambda v: (-len(adj[v]), v))
    colors = [-1] * n

    def backtrack(k: int, used: int) -> bool:
        if k == n:
            return True
        v = order[k]
        forbidden = {colors[u] for u in adj[v] if colors[u] >= 0}
        # trying a single fresh color (not every unused one) prunes the
        # color-permutation symmetry
        limit = min(used + 1, m)
        for c in range(limit):
            if c in forbidden:
                continue
            colors[v] = c
            if backtrack(k + 1, max(used, c + 1)):
                return True
            colors[v] = -1
        return False

    if backtrack(0, 0):
        return True, tuple(colors)
    return False, None


def _cluster_floats(values: List[float], rel_tol: float = 1e-9) -> dict:
    """Map each value to a representative of its tolerance cluster.

    Floating-point distance evaluation turns coincident distances into
    near-coincident ones (0.49999999999999994 next to 0.5).  Values
    within rel_tol are grouped, and the member with the shortest decimal
    round-trip representation (ties: the larger value) speaks for the
    group, so clean values like 0.5 survive verbatim.
    """
    out = {}
    cluster: List[float] = []
    for v in sorted(set(values)):
        if cluster and v - cluster[0] > rel_tol * max(abs(v), 1e-30):
            rep = min(cluster, key=lambda w: (len(repr(w)), -w))
            for w in cluster:
                out[w] = rep
            cluster = []
        cluster.append(v)
    if cluster:
        rep = min(cluster, key=lambda w: (len(repr(w)), -w))
        for w in cluster:
            out[w] = rep
    return out


def beta_finite_exact(points: Sequence, m: int, norm: Norm) -> ExactBetaResult:
    """Least ratio (max part diameter)/diam over m-part splits of the set."""
    pts = [tuple(p) for p in points]
    n = len(pts)
    if n == 0:
        raise ValueError("need at least one point")
    if n > MAX_POINTS:
        raise ValueError("budget is %d points" % MAX_POINTS)
    if not 1 <= m <= MAX_PARTS:
        raise ValueError("m must lie in [1, %d]" % MAX_PARTS)

    dist = {}
    for i in range(n):
        for j in range(i + 1, n):
            dist[(i, j)] = norm_eval(vsub(pts[i], pts[j]), norm)

    exact = all_rational(dist.values())
    if not exact:
        rep = _cluster_floats([float(v) for v in dist.values()])
        dist = {k: rep[float(v)] for k, v in dist.items()}

    zero = Fraction(0) if exact else 0.0
    if m >= n or not dist:
        parts = [(i,) for i in range(n)] + [()] * (m - n)
        return ExactBetaResult(zero, tuple(parts[:m]), zero,
                               max(dist.values(), default=zero))

    diam = max(dist.values())
    if diam == 0:
        parts = [tuple(range(n))] + [()] * (m - 1)
        return ExactBetaResult(zero, tuple(parts), zero, zero)

    candidates = [zero] + sorted(set(dist.values()))

    colorings = {}

    def feasible(idx: int) -> bool:
        if idx in colorings:
            return colorings[idx] is not None
        delta = candidates[idx]
        edges = frozenset(k for k, d in dist.items() if d > delta)
        ok, cols = m_colorable(DistanceGraph(tuple(pts), delta, edges), m)
        colorings[idx] = cols if ok else None
        return ok

    lo, hi = 0, len(candidates) - 1  # delta = diam is always feasible
    if feasible(0):
        hi = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(mid):
            hi = mid
        else:
            lo = mid + 1
    feasible(hi)
    cols = colorings[hi]
    parts: List[List[int]] = [[] for _ in range(m)]
    for i, c in enumerate(cols):
        parts[c].append(i)
    delta = candidates[hi]
    value = Fraction(delta, diam) if exact else delta / diam
    return ExactBetaResult(value, tuple(tuple(p) for p in parts), delta, diam)

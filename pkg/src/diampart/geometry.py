"""Vectors, norms, polytopes, diameters, and related substrate.

Points are plain tuples of scalars (ints, Fractions, or floats).  Most
operations run in one of two arithmetic modes: exact rational arithmetic
whenever every input is rational and the norm is polyhedral (p in {1, inf}
or an explicit gauge body), floating point otherwise.  Exact-mode results
never round.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .linprog import (
    feasible_point,
    matrix_rank_exact,
    solve_exact_lp,
    solve_float_lp,
    solve_linear_system,
    verify_lp_certificate,
)
from .numbers import INF, Scalar, all_rational, as_fraction, is_rational, to_float

Vector = Tuple[Scalar, ...]


# ---------------------------------------------------------------------------
# vector helpers


def vadd(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Vector, y: Vector) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def vscale(alpha: Scalar, x: Vector) -> Vector:
    return tuple(alpha * a for a in x)


def vdot(x: Vector, y: Vector) -> Scalar:
    return sum(a * b for a, b in zip(x, y))


def vneg(x: Vector) -> Vector:
    return tuple(-a for a in x)


def centroid(points: Sequence[Vector]) -> Vector:
    k = len(points)
    if all(all_rational(p) for p in points):
        w = Fraction(1, k)
    else:
        w = 1.0 / k
    acc = points[0]
    for p in points[1:]:
        acc = vadd(acc, p)
    return vscale(w, acc)


def affine_rank(points: Sequence[Vector]) -> int:
    """Dimension of the affine hull of the given points."""
    if len(points) <= 1:
        return 0
    rows = [vsub(p, points[0]) for p in points[1:]]
    if all(all_rational(r) for r in rows):
        return matrix_rank_exact(rows)
    arr = np.asarray([[to_float(v) for v in r] for r in rows], dtype=float)
    return int(np.linalg.matrix_rank(arr, tol=1e-11))


# ---------------------------------------------------------------------------
# bodies


@dataclass(frozen=True)
class VPolytope:
    """Convex hull of an explicit (not necessarily minimal) vertex list."""

    vertices: tuple

    def __post_init__(self):
        verts = tuple(tuple(v) for v in self.vertices)
        if not verts:
            raise ValueError("polytope needs at least one vertex")
        n = len(verts[0])
        if any(len(v) != n for v in verts):
            raise ValueError("vertices have mixed dimensions")
        object.__setattr__(self, "vertices", verts)

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    def translate(self, t: Vector) -> "VPolytope":
        return VPolytope(tuple(vadd(v, t) for v in self.vertices))

    def scale(self, alpha: Scalar) -> "VPolytope":
        return VPolytope(tuple(vscale(alpha, v) for v in self.vertices))


@dataclass(frozen=True)
class Simplex:
    """n+1 affinely independent vertices in R^n."""

    vertices: tuple

    def __post_init__(self):
        verts = tuple(tuple(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        n = len(verts[0])
        if len(verts) != n + 1:
            raise ValueError("a simplex in R^%d needs %d vertices" % (n, n + 1))
        if affine_rank(verts) != n:
            raise ValueError("degenerate simplex: vertices are affinely dependent")

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    def as_polytope(self) -> VPolytope:
        return VPolytope(self.vertices)


@dataclass(frozen=True)
class Homothet:
    """The map x -> ratio*x + translation applied to a base body."""

    ratio: Scalar
    translation: tuple
    base: object  # VPolytope or Simplex

    def __post_init__(self):
        if self.ratio == 0:
            raise ValueError("homothety ratio must be nonzero")
        object.__setattr__(self, "translation", tuple(self.translation))

    def apply_point(self, x: Vector) -> Vector:
        return vadd(vscale(self.ratio, x), self.translation)

    def compose(self, inner: "Homothet") -> "Homothet":
        """Homothet equal to self applied after inner (same base as inner)."""
        return Homothet(
            ratio=self.ratio * inner.ratio,
            translation=vadd(vscale(self.ratio, inner.translation), self.translation),
            base=inner.base,
        )


def apply_homothet(h: Homothet) -> VPolytope:
    verts = getattr(h.base, "vertices")
    return VPolytope(tuple(h.apply_point(v) for v in verts))


@dataclass(frozen=True)
class BarycentricPoint:
    """Convex coefficients over simplex vertices: lambda >= 0, sum = 1."""

    lambdas: tuple

    def __post_init__(self):
        lam = tuple(self.lambdas)
        object.__setattr__(self, "lambdas", lam)
        if any(v < 0 for v in lam):
            raise ValueError("barycentric coordinates must be nonnegative")
        s = sum(lam)
        if all_rational(lam):
            if s != 1:
                raise ValueError("barycentric coordinates must sum to 1")
        elif abs(to_float(s) - 1.0) > 1e-12:
            raise ValueError("barycentric coordinates must sum to 1")

    def realize(self, simplex: Simplex) -> Vector:
        acc = vscale(self.lambdas[0], simplex.vertices[0])
        for lam, v in zip(self.lambdas[1:], simplex.vertices[1:]):
            acc = vadd(acc, vscale(lam, v))
        return acc


@dataclass(frozen=True)
class PBall:
    """The ball {x : ||x||_p <= radius} in R^dim."""

    p: Scalar
    dim: int
    radius: Scalar = 1

    def __post_init__(self):
        if not (self.p == INF or self.p >= 1):
            raise ValueError("p must lie in [1, inf]")
        if self.radius <= 0:
            raise ValueError("radius must be positive")


def cube(n: int, half: Scalar = 1) -> VPolytope:
    """The cube [-half, half]^n as a 2^n-vertex polytope."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    verts = [()]
    for _ in range(n):
        verts = [v + (s,) for v in verts for s in (-half, half)]
    return VPolytope(tuple(verts))


def cross_polytope(n: int, radius: Scalar = 1) -> VPolytope:
    """Unit l1 ball in R^n: the convex hull of +-radius*e_i."""
    verts = []
    for i in range(n):
        e = [0] * n
        e[i] = radius
        verts.append(tuple(e))
        e2 = [0] * n
        e2[i] = -radius
        verts.append(tuple(e2))
    return VPolytope(tuple(verts))


# ---------------------------------------------------------------------------
# norms


def pnorm_eval(x: Sequence[Scalar], p: Scalar) -> Scalar:
    """(sum |x_i|^p)^(1/p), max for p = inf; exact for p in {1, inf}."""
    if p == INF:
        return max(abs(v) for v in x) if x else 0
    if p < 1:
        raise ValueError("p must be >= 1")
    if p == 1:
        return sum(abs(v) for v in x)
    xs = [abs(to_float(v)) for v in x]
    m = max(xs) if xs else 0.0
    if m == 0.0:
        return 0.0
    pf = to_float(p)
    return m * sum((v / m) ** pf for v in xs) ** (1.0 / pf)


def dual_exponent(p: Scalar) -> Scalar:
    """q with 1/p + 1/q = 1, under the conventions 1 <-> inf."""
    if p == INF:
        return 1
    if p < 1:
        raise ValueError("p must be >= 1")
    if p == 1:
        return INF
    if is_rational(p):
        pf = as_fraction(p)
        return pf / (pf - 1)
    return p / (p - 1.0)


class Norm:
    """A norm on R^n: either an l_p norm or the gauge of a polytope.

    Gauge bodies must be origin-symmetric (vertex set closed under
    negation) and full-dimensional, so that the Minkowski functional is
    a genuine norm.
    """

    __slots__ = ("kind", "p", "body")

    def __init__(self, kind: str, p: Optional[Scalar] = None,
                 body: Optional[VPolytope] = None):
        if kind == "p":
            if p is None or (p != INF and p < 1):
                raise ValueError("p-norm needs p in [1, inf]")
            self.p = p
            self.body = None
        elif kind == "gauge":
            if body is None:
                raise ValueError("gauge norm needs a body")
            _validate_gauge_body(body)
            self.p = None
            self.body = body
        else:
            raise ValueError("unknown norm kind %r" % (kind,))
        self.kind = kind

    @classmethod
    def lp(cls, p: Scalar) -> "Norm":
        return cls("p", p=p)

    @classmethod
    def gauge(cls, body: Union[VPolytope, Sequence[Vector]]) -> "Norm":
        if not isinstance(body, VPolytope):
            body = VPolytope(tuple(body))
        return cls("gauge", body=body)

    @property
    def is_polyhedral(self) -> bool:
        return self.kind == "gauge" or self.p == 1 or self.p == INF

    def label(self) -> str:
        if self.kind == "gauge":
            return "gauge"
        if self.p == INF:
            return "linf"
        if self.p == int(self.p):
            return "l%d" % int(self.p)
        return "l%s" % (self.p,)

    def __call__(self, x: Vector) -> Scalar:
        return norm_eval(x, self)

    def __repr__(self):
        if self.kind == "gauge":
            return "Norm.gauge(<%d vertices>)" % len(self.body.vertices)
        return "Norm.lp(%r)" % (self.p,)

    def __eq__(self, other):
        if not isinstance(other, Norm):
            return NotImplemented
        if self.kind != other.kind:
            return False
        if self.kind == "p":
            return self.p == other.p
        return self.body.vertices == other.body.vertices

    def __hash__(self):
        if self.kind == "p":
            return hash(("p", self.p))
        return hash(("gauge", self.body.vertices))


def _validate_gauge_body(body: VPolytope):
    verts = body.vertices
    if affine_rank(verts) != body.dim:
        raise ValueError("gauge body must be full-dimensional")
    if all(all_rational(v) for v in verts):
        vert_set = set(verts)
        sym = all(vneg(v) in vert_set for v in verts)
    else:
        arr = np.asarray([[to_float(c) for c in v] for v in verts], dtype=float)
        sym = all(
            np.min(np.max(np.abs(arr + arr[i]), axis=1)) <= 1e-9
            for i in range(len(verts))
        )
    if not sym:
        raise ValueError("gauge body must be symmetric about the origin")


def gauge_eval(x: Vector, body: VPolytope) -> Scalar:
    """Minkowski functional of the polytope: min sum(mu) with x = sum mu_j w_j."""
    verts = body.vertices
    k = len(verts)
    n = body.dim
    exact = all_rational(x) and all(all_rational(v) for v in verts)
    c = [1] * k
    A = [[verts[j][i] for j in range(k)] for i in range(n)]
    b = list(x)
    if exact:
        res = solve_exact_lp(c, A, b)
    else:
        res = solve_float_lp(
            [to_float(v) for v in c],
            [[to_float(v) for v in row] for row in A],
            [to_float(v) for v in b],
        )
    if not res.optimal:
        raise ValueError("point is outside the span of the gauge body")
    return res.value


def norm_eval(x: Vector, norm: Norm) -> Scalar:
    if norm.kind == "p":
        return pnorm_eval(x, norm.p)
    return gauge_eval(x, norm.body)


# ---------------------------------------------------------------------------
# diameters


def diameter_finite(points: Sequence[Vector], norm: Norm) -> Scalar:
    """sup of pairwise distances of a finite set (0 for a single point)."""
    pts = [tuple(p) for p in points]
    if not pts:
        raise ValueError("diameter of an empty set is undefined")
    if len(pts) == 1:
        return 0 if all_rational(pts[0]) else 0.0
    if norm.kind == "p" and norm.p == INF:
        # max over pairs of max over coords == max over coords of the range
        best = None
        for k in range(len(pts[0])):
            col = [p[k] for p in pts]
            spread = max(col) - min(col)
            if best is None or spread > best:
                best = spread
        return best
    if norm.kind == "p" and norm.p != 1 and not all(all_rational(p) for p in pts):
        arr = np.asarray([[to_float(c) for c in p] for p in pts], dtype=float)
        diff = arr[:, None, :] - arr[None, :, :]
        pf = to_float(norm.p)
        dists = np.sum(np.abs(diff) ** pf, axis=2) ** (1.0 / pf)
        return float(dists.max())
    best = None
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = norm_eval(vsub(pts[i], pts[j]), norm)
            if best is None or d > best:
                best = d
    return best


def polytope_diameter(P: Union[VPolytope, Simplex], norm: Norm) -> Scalar:
    """Diameter of a polytope = diameter of its vertex set."""
    return diameter_finite(P.vertices, norm)


# ---------------------------------------------------------------------------
# barycentric coordinates and containment


def barycentric_coords(S: Simplex, x: Vector) -> tuple:
    """Affine coefficients lambda with sum 1 and sum lambda_i v_i = x.

    May have negative entries when x lies outside S; exact when the
    inputs are rational.
    """
    n = S.dim
    verts = S.vertices
    exact = all_rational(x) and all(all_rational(v) for v in verts)
    A = [[verts[j][i] for j in range(n + 1)] for i in range(n)]
    A.append([1] * (n + 1))
    b = list(x) + [1]
    if exact:
        sol = solve_linear_system(A, b)
        if sol is None:
            raise ValueError("degenerate simplex")
        return tuple(sol)
    arr = np.asarray([[to_float(v) for v in row] for row in A], dtype=float)
    rhs = np.asarray([to_float(v) for v in b], dtype=float)
    return tuple(float(v) for v in np.linalg.solve(arr, rhs))


def point_in_vpolytope(P: VPolytope, x: Vector, mode: str = "auto") -> bool:
    """Is x a convex combination of P's vertices?"""
    verts = P.vertices
    k = len(verts)
    n = P.dim
    if len(x) != n:
        raise ValueError("dimension mismatch")
    if mode == "auto":
        exact = all_rational(x) and all(all_rational(v) for v in verts)
        mode = "exact" if exact else "float"
    A = [[verts[j][i] for j in range(k)] for i in range(n)]
    A.append([1] * k)
    b = list(x) + [1]
    if mode == "exact":
        return feasible_point(A, b) is not None
    res = solve_float_lp(
        [0.0] * k,
        [[to_float(v) for v in row] for row in A],
        [to_float(v) for v in b],
    )
    return res.optimal


# ---------------------------------------------------------------------------
# circumradius


@dataclass(frozen=True)
class CircumradiusResult:
    radius: Scalar
    center: tuple
    certified: bool
    method: str

    def __iter__(self):
        # allow  R, c = circumradius(...)
        return iter((self.radius, self.center))


def _ball_vertices(norm: Norm, n: int):
    if norm.kind == "gauge":
        return norm.body.vertices
    if norm.p == 1:
        return cross_polytope(n).vertices
    raise ValueError("no vertex description for this norm")


def _circumradius_linf(verts):
    """Exact slab LP: min R with |v_ik - c_k| <= R for all i, k."""
    k = len(verts)
    n = len(verts[0])
    # columns: c+ (n), c- (n), R, slacks (2kn)
    ncols = 2 * n + 1 + 2 * k * n
    A, b = [], []
    c = [Fraction(0)] * ncols
    c[2 * n] = Fraction(1)
    srow = 0
    for i in range(k):
        for d in range(n):
            row = [Fraction(0)] * ncols
            row[d] = 1
            row[n + d] = -1
            row[2 * n] = -1
            row[2 * n + 1 + srow] = 1
            A.append(row)
            b.append(verts[i][d])
            srow += 1
            row = [Fraction(0)] * ncols
            row[d] = 1
            row[n + d] = -1
            row[2 * n] = 1
            row[2 * n + 1 + srow] = -1
            A.append(row)
            b.append(verts[i][d])
            srow += 1
    res = solve_exact_lp(c, A, b)
    if not res.optimal:
        raise RuntimeError("circumradius LP failed: %s" % res.status)
    cert = verify_lp_certificate(c, A, b, res)
    center = tuple(res.x[d] - res.x[n + d] for d in range(n))
    return CircumradiusResult(res.value, center, cert, "lp")


def _circumradius_columns(verts, ball_verts):
    """Exact LP over ball-vertex columns: v_i - c = sum_j mu_ij w_j, sum mu_ij = R."""
    k = len(verts)
    n = len(verts[0])
    nb = len(ball_verts)
    # columns: c+ (n), c- (n), R, mu (k*nb)
    ncols = 2 * n + 1 + k * nb
    A, b = [], []
    c = [Fraction(0)] * ncols
    c[2 * n] = Fraction(1)
    for i in range(k):
        base = 2 * n + 1 + i * nb
        for d in range(n):
            row = [Fraction(0)] * ncols
            row[d] = 1
            row[n + d] = -1
            for j in range(nb):
                row[base + j] = ball_verts[j][d]
            A.append(row)
            b.append(verts[i][d])
        row = [Fraction(0)] * ncols
        row[2 * n] = -1
        for j in range(nb):
            row[base + j] = 1
        A.append(row)
        b.append(0)
    res = solve_exact_lp(c, A, b)
    if not res.optimal:
        raise RuntimeError("circumradius LP failed: %s" % res.status)
    cert = verify_lp_certificate(c, A, b, res)
    center = tuple(res.x[d] - res.x[n + d] for d in range(n))
    return CircumradiusResult(res.value, center, cert, "lp")


def _circumradius_smooth(verts, p, tol=1e-9):
    """Minimax by SLSQP from the centroid plus deterministic restarts."""
    from scipy.optimize import minimize

    arr = np.asarray([[to_float(v) for v in vert] for vert in verts], dtype=float)
    k, n = arr.shape
    pf = to_float(p)

    def maxdist(cc):
        return float(np.max(np.sum(np.abs(arr - cc) ** pf, axis=1) ** (1.0 / pf)))

    def run(c0):
        t0 = maxdist(c0) + 1e-3
        z0 = np.concatenate([c0, [t0]])
        cons = [
            {
                "type": "ineq",
                "fun": (lambda z, i=i: z[n] - np.sum(np.abs(arr[i] - z[:n]) ** pf) ** (1.0 / pf)),
            }
            for i in range(k)
        ]
        out = minimize(lambda z: z[n], z0, method="SLSQP", constraints=cons,
                       options={"maxiter": 400, "ftol": 1e-13})
        cc = out.x[:n]
        return cc, maxdist(cc)

    center0 = arr.mean(axis=0)
    spread = max(1e-6, float(np.max(arr) - np.min(arr)))
    rng = np.random.default_rng(0)
    best_c, best_r = run(center0)
    for _ in range(8):
        c0 = center0 + rng.normal(scale=0.25 * spread, size=n)
        cc, r = run(c0)
        if r < best_r:
            best_c, best_r = cc, r
    # one polish pass from the winner
    cc, r = run(best_c)
    if r < best_r:
        best_c, best_r = cc, r
    recheck = maxdist(best_c)
    if not math.isfinite(best_r) or abs(recheck - best_r) > tol * max(1.0, best_r):
        raise RuntimeError("circumradius minimax did not converge to tolerance")
    return CircumradiusResult(float(best_r), tuple(float(v) for v in best_c),
                              False, "minimax")


def circumradius(P: Union[VPolytope, Simplex], norm: Norm) -> CircumradiusResult:
    """Least R such that some ball of radius R contains P.

    Solved exactly by LP for polyhedral norms, and by a convex minimax
    method (tolerance 1e-9 relative) for smooth p.
    """
    verts = P.vertices
    n = len(verts[0])
    if affine_rank(verts) != n:
        raise ValueError("circumradius requires a full-dimensional body")
    exact = all(all_rational(v) for v in verts)
    if norm.is_polyhedral and exact:
        if norm.kind == "p" and norm.p == INF:
            return _circumradius_linf(verts)
        return _circumradius_columns(verts, _ball_vertices(norm, n))
    if norm.is_polyhedral:
        # float data under a polyhedral norm: snapless float LP
        if norm.kind == "p" and norm.p == INF:
            fr = _circumradius_linf([tuple(map(to_float, v)) for v in verts])
            return fr
        return _circumradius_columns(
            [tuple(map(to_float, v)) for v in verts],
            [tuple(map(to_float, w)) for w in _ball_vertices(norm, n)],
        )
    return _circumradius_smooth(verts, norm.p)


# ---------------------------------------------------------------------------
# Minkowski measure of symmetry


def _symmetry_feasible(verts, lam: Fraction) -> bool:
    """Is there x with  v + x in -lam*conv(verts)  for every vertex v?"""
    k = len(verts)
    n = len(verts[0])
    # columns: x+ (n), x- (n), mu (k per vertex)
    ncols = 2 * n + k * k
    A, b = [], []
    for i in range(k):
        base = 2 * n + i * k
        for d in range(n):
            row = [Fraction(0)] * ncols
            row[d] = 1
            row[n + d] = -1
            for j in range(k):
                row[base + j] = lam * verts[j][d]
            A.append(row)
            b.append(-verts[i][d])
        row = [Fraction(0)] * ncols
        for j in range(k):
            row[base + j] = 1
        A.append(row)
        b.append(1)
    return feasible_point(A, b) is not None


def minkowski_symmetry(P: Union[VPolytope, Simplex], tol: float = 1e-9) -> Scalar:
    """Least lambda such that a translate of P fits inside -lambda*P.

    Always lies in [1, n]; equals 1 iff P is centrally symmetric and n
    iff P is a simplex.  Computed by bisection with an exact feasibility
    program inside, then snapped to a nearby small rational when that
    rational is itself feasible.
    """
    verts = tuple(tuple(as_fraction(c) for c in v) for v in P.vertices)
    n = len(verts[0])
    if affine_rank(verts) != n:
        raise ValueError("symmetry measure requires a full-dimensional body")
    if _symmetry_feasible(verts, Fraction(1)):
        return Fraction(1)
    lo, hi = Fraction(1), Fraction(n)
    if not _symmetry_feasible(verts, hi):  # cannot happen for convex bodies
        raise RuntimeError("symmetry bisection lost its upper bracket")
    while hi - lo > Fraction(tol).limit_denominator(10**12) * hi:
        mid = (lo + hi) / 2
        if _symmetry_feasible(verts, mid):
            hi = mid
        else:
            lo = mid
    for den in (1, 2, 3, 4, 6, 8, 12, 16, 24):
        cand = Fraction(round(to_float(hi) * den), den)
        if lo < cand <= hi and _symmetry_feasible(verts, cand):
            return cand
    return to_float(hi)

"""Combining certified ingredients into diameter-partition bounds.

Two transfer laws scale a known bound by a body-approximation factor
gamma, the epsilon min-max optimizer balances a simplex branch against a
ball branch, and the l_p^3 table chains the cube construction with the
sandwich certificates into the piecewise bound

    beta(l_p^3, 8) <= sqrt(342)/20        for p in [1, 2),
    beta(l_p^3, 8) <= 3^(1/p) / 2         for p in [2, inf].

The 221/328 threshold is the exact point where the min-max bound stops
being informative (equals 1) when the simplex constant is 9/16.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .banach_mazur import SandwichCertificate, bm_upper, sandwich_verify
from .coverings import partition_diameter_ratio, verify_covering
from .geometry import Norm
from .numbers import INF, Scalar, all_rational, as_fraction, sqrt_exact, to_float
from .partitions import cube_partition

BALL_THRESHOLD = Fraction(221, 328)  # ball-branch value with eta = 9/16
EPS_STAR_REFERENCE = Fraction(7, 57)

_KINDS = ("verified", "cited", "exact")


# ---------------------------------------------------------------------------
# provenance plumbing


@dataclass(frozen=True)
class ProvenanceStep:
    formula: str
    inputs: tuple  # pairs (name, value)
    value: Scalar
    kind: str  # "verified" | "cited" | "exact"
    certificate: object = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError("unknown provenance kind %r" % (self.kind,))
        if self.kind == "verified" and self.certificate is None:
            raise ValueError("a verified step must carry its certificate")


@dataclass(frozen=True)
class BetaBound:
    space: tuple  # e.g. ("lp", p, 3)
    m: int
    value: Scalar
    provenance: Tuple[ProvenanceStep, ...]

    def __post_init__(self):
        v = to_float(self.value)
        if not 0 < v <= 1:
            raise ValueError("a diameter-partition bound lives in (0, 1]")


@dataclass(frozen=True)
class EpsilonOptResult:
    eps_star: Scalar
    bound: Scalar
    branch_values: tuple  # (simplex-branch value, ball-branch value)

    def __post_init__(self):
        e = to_float(self.eps_star)
        if not 0 < e < Fraction(1, 3):
            raise ValueError("eps_star must lie in (0, 1/3)")
        if self.bound != max(self.branch_values, key=to_float):
            raise ValueError("bound must be the larger branch at eps_star")


# ---------------------------------------------------------------------------
# transfer laws


def homothety_transfer(beta_K: Scalar, gamma: Scalar, chain: Optional[list] = None) -> Scalar:
    """If K <= L <= gamma*K + c then a bound for K scales to gamma times
    the bound for L, clamped at the trivial bound 1."""
    if to_float(gamma) < 1:
        raise ValueError("a homothety factor below 1 is meaningless here")
    if not 0 < to_float(beta_K) <= 1:
        raise ValueError("beta_K must lie in (0, 1]")
    value = _clamped_product(beta_K, gamma)
    if chain is not None:
        chain.append(
            ProvenanceStep(
                formula="min(1, gamma*beta_K)",
                inputs=(("beta_K", beta_K), ("gamma", gamma)),
                value=value,
                kind="exact",
            )
        )
    return value


def stability_transfer(beta_Y: Scalar, gamma: Scalar, chain: Optional[list] = None) -> Scalar:
    """A Banach-Mazur factor gamma between spaces turns a bound for Y
    into min(1, gamma * bound) for X."""
    if to_float(gamma) < 1:
        raise ValueError("a Banach-Mazur factor is never below 1")
    value = _clamped_product(beta_Y, gamma)
    if chain is not None:
        chain.append(
            ProvenanceStep(
                formula="min(1, gamma*beta_Y)",
                inputs=(("beta_Y", beta_Y), ("gamma", gamma)),
                value=value,
                kind="exact",
            )
        )
    return value


def _clamped_product(beta: Scalar, gamma: Scalar) -> Scalar:
    if all_rational([beta, gamma]):
        prod = as_fraction(beta) * as_fraction(gamma)
        return min(Fraction(1), prod)
    prod = to_float(beta) * to_float(gamma)
    return min(1.0, prod)


# ---------------------------------------------------------------------------
# the epsilon min-max


def minmax_branches(eta: Scalar, beta_ball: Scalar, eps: Scalar) -> tuple:
    """The two competing values at a given eps in (0, 1/3):
    (1 + 4eps/(1-3eps)) * eta  versus  2(3-eps)/(4-eps) * beta_ball."""
    if all_rational([eta, beta_ball, eps]):
        e = as_fraction(eps)
        b1 = (1 + 4 * e / (1 - 3 * e)) * as_fraction(eta)
        b2 = 2 * (3 - e) / (4 - e) * as_fraction(beta_ball)
        return b1, b2
    e = to_float(eps)
    b1 = (1 + 4 * e / (1 - 3 * e)) * to_float(eta)
    b2 = 2 * (3 - e) / (4 - e) * to_float(beta_ball)
    return b1, b2


_EDGE = 1e-12  # open-interval stand-off; the endpoints are never evaluated


def minmax_epsilon(eta: Scalar, beta_ball: Scalar) -> EpsilonOptResult:
    """Minimize max(simplex branch, ball branch) over eps in (0, 1/3).

    The simplex branch increases and the ball branch decreases, so the
    optimum sits at their crossing when one exists inside the interval;
    equating the branches reduces to the quadratic

        (eta + 6b) eps^2 - (3 eta + 20 b) eps + (6b - 4 eta) = 0,

    solved exactly when the discriminant is a perfect square.  When the
    simplex branch already dominates at 0+ the infimum is the left
    boundary limit and the result is reported just inside the interval.
    A golden-section sweep cross-checks the closed form to 1e-10.
    """
    if not 0 < to_float(eta) <= 1:
        raise ValueError("eta must lie in (0, 1]")
    if not 0 < to_float(beta_ball) <= 1:
        raise ValueError("beta_ball must lie in (0, 1]")
    exact = all_rational([eta, beta_ball])
    crossing_inside = (
        6 * as_fraction(beta_ball) > 4 * as_fraction(eta)
        if exact
        else 6 * to_float(beta_ball) > 4 * to_float(eta)
    )
    if crossing_inside:
        eps = _crossing_eps(eta, beta_ball, exact)
    else:
        eps = Fraction(1, 10**12) if exact else _EDGE
    b1, b2 = minmax_branches(eta, beta_ball, eps)
    bound = max(b1, b2, key=to_float)

    golden = _golden_minmax(to_float(eta), to_float(beta_ball))
    if abs(golden - to_float(bound)) > 1e-10:
        raise AssertionError(
            "closed form %.17g disagrees with golden section %.17g"
            % (to_float(bound), golden)
        )
    return EpsilonOptResult(eps_star=eps, bound=bound, branch_values=(b1, b2))


def _crossing_eps(eta, beta_ball, exact: bool):
    if exact:
        h, b = as_fraction(eta), as_fraction(beta_ball)
        a = h + 6 * b
        mid = 3 * h + 20 * b
        c = 6 * b - 4 * h
        disc = mid * mid - 4 * a * c
        root = sqrt_exact(disc)
        if root is not None:
            eps = (mid - root) / (2 * a)
            if 0 < eps < Fraction(1, 3):
                return eps
        h, b = to_float(eta), to_float(beta_ball)
    else:
        h, b = to_float(eta), to_float(beta_ball)
    a = h + 6.0 * b
    mid = 3.0 * h + 20.0 * b
    c = 6.0 * b - 4.0 * h
    disc = mid * mid - 4.0 * a * c
    eps = (mid - math.sqrt(disc)) / (2.0 * a)
    return min(max(eps, _EDGE), 1.0 / 3.0 - _EDGE)


def _golden_minmax(eta: float, beta_ball: float) -> float:
    def g(e):
        b1, b2 = minmax_branches(eta, beta_ball, e)
        return max(b1, b2)

    a, b = _EDGE, 1.0 / 3.0 - _EDGE
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    gc, gd = g(c), g(d)
    while b - a > 1e-12:
        if gc < gd:
            b, d, gd = d, c, gc
            c = b - invphi * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + invphi * (b - a)
            gd = g(d)
    return g((a + b) / 2.0)


# ---------------------------------------------------------------------------
# the 221/328 identity


def corollary_threshold_check(ball_beta: Scalar = BALL_THRESHOLD) -> bool:
    """Exact rational check of the threshold identity at eps = 7/57.

    Verifies 2*(3 - 7/57)/(4 - 7/57) * ball_beta == 1, that the rewrite
    2 - 2/(4 - eps) agrees with the factor, and that the min-max bound
    at (9/16, ball_beta) equals 1 exactly with eps* = 7/57.
    """
    eps = EPS_STAR_REFERENCE
    b = as_fraction(ball_beta)
    factor = 2 * (3 - eps) / (4 - eps)
    if factor != Fraction(328, 221):
        return False
    if factor != 2 - 2 / (4 - eps):
        return False
    if factor * b != 1:
        return False
    res = minmax_epsilon(Fraction(9, 16), b)
    return res.bound == 1 and res.eps_star == eps


# ---------------------------------------------------------------------------
# the l_p^3 table


def _cube_halving_step() -> ProvenanceStep:
    cert = cube_partition(3)
    report = verify_covering(cert.parent, cert.pieces, mode="exact_grid", N=64)
    if not report.covered:
        raise AssertionError("the half-cube pieces failed to cover the cube")
    ratio = partition_diameter_ratio(cert, Norm.lp(INF))
    if ratio != Fraction(1, 2):
        raise AssertionError("the half-cube diameter ratio is not 1/2")
    return ProvenanceStep(
        formula="beta(l_inf^3, 8) = 1/2 by the 2^3 half-cube partition",
        inputs=(("n", 3), ("m", 8)),
        value=ratio,
        kind="verified",
        certificate=cert.with_coverage(report),
    )


def lp_beta8_table(p_values: Sequence[Scalar]) -> List[BetaBound]:
    """The piecewise bound on beta(l_p^3, 8) for each requested p.

    p in [1,2) gets the uniform parallelepiped value sqrt(342)/20; p in
    [2,inf] gets 3^(1/p)/2.  Every entry chains the verified half-cube
    construction with a verified sandwich certificate and the transfer
    law.
    """
    cap = math.sqrt(342) / 10.0
    base = _cube_halving_step()
    out = []
    for p in p_values:
        pf = to_float(p)
        if pf < 1:
            raise ValueError("p must be at least 1")
        chain = [base]
        report = bm_upper(p)
        if not report.certificate.verified:
            raise AssertionError("sandwich certificate failed at p=%r" % (p,))
        chain.append(
            ProvenanceStep(
                formula="d_BM(l_p^3, l_inf^3) <= gamma via sandwich",
                inputs=(("p", p), ("method", report.method)),
                value=report.gamma_bound,
                kind="verified",
                certificate=report.certificate,
            )
        )
        if pf < 2:
            # the parallelepiped factor is uniform on [1,2): cap at p=2
            if to_float(report.gamma_bound) > cap + 1e-9:
                raise AssertionError("parallelepiped factor exceeded its cap")
            chain.append(
                ProvenanceStep(
                    formula="gamma(p) <= sqrt(342)/10 on [1,2)",
                    inputs=(("gamma", report.gamma_bound),),
                    value=cap,
                    kind="exact",
                )
            )
            gamma = cap
        else:
            gamma = report.gamma_bound
        value = stability_transfer(base.value, gamma, chain)
        out.append(
            BetaBound(space=("lp", p, 3), m=8, value=value, provenance=tuple(chain))
        )
    return out

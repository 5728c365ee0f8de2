#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Metric Geometry of Cycles

Distances and lengths in the three planes:
- the signed squared distance u^2 - sigma v^2 of a vector
- the extremal diameter of cycles through two points
- lengths read off from cycles centred (or focused) at a point
- perpendicularity as a stationary length
- the conformal ratio of lengths under Moebius maps

Squared lengths may be negative for sigma = +1. They are kept signed,
and lengths are signed square roots sign(x) sqrt(|x|).
"""

import logging
import math
from typing import Callable, Optional, Tuple, Union

from scipy.optimize import minimize_scalar

from cycle_space import Cycle, FsccParams, Point, default_params
from errors import NoExtremum, NoSuchCycle, NonSmooth, NullLength
from hypercomplex import GroupElement, HyperNumber, Sigma, as_sigma, moebius

logger = logging.getLogger('CycleKit.Metric')

FD_STEP = 1e-4
FD_CONFIRM_STEP = 1e-5
PERPENDICULAR_TOL = 1e-6
CONFORMAL_STEP = 1e-3
NULL_LENGTH_TOL = 1e-9

Vector = Tuple[float, float]


class LengthKind:
    """
    Which length to measure between A and B.

    - 'distance': the signed distance of the vector AB in the sigma-plane
    - 'from_centre': radius of the cycle with centre_kind-centre A through B
    - 'from_focus': radius of the cycle with focus A through B
    """

    VARIANTS = ('distance', 'from_centre', 'from_focus')

    __slots__ = ('variant', 'sigma', 'centre_kind')

    def __init__(self, variant: str, sigma: Union[int, Sigma] = Sigma.ELLIPTIC,
                 centre_kind: Optional[Union[int, Sigma]] = None):
        if variant not in self.VARIANTS:
            raise ValueError(f"Unknown length kind '{variant}'")
        self.variant = variant
        self.sigma = as_sigma(sigma)
        self.centre_kind = as_sigma(centre_kind) if centre_kind is not None else self.sigma

    @classmethod
    def distance(cls, sigma: Union[int, Sigma] = Sigma.ELLIPTIC) -> 'LengthKind':
        return cls('distance', sigma)

    @classmethod
    def from_centre(cls, sigma: Union[int, Sigma] = Sigma.ELLIPTIC,
                    centre_kind: Optional[Union[int, Sigma]] = None) -> 'LengthKind':
        return cls('from_centre', sigma, centre_kind)

    @classmethod
    def from_focus(cls, sigma: Union[int, Sigma] = Sigma.ELLIPTIC) -> 'LengthKind':
        return cls('from_focus', sigma)

    def __repr__(self):
        return (f"LengthKind({self.variant!r}, sigma={int(self.sigma)}, "
                f"centre_kind={int(self.centre_kind)})")


def signed_sqrt(x: float) -> float:
    return math.copysign(math.sqrt(abs(x)), x)


def _norm(p: Point, sigma: int) -> float:
    return p[0] * p[0] - sigma * p[1] * p[1]


def distance_sq(p: Point, q: Point, sigma: Union[int, Sigma]) -> float:
    """(du)^2 - sigma (dv)^2 for the vector from p to q."""
    du, dv = q[0] - p[0], q[1] - p[1]
    return du * du - as_sigma(sigma) * dv * dv


def _pencil(p: Point, q: Point, sigma: int) -> Callable[[float], Tuple[float, float, float]]:
    """(l, n, m) of the cycle with k = 1 through p and q, as a function of one free parameter."""
    du, dv = p[0] - q[0], p[1] - q[1]
    gap = _norm(p, sigma) - _norm(q, sigma)
    norm_p = _norm(p, sigma)
    if abs(du) >= abs(dv):
        def by_n(n: float):
            l = (gap - 2.0 * n * dv) / (2.0 * du)
            return l, n, 2.0 * l * p[0] + 2.0 * n * p[1] - norm_p
        return by_n

    def by_l(l: float):
        n = (gap - 2.0 * l * du) / (2.0 * dv)
        return l, n, 2.0 * l * p[0] + 2.0 * n * p[1] - norm_p
    return by_l


def extremal_distance_sq(p: Point, q: Point, sigma: Union[int, Sigma],
                         sigma_breve: Union[int, Sigma]) -> float:
    """
    Extremum of the squared diameter 4 radius_sq over all cycles through
    p and q in the sigma-drawing, radius taken with sigma_breve and s = 1.

    The pair is first translated vertically to sit symmetrically about the
    real axis: radii of parabolic cycles are measured along v = 0, so the
    diameter depends on height, while the distance belongs to the vector
    q - p. For sigma = sigma_breve = +-1 the translation changes nothing.

    The squared diameter is quadratic along the pencil; a golden-section
    search finds its minimum (or its maximum when it opens downward). A
    constant diameter (a horizontal pair in the parabolic plane) is
    returned as it is.

    Raises:
        NoExtremum: the squared diameter is affine and not constant along the pencil
    """
    if p == q:
        return 0.0
    sigma, sigma_breve = as_sigma(sigma), as_sigma(sigma_breve)
    mid = 0.5 * (p[1] + q[1])
    member = _pencil((p[0], p[1] - mid), (q[0], q[1] - mid), sigma)

    def diameter_sq(t: float) -> float:
        l, n, m = member(t)
        return 4.0 * (l * l - sigma_breve * n * n - m)

    lower, centre, upper = diameter_sq(-1.0), diameter_sq(0.0), diameter_sq(1.0)
    scale = max(1.0, abs(lower), abs(centre), abs(upper))
    curvature = 0.5 * (upper - 2.0 * centre + lower)
    if abs(curvature) <= 1e-12 * scale:
        if abs(upper - lower) <= 1e-12 * scale:
            logger.debug(f"Diameter is constant {centre:.6g} along the pencil through {p} and {q}")
            return float(centre)
        raise NoExtremum(f"Diameter is affine along the pencil through {p} and {q}")

    direction = 1.0 if curvature > 0 else -1.0
    result = minimize_scalar(lambda t: direction * diameter_sq(t), bracket=(-1.0, 1.0),
                             method='golden', tol=1e-12)
    logger.debug(f"Extremal cycle through {p}, {q}: parameter {result.x:.6g}, "
                 f"{'minimum' if direction > 0 else 'maximum'} {diameter_sq(result.x):.6g}")
    return float(diameter_sq(result.x))


def centre_cycle(A: Point, B: Point, kind: LengthKind, params: Optional[FsccParams] = None) -> Cycle:
    """
    The cycle with its centre_kind-centre at A passing through B.

    Raises:
        NoSuchCycle: a parabolic centre off the real axis
    """
    a1, a2 = A
    tau = kind.centre_kind
    if tau == Sigma.PARABOLIC:
        if a2 != 0.0:
            raise NoSuchCycle(f"No cycle has parabolic centre {A} off the real axis")
        n = 0.0
    else:
        n = -tau * a2
    m = 2.0 * a1 * B[0] + 2.0 * n * B[1] - _norm(B, kind.sigma)
    return Cycle(1.0, a1, n, m)


def focal_cycle(A: Point, B: Point, kind: LengthKind, params: Optional[FsccParams] = None) -> Cycle:
    """
    The cycle with focus A passing through B.

    When two cycles qualify the one of smaller |radius_sq| is returned.

    Raises:
        NoSuchCycle: no real cycle with n != 0 satisfies both conditions
    """
    params = default_params(params)
    a1, a2 = A
    ub, vb = B
    quad = params.sigma_breve * params.s ** 2
    lin = 2.0 * (vb + a2)
    const = 2.0 * a1 * ub - a1 * a1 - _norm(B, kind.sigma)

    if quad == 0:
        if lin == 0.0:
            raise NoSuchCycle(f"No cycle with focus {A} passes through {B}")
        candidates = [-const / lin]
    else:
        disc = lin * lin - 4.0 * quad * const
        if disc < 0.0:
            raise NoSuchCycle(f"No real cycle with focus {A} passes through {B}")
        root = math.sqrt(disc)
        candidates = [(-lin - root) / (2.0 * quad), (-lin + root) / (2.0 * quad)]

    candidates = [n for n in candidates if n != 0.0]
    if not candidates:
        raise NoSuchCycle(f"The cycle with focus {A} through {B} has n = 0")
    n = min(candidates, key=lambda x: (abs(x * a2), abs(x)))
    return Cycle(1.0, a1, n, a1 * a1 - quad * n * n - 2.0 * n * a2)


def length_sq(A: Point, B: Point, kind: LengthKind, params: Optional[FsccParams] = None) -> float:
    """Signed square of length(A, B, kind, params)."""
    params = default_params(params)
    if A == B:
        return 0.0
    if kind.variant == 'distance':
        return distance_sq(A, B, kind.sigma)
    if kind.variant == 'from_centre':
        c = centre_cycle(A, B, kind, params)
    else:
        c = focal_cycle(A, B, kind, params)
    return c.l * c.l - params.sigma_breve * params.s ** 2 * c.n * c.n - c.m * c.k


def length(A: Point, B: Point, kind: LengthKind, params: Optional[FsccParams] = None) -> float:
    """
    Signed length from A to B.

    Raises:
        NoSuchCycle: the defining cycle does not exist
    """
    return signed_sqrt(length_sq(A, B, kind, params))


def is_perpendicular(AB: Tuple[Point, Point], CD: Vector, kind: LengthKind,
                     params: Optional[FsccParams] = None,
                     step: float = FD_STEP, confirm_step: float = FD_CONFIRM_STEP,
                     tol: float = PERPENDICULAR_TOL) -> bool:
    """
    AB is perpendicular to the direction CD when the squared length from A
    to B + eps CD is stationary at eps = 0.

    Raises:
        NonSmooth: the two finite-difference scales disagree by more than 10x
        ValueError: CD is the zero vector
    """
    A, B = AB
    norm = math.hypot(CD[0], CD[1])
    if norm == 0.0:
        raise ValueError("CD must be a non-zero vector")
    dx, dy = CD[0] / norm, CD[1] / norm

    def f(eps: float) -> float:
        return length_sq(A, (B[0] + eps * dx, B[1] + eps * dy), kind, params)

    coarse = (f(step) - f(-step)) / (2.0 * step)
    fine = (f(confirm_step) - f(-confirm_step)) / (2.0 * confirm_step)
    big, small = max(abs(coarse), abs(fine)), min(abs(coarse), abs(fine))
    if big > tol and (small * 10.0 < big or coarse * fine < 0):
        raise NonSmooth(f"Derivative estimates {coarse:.3e} and {fine:.3e} disagree")
    return big < tol


def conformal_ratio(g: GroupElement, y: Point, yp: Vector, t: float, kind: LengthKind,
                    params: Optional[FsccParams] = None) -> float:
    """
    l(g y, g(y + t y')) / l(y, y + t y').

    Raises:
        NullLength: l(y, y + t y') vanishes, e.g. y' on the light cone for sigma = 1
    """
    sigma = kind.sigma
    tip = (y[0] + t * yp[0], y[1] + t * yp[1])
    gy = moebius(g, HyperNumber(y[0], y[1], sigma)).as_point()
    gtip = moebius(g, HyperNumber(tip[0], tip[1], sigma)).as_point()
    base = length(y, tip, kind, params)
    if abs(base) <= NULL_LENGTH_TOL * abs(t) * math.hypot(yp[0], yp[1]):
        raise NullLength(f"Length from {y} along {yp} vanishes; the ratio is undefined")
    return length(gy, gtip, kind, params) / base


def conformal_limit(g: GroupElement, y: Point, yp: Vector, kind: LengthKind,
                    params: Optional[FsccParams] = None, t: float = CONFORMAL_STEP) -> float:
    """t -> 0 limit of conformal_ratio by Richardson extrapolation over t, t/2, t/4."""
    r0, r1, r2 = (conformal_ratio(g, y, yp, h, kind, params) for h in (t, t / 2.0, t / 4.0))
    first = 2.0 * r1 - r0
    second = 2.0 * r2 - r1
    return (4.0 * second - first) / 3.0

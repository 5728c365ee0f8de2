#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Cycle Space

Circles, parabolas, hyperbolas and their straight-line limits as points
(k, l, n, m) of projective three-space:
- Cycle, the projective quadruple
- FsccMatrix, its 2x2 matrix over the cycle-space numbers with unit i'
- Moebius transport by matrix similarity
- centres, foci, determinant and radius
- zero-radius cycles, normalization and incidence sampling

The drawing of a cycle in the sigma-plane is the curve

    k(u^2 - sigma v^2) - 2lu - 2nv + m = 0.
"""

import logging
import math
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from errors import DegenerateCycle, DomainError, MalformedMatrix, UndefinedFocus, ZeroCycle
from hypercomplex import GroupElement, HyperNumber, Sigma, as_sigma

logger = logging.getLogger('CycleKit.Cycles')

PROJECTIVE_TOL = 1e-9

Point = Tuple[float, float]


class FsccParams:
    """Cycle-space unit i' with i'^2 = sigma_breve, and the sign parameter s."""

    __slots__ = ('sigma_breve', 's')

    def __init__(self, sigma_breve: Union[int, Sigma] = Sigma.ELLIPTIC, s: float = 1.0):
        if s == 0:
            raise DomainError("The parameter s must be non-zero")
        object.__setattr__(self, 'sigma_breve', as_sigma(sigma_breve))
        object.__setattr__(self, 's', float(s))

    def __setattr__(self, name, value):
        raise AttributeError("FsccParams is immutable")

    def with_s(self, s: float) -> 'FsccParams':
        return FsccParams(self.sigma_breve, s)

    def __eq__(self, other):
        if not isinstance(other, FsccParams):
            return NotImplemented
        return (self.sigma_breve, self.s) == (other.sigma_breve, other.s)

    def __hash__(self):
        return hash((int(self.sigma_breve), self.s))

    def __repr__(self):
        return f"FsccParams(sigma_breve={int(self.sigma_breve)}, s={self.s!r})"


class Cycle:
    """Projective quadruple (k, l, n, m); never all zero."""

    __slots__ = ('k', 'l', 'n', 'm')

    def __init__(self, k: float, l: float, n: float, m: float):
        values = [float(k), float(l), float(n), float(m)]
        if not all(math.isfinite(x) for x in values):
            raise DomainError(f"Cycle components must be finite, got {values}")
        if all(x == 0.0 for x in values):
            raise ZeroCycle("The quadruple (0, 0, 0, 0) is not a cycle")
        for name, value in zip(self.__slots__, values):
            object.__setattr__(self, name, value)

    def __setattr__(self, name, value):
        raise AttributeError("Cycle is immutable")

    @classmethod
    def from_centre(cls, u: float, v: float, radius_sq: float,
                    sigma_breve: Union[int, Sigma] = Sigma.ELLIPTIC) -> 'Cycle':
        """Cycle with sigma_breve-centre (u, v) and the given radius_sq (s = 1)."""
        sb = as_sigma(sigma_breve)
        if sb == Sigma.PARABOLIC:
            raise DomainError("A parabolic centre does not determine n")
        n = -sb * v
        return cls(1.0, u, n, u * u - sb * n * n - radius_sq)

    @classmethod
    def real_line(cls) -> 'Cycle':
        return cls(0.0, 0.0, 1.0, 0.0)

    @classmethod
    def from_array(cls, values: Sequence[float]) -> 'Cycle':
        k, l, n, m = (float(x) for x in values)
        return cls(k, l, n, m)

    def as_array(self) -> np.ndarray:
        return np.array([self.k, self.l, self.n, self.m])

    def __iter__(self):
        return iter((self.k, self.l, self.n, self.m))

    def is_line(self, tol: float = PROJECTIVE_TOL) -> bool:
        return abs(self.k) <= tol * float(np.abs(self.as_array()).max())

    def to_dict(self) -> dict:
        return {'k': self.k, 'l': self.l, 'n': self.n, 'm': self.m}

    @classmethod
    def from_dict(cls, data: dict) -> 'Cycle':
        return cls(data['k'], data['l'], data['n'], data['m'])

    def __eq__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        return tuple(self) == tuple(other)

    def __hash__(self):
        return hash(tuple(self))

    def __repr__(self):
        return f"Cycle(k={self.k!r}, l={self.l!r}, n={self.n!r}, m={self.m!r})"


class FsccMatrix:
    """
    Element P + i'Q of the 2x2 matrices over the cycle-space numbers.

    P and Q are real 2x2 arrays. A cycle (k, l, n, m) has

        P = [[l, -m], [k, -l]],   Q = s n I,

    so its entries read (l + i'sn, -m; k, -l + i'sn).
    """

    __slots__ = ('real', 'unit', 'params')

    def __init__(self, real, unit, params: FsccParams):
        self.real = np.asarray(real, dtype=float).reshape(2, 2)
        self.unit = np.asarray(unit, dtype=float).reshape(2, 2)
        self.params = params

    def __matmul__(self, other: 'FsccMatrix') -> 'FsccMatrix':
        if self.params.sigma_breve != other.params.sigma_breve:
            raise DomainError("Cannot multiply matrices over different cycle-space units")
        sb = self.params.sigma_breve
        return FsccMatrix(self.real @ other.real + sb * (self.unit @ other.unit),
                          self.real @ other.unit + self.unit @ other.real,
                          self.params)

    def conjugate(self) -> 'FsccMatrix':
        """Flip the sign of the i' part."""
        return FsccMatrix(self.real, -self.unit, self.params)

    def scaled(self, factor: float) -> 'FsccMatrix':
        return FsccMatrix(factor * self.real, factor * self.unit, self.params)

    def trace(self) -> HyperNumber:
        return HyperNumber(np.trace(self.real), np.trace(self.unit), self.params.sigma_breve)

    def entry(self, i: int, j: int) -> HyperNumber:
        return HyperNumber(self.real[i, j], self.unit[i, j], self.params.sigma_breve)

    def entries(self) -> List[List[HyperNumber]]:
        return [[self.entry(i, j) for j in range(2)] for i in range(2)]

    def determinant(self) -> HyperNumber:
        e = self.entries()
        return e[0][0] * e[1][1] - e[0][1] * e[1][0]

    def is_close(self, other: 'FsccMatrix', tol: float = 1e-12) -> bool:
        return (np.allclose(self.real, other.real, rtol=0.0, atol=tol)
                and np.allclose(self.unit, other.unit, rtol=0.0, atol=tol))

    def __repr__(self):
        return f"FsccMatrix(real={self.real.tolist()}, unit={self.unit.tolist()}, params={self.params!r})"


def default_params(params: Optional[FsccParams]) -> FsccParams:
    return params if params is not None else FsccParams()


def incidence(c: Cycle, p: Point, sigma: Union[int, Sigma]) -> float:
    """Left-hand side k(u^2 - sigma v^2) - 2lu - 2nv + m at p = (u, v)."""
    u, v = p
    sigma = as_sigma(sigma)
    return c.k * (u * u - sigma * v * v) - 2.0 * c.l * u - 2.0 * c.n * v + c.m


def to_matrix(c: Cycle, params: Optional[FsccParams] = None) -> FsccMatrix:
    params = default_params(params)
    real = np.array([[c.l, -c.m], [c.k, -c.l]])
    unit = params.s * c.n * np.eye(2)
    return FsccMatrix(real, unit, params)


def from_matrix(matrix: FsccMatrix, tol: float = PROJECTIVE_TOL) -> Cycle:
    """
    Read (k, l, n, m) back from a matrix of the cycle shape.

    Raises:
        MalformedMatrix: the real part is not traceless or the i' part is
        not a multiple of the identity
    """
    real, unit = matrix.real, matrix.unit
    scale = max(1.0, float(np.abs(real).max()), float(np.abs(unit).max()))
    if abs(real[0, 0] + real[1, 1]) > tol * scale:
        raise MalformedMatrix(f"Diagonal real parts {real[0, 0]} and {real[1, 1]} are not opposite")
    if (abs(unit[0, 1]) > tol * scale or abs(unit[1, 0]) > tol * scale
            or abs(unit[0, 0] - unit[1, 1]) > tol * scale):
        raise MalformedMatrix(f"The i' part {unit.tolist()} is not a multiple of the identity")
    l = 0.5 * (real[0, 0] - real[1, 1])
    n = 0.5 * (unit[0, 0] + unit[1, 1]) / matrix.params.s
    return Cycle(real[1, 0], l, n, -real[0, 1])


def transform(c: Cycle, g: GroupElement, params: Optional[FsccParams] = None) -> Cycle:
    """
    Moebius image of a cycle: the matrix similarity g C g^-1.

    The i' part is a multiple of the identity and so commutes with g;
    the result does not depend on params, which is accepted for symmetry
    with the other operations.
    """
    ga = g.as_array()
    real = ga @ np.array([[c.l, -c.m], [c.k, -c.l]]) @ g.inverse().as_array()
    return Cycle(real[1, 0], 0.5 * (real[0, 0] - real[1, 1]), c.n, -real[0, 1])


def centre(c: Cycle, kind: Union[int, Sigma]) -> Point:
    """
    The (l/k, -sigma n/k) centre of the given kind.

    Raises:
        DegenerateCycle: for straight lines (k = 0)
    """
    if c.k == 0.0:
        raise DegenerateCycle(f"{c!r} is a straight line")
    kind = as_sigma(kind)
    return (c.l / c.k, -kind * c.n / c.k)


def determinant(c: Cycle, params: Optional[FsccParams] = None) -> float:
    """sigma_breve s^2 n^2 - l^2 + mk."""
    params = default_params(params)
    return params.sigma_breve * params.s ** 2 * c.n ** 2 - c.l ** 2 + c.m * c.k


def radius_sq(c: Cycle, params: Optional[FsccParams] = None) -> float:
    """(l^2 - sigma_breve s^2 n^2 - mk)/k^2, so the unit circle has radius_sq 1."""
    if c.k == 0.0:
        raise DegenerateCycle(f"{c!r} is a straight line and has no radius")
    return -determinant(c, params) / (c.k * c.k)


def focus(c: Cycle, params: Optional[FsccParams] = None) -> Point:
    """
    The (l/k, -det C/(2nk)) focus; unchanged when s changes sign.

    Raises:
        DegenerateCycle: k = 0
        UndefinedFocus: n = 0
    """
    if c.k == 0.0:
        raise DegenerateCycle(f"{c!r} is a straight line and has no focus")
    if c.n == 0.0:
        raise UndefinedFocus(f"{c!r} has n = 0")
    return (c.l / c.k, -determinant(c, params) / (2.0 * c.n * c.k))


def focal_length(c: Cycle) -> float:
    if c.k == 0.0:
        raise DegenerateCycle(f"{c!r} is a straight line")
    return c.n / (2.0 * c.k)


def zero_radius_at(p: Point, params: Optional[FsccParams] = None) -> Cycle:
    """The cycle (1, u, v, u^2 - sigma_breve s^2 v^2), of determinant zero."""
    params = default_params(params)
    u, v = p
    return Cycle(1.0, u, v, u * u - params.sigma_breve * params.s ** 2 * v * v)


def normalize(c: Cycle, tol: float = PROJECTIVE_TOL) -> Cycle:
    """
    Scale to k = 1, or for (near) lines to a leading 1 in the first
    non-zero of l, n, m.
    """
    values = c.as_array()
    size = float(np.abs(values).max())
    if size == 0.0:
        raise ZeroCycle("The quadruple (0, 0, 0, 0) is not a cycle")
    if abs(c.k) > tol * size:
        pivot = c.k
    else:
        pivot = next(x for x in (c.l, c.n, c.m) if abs(x) > tol * size)
        values[0] = 0.0
    return Cycle.from_array(values / pivot)


def same_cycle(c1: Cycle, c2: Cycle, tol: float = PROJECTIVE_TOL) -> bool:
    """Equality up to a common non-zero factor."""
    a, b = c1.as_array(), c2.as_array()
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    if np.dot(a, b) < 0:
        b = -b
    return bool(np.abs(a - b).max() <= tol)


def is_unit_determinant(c: Cycle, params: Optional[FsccParams] = None, tol: float = 1e-12) -> bool:
    return abs(determinant(c, params) - 1.0) <= tol


def roots(c: Cycle, tol: float = PROJECTIVE_TOL) -> List[float]:
    """Real u with ku^2 - 2lu + m = 0, i.e. intersections with v = 0, sorted."""
    size = float(np.abs(c.as_array()).max())
    if abs(c.k) <= tol * size:
        if abs(c.l) <= tol * size:
            return []
        return [c.m / (2.0 * c.l)]
    disc = c.l * c.l - c.k * c.m
    if disc < -tol * size * size:
        return []
    root = math.sqrt(max(disc, 0.0))
    return sorted([(c.l - root) / c.k, (c.l + root) / c.k])


def points_on(c: Cycle, sigma: Union[int, Sigma], params: Sequence[float],
              tol: float = PROJECTIVE_TOL) -> List[Point]:
    """
    Points of the sigma-drawing of c.

    Each parameter t is used as the abscissa u and gives up to two points;
    for vertical lines (k = n = 0) it is used as the ordinate v instead.
    """
    sigma = as_sigma(sigma)
    size = float(np.abs(c.as_array()).max())
    a = -c.k * sigma
    points: List[Point] = []
    if abs(a) <= tol * size and abs(c.n) <= tol * size:
        # vertical lines: ku^2 - 2lu + m = 0 has no v dependence
        for u in roots(c, tol):
            points.extend((u, t) for t in params)
        return points

    for u in params:
        const = c.k * u * u - 2.0 * c.l * u + c.m
        if abs(a) <= tol * size:
            points.append((u, const / (2.0 * c.n)))
            continue
        disc = c.n * c.n - a * const
        if disc < 0.0:
            continue
        root = math.sqrt(disc)
        for v in ((c.n - root) / a, (c.n + root) / a):
            points.append((u, v))
    return points


def tangent_direction(c: Cycle, p: Point, sigma: Union[int, Sigma]) -> Point:
    """Tangent vector (k sigma v + n, ku - l) of the sigma-drawing at p."""
    u, v = p
    sigma = as_sigma(sigma)
    return (c.k * sigma * v + c.n, c.k * u - c.l)


def k_orbit_cycle(t: float, sigma: Union[int, Sigma]) -> Cycle:
    """
    The cycle drawn by the K-orbit of (0, t) in the sigma-plane.

    Every such cycle has l = 0 and k = m, so the three families lie on
    one plane of the cycle space.
    """
    if t == 0.0:
        raise DomainError("K-orbits are taken through (0, t) with t != 0")
    sigma = as_sigma(sigma)
    return Cycle(2.0 * t, 0.0, 1.0 - sigma * t * t, 2.0 * t)

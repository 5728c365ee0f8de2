#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Hypercomplex Numbers and SL(2,R)

Arithmetic of elliptic, parabolic and hyperbolic numbers x + iy with
i^2 = sigma in {-1, 0, +1}, and the action of SL(2,R) on them:
- HyperNumber with the usual operators
- GroupElement with composition, inverse and the A, N, K subgroups
- Moebius maps, the Iwasawa decomposition and K-orbits
- a conic classifier for sampled orbits
- the Cayley transform between the upper half-plane and the unit disk
"""

import logging
import math
from enum import IntEnum
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from errors import DomainError, ZeroDivisor

logger = logging.getLogger('CycleKit.Hypercomplex')

ZERO_DIVISOR_TOL = 1e-12
DET_TOL = 1e-12


class Sigma(IntEnum):
    """Square of the imaginary unit."""
    ELLIPTIC = -1
    PARABOLIC = 0
    HYPERBOLIC = 1

    @property
    def kind(self) -> str:
        return self.name.lower()


def as_sigma(value: Union[int, str, Sigma]) -> Sigma:
    """Coerce -1/0/1 or 'elliptic'/'parabolic'/'hyperbolic' (or e/p/h) to Sigma."""
    if isinstance(value, Sigma):
        return value
    if isinstance(value, str):
        key = value.strip().lower()
        for member in Sigma:
            if member.kind == key or member.kind[0] == key:
                return member
        try:
            value = int(key)
        except ValueError:
            raise DomainError(f"Unknown sigma '{value}'")
    try:
        return Sigma(int(value))
    except ValueError:
        raise DomainError(f"Sigma must be -1, 0 or 1, got {value}")


class HyperNumber:
    """x + iy in the plane selected by sigma."""

    __slots__ = ('re', 'im', 'sigma')

    def __init__(self, re: float, im: float = 0.0, sigma: Union[int, Sigma] = Sigma.ELLIPTIC):
        object.__setattr__(self, 're', float(re))
        object.__setattr__(self, 'im', float(im))
        object.__setattr__(self, 'sigma', as_sigma(sigma))

    def __setattr__(self, name, value):
        raise AttributeError("HyperNumber is immutable")

    @classmethod
    def unit(cls, sigma: Union[int, Sigma]) -> 'HyperNumber':
        return cls(0.0, 1.0, sigma)

    def _coerce(self, other) -> 'HyperNumber':
        if isinstance(other, HyperNumber):
            if other.sigma != self.sigma:
                raise DomainError(f"Cannot combine sigma={int(self.sigma)} with sigma={int(other.sigma)}")
            return other
        if isinstance(other, (int, float, np.floating, np.integer)):
            return HyperNumber(other, 0.0, self.sigma)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return HyperNumber(self.re + other.re, self.im + other.im, self.sigma)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return HyperNumber(self.re - other.re, self.im - other.im, self.sigma)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return HyperNumber(-self.re, -self.im, self.sigma)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, inv(other))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(other, inv(self))

    def __eq__(self, other):
        if not isinstance(other, HyperNumber):
            return NotImplemented
        return (self.re, self.im, self.sigma) == (other.re, other.im, other.sigma)

    def __hash__(self):
        return hash((self.re, self.im, int(self.sigma)))

    def __repr__(self):
        return f"HyperNumber({self.re!r}, {self.im!r}, sigma={int(self.sigma)})"

    def conjugate(self) -> 'HyperNumber':
        return HyperNumber(self.re, -self.im, self.sigma)

    def modulus_sq(self) -> float:
        """x^2 - sigma y^2; signed for sigma = +1."""
        return self.re * self.re - self.sigma * self.im * self.im

    def is_close(self, other: 'HyperNumber', tol: float = 1e-12) -> bool:
        return (self.sigma == other.sigma
                and abs(self.re - other.re) <= tol * (1.0 + abs(self.re))
                and abs(self.im - other.im) <= tol * (1.0 + abs(self.im)))

    def as_point(self) -> Tuple[float, float]:
        return (self.re, self.im)

    def to_complex(self) -> complex:
        if self.sigma != Sigma.ELLIPTIC:
            raise DomainError("Only elliptic numbers are complex numbers")
        return complex(self.re, self.im)

    def to_dict(self) -> dict:
        return {'re': self.re, 'im': self.im, 'sigma': int(self.sigma)}

    @classmethod
    def from_dict(cls, data: dict) -> 'HyperNumber':
        return cls(data['re'], data.get('im', 0.0), data.get('sigma', -1))


def add(a: HyperNumber, b: HyperNumber) -> HyperNumber:
    return a + b


def sub(a: HyperNumber, b: HyperNumber) -> HyperNumber:
    return a - b


def scale(a: HyperNumber, t: float) -> HyperNumber:
    return HyperNumber(t * a.re, t * a.im, a.sigma)


def conjugate(a: HyperNumber) -> HyperNumber:
    return a.conjugate()


def modulus_sq(a: HyperNumber) -> float:
    return a.modulus_sq()


def mul(a: HyperNumber, b: HyperNumber) -> HyperNumber:
    """(x1 + iy1)(x2 + iy2) = (x1x2 + sigma y1y2) + i(x1y2 + x2y1)."""
    if a.sigma != b.sigma:
        raise DomainError(f"Cannot multiply sigma={int(a.sigma)} by sigma={int(b.sigma)}")
    return HyperNumber(a.re * b.re + a.sigma * a.im * b.im,
                       a.re * b.im + b.re * a.im,
                       a.sigma)


def inv(a: HyperNumber, tol: float = ZERO_DIVISOR_TOL) -> HyperNumber:
    """
    Multiplicative inverse (x - iy)/(x^2 - sigma y^2).

    Raises:
        ZeroDivisor: when |x^2 - sigma y^2| < tol * (1 + x^2 + y^2)
    """
    norm = a.modulus_sq()
    if abs(norm) < tol * (1.0 + a.re * a.re + a.im * a.im):
        raise ZeroDivisor(f"{a!r} is a zero divisor (modulus squared {norm:.3e})")
    return HyperNumber(a.re / norm, -a.im / norm, a.sigma)


class GroupElement:
    """
    Real 2x2 matrix of determinant one.

        [[a b]
         [c d]]

    A matrix with positive determinant is rescaled onto SL(2,R).
    """

    __slots__ = ('a', 'b', 'c', 'd')

    def __init__(self, a: float, b: float, c: float, d: float):
        det = a * d - b * c
        if det <= 0.0 or not math.isfinite(det):
            raise DomainError(f"Matrix ({a}, {b}; {c}, {d}) has non-positive determinant {det}")
        if abs(det - 1.0) > DET_TOL:
            root = math.sqrt(det)
            a, b, c, d = a / root, b / root, c / root, d / root
        object.__setattr__(self, 'a', float(a))
        object.__setattr__(self, 'b', float(b))
        object.__setattr__(self, 'c', float(c))
        object.__setattr__(self, 'd', float(d))

    def __setattr__(self, name, value):
        raise AttributeError("GroupElement is immutable")

    @classmethod
    def identity(cls) -> 'GroupElement':
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def dilation(cls, alpha: float) -> 'GroupElement':
        """A(alpha) = diag(alpha, 1/alpha); acts as z -> alpha^2 z."""
        return cls(alpha, 0.0, 0.0, 1.0 / alpha)

    @classmethod
    def shift(cls, nu: float) -> 'GroupElement':
        """N(nu); acts as z -> z + nu."""
        return cls(1.0, nu, 0.0, 1.0)

    @classmethod
    def rotation(cls, phi: float) -> 'GroupElement':
        """K(phi) = (cos phi, sin phi; -sin phi, cos phi)."""
        c, s = math.cos(phi), math.sin(phi)
        return cls(c, s, -s, c)

    @classmethod
    def from_array(cls, m) -> 'GroupElement':
        m = np.asarray(m, dtype=float)
        if m.shape != (2, 2):
            raise DomainError(f"Expected a 2x2 matrix, got shape {m.shape}")
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def random(cls, rng: np.random.Generator) -> 'GroupElement':
        """a, b, c uniform in [-2, 2] with |a| >= 0.1, and d = (1 + bc)/a."""
        while True:
            a, b, c = rng.uniform(-2.0, 2.0, size=3)
            if abs(a) >= 0.1:
                return cls(a, b, c, (1.0 + b * c) / a)

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def compose(self, other: 'GroupElement') -> 'GroupElement':
        """Matrix product self * other."""
        return GroupElement(self.a * other.a + self.b * other.c,
                            self.a * other.b + self.b * other.d,
                            self.c * other.a + self.d * other.c,
                            self.c * other.b + self.d * other.d)

    __matmul__ = compose

    def inverse(self) -> 'GroupElement':
        return GroupElement(self.d, -self.b, -self.c, self.a)

    def is_close(self, other: 'GroupElement', tol: float = 1e-12) -> bool:
        return bool(np.allclose(self.as_array(), other.as_array(), rtol=0.0, atol=tol))

    def __repr__(self):
        return f"GroupElement({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"


def moebius(g: GroupElement, z: HyperNumber, tol: float = ZERO_DIVISOR_TOL) -> HyperNumber:
    """
    (az + b)/(cz + d) in the plane of z.

    Raises:
        ZeroDivisor: |N(cz + d)| < tol (1 + |z|^2), so z goes to the ideal boundary
    """
    num = HyperNumber(g.a * z.re + g.b, g.a * z.im, z.sigma)
    den = HyperNumber(g.c * z.re + g.d, g.c * z.im, z.sigma)
    norm = den.modulus_sq()
    if abs(norm) < tol * (1.0 + z.re * z.re + z.im * z.im):
        raise ZeroDivisor(f"{z!r} is sent to the ideal boundary by {g!r} (N(cz + d) = {norm:.3e})")
    return mul(num, inv(den, 0.0))


class IwasawaFactors:
    """g = A(alpha) N(nu) K(phi) with alpha > 0 and phi in (-pi, pi]."""

    __slots__ = ('alpha', 'nu', 'phi')

    def __init__(self, alpha: float, nu: float, phi: float):
        self.alpha = alpha
        self.nu = nu
        self.phi = phi

    def compose(self) -> GroupElement:
        return (GroupElement.dilation(self.alpha)
                @ GroupElement.shift(self.nu)
                @ GroupElement.rotation(self.phi))

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.alpha, self.nu, self.phi)

    def __repr__(self):
        return f"IwasawaFactors(alpha={self.alpha!r}, nu={self.nu!r}, phi={self.phi!r})"


def iwasawa(g: GroupElement) -> IwasawaFactors:
    """Decompose g into its A, N and K factors."""
    phi = math.atan2(-g.c, g.d)
    if phi <= -math.pi:
        phi = math.pi
    alpha = 1.0 / math.hypot(g.c, g.d)
    nu = (g.b * math.cos(phi) - g.a * math.sin(phi)) / alpha
    return IwasawaFactors(alpha, nu, phi)


def k_orbit(z0: HyperNumber, phis: Iterable[float],
            tol: float = ZERO_DIVISOR_TOL) -> List[Optional[HyperNumber]]:
    """
    Images of z0 under K(phi) for each phi.

    Angles where the action is undefined give None in the returned list.
    """
    orbit: List[Optional[HyperNumber]] = []
    skipped = 0
    for phi in phis:
        try:
            orbit.append(moebius(GroupElement.rotation(phi), z0, tol))
        except ZeroDivisor:
            orbit.append(None)
            skipped += 1
    if skipped:
        logger.warning(f"K-orbit of {z0!r}: {skipped} undefined point(s) skipped")
    return orbit


def fit_conic(points: Sequence[Tuple[float, float]]) -> Tuple[str, float]:
    """
    Least-squares conic Ax^2 + Bxy + Cy^2 + Dx + Ey + F = 0 through points.

    Returns:
        tuple: (kind, residual) where kind is 'circle', 'ellipse',
        'parabola', 'hyperbola' or 'line', and residual is the ratio of the
        smallest to the largest singular value of the design matrix
    """
    pts = np.asarray([p for p in points if p is not None], dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 6:
        raise DomainError("At least six points are needed to fit a conic")
    x, y = pts[:, 0], pts[:, 1]
    # centre and scale the cloud so the design matrix is well conditioned
    shift = pts.mean(axis=0)
    spread = max(float(np.abs(pts - shift).max()), 1e-300)
    xs, ys = (x - shift[0]) / spread, (y - shift[1]) / spread
    design = np.column_stack([xs * xs, xs * ys, ys * ys, xs, ys, np.ones_like(xs)])
    _, singular, vt = np.linalg.svd(design, full_matrices=False)
    coef = vt[-1]
    residual = float(singular[-1] / singular[0])

    A, B, C = coef[0], coef[1], coef[2]
    quad = math.sqrt(A * A + B * B + C * C)
    if quad < 1e-8 * float(np.abs(coef).max()):
        return 'line', residual
    disc = (B * B - 4.0 * A * C) / (quad * quad)
    if abs(disc) < 1e-6:
        kind = 'parabola'
    elif disc > 0:
        kind = 'hyperbola'
    elif abs(A - C) < 1e-6 * quad and abs(B) < 1e-6 * quad:
        kind = 'circle'
    else:
        kind = 'ellipse'
    logger.debug(f"Conic fit: {kind}, discriminant {disc:.3e}, residual {residual:.3e}")
    return kind, residual


def cayley(z: complex) -> complex:
    """Upper half-plane to unit disk, w = (z - i)/(z + i)."""
    z = complex(z)
    if abs(z + 1j) == 0.0:
        raise ZeroDivisor("-i has no Cayley image")
    return (z - 1j) / (z + 1j)


def inverse_cayley(w: complex) -> complex:
    """Unit disk to upper half-plane, z = i(1 + w)/(1 - w)."""
    w = complex(w)
    if abs(1.0 - w) == 0.0:
        raise ZeroDivisor("1 is sent to infinity by the inverse Cayley map")
    return 1j * (1.0 + w) / (1.0 - w)

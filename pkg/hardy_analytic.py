#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Hardy Space Numerics

Functions on the unit circle sampled at N equispaced nodes, and the
analytic function theory around them:
- coherent states (u - z)^-1 and the Cauchy integral they produce
- the rho_1 action of SU(1,1) with FFT resampling
- Taylor coefficients of the disk coherent states
- the Dirac operator -2iy d/dzbar on a grid in the upper half-plane
"""

import logging
import math
from typing import Callable, List, Sequence

import numpy as np

from errors import DomainError, OutOfPatch
from jet_calculus import SUElement

logger = logging.getLogger('CycleKit.Hardy')

GRID_SIZE = 1024
DISK_MARGIN = 1e-9


def as_disk_point(u: complex) -> complex:
    """
    Raises:
        DomainError: |u| > 1 - 1e-9
    """
    u = complex(u)
    if abs(u) > 1.0 - DISK_MARGIN:
        raise DomainError(f"{u} is not inside the unit disk")
    return u


def circle_nodes(size: int) -> np.ndarray:
    return np.exp(2j * math.pi * np.arange(size) / size)


class CircleFunction:
    """Samples f(z_j) at z_j = exp(2 pi i j / N), N a power of two, N >= 16."""

    def __init__(self, samples: Sequence[complex]):
        samples = np.asarray(samples, dtype=complex).reshape(-1)
        size = samples.shape[0]
        if size < 16 or size & (size - 1):
            raise DomainError(f"Sample count must be a power of two >= 16, got {size}")
        if not np.all(np.isfinite(samples)):
            raise DomainError("Circle samples must be finite")
        self.samples = samples

    @classmethod
    def from_callable(cls, func: Callable[[np.ndarray], np.ndarray], size: int = GRID_SIZE) -> 'CircleFunction':
        return cls(func(circle_nodes(size)))

    @property
    def size(self) -> int:
        return self.samples.shape[0]

    @property
    def nodes(self) -> np.ndarray:
        return circle_nodes(self.size)

    def fourier(self) -> np.ndarray:
        """Coefficients c_k, ordered as numpy.fft.fftfreq, with f = sum c_k z^k."""
        return np.fft.fft(self.samples) / self.size

    def evaluate(self, points) -> np.ndarray:
        """Trigonometric interpolant at points of the unit circle."""
        points = np.asarray(points, dtype=complex)
        freqs = np.fft.fftfreq(self.size, d=1.0 / self.size).astype(int)
        coeffs = self.fourier()
        return np.sum(coeffs[:, None] * points.reshape(1, -1) ** freqs[:, None], axis=0).reshape(points.shape)

    def norm(self) -> float:
        """L2 norm for the normalized arc length."""
        return float(np.sqrt(np.mean(np.abs(self.samples) ** 2)))

    def __repr__(self):
        return f"CircleFunction(size={self.size})"


def hardy_pairing(f: CircleFunction, g: CircleFunction) -> complex:
    """(1/2 pi i) integral of f g dz, by the trapezoidal rule."""
    if f.size != g.size:
        raise DomainError(f"Grids differ: {f.size} and {g.size} samples")
    return complex(np.mean(f.samples * g.samples * f.nodes))


def coherent_state(u: complex, size: int = GRID_SIZE) -> CircleFunction:
    """Samples of z -> (u - z)^-1."""
    u = as_disk_point(u)
    return CircleFunction(1.0 / (u - circle_nodes(size)))


def cauchy_transform(f: CircleFunction, u: complex, raw: bool = False) -> complex:
    """
    Cauchy integral of f at u inside the disk.

    The default orientation recovers f(u) for boundary values of analytic
    f. raw=True gives the pairing with the coherent state (u - z)^-1,
    which is the negative of that.
    """
    u = as_disk_point(u)
    z = f.nodes
    value = complex(np.mean(f.samples * z / (z - u)))
    return -value if raw else value


def disk_moebius(g: SUElement, z):
    """(conj(alpha) z - conj(beta)) / (alpha - beta z), the action of g^-1 on the disk."""
    return (g.alpha.conjugate() * z - g.beta.conjugate()) / (g.alpha - g.beta * z)


def rho1_apply(g: SUElement, f: CircleFunction) -> CircleFunction:
    """
    [rho_1(g) f](z) = f(g^-1 z) / (alpha - beta z), the values f(g^-1 z)
    taken from the trigonometric interpolant of f.
    """
    z = f.nodes
    return CircleFunction(f.evaluate(disk_moebius(g, z)) / (g.alpha - g.beta * z))


def taylor_coeffs(a: complex, count: int) -> List[complex]:
    """V_n(a) = sqrt(1 - |a|^2) conj(a)^(n - 1) for n = 1..count."""
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    a = as_disk_point(a)
    factor = math.sqrt(1.0 - abs(a) ** 2)
    return [factor * a.conjugate() ** (n - 1) for n in range(1, count + 1)]


def taylor_coeffs_by_quadrature(a: complex, count: int, size: int = GRID_SIZE) -> List[complex]:
    """
    Inner products of sqrt(1 - |a|^2) / (1 - conj(a) e^{i phi}) with
    e^{i(n-1) phi}, by the trapezoidal rule.
    """
    a = as_disk_point(a)
    z = circle_nodes(size)
    kernel = math.sqrt(1.0 - abs(a) ** 2) / (1.0 - a.conjugate() * z)
    return [complex(np.mean(kernel * z ** (-(n - 1)))) for n in range(1, count + 1)]


class HalfPlanePatch:
    """Uniform grid on [xmin, xmax] x [ymin, ymax] inside the upper half-plane."""

    def __init__(self, xmin: float = -2.0, xmax: float = 2.0, ymin: float = 0.1,
                 ymax: float = 4.1, points: int = 129):
        if ymin <= 0.0:
            raise DomainError(f"Patch must lie in the upper half-plane, ymin = {ymin}")
        if xmax <= xmin or ymax <= ymin:
            raise DomainError("Patch has zero width or height")
        if points < 5:
            raise DomainError(f"Patch needs at least 5 points per side, got {points}")
        self.x = np.linspace(xmin, xmax, points)
        self.y = np.linspace(ymin, ymax, points)
        self.hx = self.x[1] - self.x[0]
        self.hy = self.y[1] - self.y[0]
        self.points = points

    @property
    def grid(self) -> np.ndarray:
        """Complex grid indexed [ix, iy]."""
        xx, yy = np.meshgrid(self.x, self.y, indexing='ij')
        return xx + 1j * yy

    def sample(self, func: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        return np.asarray(func(self.grid), dtype=complex)

    def index_of(self, z: complex) -> tuple:
        """Nearest grid indices to z."""
        ix = int(round((z.real - self.x[0]) / self.hx))
        iy = int(round((z.imag - self.y[0]) / self.hy))
        return ix, iy

    def __repr__(self):
        return (f"HalfPlanePatch([{self.x[0]}, {self.x[-1]}] x [{self.y[0]}, {self.y[-1]}], "
                f"points={self.points})")


def dirac_residual(patch: HalfPlanePatch, values: np.ndarray, ix: int, iy: int) -> complex:
    """
    -2iy df/dzbar at grid point (ix, iy), with df/dzbar = (d_x + i d_y) f / 2
    by second-order central differences.

    Raises:
        OutOfPatch: the point lies within two cells of the patch edge
    """
    n = patch.points
    if not (2 <= ix <= n - 3 and 2 <= iy <= n - 3):
        raise OutOfPatch(f"Grid point ({ix}, {iy}) is within two cells of the edge of a {n}-point patch")
    dx = (values[ix + 1, iy] - values[ix - 1, iy]) / (2.0 * patch.hx)
    dy = (values[ix, iy + 1] - values[ix, iy - 1]) / (2.0 * patch.hy)
    y = patch.y[iy]
    return complex(-2j * y * 0.5 * (dx + 1j * dy))


def cauchy_on_patch(f: CircleFunction, patch: HalfPlanePatch) -> np.ndarray:
    """Cauchy integral of f at every grid point; the patch must lie in the disk."""
    grid = patch.grid
    if np.abs(grid).max() > 1.0 - DISK_MARGIN:
        raise DomainError(f"{patch!r} is not inside the unit disk")
    z = f.nodes
    weights = f.samples * z
    kernel = 1.0 / (z[None, :] - grid.reshape(-1, 1))
    return (kernel @ weights / f.size).reshape(grid.shape)


def observed_order(errors: Sequence[float]) -> List[float]:
    """
    log2 of successive error ratios under grid halving. An exact result on
    the finer grid counts as converged (inf); a coarse exact result followed
    by a non-zero error gives -inf.
    """
    orders = []
    for coarse, fine in zip(errors, errors[1:]):
        if fine == 0.0:
            orders.append(math.inf)
        elif coarse == 0.0:
            orders.append(-math.inf)
        else:
            orders.append(math.log2(coarse / fine))
    return orders

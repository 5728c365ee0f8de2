#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Jet Calculus for Matrices

Covariant functional calculus of a matrix a with ||a|| < 1:
- the SU(1,1) Moebius action on matrices and its resolvent cocycle
- the jet spectrum: eigenvalues together with Jordan block lengths
- zero orders of polynomial maps and the prolonged spectral mapping
- polynomial and contour-integral evaluation of maps on matrices
- Krylov dimension and module coherent states (u e - a)^-1 m
"""

import logging
import math
import re
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
from numpy.polynomial import Polynomial
from scipy.cluster.hierarchy import fcluster, linkage

from errors import ConstantMap, DomainError, IllConditioned, MalformedMatrix, SingularResolvent
from hypercomplex import GroupElement

logger = logging.getLogger('CycleKit.Jets')

MAX_ORDER = 64
CLUSTER_TOL = 1e-3
RANK_TOL = 1e-8
ZERO_ORDER_TOL = 1e-10
COND_LIMIT = 1e12

# eigenvalues and block lengths of the four-block reference matrix
EXAMPLE_BLOCKS = [
    (3, 0.75 * np.exp(1j * math.pi / 4)),
    (4, (2.0 / 3.0) * np.exp(1j * 5 * math.pi / 6)),
    (1, 0.4 * np.exp(-1j * 3 * math.pi / 4)),
    (2, 0.6 * np.exp(-1j * math.pi / 3)),
]


class SUElement:
    """
    g = [[alpha, conj(beta)], [beta, conj(alpha)]] with |alpha|^2 - |beta|^2 = 1.
    """

    __slots__ = ('alpha', 'beta')

    def __init__(self, alpha: complex, beta: complex = 0.0, tol: float = 1e-10):
        alpha, beta = complex(alpha), complex(beta)
        det = abs(alpha) ** 2 - abs(beta) ** 2
        if abs(det - 1.0) > tol:
            raise DomainError(f"|alpha|^2 - |beta|^2 = {det}, expected 1")
        object.__setattr__(self, 'alpha', alpha)
        object.__setattr__(self, 'beta', beta)

    def __setattr__(self, name, value):
        raise AttributeError("SUElement is immutable")

    @classmethod
    def identity(cls) -> 'SUElement':
        return cls(1.0, 0.0)

    @classmethod
    def from_sl(cls, g: GroupElement) -> 'SUElement':
        """Conjugate of g by the Cayley transform (z - i)/(z + i)."""
        alpha = complex(g.a + g.d, g.b - g.c) / 2.0
        beta = complex(g.a - g.d, g.b + g.c) / 2.0
        return cls(alpha, beta)

    @classmethod
    def random(cls, rng: np.random.Generator, max_beta: float = 1.5) -> 'SUElement':
        radius = rng.uniform(0.0, max_beta)
        beta = radius * np.exp(1j * rng.uniform(-math.pi, math.pi))
        alpha = math.sqrt(1.0 + radius * radius) * np.exp(1j * rng.uniform(-math.pi, math.pi))
        return cls(alpha, beta)

    def compose(self, other: 'SUElement') -> 'SUElement':
        """Matrix product self * other."""
        return SUElement(self.alpha * other.alpha + self.beta.conjugate() * other.beta,
                         self.beta * other.alpha + self.alpha.conjugate() * other.beta)

    __matmul__ = compose

    def inverse(self) -> 'SUElement':
        return SUElement(self.alpha.conjugate(), -self.beta)

    def as_array(self) -> np.ndarray:
        return np.array([[self.alpha, self.beta.conjugate()],
                         [self.beta, self.alpha.conjugate()]])

    def __repr__(self):
        return f"SUElement(alpha={self.alpha!r}, beta={self.beta!r})"


def as_square_matrix(a, max_order: int = MAX_ORDER) -> np.ndarray:
    """
    Check a is a finite square matrix of order at most max_order.

    Raises:
        MalformedMatrix: wrong shape, too large or non-finite entries
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise MalformedMatrix(f"Expected a non-empty square matrix, got shape {a.shape}")
    if a.shape[0] > max_order:
        raise MalformedMatrix(f"Matrix order {a.shape[0]} exceeds the limit {max_order}")
    if not np.all(np.isfinite(a)):
        raise MalformedMatrix("Matrix has non-finite entries")
    return a


def _contraction(a) -> np.ndarray:
    a = as_square_matrix(a)
    norm = np.linalg.norm(a, 2)
    if norm >= 1.0:
        raise DomainError(f"Operator norm {norm:.6g} is not below 1")
    return a


def resolvent(g: SUElement, a, cond_limit: float = COND_LIMIT) -> np.ndarray:
    """
    (alpha e - beta a)^-1.

    Raises:
        SingularResolvent: condition number above cond_limit
    """
    a = _contraction(a)
    shifted = g.alpha * np.eye(a.shape[0]) - g.beta * a
    cond = np.linalg.cond(shifted)
    if not np.isfinite(cond) or cond > cond_limit:
        raise SingularResolvent(f"alpha e - beta a has condition number {cond:.3e}")
    return scipy.linalg.inv(shifted)


def matrix_moebius(g: SUElement, a, cond_limit: float = COND_LIMIT) -> np.ndarray:
    """
    (conj(alpha) a - conj(beta) e)(alpha e - beta a)^-1.

    This is the action of g^-1, so
    matrix_moebius(g1, matrix_moebius(g2, a)) = matrix_moebius(g2 g1, a).
    """
    a = _contraction(a)
    numerator = g.alpha.conjugate() * a - g.beta.conjugate() * np.eye(a.shape[0])
    return numerator @ resolvent(g, a, cond_limit)


def jordan_block(k: int, lam: complex) -> np.ndarray:
    if k < 1:
        raise ValueError(f"Jordan block length must be positive, got {k}")
    return lam * np.eye(k, dtype=complex) + np.eye(k, k=1, dtype=complex)


def block_matrix(blocks: Iterable[Tuple[int, complex]]) -> np.ndarray:
    """Direct sum of Jordan blocks J_k(lambda) given as (k, lambda) pairs."""
    return scipy.linalg.block_diag(*[jordan_block(k, lam) for k, lam in blocks])


def example_matrix() -> np.ndarray:
    return block_matrix(EXAMPLE_BLOCKS)


class JetPoint:
    """An eigenvalue with the length of one of its Jordan blocks."""

    __slots__ = ('lam', 'k')

    def __init__(self, lam: complex, k: int):
        if int(k) < 1:
            raise ValueError(f"Jet order must be at least 1, got {k}")
        self.lam = complex(lam)
        self.k = int(k)

    def as_tuple(self) -> Tuple[complex, int]:
        return (self.lam, self.k)

    def __repr__(self):
        return f"JetPoint({self.lam:.6g}, {self.k})"


class JetSpectrum:
    """Multiset of JetPoints; the orders sum to the matrix order."""

    def __init__(self, points: Iterable[JetPoint], clamped: Optional[List[JetPoint]] = None):
        self.points = sorted(points, key=lambda p: (round(p.lam.real, 9), round(p.lam.imag, 9), -p.k))
        self.clamped = list(clamped or [])

    @classmethod
    def from_blocks(cls, blocks: Iterable[Tuple[int, complex]]) -> 'JetSpectrum':
        return cls(JetPoint(lam, k) for k, lam in blocks)

    @property
    def order(self) -> int:
        return sum(p.k for p in self.points)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def matches(self, other: 'JetSpectrum', tol: float = 1e-6) -> bool:
        """Multiset equality: orders exact, eigenvalues within tol."""
        if len(self) != len(other):
            return False
        unused = list(other.points)
        for point in self.points:
            match = next((q for q in unused if q.k == point.k and abs(q.lam - point.lam) <= tol), None)
            if match is None:
                return False
            unused.remove(match)
        return True

    def __repr__(self):
        return f"JetSpectrum({self.points!r})"


def _cluster(eigenvalues: np.ndarray, tol: float) -> List[np.ndarray]:
    if len(eigenvalues) == 1:
        return [eigenvalues]
    coords = np.column_stack([eigenvalues.real, eigenvalues.imag])
    labels = fcluster(linkage(coords, method='single'), t=tol, criterion='distance')
    return [eigenvalues[labels == label] for label in np.unique(labels)]


def _rank(m: np.ndarray, tol: float) -> int:
    if m.size == 0:
        return 0
    singular = scipy.linalg.svdvals(m)
    return int(np.sum(singular > tol))


def jet_spectrum(a, tol: Optional[float] = None, rank_tol: float = RANK_TOL,
                 max_order: int = MAX_ORDER, cluster_tol: float = CLUSTER_TOL) -> JetSpectrum:
    """
    Eigenvalues of a with the lengths of all their Jordan blocks.

    Eigenvalues are grouped by single linkage at tol (default
    cluster_tol max(1, ||a||)). Rounding splits a Jordan block of length k
    into eigenvalues about eps^(1/k) apart, hence the default width 1e-3.
    Each group is moved to the leading corner of a sorted complex Schur
    form, and the block lengths come from the rank sequence
    r_j = rank (T11 - mu)^j through the Weyr characteristic.

    Raises:
        IllConditioned: groups closer than 10 tol, or ranks that stall
        MalformedMatrix: a is not an admissible square matrix
    """
    a = as_square_matrix(a, max_order)
    order = a.shape[0]
    scale = max(1.0, float(np.linalg.norm(a, 2)))
    tol = cluster_tol * scale if tol is None else tol
    rank_cut = rank_tol * scale

    eigenvalues = scipy.linalg.eigvals(a)
    clusters = _cluster(eigenvalues, tol)
    centres = [complex(np.mean(c)) for c in clusters]
    for i in range(len(centres)):
        for j in range(i + 1, len(centres)):
            if abs(centres[i] - centres[j]) < 10.0 * tol:
                raise IllConditioned(
                    f"Eigenvalue groups at {centres[i]:.6g} and {centres[j]:.6g} are within 10 tol")

    points: List[JetPoint] = []
    for cluster, mu in zip(clusters, centres):
        size = len(cluster)
        T, _, sdim = scipy.linalg.schur(a, output='complex',
                                        sort=lambda x, mu=mu: abs(x - mu) < 5.0 * tol)
        if sdim != size:
            raise IllConditioned(f"Schur reordering at {mu:.6g} selected {sdim} of {size} eigenvalues")
        nil = T[:size, :size] - mu * np.eye(size)

        ranks = [size]
        power = np.eye(size, dtype=complex)
        while ranks[-1] > 0:
            power = power @ nil
            r = _rank(power, rank_cut)
            if r >= ranks[-1]:
                raise IllConditioned(f"Rank sequence {ranks + [r]} stalls at eigenvalue {mu:.6g}")
            ranks.append(r)
        logger.debug(f"Eigenvalue {mu:.6g}: multiplicity {size}, ranks {ranks}")

        weyr = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))] + [0]
        blocks = []
        for j in range(1, len(weyr)):
            blocks.extend([j] * (weyr[j - 1] - weyr[j]))
        if sum(blocks) != size:
            raise IllConditioned(f"Blocks {blocks} do not fill multiplicity {size} at {mu:.6g}")
        points.extend(JetPoint(mu, k) for k in blocks)

    spectrum = JetSpectrum(points)
    if spectrum.order != order:
        raise IllConditioned(f"Jet orders sum to {spectrum.order}, matrix order is {order}")
    return spectrum


class HoloMap:
    """Polynomial map z -> sum c_j z^j with complex coefficients."""

    def __init__(self, coefficients: Sequence[complex]):
        coefficients = np.atleast_1d(np.asarray(coefficients, dtype=complex))
        self.poly = Polynomial(coefficients)

    @classmethod
    def identity(cls) -> 'HoloMap':
        return cls([0.0, 1.0])

    @classmethod
    def with_zero_orders(cls, points: Sequence[complex], orders: Sequence[int],
                         bound: float = 0.9) -> 'HoloMap':
        """
        A map whose zero order at points[i] is orders[i].

        phi' is a multiple of prod (z - p_i)^(d_i - 1); the multiple is
        chosen so every |phi(p_i)| <= bound.
        """
        if len(points) != len(orders):
            raise ValueError("points and orders must have the same length")
        derivative = Polynomial([1.0 + 0j])
        for p, d in zip(points, orders):
            if int(d) < 1:
                raise ValueError(f"Zero orders must be positive, got {d}")
            for _ in range(int(d) - 1):
                derivative = derivative * Polynomial([-complex(p), 1.0])
        poly = derivative.integ()
        peak = max((abs(poly(p)) for p in points), default=0.0)
        if peak > bound:
            poly = poly * (bound / peak)
        return cls(poly.coef)

    @property
    def coefficients(self) -> np.ndarray:
        return self.poly.coef

    @property
    def degree(self) -> int:
        return int(self.poly.degree())

    def __call__(self, z):
        return self.poly(z)

    def derivative(self, j: int = 1) -> 'HoloMap':
        return HoloMap(self.poly.deriv(j).coef) if j <= self.degree else HoloMap([0.0])

    def __repr__(self):
        return f"HoloMap({self.poly.coef.tolist()!r})"


def zero_order(phi: HoloMap, lam: complex, tol: float = ZERO_ORDER_TOL) -> int:
    """
    Smallest j >= 1 with phi^(j)(lam) != 0.

    Raises:
        ConstantMap: phi has no non-vanishing derivative
    """
    cut = tol * max(1.0, float(np.abs(phi.coefficients).max()))
    for j in range(1, phi.degree + 1):
        if abs(phi.poly.deriv(j)(lam)) > cut:
            return j
    raise ConstantMap(f"{phi!r} is constant")


def split_jordan_block(k: int, d: int) -> List[int]:
    """
    Block lengths of phi(J_k(lambda)) at phi(lambda) for zero order d.

    With k = qd + r this is r blocks of length q + 1 and d - r of length
    q, blocks of length zero omitted.
    """
    q, r = divmod(k, d)
    return [q + 1] * r + [q] * (d - r if q > 0 else 0)


def spectral_map(jets: JetSpectrum, phi: HoloMap) -> JetSpectrum:
    """
    (lambda, k) -> (phi(lambda), floor(k / d)) with d the zero order of
    phi at lambda. A zero quotient is raised to 1 and the source point is
    recorded in the result's clamped list.
    """
    images: List[JetPoint] = []
    clamped: List[JetPoint] = []
    for point in jets:
        d = zero_order(phi, point.lam)
        k = point.k // d
        if k == 0:
            clamped.append(point)
            logger.warning(f"Jet order {point.k} at {point.lam:.6g} is below zero order {d}; clamped to 1")
            k = 1
        images.append(JetPoint(phi(point.lam), k))
    return JetSpectrum(images, clamped)


def mapped_jordan_structure(jets: JetSpectrum, phi: HoloMap) -> JetSpectrum:
    """Every Jordan block of phi(a), obtained by splitting the blocks of a."""
    images: List[JetPoint] = []
    for point in jets:
        value = phi(point.lam)
        for k in split_jordan_block(point.k, zero_order(phi, point.lam)):
            images.append(JetPoint(value, k))
    return JetSpectrum(images)


def apply_poly(phi: HoloMap, a) -> np.ndarray:
    """phi(a) by Horner's rule."""
    a = as_square_matrix(a)
    identity = np.eye(a.shape[0], dtype=complex)
    result = np.zeros_like(a)
    for c in phi.coefficients[::-1]:
        result = result @ a + c * identity
    return result


def riesz_dunford(phi: HoloMap, a, nodes: int = 256, radius: Optional[float] = None) -> np.ndarray:
    """
    (1/2 pi i) integral of phi(z)(z e - a)^-1 dz over a circle around the
    spectrum, by the trapezoidal rule.
    """
    a = as_square_matrix(a)
    n = a.shape[0]
    if radius is None:
        radius = 1.0 + float(np.abs(scipy.linalg.eigvals(a)).max())
    identity = np.eye(n, dtype=complex)
    total = np.zeros((n, n), dtype=complex)
    for z in radius * np.exp(2j * math.pi * np.arange(nodes) / nodes):
        total += phi(z) * z * scipy.linalg.solve(z * identity - a, identity)
    return total / nodes


def krylov_dimension(a, m, tol: float = RANK_TOL) -> int:
    """Dimension of span{m, a m, ..., a^(n-1) m}."""
    a = as_square_matrix(a)
    vector = np.asarray(m, dtype=complex).reshape(-1)
    columns = [vector]
    for _ in range(a.shape[0] - 1):
        columns.append(a @ columns[-1])
    krylov = np.column_stack(columns)
    return _rank(krylov, tol * max(1.0, float(np.abs(krylov).max())))


def module_coherent_state(a, m, u: complex, cond_limit: float = COND_LIMIT) -> np.ndarray:
    """
    (u e - a)^-1 m.

    Raises:
        SingularResolvent: u is (numerically) an eigenvalue of a
    """
    a = as_square_matrix(a)
    shifted = u * np.eye(a.shape[0]) - a
    cond = np.linalg.cond(shifted)
    if not np.isfinite(cond) or cond > cond_limit:
        raise SingularResolvent(f"u e - a has condition number {cond:.3e}")
    return scipy.linalg.solve(shifted, np.asarray(m, dtype=complex))


_BLOCK_RE = re.compile(r'J\(\s*(\d+)\s*,\s*([-+0-9.eE]+)\s*,\s*([-+0-9.eE]+)\s*\)')


def parse_matrix_text(text: str) -> np.ndarray:
    """
    Read a matrix from text.

    Two formats are accepted: a block spec such as
    'J(3, 0.53, 0.53) + J(1, 0.4, 0)' (the direct-sum sign may also be
    written as the circled plus), or dense rows of whitespace-separated
    numbers in Python complex syntax, one row per line, '#' starting a
    comment.

    Raises:
        MalformedMatrix: neither format parses
    """
    stripped = '\n'.join(line.split('#', 1)[0] for line in text.splitlines()).strip()
    if not stripped:
        raise MalformedMatrix("Matrix text is empty")
    if stripped.startswith('J'):
        blocks = _BLOCK_RE.findall(stripped)
        leftover = _BLOCK_RE.sub('', stripped)
        if not blocks or leftover.replace('+', '').replace('⊕', '').strip():
            raise MalformedMatrix(f"Cannot read block spec '{stripped}'")
        return block_matrix((int(k), complex(float(re_), float(im))) for k, re_, im in blocks)
    try:
        rows = [[complex(tok) for tok in line.split()] for line in stripped.splitlines() if line.strip()]
    except ValueError as e:
        raise MalformedMatrix(f"Cannot read dense matrix: {str(e)}") from e
    if len({len(r) for r in rows}) != 1:
        raise MalformedMatrix("Dense matrix rows have different lengths")
    return as_square_matrix(np.array(rows, dtype=complex))

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Joint Invariants of Cycles

Moebius-invariant relations between two cycles:
- the trace pairing and sigma_breve-orthogonality
- reflection of one cycle in another
- the asymmetric s-orthogonality and its link to foci
- ghost cycles, which turn both relations into ordinary orthogonality
  in the sigma-drawing

Pairing convention: pairing(C1, C2) is the real part of tr(C1 conj(C2)),
conj flipping the sign of i'. Written out,

    2 l1 l2 - 2 sigma_breve s^2 n1 n2 - m1 k2 - m2 k1,

which for sigma = sigma_breve = -1 vanishes exactly on Euclidean
orthogonal circles, and equals -2 det C on the diagonal.
"""

import logging
from typing import Optional, Tuple, Union

import numpy as np
from scipy.linalg import null_space

from cycle_space import (
    Cycle,
    FsccParams,
    Point,
    default_params,
    determinant,
    from_matrix,
    to_matrix,
)
from errors import DegenerateCycle, DomainError
from hypercomplex import Sigma, as_sigma

logger = logging.getLogger('CycleKit.Invariants')

ORTHOGONALITY_TOL = 1e-9


def heaviside(t: float) -> int:
    """chi(t) = 1 for t >= 0 and -1 for t < 0."""
    return 1 if t >= 0 else -1


def traditional_params(sigma: Union[int, Sigma]) -> FsccParams:
    """Cycle-space parameters under which orthogonality is the usual one in the sigma-drawing."""
    return FsccParams(heaviside(as_sigma(sigma)), 1.0)


def _unit(c: Cycle) -> Cycle:
    values = c.as_array()
    return Cycle.from_array(values / np.linalg.norm(values))


def pairing(c1: Cycle, c2: Cycle, params: Optional[FsccParams] = None) -> float:
    """Real part of tr(C1 conj(C2)); symmetric and bilinear."""
    product = to_matrix(c1, params) @ to_matrix(c2, params).conjugate()
    return float(product.trace().re)


def pairing_covector(c: Cycle, params: Optional[FsccParams] = None) -> np.ndarray:
    """w with w . (k, l, n, m) = pairing(x, c) for every cycle x."""
    params = default_params(params)
    return np.array([-c.m, 2.0 * c.l, -2.0 * params.sigma_breve * params.s ** 2 * c.n, -c.k])


def is_orthogonal(c1: Cycle, c2: Cycle, params: Optional[FsccParams] = None,
                  tol: float = ORTHOGONALITY_TOL) -> bool:
    """|pairing| below tol once both cycles are scaled to unit norm."""
    return abs(pairing(_unit(c1), _unit(c2), params)) < tol


def is_traditionally_orthogonal(c1: Cycle, c2: Cycle, sigma: Union[int, Sigma],
                                tol: float = ORTHOGONALITY_TOL) -> bool:
    return is_orthogonal(c1, c2, traditional_params(sigma), tol)


def reflect(mirror: Cycle, c: Cycle, params: Optional[FsccParams] = None) -> Cycle:
    """
    Reflection of c in mirror: the cycle of C conj(X) C.

    Reflecting twice in the same mirror multiplies by det(mirror)^2, so the
    map is an involution on cycles whenever the mirror has non-zero radius.
    """
    mirror_matrix = to_matrix(mirror, params)
    image = mirror_matrix @ to_matrix(c, params).conjugate() @ mirror_matrix
    return from_matrix(image)


def s_pairing(x: Cycle, mirror: Cycle, params: Optional[FsccParams] = None) -> float:
    """
    n tr(P X) - n_x det C for the mirror C = P + i'snI and X the real part of x.

    Vanishes exactly when x is s-orthogonal to the mirror. Linear in x,
    and a line is s-orthogonal to the mirror iff it passes its focus.
    """
    return float(np.dot(s_pairing_covector(mirror, params), x.as_array()))


def s_pairing_covector(mirror: Cycle, params: Optional[FsccParams] = None) -> np.ndarray:
    n = mirror.n
    return np.array([-n * mirror.m, 2.0 * n * mirror.l, -determinant(mirror, params), -n * mirror.k])


def is_s_orthogonal(c1: Cycle, c2: Cycle, params: Optional[FsccParams] = None,
                    tol: float = ORTHOGONALITY_TOL) -> bool:
    """
    c1 is s-orthogonal to c2. The relation is not symmetric: c2 plays
    the part of the mirror.
    """
    return abs(s_pairing(_unit(c1), _unit(c2), params)) < tol


def ghost(c: Cycle, sigma: Union[int, Sigma], params: Optional[FsccParams] = None) -> Cycle:
    """
    Cycle whose traditional orthogonality in the sigma-drawing reproduces
    sigma_breve-orthogonality to c.

    It keeps the roots of c, and its chi(sigma)-centre is the
    sigma_breve-centre of c.

    Raises:
        DegenerateCycle: k = 0
    """
    params = default_params(params)
    if c.k == 0.0:
        raise DegenerateCycle(f"{c!r} is a straight line and has no ghost")
    chi = heaviside(as_sigma(sigma))
    return Cycle(c.k, c.l, chi * params.sigma_breve * params.s ** 2 * c.n, c.m)


def s_ghost(c: Cycle, sigma: Union[int, Sigma], params: Optional[FsccParams] = None) -> Cycle:
    """
    Cycle whose traditional orthogonality in the sigma-drawing reproduces
    s-orthogonality to c.

    Its chi(sigma)-centre is the focus of c and it shares the roots of c.
    """
    chi = heaviside(as_sigma(sigma))
    det = determinant(c, params)
    return Cycle(c.n * c.k, c.n * c.l, det / (2.0 * chi), c.n * c.m)


def orthogonal_pencil(c: Cycle, through: Point, sigma: Union[int, Sigma],
                      params: Optional[FsccParams] = None) -> Tuple[Cycle, Cycle]:
    """
    Two cycles spanning the family of cycles through a point of the
    sigma-drawing that are orthogonal to c.

    Raises:
        DomainError: the two conditions are dependent and fix no pencil
    """
    u, v = through
    sigma = as_sigma(sigma)
    incident = np.array([u * u - sigma * v * v, -2.0 * u, -2.0 * v, 1.0])
    constraints = np.vstack([incident, pairing_covector(c, params)])
    basis = null_space(constraints)
    if basis.shape[1] != 2:
        raise DomainError(f"Point {through} gives {basis.shape[1]} free directions, expected 2")
    logger.debug(f"Orthogonal pencil of {c!r} through {through}")
    return Cycle.from_array(basis[:, 0]), Cycle.from_array(basis[:, 1])


def pencil_member(basis: Tuple[Cycle, Cycle], t: float) -> Cycle:
    """cos(t) a + sin(t) b for the pencil spanned by (a, b)."""
    a, b = basis
    return Cycle.from_array(np.cos(t) * a.as_array() + np.sin(t) * b.as_array())

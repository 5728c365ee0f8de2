#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Verification Suites

Seeded property checks over random samples, one suite per module:

    moebius        Iwasawa recomposition, action law, K-orbit conics
    fscc           point/cycle intertwining, centres, determinant, K-orbit plane
    orthogonality  Euclidean calibration, zero-radius incidence, invariance
    ghosts         ghost and s-ghost reductions, centres and foci
    metric         extremal distances, conformal limits, focal perpendiculars
    spectrum       spectral mapping, similarity, cocycle, Krylov dimension
    analytic       Cauchy recovery, Taylor coefficients, rho_1, Dirac order

Every check yields a Verdict: a residual compared against a tolerance.
Count checks report the fraction of disagreeing samples with tolerance 0.
"""

import logging
import math
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, field_validator, model_validator
from scipy.linalg import null_space

from config import get_settings
from cycle_space import (Cycle, FsccParams, Point, centre, determinant, focus, incidence,
                         k_orbit_cycle, points_on, roots, tangent_direction, to_matrix,
                         transform, zero_radius_at)
from errors import (DomainError, IllConditioned, NoExtremum, NonSmooth,
                    NoSuchCycle, NullLength, UnknownSuite, ZeroDivisor)
from hardy_analytic import (CircleFunction, HalfPlanePatch, cauchy_on_patch, cauchy_transform, dirac_residual,
                            disk_moebius, observed_order, rho1_apply, taylor_coeffs, taylor_coeffs_by_quadrature)
from hypercomplex import (GroupElement, HyperNumber, Sigma, cayley, fit_conic, iwasawa, k_orbit,
                          moebius)
from invariants import (ghost, is_orthogonal, is_s_orthogonal, pairing, reflect, s_ghost,
                        s_pairing, s_pairing_covector, traditional_params, orthogonal_pencil,
                        pencil_member)
from jet_calculus import (EXAMPLE_BLOCKS, HoloMap, JetSpectrum, SUElement, apply_poly,
                          block_matrix, example_matrix, jet_spectrum, jordan_block,
                          krylov_dimension, mapped_jordan_structure, matrix_moebius,
                          resolvent, riesz_dunford, spectral_map)
from metric_geometry import (LengthKind, conformal_limit, distance_sq, extremal_distance_sq,
                             focal_cycle, is_perpendicular)

logger = logging.getLogger('CycleKit.Verification')

SIGMAS = (Sigma.ELLIPTIC, Sigma.PARABOLIC, Sigma.HYPERBOLIC)
SKIP_TOL = 1e-6
BORDERLINE = 1e-6

Check = Tuple[str, float, float]


class Verdict(BaseModel):
    """One check: passed exactly when residual <= tol."""
    name: str
    residual: float
    tol: float
    passed: bool

    @field_validator('residual', 'tol')
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError(f"must be finite, got {value}")
        return value

    @model_validator(mode='after')
    def _consistent(self) -> 'Verdict':
        if self.passed != (self.residual <= self.tol):
            raise ValueError("passed must equal residual <= tol")
        return self

    @classmethod
    def judge(cls, name: str, residual: float, tol: float) -> 'Verdict':
        return cls(name=name, residual=residual, tol=tol, passed=residual <= tol)

    def line(self) -> str:
        return f"{self.name} {self.residual:.3e} {self.tol:.1e} {'PASS' if self.passed else 'FAIL'}"


# --- sampling helpers ---

def moderate_group(rng: np.random.Generator, bound: float = 4.0) -> GroupElement:
    """Random SL(2,R) element with every entry at most bound in size."""
    while True:
        g = GroupElement.random(rng)
        if np.abs(g.as_array()).max() <= bound:
            return g


def random_cycle(rng: np.random.Generator, with_k: bool = False, with_n: bool = False) -> Cycle:
    k, l, n, m = rng.uniform(-2.0, 2.0, size=4)
    if with_k:
        k = rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0)
    if with_n:
        n = rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0)
    return Cycle(k, l, n, m)


def incidence_row(p: Point, sigma: int) -> np.ndarray:
    u, v = p
    return np.array([u * u - sigma * v * v, -2.0 * u, -2.0 * v, 1.0])


def cycle_through(points: Sequence[Point], sigma: int) -> Cycle:
    """Least-squares cycle through the points of the sigma-drawing."""
    design = np.vstack([incidence_row(p, sigma) for p in points])
    _, _, vt = np.linalg.svd(design)
    return Cycle.from_array(vt[-1])


def projective_gap(c1: Cycle, c2: Cycle) -> float:
    a, b = c1.as_array(), c2.as_array()
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    if np.dot(a, b) < 0:
        b = -b
    return float(np.abs(a - b).max())


def relative_incidence(c: Cycle, p: Point, sigma: int) -> float:
    row = incidence_row(p, sigma)
    return abs(incidence(c, p, sigma)) / (np.linalg.norm(c.as_array()) * np.linalg.norm(row))


def disagreement(flags: List[bool]) -> float:
    return float(sum(1 for f in flags if not f)) / max(1, len(flags))


# --- suites ---

def moebius_suite(rng: np.random.Generator, samples: int) -> List[Check]:
    recompose, action = 0.0, 0.0
    for _ in range(samples):
        g = GroupElement.random(rng)
        error = np.abs(iwasawa(g).compose().as_array() - g.as_array()).max()
        recompose = max(recompose, float(error / max(1.0, np.abs(g.as_array()).max())))

    for sigma in SIGMAS:
        for _ in range(samples // 3):
            g1, g2 = moderate_group(rng), moderate_group(rng)
            z = HyperNumber(rng.uniform(-2.0, 2.0), rng.uniform(0.2, 2.0), sigma)
            try:
                w1 = moebius(g1, moebius(g2, z, SKIP_TOL), SKIP_TOL)
                w2 = moebius(g1 @ g2, z, SKIP_TOL)
            except ZeroDivisor:
                continue
            gap = math.hypot(w1.re - w2.re, w1.im - w2.im) / (1.0 + math.hypot(w2.re, w2.im))
            action = max(action, gap)

    checks: List[Check] = [('moebius.iwasawa_recompose', recompose, 1e-12),
                           ('moebius.action_law', action, 1e-9)]

    expected = {Sigma.ELLIPTIC: 'circle', Sigma.PARABOLIC: 'parabola', Sigma.HYPERBOLIC: 'hyperbola'}
    for sigma in SIGMAS:
        worst = 0.0
        for t in (0.5, 2.0, 3.0):
            # keep clear of the angle where K(phi) sends (0, t) to infinity
            reach = 1.2 if sigma != Sigma.HYPERBOLIC else 0.8 * math.atan(1.0 / t)
            orbit = k_orbit(HyperNumber(0.0, t, sigma), np.linspace(-reach, reach, 64))
            kind, residual = fit_conic([z.as_point() for z in orbit if z is not None])
            worst = max(worst, residual if kind == expected[sigma] else 1.0)
        checks.append((f"moebius.k_orbit_{sigma.kind}", worst, 1e-6))
    return checks


def fscc_suite(rng: np.random.Generator, samples: int) -> List[Check]:
    checks: List[Check] = []
    for sigma in SIGMAS:
        for sigma_breve in SIGMAS:
            params = FsccParams(sigma_breve, 1.0)
            worst = 0.0
            for _ in range(samples):
                anchors = [tuple(rng.uniform(-2.0, 2.0, size=2)) for _ in range(3)]
                c = cycle_through(anchors, sigma)
                g = moderate_group(rng)
                image = transform(c, g, params)
                us = rng.uniform(-3.0, 3.0, size=17).tolist() + [p[0] for p in anchors]
                for p in points_on(c, sigma, us)[:20]:
                    try:
                        gp = moebius(g, HyperNumber(p[0], p[1], sigma), SKIP_TOL).as_point()
                    except ZeroDivisor:
                        continue
                    worst = max(worst, relative_incidence(image, gp, sigma))
            checks.append((f"fscc.intertwining_{sigma.kind}_{sigma_breve.kind}", worst, 1e-8))

    centres, det_drift, focus_sign = 0.0, 0.0, 0.0
    for _ in range(samples):
        c = random_cycle(rng, with_k=True, with_n=True)
        ce, cp, ch = (centre(c, kind) for kind in SIGMAS)
        centres = max(centres, abs(ce[0] - ch[0]), abs(ce[1] + ch[1]),
                      abs(cp[0] - 0.5 * (ce[0] + ch[0])), abs(cp[1] - 0.5 * (ce[1] + ch[1])))
        params = FsccParams(SIGMAS[rng.integers(3)], 1.0)
        drift = abs(determinant(transform(c, moderate_group(rng)), params) - determinant(c, params))
        det_drift = max(det_drift, drift / max(1.0, float(np.dot(c.as_array(), c.as_array()))))
        f1, f2 = focus(c, params), focus(c, params.with_s(-1.0))
        focus_sign = max(focus_sign, abs(f1[0] - f2[0]), abs(f1[1] - f2[1]))
    checks += [('fscc.centre_identities', centres, 1e-12),
               ('fscc.determinant_invariance', det_drift, 1e-9),
               ('fscc.focus_s_sign', focus_sign, 1e-12)]

    # K-orbits of (0, t) fitted as cycles all lie on one plane of cycle space
    fitted, gaps = [], 0.0
    for sigma in SIGMAS:
        for t in (0.5, 1.5, 2.5):
            reach = 1.2 if sigma != Sigma.HYPERBOLIC else 0.8 * math.atan(1.0 / t)
            orbit = [z.as_point() for z in k_orbit(HyperNumber(0.0, t, sigma), np.linspace(-reach, reach, 16))
                     if z is not None]
            c = cycle_through(orbit, sigma)
            gaps = max(gaps, projective_gap(c, k_orbit_cycle(t, sigma)))
            fitted.append(c.as_array() / np.linalg.norm(c.as_array()))
    singular = np.linalg.svd(np.vstack(fitted), compute_uv=False)
    checks += [('fscc.k_orbit_cycles', gaps, 1e-9),
               ('fscc.k_orbit_plane', float(singular[2] / singular[0]), 1e-9)]
    return checks


def orthogonality_suite(rng: np.random.Generator, samples: int) -> List[Check]:
    euclid = FsccParams(Sigma.ELLIPTIC, 1.0)
    calibration: List[bool] = []
    for i in range(samples):
        c1 = rng.uniform(-2.0, 2.0, size=2)
        r1 = rng.uniform(0.2, 2.0)
        c2 = rng.uniform(-2.0, 2.0, size=2)
        gap = float(np.dot(c1 - c2, c1 - c2))
        if i % 2 == 0 and gap > r1 * r1 + 0.01:
            r2_sq = gap - r1 * r1
        else:
            r2_sq = rng.uniform(0.04, 4.0)
        oracle = gap - r1 * r1 - r2_sq
        if 0.0 < abs(oracle) < BORDERLINE:
            continue
        a = Cycle.from_centre(c1[0], c1[1], r1 * r1)
        b = Cycle.from_centre(c2[0], c2[1], r2_sq)
        calibration.append(is_orthogonal(a, b, euclid) == (abs(oracle) < BORDERLINE))

    zero_radius: List[bool] = []
    self_orth: List[bool] = []
    for i in range(samples):
        sigma = SIGMAS[i % 3]
        params = FsccParams(sigma, 1.0)
        anchors = [tuple(rng.uniform(-2.0, 2.0, size=2)) for _ in range(3)]
        if sigma == Sigma.PARABOLIC:
            # parabolic zero-radius cycles are centred on the real axis
            anchors[0] = (anchors[0][0], 0.0)
        c = cycle_through(anchors, sigma)
        p = anchors[0] if i % 2 == 0 else tuple(rng.uniform(-2.0, 2.0, size=2))
        z = zero_radius_at((p[0], -sigma * p[1]), params)
        measure = relative_incidence(c, centre(z, sigma), sigma)
        if not 1e-12 < measure < BORDERLINE:
            zero_radius.append(is_orthogonal(c, z, params) == (measure < BORDERLINE))

        x = zero_radius_at(tuple(rng.uniform(-2.0, 2.0, size=2)), params) if i % 2 == 0 else random_cycle(rng)
        x = Cycle.from_array(rng.uniform(0.5, 2.0) * x.as_array())
        unit = x.as_array() / np.linalg.norm(x.as_array())
        det = abs(determinant(Cycle.from_array(unit), params))
        if 1e-12 < det < BORDERLINE:
            continue
        self_orth.append(is_orthogonal(x, x, params) == (det < BORDERLINE))

    invariance: List[bool] = []
    s_invariance: List[bool] = []
    shape = 0.0
    involution = 0.0
    for i in range(samples):
        sigma = SIGMAS[i % 3]
        params = FsccParams(SIGMAS[rng.integers(3)], 1.0)
        g = moderate_group(rng)
        c = random_cycle(rng, with_k=True, with_n=True)
        if i % 2 == 0:
            basis = orthogonal_pencil(c, tuple(rng.uniform(-2.0, 2.0, size=2)), sigma, params)
            x = pencil_member(basis, rng.uniform(0.0, math.pi))
        else:
            x = random_cycle(rng)
        before = is_orthogonal(x, c, params)
        value = abs(pairing(x, c, params)) / (np.linalg.norm(x.as_array()) * np.linalg.norm(c.as_array()))
        if before or value > 1e-4:
            invariance.append(before == is_orthogonal(transform(x, g), transform(c, g), params))

        if i % 2 == 0:
            free = null_space(s_pairing_covector(c, params).reshape(1, -1))
            y = Cycle.from_array(free @ rng.normal(size=free.shape[1]))
        else:
            y = random_cycle(rng)
        before = is_s_orthogonal(y, c, params)
        value = abs(s_pairing(y, c, params)) / (np.linalg.norm(y.as_array()) * np.linalg.norm(c.as_array()) ** 2)
        if before or value > 1e-4:
            s_invariance.append(before == is_s_orthogonal(transform(y, g), transform(c, g), params))

        image = to_matrix(c, params) @ to_matrix(x, params).conjugate() @ to_matrix(c, params)
        scale = max(1.0, float(np.abs(image.real).max()), float(np.abs(image.unit).max()))
        shape = max(shape, abs(image.real[0, 0] + image.real[1, 1]) / scale,
                    abs(image.unit[0, 0] - image.unit[1, 1]) / scale,
                    abs(image.unit[0, 1]) / scale, abs(image.unit[1, 0]) / scale)
        if abs(determinant(c, params)) > 0.1:
            involution = max(involution, projective_gap(reflect(c, reflect(c, x, params), params), x))

    return [('orthogonality.euclidean_calibration', disagreement(calibration), 0.0),
            ('orthogonality.zero_radius_incidence', disagreement(zero_radius), 0.0),
            ('orthogonality.self_orthogonal_zero_det', disagreement(self_orth), 0.0),
            ('orthogonality.moebius_invariance', disagreement(invariance), 0.0),
            ('orthogonality.s_moebius_invariance', disagreement(s_invariance), 0.0),
            ('orthogonality.reflection_shape', shape, 1e-12),
            ('orthogonality.reflection_involution', involution, 1e-9)]


def ghosts_suite(rng: np.random.Generator, samples: int) -> List[Check]:
    reduction, s_reduction, centres, foci, shared_roots = 0.0, 0.0, 0.0, 0.0, 0.0
    for i in range(samples):
        sigma = SIGMAS[i % 3]
        params = FsccParams(SIGMAS[rng.integers(3)], float(rng.choice([-1.0, 1.0])))
        plain = traditional_params(sigma)
        c = random_cycle(rng, with_k=True, with_n=True)
        x = random_cycle(rng)
        scale = np.linalg.norm(x.as_array()) * np.linalg.norm(c.as_array())

        g1 = ghost(c, sigma, params)
        reduction = max(reduction, abs(pairing(x, g1, plain) - pairing(x, c, params)) / scale)
        g2 = s_ghost(c, sigma, params)
        s_reduction = max(s_reduction, abs(pairing(x, g2, plain) - s_pairing(x, c, params))
                          / (scale * np.linalg.norm(c.as_array())))

        chi = plain.sigma_breve
        a, b = centre(g1, chi), centre(c, params.sigma_breve)
        centres = max(centres, abs(a[0] - b[0]), abs(a[1] - b[1]))
        a, b = centre(g2, chi), focus(c, params)
        foci = max(foci, abs(a[0] - b[0]) / (1.0 + abs(b[0])), abs(a[1] - b[1]) / (1.0 + abs(b[1])))
        for other in (g1, g2):
            ra, rb = roots(other), roots(c)
            if len(ra) != len(rb):
                shared_roots = 1.0
            elif ra:
                shared_roots = max(shared_roots, max(abs(p - q) for p, q in zip(ra, rb)))
    return [('ghosts.orthogonality_reduction', reduction, 1e-12),
            ('ghosts.s_orthogonality_reduction', s_reduction, 1e-12),
            ('ghosts.centre', centres, 1e-12),
            ('ghosts.s_ghost_centre_is_focus', foci, 1e-9),
            ('ghosts.shared_roots', shared_roots, 1e-9)]


def metric_suite(rng: np.random.Generator, samples: int) -> List[Check]:
    extremal, ordering = 0.0, 0.0
    for i in range(samples):
        sigma = SIGMAS[i % 3]
        p = tuple(rng.uniform(-2.0, 2.0, size=2))
        q = tuple(rng.uniform(-2.0, 2.0, size=2))
        try:
            value = extremal_distance_sq(p, q, sigma, sigma)
        except NoExtremum:
            continue
        exact = distance_sq(p, q, sigma)
        extremal = max(extremal, abs(value - exact) / max(1.0, abs(exact)))
        dh, dp, de = (distance_sq(p, q, s) for s in (Sigma.HYPERBOLIC, Sigma.PARABOLIC, Sigma.ELLIPTIC))
        ordering = max(ordering, dh - dp, dp - de, 0.0)

    conformal = 0.0
    for i in range(samples):
        sigma = SIGMAS[i % 3]
        kind = LengthKind.distance(sigma)
        g = moderate_group(rng, bound=2.0)
        y = (rng.uniform(-1.0, 1.0), rng.uniform(0.5, 1.5))
        directions = []
        while len(directions) < 2:
            t = rng.uniform(-math.pi, math.pi)
            d = (math.cos(t), math.sin(t))
            if abs(distance_sq((0.0, 0.0), d, sigma)) > 0.1:
                directions.append(d)
        try:
            first, second = (conformal_limit(g, y, d, kind) for d in directions)
        except (ZeroDivisor, NoSuchCycle, NullLength):
            continue
        conformal = max(conformal, abs(first - second) / max(abs(first), abs(second)))

    perpendicular: List[bool] = []
    for i in range(samples):
        sigma = SIGMAS[i % 3]
        params = FsccParams(sigma, 1.0)
        kind = LengthKind.from_focus(sigma)
        A = (rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
        B = (rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
        try:
            c = focal_cycle(A, B, kind, params)
        except NoSuchCycle:
            continue
        line = Cycle(0.0, -(B[1] - A[1]) / 2.0, (B[0] - A[0]) / 2.0,
                     -(B[1] - A[1]) * A[0] + (B[0] - A[0]) * A[1])
        tangent = tangent_direction(c, B, sigma)
        if math.hypot(*tangent) < 1e-3:
            continue
        angle = math.atan2(tangent[1], tangent[0]) + rng.choice([-1.0, 1.0]) * rng.uniform(0.3, 1.2)
        try:
            along = is_perpendicular((A, B), tangent, kind, params)
            across = is_perpendicular((A, B), (math.cos(angle), math.sin(angle)), kind, params)
        except (NonSmooth, NoSuchCycle):
            continue
        perpendicular.append(along and not across and is_s_orthogonal(line, c, params))

    return [('metric.extremal_distance', extremal, 1e-6),
            ('metric.distance_ordering', ordering, 0.0),
            ('metric.conformal_limit', conformal, 1e-4),
            ('metric.focal_perpendicular', disagreement(perpendicular), 0.0)]


def _spectrum_gap(measured: JetSpectrum, expected: JetSpectrum) -> float:
    """Largest eigenvalue error of a matching with equal orders, or 1 if none exists."""
    if len(measured) != len(expected):
        return 1.0
    unused = list(expected.points)
    worst = 0.0
    for point in measured:
        candidates = [q for q in unused if q.k == point.k]
        if not candidates:
            return 1.0
        best = min(candidates, key=lambda q: abs(q.lam - point.lam))
        worst = max(worst, abs(best.lam - point.lam))
        unused.remove(best)
    return min(worst, 1.0)


def _shortest_blocks_agree(measured: JetSpectrum, predicted: JetSpectrum, tol: float = 1e-6) -> bool:
    for point in predicted:
        orders = [q.k for q in measured if abs(q.lam - point.lam) <= tol]
        if not orders or min(orders) != point.k:
            return False
    return True


def _random_mapping_case(rng: np.random.Generator) -> Tuple[np.ndarray, HoloMap]:
    """Block matrix with well separated eigenvalues and a map keeping their images apart."""
    while True:
        count = int(rng.integers(1, 5))
        eigenvalues: List[complex] = []
        while len(eigenvalues) < count:
            lam = 0.8 * math.sqrt(rng.uniform()) * complex(np.exp(1j * rng.uniform(-math.pi, math.pi)))
            if all(abs(lam - mu) > 0.1 for mu in eigenvalues):
                eigenvalues.append(lam)
        blocks = []
        for lam in eigenvalues:
            for _ in range(int(rng.integers(1, 3))):
                blocks.append((int(rng.integers(1, 4)), lam))
        if sum(k for k, _ in blocks) > 10:
            continue
        orders = [int(rng.integers(1, 3)) for _ in eigenvalues]
        if sum(d - 1 for d in orders) + 1 > 5:
            continue
        phi = HoloMap.with_zero_orders(eigenvalues, orders)
        images = [complex(phi(lam)) for lam in eigenvalues]
        if all(abs(a - b) > 0.05 for i, a in enumerate(images) for b in images[i + 1:]):
            return block_matrix(blocks), phi


def spectrum_suite(rng: np.random.Generator, samples: int) -> List[Check]:
    checks: List[Check] = []
    a = example_matrix()
    phi = HoloMap.with_zero_orders([lam for _, lam in EXAMPLE_BLOCKS], [1, 3, 2, 1])
    measured = jet_spectrum(apply_poly(phi, a))
    source = JetSpectrum.from_blocks(EXAMPLE_BLOCKS)
    checks.append(('spectrum.example_jordan_structure',
                   _spectrum_gap(measured, mapped_jordan_structure(jet_spectrum(a), phi)), 1e-6))
    predicted = spectral_map(source, phi)
    orders_ok = sorted(p.k for p in predicted) == [1, 1, 2, 3] and len(predicted.clamped) == 1
    checks.append(('spectrum.example_spectral_map',
                   0.0 if orders_ok and _shortest_blocks_agree(measured, predicted) else 1.0, 0.0))
    calculus = riesz_dunford(phi, a)
    checks.append(('spectrum.riesz_dunford',
                   float(np.abs(calculus - apply_poly(phi, a)).max()), 1e-8))

    mapping: List[bool] = []
    similarity: List[bool] = []
    for _ in range(samples):
        b, psi = _random_mapping_case(rng)
        try:
            jets = jet_spectrum(b)
            image = jet_spectrum(apply_poly(psi, b))
        except IllConditioned as e:
            logger.warning(f"Spectral mapping sample skipped: {str(e)}")
            mapping.append(False)
            continue
        full = mapped_jordan_structure(jets, psi)
        mapping.append(_spectrum_gap(image, full) <= 1e-6
                       and _shortest_blocks_agree(image, spectral_map(jets, psi)))

        n = b.shape[0]
        while True:
            p = np.eye(n) + 0.3 * (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / math.sqrt(n)
            if np.linalg.cond(p) < 100.0:
                break
        try:
            similar = jet_spectrum(p @ b @ np.linalg.inv(p))
        except IllConditioned:
            similarity.append(False)
            continue
        similarity.append(_spectrum_gap(similar, jets) <= 1e-6)
    checks += [('spectrum.spectral_mapping', disagreement(mapping), 0.0),
               ('spectrum.similarity_invariance', disagreement(similarity), 0.0)]

    cocycle, action = 0.0, 0.0
    for _ in range(samples * 4):
        g1, g2 = SUElement.random(rng, 0.8), SUElement.random(rng, 0.8)
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        x = 0.6 * m / np.linalg.norm(m, 2)
        lhs = resolvent(g1, x) @ resolvent(g2, matrix_moebius(g1, x))
        rhs = resolvent(g1 @ g2, x)
        cocycle = max(cocycle, float(np.abs(lhs - rhs).max() / max(1.0, np.abs(rhs).max())))
        lhs = matrix_moebius(g1, matrix_moebius(g2, x))
        rhs = matrix_moebius(g2 @ g1, x)
        action = max(action, float(np.abs(lhs - rhs).max()))
    checks += [('spectrum.resolvent_cocycle', cocycle, 1e-9),
               ('spectrum.action_law', action, 1e-9)]

    krylov = [krylov_dimension(jordan_block(k, 0.0), np.eye(k)[:, k - 1]) == k for k in range(1, 9)]
    checks.append(('spectrum.jordan_zero_krylov', disagreement(krylov), 0.0))
    return checks


def analytic_suite(rng: np.random.Generator, samples: int) -> List[Check]:
    settings = get_settings().analytic
    size = settings.grid_size
    recovery, taylor, unitary, hardy, intertwining = 0.0, 0.0, 0.0, 0.0, 0.0
    for _ in range(samples):
        u = 0.8 * math.sqrt(rng.uniform()) * complex(np.exp(1j * rng.uniform(-math.pi, math.pi)))
        for degree in range(9):
            f = CircleFunction.from_callable(lambda z, d=degree: z ** d, size)
            recovery = max(recovery, abs(cauchy_transform(f, u) - u ** degree))

        a = 0.9 * math.sqrt(rng.uniform()) * complex(np.exp(1j * rng.uniform(-math.pi, math.pi)))
        closed = np.array(taylor_coeffs(a, 8))
        quadrature = np.array(taylor_coeffs_by_quadrature(a, 8, size))
        taylor = max(taylor, float(np.abs(closed - quadrature).max()))

        g = SUElement.random(rng, 0.5)
        coeffs = rng.normal(size=6) + 1j * rng.normal(size=6)
        f = CircleFunction.from_callable(lambda z: np.polyval(coeffs, z), size)
        image = rho1_apply(g, f)
        unitary = max(unitary, abs(image.norm() - f.norm()) / f.norm())
        negative = image.fourier()[size // 2 + 1:]
        hardy = max(hardy, float(np.abs(negative).max()) / f.norm())

        sl = moderate_group(rng, bound=2.0)
        z = complex(rng.uniform(-2.0, 2.0), rng.uniform(0.2, 2.0))
        w = moebius(sl, HyperNumber(z.real, z.imag, Sigma.ELLIPTIC)).to_complex()
        expected = disk_moebius(SUElement.from_sl(sl).inverse(), cayley(z))
        intertwining = max(intertwining, abs(cayley(w) - expected))

    errors = []
    for points in (33, 65, 129):
        patch = HalfPlanePatch(settings.patch.xmin, settings.patch.xmax, settings.patch.ymin,
                               settings.patch.ymax, points)
        values = patch.sample(lambda grid: 1.0 / (grid + 1j))
        ix, iy = patch.index_of(2.1j)
        errors.append(abs(dirac_residual(patch, values, ix, iy)))
    order = min(observed_order(errors))

    disk_patch = dict(xmin=-0.4, xmax=0.4, ymin=0.1, ymax=0.6)
    f = CircleFunction.from_callable(lambda z: 1.0 / (z - 1.5) + np.conj(z), size)
    kernel_errors = []
    for points in (17, 33, 65):
        patch = HalfPlanePatch(points=points, **disk_patch)
        centre = (points - 1) // 2
        kernel_errors.append(abs(dirac_residual(patch, cauchy_on_patch(f, patch), centre, centre)))
    kernel_order = min(observed_order(kernel_errors))

    return [('analytic.monomial_recovery', recovery, 1e-8),
            ('analytic.taylor_coefficients', taylor, 1e-10),
            ('analytic.rho1_unitary', unitary, 1e-8),
            ('analytic.rho1_hardy', hardy, 1e-10),
            ('analytic.cayley_intertwining', intertwining, 1e-10),
            ('analytic.dirac_order', max(0.0, 2.0 - order), 0.2),
            ('analytic.cauchy_in_dirac_kernel', max(0.0, 2.0 - kernel_order), 0.2)]


SUITES: Dict[str, Callable[[np.random.Generator, int], List[Check]]] = {
    'moebius': moebius_suite,
    'fscc': fscc_suite,
    'orthogonality': orthogonality_suite,
    'ghosts': ghosts_suite,
    'metric': metric_suite,
    'spectrum': spectrum_suite,
    'analytic': analytic_suite,
}


class SuiteRunner:
    """Registry of named suites, run with a seed and sample count from config."""

    def __init__(self):
        self.suites: Dict[str, Callable[[np.random.Generator, int], List[Check]]] = {}

    def register_suite(self, name: str, suite: Callable[[np.random.Generator, int], List[Check]]) -> None:
        self.suites[name] = suite

    @property
    def names(self) -> List[str]:
        return sorted(self.suites)

    def run(self, name: str, samples: Optional[int] = None, seed: Optional[int] = None,
            tol: Optional[float] = None) -> List[Verdict]:
        """
        Run one suite. tol, when given, replaces every check's tolerance.

        Raises:
            UnknownSuite: name is not registered
        """
        if name not in self.suites:
            raise UnknownSuite(f"Suite {name} not found; expected one of {', '.join(self.names)}")
        settings = get_settings().verification
        seed = settings.seed if seed is None else seed
        samples = settings.samples.get(name, 100) if samples is None else samples
        if samples < 1:
            raise DomainError(f"Sample count must be positive, got {samples}")

        logger.info(f"Running suite {name}: {samples} samples, seed {seed}")
        rng = np.random.default_rng(seed)
        verdicts = []
        for check_name, residual, default_tol in self.suites[name](rng, samples):
            residual = float(residual)
            if not math.isfinite(residual):
                logger.error(f"Check {check_name} produced residual {residual}; recorded as a failure")
                residual = sys.float_info.max
            verdicts.append(Verdict.judge(check_name, residual, default_tol if tol is None else tol))
        failed = [v.name for v in verdicts if not v.passed]
        if failed:
            logger.warning(f"Suite {name}: {len(failed)} check(s) failed: {', '.join(failed)}")
        else:
            logger.info(f"Suite {name}: all {len(verdicts)} checks passed")
        return verdicts

    def run_all(self, samples: Optional[int] = None, seed: Optional[int] = None,
                tol: Optional[float] = None) -> List[Verdict]:
        verdicts: List[Verdict] = []
        for name in self.names:
            verdicts.extend(self.run(name, samples, seed, tol))
        return verdicts


def default_runner() -> SuiteRunner:
    runner = SuiteRunner()
    for name, suite in SUITES.items():
        runner.register_suite(name, suite)
    return runner

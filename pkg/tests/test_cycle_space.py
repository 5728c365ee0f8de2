import math

import numpy as np
import pytest
from hypothesis import given, seed
from hypothesis import strategies as st

from errors import DegenerateCycle, DomainError, MalformedMatrix, UndefinedFocus, ZeroCycle, ZeroDivisor
from hypercomplex import HyperNumber, k_orbit, moebius
from cycle_space import (
    Cycle,
    FsccMatrix,
    FsccParams,
    centre,
    determinant,
    focus,
    from_matrix,
    incidence,
    k_orbit_cycle,
    normalize,
    points_on,
    radius_sq,
    roots,
    same_cycle,
    tangent_direction,
    to_matrix,
    transform,
    zero_radius_at,
)

SIGMAS = (-1, 0, 1)
comps = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False, allow_infinity=False)


def cycle_through(points, sigma):
    rows = [[u * u - sigma * v * v, -2.0 * u, -2.0 * v, 1.0] for u, v in points]
    _, _, vt = np.linalg.svd(np.array(rows))
    return Cycle.from_array(vt[-1])


def test_zero_quadruple_is_not_a_cycle():
    with pytest.raises(ZeroCycle):
        Cycle(0, 0, 0, 0)


def test_cycles_are_immutable():
    c = Cycle(1, 0, 0, -1)
    with pytest.raises(AttributeError):
        c.k = 2.0


def test_unit_circle_from_centre():
    c = Cycle.from_centre(0.0, 0.0, 1.0)
    assert c == Cycle(1, 0, 0, -1)
    assert radius_sq(c) == 1.0
    assert incidence(c, (1.0, 0.0), -1) == 0.0
    assert incidence(c, (0.6, 0.8), -1) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("sigma_breve", [-1, 1])
def test_from_centre_places_the_centre(sigma_breve):
    c = Cycle.from_centre(0.5, -1.5, 2.0, sigma_breve)
    assert np.allclose(centre(c, sigma_breve), (0.5, -1.5))
    assert radius_sq(c, FsccParams(sigma_breve)) == pytest.approx(2.0)


def test_parabolic_centre_does_not_build_a_cycle():
    with pytest.raises(DomainError):
        Cycle.from_centre(0.0, 1.0, 1.0, 0)


@seed(1)
@given(comps, comps, comps, comps)
def test_centres_of_each_kind(k, l, n, m):
    if abs(k) < 1e-3:
        return
    c = Cycle(k, l, n, m)
    for kind in SIGMAS:
        u, v = centre(c, kind)
        assert u == pytest.approx(l / k)
        assert v == pytest.approx(-kind * n / k)


def test_lines_have_no_centre_radius_or_focus():
    line = Cycle(0.0, 1.0, 2.0, 3.0)
    with pytest.raises(DegenerateCycle):
        centre(line, -1)
    with pytest.raises(DegenerateCycle):
        radius_sq(line)
    with pytest.raises(DegenerateCycle):
        focus(line)


def test_focus_needs_non_zero_n():
    with pytest.raises(UndefinedFocus):
        focus(Cycle(1, 0, 0, -1))


def test_focus_ignores_sign_of_s():
    c = Cycle(1.0, 0.3, 0.7, -2.0)
    for sb in SIGMAS:
        assert focus(c, FsccParams(sb, 2.0)) == focus(c, FsccParams(sb, -2.0))


def test_matrix_determinant_matches_formula():
    c = Cycle(1.5, -0.5, 0.25, 2.0)
    for sb in SIGMAS:
        params = FsccParams(sb, 0.5)
        det = to_matrix(c, params).determinant()
        assert det.re == pytest.approx(determinant(c, params))
        assert det.im == pytest.approx(0.0)
        assert from_matrix(to_matrix(c, params)) == c


def test_from_matrix_rejects_non_cycle_shapes():
    params = FsccParams()
    with pytest.raises(MalformedMatrix):
        from_matrix(FsccMatrix(np.eye(2), np.zeros((2, 2)), params))
    with pytest.raises(MalformedMatrix):
        from_matrix(FsccMatrix([[1, 0], [0, -1]], [[0, 1], [0, 0]], params))


def test_transform_moves_points_onto_image(rng, sl2):
    for sigma in SIGMAS:
        for _ in range(40):
            g = sl2(bound=3.0)
            points = [tuple(rng.uniform(-2, 2, size=2)) for _ in range(3)]
            c = cycle_through(points, sigma)
            image = transform(c, g)
            scale = np.linalg.norm(image.as_array())
            for p in points:
                try:
                    q = moebius(g, HyperNumber(*p, sigma)).as_point()
                except ZeroDivisor:
                    continue
                if max(abs(q[0]), abs(q[1])) > 1e3:
                    continue
                assert abs(incidence(image, q, sigma)) <= 1e-7 * scale * (1.0 + q[0] ** 2 + q[1] ** 2)


def test_transform_keeps_determinant(rng, sl2):
    for _ in range(100):
        c = Cycle.from_array(rng.uniform(-2, 2, size=4))
        g = sl2(bound=3.0)
        for sb in SIGMAS:
            params = FsccParams(sb)
            assert determinant(transform(c, g, params), params) == pytest.approx(
                determinant(c, params), rel=1e-9, abs=1e-9)


def test_zero_radius_cycle_has_zero_determinant():
    for sb in SIGMAS:
        params = FsccParams(sb, 1.5)
        assert determinant(zero_radius_at((0.7, -1.2), params), params) == pytest.approx(0.0, abs=1e-12)


def test_same_cycle_up_to_scale():
    c = Cycle(1.0, 2.0, -1.0, 0.5)
    assert same_cycle(c, Cycle.from_array(-3.0 * c.as_array()))
    assert not same_cycle(c, Cycle(1.0, 2.0, -1.0, 0.6))


def test_normalize_scales_to_unit_k():
    assert normalize(Cycle(2, 2, 4, 6)) == Cycle(1, 1, 2, 3)
    assert normalize(Cycle(0, 0, 2, 4)) == Cycle(0, 0, 1, 2)


def test_roots_and_points_of_unit_circle():
    circle = Cycle(1, 0, 0, -1)
    assert roots(circle) == [-1.0, 1.0]
    assert sorted(points_on(circle, -1, [0.0])) == [(0.0, -1.0), (0.0, 1.0)]
    assert tangent_direction(circle, (1.0, 0.0), -1) == (0.0, 1.0)


@pytest.mark.parametrize("sigma", SIGMAS)
@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_k_orbits_lie_on_their_cycle(sigma, t):
    c = k_orbit_cycle(t, sigma)
    assert c.l == 0.0 and c.k == c.m
    for z in k_orbit(HyperNumber(0.0, t, sigma), np.linspace(-0.6, 0.6, 15)):
        if z is None:
            continue
        assert incidence(c, z.as_point(), sigma) == pytest.approx(0.0, abs=1e-9 * (1 + abs(z.re) + abs(z.im)) ** 2)


def test_k_orbit_cycle_through_origin_is_rejected():
    with pytest.raises(DomainError):
        k_orbit_cycle(0.0, -1)
    assert math.isfinite(k_orbit_cycle(1.0, 1).n)

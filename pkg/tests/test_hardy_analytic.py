import math

import numpy as np
import pytest

from errors import DomainError, OutOfPatch
from hypercomplex import GroupElement, HyperNumber, cayley, moebius
from jet_calculus import SUElement
from hardy_analytic import (
    CircleFunction,
    HalfPlanePatch,
    as_disk_point,
    cauchy_on_patch,
    cauchy_transform,
    coherent_state,
    dirac_residual,
    disk_moebius,
    hardy_pairing,
    observed_order,
    rho1_apply,
    taylor_coeffs,
    taylor_coeffs_by_quadrature,
)


@pytest.mark.parametrize("size", [8, 10, 100])
def test_sample_count_must_be_a_power_of_two(size):
    with pytest.raises(DomainError):
        CircleFunction(np.ones(size))


def test_fourier_coefficients_of_polynomial():
    f = CircleFunction.from_callable(lambda z: 2.0 + 3.0 * z ** 2, size=32)
    coeffs = f.fourier()
    assert coeffs[0] == pytest.approx(2.0)
    assert coeffs[2] == pytest.approx(3.0)
    assert np.allclose(np.delete(coeffs, [0, 2]), 0.0, atol=1e-12)


@pytest.mark.parametrize("degree", range(0, 9))
def test_cauchy_integral_recovers_monomials(degree):
    f = CircleFunction.from_callable(lambda z: z ** degree, size=128)
    u = 0.3 + 0.2j
    assert abs(cauchy_transform(f, u) - u ** degree) < 1e-8


def test_raw_orientation_is_the_coherent_state_pairing():
    f = CircleFunction.from_callable(lambda z: np.exp(z), size=256)
    u = -0.4 + 0.1j
    raw = cauchy_transform(f, u, raw=True)
    assert raw == pytest.approx(-cauchy_transform(f, u))
    assert hardy_pairing(f, coherent_state(u, size=256)) == pytest.approx(raw)


def test_points_outside_the_disk_are_rejected():
    with pytest.raises(DomainError):
        as_disk_point(1.0)
    with pytest.raises(DomainError):
        coherent_state(0.6 + 0.9j)


def test_taylor_coefficients_match_quadrature():
    a = 0.5 + 0.3j
    closed = taylor_coeffs(a, 8)
    assert np.allclose(closed, taylor_coeffs_by_quadrature(a, 8), atol=1e-10)
    assert closed[0] == pytest.approx(np.sqrt(1 - abs(a) ** 2))
    with pytest.raises(ValueError):
        taylor_coeffs(a, 0)


def test_rho1_of_identity_changes_nothing():
    f = CircleFunction.from_callable(lambda z: z ** 3 - 0.5 * z, size=64)
    assert np.allclose(rho1_apply(SUElement.identity(), f).samples, f.samples, atol=1e-12)


def test_rho1_is_unitary_on_analytic_functions(rng):
    f = CircleFunction.from_callable(lambda z: z ** 2 + 0.5 * z + 0.25, size=1024)
    for _ in range(3):
        g = SUElement.random(rng, max_beta=0.5)
        image = rho1_apply(g, f)
        assert image.norm() == pytest.approx(f.norm(), abs=1e-8)
        assert np.allclose(image.fourier()[-512:], 0.0, atol=1e-10)


def test_cayley_intertwines_the_two_actions():
    g = GroupElement(2.0, 1.0, 1.0, 1.0)
    h = SUElement.from_sl(g)
    for z in [0.3 + 1.2j, -1.0 + 0.5j, 2.0 + 3.0j]:
        image = moebius(g, HyperNumber(z.real, z.imag, -1)).to_complex()
        assert abs(cayley(image) - disk_moebius(h.inverse(), cayley(z))) < 1e-10


def test_cauchy_integral_on_a_patch():
    f = CircleFunction.from_callable(lambda z: z ** 2, size=256)
    patch = HalfPlanePatch(-0.3, 0.3, 0.1, 0.5, 9)
    assert np.allclose(cauchy_on_patch(f, patch), patch.grid ** 2, atol=1e-10)
    with pytest.raises(DomainError):
        cauchy_on_patch(f, HalfPlanePatch())


def test_patch_must_sit_in_upper_half_plane():
    with pytest.raises(DomainError):
        HalfPlanePatch(ymin=0.0)
    with pytest.raises(DomainError):
        HalfPlanePatch(points=3)


def test_dirac_operator_kills_analytic_functions_to_second_order():
    errors = []
    for points in (33, 65, 129):
        patch = HalfPlanePatch(points=points)
        values = patch.sample(lambda z: 1.0 / (z + 1j))
        ix, iy = patch.index_of(2.1j)
        assert patch.grid[ix, iy] == pytest.approx(2.1j)
        errors.append(abs(dirac_residual(patch, values, ix, iy)))
    orders = observed_order(errors)
    assert min(orders) == pytest.approx(2.0, abs=0.2)


def test_dirac_operator_needs_interior_points():
    patch = HalfPlanePatch(points=9)
    values = patch.sample(lambda z: z)
    with pytest.raises(OutOfPatch):
        dirac_residual(patch, values, 1, 4)
    assert dirac_residual(patch, values, 4, 4) == pytest.approx(0.0, abs=1e-12)


def test_observed_order():
    assert observed_order([4.0, 1.0, 0.25]) == [2.0, 2.0]


def test_observed_order_of_exact_results():
    assert observed_order([1e-3, 0.0, 0.0]) == [math.inf, math.inf]
    assert observed_order([0.0, 1e-3]) == [-math.inf]


def test_cauchy_images_are_in_the_dirac_kernel():
    # conj(z) on the circle has only negative frequencies and drops out of the Cauchy integral
    f = CircleFunction.from_callable(lambda z: 1.0 / (z - 1.5) + np.conj(z), 1024)
    errors = []
    for points in (17, 33, 65):
        patch = HalfPlanePatch(-0.4, 0.4, 0.1, 0.6, points)
        values = cauchy_on_patch(f, patch)
        centre = (points - 1) // 2
        assert values[centre, centre] == pytest.approx(1.0 / (patch.grid[centre, centre] - 1.5), abs=1e-12)
        errors.append(abs(dirac_residual(patch, values, centre, centre)))
    assert max(errors) < 1e-3
    assert min(observed_order(errors)) == pytest.approx(2.0, abs=0.1)


def test_dirac_operator_detects_antiholomorphic_functions():
    patch = HalfPlanePatch(points=17)
    values = patch.sample(np.conj)
    ix, iy = 8, 8
    assert dirac_residual(patch, values, ix, iy) == pytest.approx(-2j * patch.y[iy])

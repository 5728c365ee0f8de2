import numpy as np
import pytest
from hypothesis import given, seed
from hypothesis import strategies as st

from errors import ConstantMap, DomainError, IllConditioned, MalformedMatrix, SingularResolvent
from hypercomplex import GroupElement
from jet_calculus import (
    EXAMPLE_BLOCKS,
    HoloMap,
    JetSpectrum,
    SUElement,
    apply_poly,
    block_matrix,
    example_matrix,
    jet_spectrum,
    jordan_block,
    krylov_dimension,
    mapped_jordan_structure,
    matrix_moebius,
    module_coherent_state,
    parse_matrix_text,
    resolvent,
    riesz_dunford,
    spectral_map,
    split_jordan_block,
    zero_order,
)


def contraction(rng, n=4, norm=0.5):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return norm * a / np.linalg.norm(a, 2)


@pytest.mark.parametrize("k, d, expected", [
    (4, 3, [2, 1, 1]),
    (3, 1, [3]),
    (1, 2, [1]),
    (5, 2, [3, 2]),
    (6, 3, [2, 2, 2]),
])
def test_split_jordan_block(k, d, expected):
    assert split_jordan_block(k, d) == expected


@seed(1)
@given(st.integers(min_value=1, max_value=12), st.integers(min_value=1, max_value=6))
def test_split_keeps_total_length(k, d):
    blocks = split_jordan_block(k, d)
    assert sum(blocks) == k
    assert max(blocks) - min(blocks) <= 1


def test_example_matrix_jet_spectrum():
    spectrum = jet_spectrum(example_matrix())
    assert spectrum.order == 10
    assert spectrum.matches(JetSpectrum.from_blocks(EXAMPLE_BLOCKS))


def test_repeated_blocks_are_reported_separately():
    spectrum = jet_spectrum(block_matrix([(2, 0.5), (2, 0.5), (1, -0.2)]))
    assert spectrum.matches(JetSpectrum.from_blocks([(2, 0.5), (2, 0.5), (1, -0.2)]))


def test_jet_spectrum_is_similarity_invariant(rng):
    a = example_matrix()
    p = np.eye(10) + 0.2 * rng.uniform(-1, 1, size=(10, 10))
    similar = p @ a @ np.linalg.inv(p)
    assert jet_spectrum(similar).matches(jet_spectrum(a), tol=1e-3)


def test_close_eigenvalues_are_ill_conditioned():
    with pytest.raises(IllConditioned):
        jet_spectrum(np.diag([0.0, 0.005]))


def test_defective_block_needs_the_default_cluster_width(rng):
    p = np.eye(4) + 0.3 * rng.uniform(-1, 1, size=(4, 4))
    similar = p @ jordan_block(4, 0.5) @ np.linalg.inv(p)
    assert np.abs(np.linalg.eigvals(similar) - 0.5).max() > 1e-6
    assert [point.k for point in jet_spectrum(similar)] == [4]
    try:
        tight = jet_spectrum(similar, cluster_tol=1e-7)
    except IllConditioned:
        return
    assert sorted(point.k for point in tight) != [4]


@pytest.mark.parametrize("a", [np.zeros((2, 3)), np.zeros((0, 0)), np.array([[np.inf]])])
def test_malformed_matrices(a):
    with pytest.raises(MalformedMatrix):
        jet_spectrum(a)


def test_order_limit():
    with pytest.raises(MalformedMatrix):
        jet_spectrum(np.eye(3), max_order=2)


def test_zero_orders_of_constructed_map():
    points = [lam for _, lam in EXAMPLE_BLOCKS]
    phi = HoloMap.with_zero_orders(points, [1, 3, 2, 1])
    assert [zero_order(phi, p) for p in points] == [1, 3, 2, 1]
    assert max(abs(phi(p)) for p in points) <= 0.9 + 1e-12


def test_constant_map_has_no_zero_order():
    with pytest.raises(ConstantMap):
        zero_order(HoloMap([2.0]), 0.3)


def test_spectral_map_of_example():
    jets = JetSpectrum.from_blocks(EXAMPLE_BLOCKS)
    points = [lam for _, lam in EXAMPLE_BLOCKS]
    phi = HoloMap.with_zero_orders(points, [1, 3, 2, 1])
    image = spectral_map(jets, phi)
    assert sorted(p.k for p in image) == [1, 1, 2, 3]
    assert len(image.clamped) == 1
    assert image.clamped[0].k == 1
    structure = mapped_jordan_structure(jets, phi)
    assert structure.order == 10
    assert sorted(p.k for p in structure) == [1, 1, 1, 2, 2, 3]


def test_riesz_dunford_agrees_with_horner():
    phi = HoloMap([0.1, 0.5, 0.2j, -0.3])
    a = example_matrix()
    assert np.allclose(riesz_dunford(phi, a), apply_poly(phi, a), atol=1e-8)
    assert np.allclose(apply_poly(HoloMap.identity(), a), a)


def test_su_element_from_sl_has_unit_determinant():
    h = SUElement.from_sl(GroupElement(2.0, 1.0, 1.0, 1.0))
    assert abs(h.alpha) ** 2 - abs(h.beta) ** 2 == pytest.approx(1.0)
    with pytest.raises(DomainError):
        SUElement(1.0, 1.0)


def test_resolvent_cocycle(rng):
    for _ in range(20):
        a = contraction(rng)
        g1, g2 = SUElement.random(rng), SUElement.random(rng)
        lhs = resolvent(g1, a) @ resolvent(g2, matrix_moebius(g1, a))
        assert np.allclose(lhs, resolvent(g1 @ g2, a), atol=1e-9)


def test_matrix_moebius_composes_in_reverse(rng):
    for _ in range(20):
        a = contraction(rng)
        g1, g2 = SUElement.random(rng), SUElement.random(rng)
        lhs = matrix_moebius(g1, matrix_moebius(g2, a))
        assert np.allclose(lhs, matrix_moebius(g2 @ g1, a), atol=1e-9)
        assert np.allclose(matrix_moebius(SUElement.identity(), a), a)


def test_matrix_moebius_needs_a_contraction():
    with pytest.raises(DomainError):
        matrix_moebius(SUElement.identity(), 2.0 * np.eye(2))


@pytest.mark.parametrize("k", range(1, 9))
def test_krylov_dimension_of_nilpotent_block(k):
    a = jordan_block(k, 0.0)
    last = np.zeros(k)
    last[-1] = 1.0
    first = np.zeros(k)
    first[0] = 1.0
    assert krylov_dimension(a, last) == k
    assert krylov_dimension(a, first) == 1


def test_module_coherent_state():
    a = np.diag([0.5, 0.2])
    m = np.array([1.0, 1.0])
    state = module_coherent_state(a, m, 0.0)
    assert np.allclose(state, [-2.0, -5.0])
    with pytest.raises(SingularResolvent):
        module_coherent_state(a, m, 0.5)


def test_parse_block_spec():
    a = parse_matrix_text("J(2, 0.5, 0) + J(1, 0, 0.3)  # two blocks")
    assert a.shape == (3, 3)
    assert a[0, 1] == 1.0
    assert a[2, 2] == 0.3j
    assert np.array_equal(parse_matrix_text("J(2, 0.5, 0) ⊕ J(1, 0, 0.3)"), a)


def test_parse_dense_rows():
    a = parse_matrix_text("1 2\n3 4+1j\n")
    assert np.array_equal(a, np.array([[1, 2], [3, 4 + 1j]]))


@pytest.mark.parametrize("text", ["", "# only a comment", "1 2\n3", "J(2, x, 0)", "a b\nc d"])
def test_parse_rejects_garbage(text):
    with pytest.raises(MalformedMatrix):
        parse_matrix_text(text)

import os

import numpy as np
import pytest

from cycle_space import Cycle, incidence, k_orbit_cycle
from errors import EmptyViewport, InvalidScene, UnresolvedReference
from hypercomplex import fit_conic
from jet_calculus import EXAMPLE_BLOCKS, JetSpectrum
from render import (
    BUILTIN_FIGURES,
    Scene,
    Viewport,
    builtin_figure,
    load_document,
    render,
    render_builtin,
    render_directory,
    render_file,
    render_spectrum,
    trace_cycle,
)

SCENE = """
title: unit circle and its ghost
sigma: -1
sigma_breve: 1
viewport: {xmin: -2, xmax: 2, ymin: -2, ymax: 2}
elements:
  - {type: cycle, id: c, k: 1, l: 0, n: 0.5, m: -1}
  - {type: ghost_of, ref: c, style: {stroke: '#aa0000', dash: '4,2'}}
  - {type: s_ghost_of, ref: c}
  - {type: zero_radius_at, u: 0.5, v: 0.5}
  - {type: point, u: 0, v: 1}
  - {type: orbit, z0: {re: 0, im: 0.5}}
  - {type: family, ref: c, through: [1.0, 1.0], count: 3}
"""

WIDE = Viewport(xmin=-3, xmax=3, ymin=-3, ymax=5)


def test_unit_circle_traces_one_closed_curve():
    curves, dots = trace_cycle(Cycle(1, 0, 0, -1), -1, Viewport())
    assert len(curves) == 1 and dots == []
    curve = np.array(curves[0])
    assert np.allclose(curve[0], curve[-1])
    assert np.allclose(np.hypot(curve[:, 0], curve[:, 1]), 1.0)


@pytest.mark.parametrize("sigma, kind", [(-1, 'circle'), (0, 'parabola'), (1, 'hyperbola')])
def test_k_orbit_cycles_trace_their_conic(sigma, kind):
    c = k_orbit_cycle(2.0, sigma)
    curves, _ = trace_cycle(c, sigma, WIDE)
    points = [p for curve in curves for p in curve]
    assert len(points) > 20
    assert max(abs(incidence(c, p, sigma)) for p in points) < 1e-9
    assert fit_conic(points)[0] == kind


def test_zero_radius_elliptic_cycle_is_a_dot():
    curves, dots = trace_cycle(k_orbit_cycle(1.0, -1), -1, WIDE)
    assert curves == []
    assert np.allclose(dots, [(0.0, 1.0)])


def test_lines_are_traced():
    curves, _ = trace_cycle(Cycle(0, 1, 0, 1), -1, Viewport())
    assert len(curves) == 1
    assert all(u == 0.5 for u, _ in curves[0])
    curves, _ = trace_cycle(Cycle(0, 0, 1, 0), 1, Viewport())
    assert all(v == 0.0 for _, v in curves[0])


def test_scene_renders_deterministically():
    figure = load_document(SCENE)
    assert len(figure.panels) == 1
    first = render(figure.panels[0])
    assert first == render(load_document(SCENE).panels[0])
    assert first.count('<svg') == 1
    assert 'stroke-dasharray:4,2' in first


def test_multi_panel_document():
    text = "title: pair\ncolumns: 2\npanels:\n  - {sigma: 0}\n  - {sigma: 1}\n"
    figure = load_document(text)
    assert [p.sigma for p in figure.panels] == [0, 1]


@pytest.mark.parametrize("text", [
    "elements: [",
    "- 1\n- 2",
    "samples: 10",
    "sigma: 2",
    "s: 0",
    "elements:\n  - {type: spiral}",
    "panels: []",
])
def test_invalid_documents(text):
    with pytest.raises(InvalidScene):
        load_document(text)


def test_empty_viewport():
    with pytest.raises(EmptyViewport):
        load_document("viewport: {xmin: 1, xmax: 1, ymin: 0, ymax: 1}")


def test_unresolved_reference():
    with pytest.raises(UnresolvedReference):
        load_document("elements:\n  - {type: ghost_of, ref: missing}")


FORWARD = """
viewport: {xmin: -2, xmax: 2, ymin: -2, ymax: 2}
elements:
  - {type: ghost_of, ref: a}
  - {type: family, ref: a, through: [1.0, 1.0], count: 2}
  - {type: cycle, id: a, k: 1, l: 0, n: 0.5, m: -1}
"""


def test_references_to_later_cycles_resolve():
    forward = render(load_document(FORWARD).panels[0])
    ordered = FORWARD.replace("  - {type: cycle, id: a, k: 1, l: 0, n: 0.5, m: -1}\n", "")
    ordered = ordered.replace("elements:\n", "elements:\n  - {type: cycle, id: a, k: 1, l: 0, n: 0.5, m: -1}\n")
    assert forward.count('<polyline') == render(load_document(ordered).panels[0]).count('<polyline')


def test_duplicate_cycle_ids():
    with pytest.raises(InvalidScene):
        load_document("elements:\n  - {type: cycle, id: a, k: 1, l: 0, n: 0, m: -1}\n"
                      "  - {type: cycle, id: a, k: 1, l: 0, n: 0, m: -4}")


def test_scene_params():
    scene = Scene(sigma=0, sigma_breve=1, s=-2.0)
    assert scene.params.sigma_breve == 1
    assert scene.params.s == -2.0


@pytest.mark.parametrize("name", BUILTIN_FIGURES)
def test_builtin_figures_render(name):
    svg = render_builtin(name, samples=64)
    assert svg.startswith('<') and '<polyline' in svg


def test_zero_radius_figure_covers_all_nine_combinations():
    figure = builtin_figure('zero-radius', samples=64)
    pairs = {(p.sigma, p.sigma_breve) for p in figure.panels}
    assert len(figure.panels) == 9 and len(pairs) == 9
    with pytest.raises(InvalidScene):
        builtin_figure('mandala')


def test_spectrum_plot_marks_every_jet_point():
    svg = render_spectrum(JetSpectrum.from_blocks(EXAMPLE_BLOCKS), title='example')
    assert svg.count('<circle') == len(EXAMPLE_BLOCKS)
    assert '>example<' in svg


def test_render_file_reports_missing_file(tmp_path):
    with pytest.raises(InvalidScene):
        render_file(str(tmp_path / 'nowhere.yaml'))


def test_render_directory(tmp_path):
    (tmp_path / 'good.yaml').write_text(SCENE, encoding='utf-8')
    (tmp_path / 'bad.yml').write_text("sigma: 7\n", encoding='utf-8')
    (tmp_path / 'notes.txt').write_text("not a scene", encoding='utf-8')
    out = tmp_path / 'out'
    results = render_directory(str(tmp_path), str(out))
    assert len(results) == 2
    assert results[os.path.join(str(tmp_path), 'good.yaml')] == os.path.join(str(out), 'good.svg')
    assert results[os.path.join(str(tmp_path), 'bad.yml')].startswith('Error:')
    assert (out / 'good.svg').read_text(encoding='utf-8').startswith('<')


def test_bundled_scenes_render(tmp_path):
    scenes = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'scenes')
    results = render_directory(scenes, str(tmp_path))
    assert len(results) == 2
    assert not any(r.startswith('Error') for r in results.values())

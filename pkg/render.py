#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Scene Rendering

Turns a declarative scene (YAML) into an SVG picture:
- pydantic models for scenes, their elements and multi-panel figures
- tracing of cycle drawings in each of the three planes, clipped to the viewport
- built-in figures: K-orbits, zero-radius cycles, both orthogonalities
- the jet-spectrum picture: eigenvalues on a tilted disk with stems of
  height equal to the jet order

A scene looks like:

    sigma: -1
    sigma_breve: -1
    s: 1
    samples: 256
    viewport: {xmin: -2, xmax: 2, ymin: -2, ymax: 2}
    elements:
      - {type: cycle, id: unit, k: 1, l: 0, n: 0, m: -1}
      - {type: ghost_of, ref: unit, style: {dash: "4,2"}}
      - {type: point, u: 0, v: 1}
      - {type: orbit, z0: {re: 0, im: 2}, start: -1.5, stop: 1.5}
      - {type: zero_radius_at, u: 1, v: 0.5}
      - {type: family, ref: unit, through: [0, 1.5], count: 6}

A figure groups scenes as panels:

    columns: 3
    panels: [<scene>, <scene>, ...]
"""

import logging
import math
import os
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator

from cycle_space import Cycle, FsccParams, Point, focus, zero_radius_at
from errors import CycleKitError, DomainError, EmptyViewport, InvalidScene, UnresolvedReference
from hypercomplex import HyperNumber, Sigma, as_sigma, k_orbit
from invariants import ghost, orthogonal_pencil, pencil_member, s_ghost
from jet_calculus import JetSpectrum

logger = logging.getLogger('CycleKit.Render')

PANEL_SIZE = 300.0
PANEL_GAP = 30.0
CLIP_MARGIN = 0.05


class Style(BaseModel):
    stroke: str = '#000000'
    width: float = Field(default=1.0, gt=0)
    dash: Optional[str] = None


class Viewport(BaseModel):
    xmin: float = -2.0
    xmax: float = 2.0
    ymin: float = -2.0
    ymax: float = 2.0

    def contains(self, p: Point, margin: float = 0.0) -> bool:
        dx = (self.xmax - self.xmin) * margin
        dy = (self.ymax - self.ymin) * margin
        return (self.xmin - dx <= p[0] <= self.xmax + dx
                and self.ymin - dy <= p[1] <= self.ymax + dy)


class ElementBase(BaseModel):
    id: Optional[str] = None
    style: Style = Style()


class CycleElement(ElementBase):
    type: Literal['cycle']
    k: float
    l: float
    n: float
    m: float


class PointElement(ElementBase):
    type: Literal['point']
    u: float
    v: float
    radius: float = Field(default=3.0, gt=0)


class OrbitElement(ElementBase):
    """K-orbit of z0 sampled at angles in [start, stop]."""
    type: Literal['orbit']
    z0: Dict[str, float]
    start: float = -math.pi / 2
    stop: float = math.pi / 2
    count: Optional[int] = Field(default=None, ge=8)


class GhostElement(ElementBase):
    type: Literal['ghost_of']
    ref: str


class SGhostElement(ElementBase):
    type: Literal['s_ghost_of']
    ref: str


class ZeroRadiusElement(ElementBase):
    type: Literal['zero_radius_at']
    u: float
    v: float


class FamilyElement(ElementBase):
    """Cycles through a point orthogonal to a referenced cycle."""
    type: Literal['family']
    ref: str
    through: Tuple[float, float]
    count: int = Field(default=6, ge=1)


Element = Annotated[Union[CycleElement, PointElement, OrbitElement, GhostElement,
                        SGhostElement, ZeroRadiusElement, FamilyElement], Field(discriminator='type')]


class Scene(BaseModel):
    title: Optional[str] = None
    sigma: int = -1
    sigma_breve: int = -1
    s: float = 1.0
    samples: int = Field(default=256, ge=32)
    viewport: Viewport = Viewport()
    elements: List[Element] = Field(default_factory=list)

    @field_validator('sigma', 'sigma_breve')
    @classmethod
    def _check_sigma(cls, value: int) -> int:
        if value not in (-1, 0, 1):
            raise ValueError(f"must be -1, 0 or 1, got {value}")
        return value

    @field_validator('s')
    @classmethod
    def _check_s(cls, value: float) -> float:
        if value == 0:
            raise ValueError("s must be non-zero")
        return value

    @property
    def params(self) -> FsccParams:
        return FsccParams(self.sigma_breve, self.s)


class Figure(BaseModel):
    title: Optional[str] = None
    columns: int = Field(default=3, ge=1)
    panels: List[Scene] = Field(min_length=1)


def check_scene(scene: Scene) -> None:
    """
    Raises:
        EmptyViewport: zero or negative width or height
        InvalidScene: two cycles share an id
        UnresolvedReference: an element refers to an unknown cycle id
    """
    vp = scene.viewport
    if not (vp.xmax > vp.xmin and vp.ymax > vp.ymin):
        raise EmptyViewport(f"Viewport [{vp.xmin}, {vp.xmax}] x [{vp.ymin}, {vp.ymax}] is empty")
    ids = set()
    for e in scene.elements:
        if isinstance(e, CycleElement) and e.id:
            if e.id in ids:
                raise InvalidScene(f"Cycle id '{e.id}' is defined twice")
            ids.add(e.id)
    for element in scene.elements:
        ref = getattr(element, 'ref', None)
        if ref is not None and ref not in ids:
            raise UnresolvedReference(f"{element.type} refers to unknown cycle '{ref}'")


def load_document(text: str) -> Figure:
    """Parse YAML into a Figure; a bare scene becomes a one-panel figure."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise InvalidScene(f"Scene is not valid YAML: {str(e)}") from e
    if not isinstance(data, dict):
        raise InvalidScene("Scene document must be a mapping")
    try:
        figure = Figure.model_validate(data) if 'panels' in data else Figure(
            title=data.get('title'), columns=1, panels=[Scene.model_validate(data)])
    except ValidationError as e:
        raise InvalidScene(f"Invalid scene: {str(e)}") from e
    for panel in figure.panels:
        check_scene(panel)
    return figure


def load_scene_file(path: str) -> Figure:
    with open(path, 'r', encoding='utf-8') as f:
        return load_document(f.read())


def _split_inside(points: List[Point], viewport: Viewport) -> List[List[Point]]:
    """Break a sampled curve into runs that stay near the viewport."""
    runs: List[List[Point]] = []
    current: List[Point] = []
    for p in points:
        if p is not None and all(math.isfinite(x) for x in p) and viewport.contains(p, CLIP_MARGIN):
            current.append(p)
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    return [run for run in runs if len(run) >= 2]


def trace_cycle(c: Cycle, sigma: Union[int, Sigma], viewport: Viewport,
                samples: int = 256) -> Tuple[List[List[Point]], List[Point]]:
    """
    Polylines of the sigma-drawing of c inside the viewport, and isolated
    points for drawings that shrink to a point.
    """
    sigma = as_sigma(sigma)
    size = float(np.abs(c.as_array()).max())
    tol = 1e-12 * size
    us = np.linspace(viewport.xmin, viewport.xmax, samples)
    vs = np.linspace(viewport.ymin, viewport.ymax, samples)
    curves: List[List[Point]] = []
    dots: List[Point] = []

    def vertical(u0: float) -> None:
        curves.append([(u0, float(v)) for v in vs])

    if abs(c.k) <= tol or sigma == Sigma.PARABOLIC:
        # v is a function of u unless the n term vanishes
        if abs(c.n) > tol:
            curves.append([(float(u), float((c.k * u * u - 2.0 * c.l * u + c.m) / (2.0 * c.n))) for u in us])
        elif abs(c.k) <= tol:
            if abs(c.l) > tol:
                vertical(c.m / (2.0 * c.l))
        else:
            disc = c.l * c.l - c.k * c.m
            if disc >= 0.0:
                for root in sorted({(c.l - math.sqrt(disc)) / c.k, (c.l + math.sqrt(disc)) / c.k}):
                    vertical(root)
    elif sigma == Sigma.ELLIPTIC:
        cu, cv = c.l / c.k, c.n / c.k
        rho = (c.l * c.l + c.n * c.n - c.m * c.k) / (c.k * c.k)
        if rho > tol:
            r = math.sqrt(rho)
            angles = np.linspace(0.0, 2.0 * math.pi, samples)
            curves.append([(cu + r * math.cos(t), cv + r * math.sin(t)) for t in angles])
        elif rho > -tol:
            dots.append((cu, cv))
    else:
        cu, cv = c.l / c.k, -c.n / c.k
        rho = (c.l * c.l - c.n * c.n - c.m * c.k) / (c.k * c.k)
        reach = max(abs(viewport.xmin - cu), abs(viewport.xmax - cu),
                    abs(viewport.ymin - cv), abs(viewport.ymax - cv)) + 1.0
        if abs(rho) <= tol:
            ts = np.linspace(-reach, reach, samples)
            for sign in (1.0, -1.0):
                curves.append([(cu + t, cv + sign * t) for t in ts])
        else:
            a = math.sqrt(abs(rho))
            ts = np.linspace(-math.asinh(reach / a), math.asinh(reach / a), samples)
            for sign in (1.0, -1.0):
                if rho > 0:
                    curves.append([(cu + sign * a * math.cosh(t), cv + a * math.sinh(t)) for t in ts])
                else:
                    curves.append([(cu + a * math.sinh(t), cv + sign * a * math.cosh(t)) for t in ts])

    clipped: List[List[Point]] = []
    for curve in curves:
        clipped.extend(_split_inside(curve, viewport))
    dots = [d for d in dots if viewport.contains(d)]
    return clipped, dots


class PanelCanvas:
    """Maps scene coordinates of one panel into SVG coordinates, y pointing up."""

    def __init__(self, svg, viewport: Viewport, left: float, top: float, size: float = PANEL_SIZE):
        self.svg = svg
        self.viewport = viewport
        self.left = left
        self.top = top
        self.scale = size / max(viewport.xmax - viewport.xmin, viewport.ymax - viewport.ymin)
        self.width = (viewport.xmax - viewport.xmin) * self.scale
        self.height = (viewport.ymax - viewport.ymin) * self.scale

    def to_svg(self, p: Point) -> Point:
        return (self.left + (p[0] - self.viewport.xmin) * self.scale,
                self.top + (self.viewport.ymax - p[1]) * self.scale)

    def frame(self) -> None:
        self.svg.rect(self.left, self.top, self.width, self.height)
        vp = self.viewport
        if vp.ymin < 0.0 < vp.ymax:
            self.svg.line([self.to_svg((vp.xmin, 0.0)), self.to_svg((vp.xmax, 0.0))], '#bbbbbb', 0.5)
        if vp.xmin < 0.0 < vp.xmax:
            self.svg.line([self.to_svg((0.0, vp.ymin)), self.to_svg((0.0, vp.ymax))], '#bbbbbb', 0.5)

    def curve(self, points: List[Point], style: Style) -> None:
        self.svg.line([self.to_svg(p) for p in points], style.stroke, style.width, style.dash)

    def dot(self, p: Point, style: Style, radius: float = 3.0) -> None:
        x, y = self.to_svg(p)
        self.svg.circle(x, y, radius, style.stroke, style.width, fill=style.stroke)


def _draw_cycle(canvas: PanelCanvas, c: Cycle, scene: Scene, style: Style) -> None:
    curves, dots = trace_cycle(c, scene.sigma, scene.viewport, scene.samples)
    for curve in curves:
        canvas.curve(curve, style)
    for d in dots:
        canvas.dot(d, style)


def draw_scene(svg, scene: Scene, left: float = 0.0, top: float = 0.0) -> None:
    """Draw every element of the scene, in document order, into one panel."""
    check_scene(scene)
    canvas = PanelCanvas(svg, scene.viewport, left, top)
    canvas.frame()
    if scene.title:
        svg.text(left, top - 8.0, scene.title)

    params = scene.params
    # references may point at cycles defined later in the document
    cycles: Dict[str, Cycle] = {e.id: Cycle(e.k, e.l, e.n, e.m) for e in scene.elements
                                if isinstance(e, CycleElement) and e.id}
    for element in scene.elements:
        if isinstance(element, CycleElement):
            _draw_cycle(canvas, Cycle(element.k, element.l, element.n, element.m), scene, element.style)
        elif isinstance(element, PointElement):
            if scene.viewport.contains((element.u, element.v)):
                canvas.dot((element.u, element.v), element.style, element.radius)
        elif isinstance(element, OrbitElement):
            z0 = HyperNumber(element.z0.get('re', 0.0), element.z0.get('im', 0.0), scene.sigma)
            phis = np.linspace(element.start, element.stop, element.count or scene.samples)
            orbit = [z.as_point() if z is not None else None for z in k_orbit(z0, phis)]
            for run in _split_inside(orbit, scene.viewport):
                canvas.curve(run, element.style)
        elif isinstance(element, GhostElement):
            _draw_cycle(canvas, ghost(cycles[element.ref], scene.sigma, params), scene, element.style)
        elif isinstance(element, SGhostElement):
            _draw_cycle(canvas, s_ghost(cycles[element.ref], scene.sigma, params), scene, element.style)
        elif isinstance(element, ZeroRadiusElement):
            _draw_cycle(canvas, zero_radius_at((element.u, element.v), params), scene, element.style)
        elif isinstance(element, FamilyElement):
            basis = orthogonal_pencil(cycles[element.ref], element.through, scene.sigma, params)
            for i in range(element.count):
                member = pencil_member(basis, math.pi * i / element.count)
                _draw_cycle(canvas, member, scene, element.style)


def render_figure(figure: Figure, precision: int = 6) -> str:
    """SVG text of all panels laid out on a grid, row by row."""
    from svg_writer import SVG

    svg = SVG(precision=precision)
    if figure.title:
        svg.text(0.0, -30.0, figure.title, size=14.0)
    for index, scene in enumerate(figure.panels):
        row, col = divmod(index, figure.columns)
        draw_scene(svg, scene, col * (PANEL_SIZE + PANEL_GAP), row * (PANEL_SIZE + PANEL_GAP))
    logger.info(f"Rendered {len(figure.panels)} panel(s), {len(svg.commands)} SVG elements")
    return svg.to_string()


def render(scene: Scene, precision: int = 6) -> str:
    """SVG text of a single scene."""
    return render_figure(Figure(columns=1, panels=[scene]), precision)


def render_spectrum(spectrum: JetSpectrum, precision: int = 6, title: Optional[str] = None) -> str:
    """
    Eigenvalues on an obliquely viewed unit disk, each with a stem whose
    height is its jet order.
    """
    from svg_writer import SVG

    svg = SVG(precision=precision)
    scale, tilt, unit = 120.0, 0.4, 30.0

    def project(lam: complex, height: float = 0.0) -> Point:
        return (scale * lam.real, scale * tilt * -lam.imag - unit * height)

    rim = [project(complex(math.cos(t), math.sin(t))) for t in np.linspace(0.0, 2.0 * math.pi, 129)]
    svg.line(rim, '#888888', 1.0)
    svg.line([project(-1.1 + 0j), project(1.1 + 0j)], '#bbbbbb', 0.5)
    svg.line([project(-1.1j), project(1.1j)], '#bbbbbb', 0.5)
    # stems of equal eigenvalues are stacked so every block stays visible
    heights: Dict[Tuple[float, float], int] = {}
    for point in spectrum:
        key = (round(point.lam.real, 6), round(point.lam.imag, 6))
        base = heights.get(key, 0)
        heights[key] = base + point.k
        svg.line([project(point.lam, base), project(point.lam, base + point.k)], '#1f4e9c', 2.0)
        x, y = project(point.lam, base + point.k)
        svg.circle(x, y, 3.0, '#1f4e9c', 1.0, fill='#1f4e9c')
        svg.text(x + 5.0, y, str(point.k), size=10.0)
    if title:
        svg.text(-scale, -scale * tilt - unit * 5, title, size=14.0)
    return svg.to_string()


def _sigma_label(sigma: int) -> str:
    return Sigma(sigma).kind


def builtin_figure(name: str, samples: int = 256) -> Figure:
    """
    The named built-in figure.

    Raises:
        InvalidScene: unknown name
    """
    if name == 'k-orbits':
        panels = []
        for sigma in (-1, 0, 1):
            elements = [OrbitElement(type='orbit', z0={'re': 0.0, 'im': t}, start=-1.5, stop=1.5)
                        for t in (0.5, 1.0, 1.5, 2.0)]
            elements.append(PointElement(type='point', u=0.0, v=1.0))
            panels.append(Scene(title=f"K-orbits, {_sigma_label(sigma)}", sigma=sigma, sigma_breve=sigma,
                                samples=samples, viewport=Viewport(xmin=-3, xmax=3, ymin=-1, ymax=5),
                                elements=elements))
        return Figure(title='K-orbits', columns=3, panels=panels)

    if name == 'zero-radius':
        panels = []
        for sigma_breve in (-1, 0, 1):
            for sigma in (-1, 0, 1):
                elements = [ZeroRadiusElement(type='zero_radius_at', u=u, v=v)
                            for u, v in ((-1.0, 0.5), (0.0, 1.0), (1.0, -0.5))]
                panels.append(Scene(title=f"{_sigma_label(sigma_breve)} cycles, {_sigma_label(sigma)} drawing",
                                    sigma=sigma, sigma_breve=sigma_breve, samples=samples,
                                    elements=elements))
        return Figure(title='Zero-radius cycles', columns=3, panels=panels)

    if name == 'orthogonality':
        panels = []
        for sigma in (-1, 0, 1):
            base = Cycle.from_centre(0.0, 0.5, 1.0) if sigma != 0 else Cycle(1.0, 0.0, 0.5, -1.0)
            elements = [
                CycleElement(type='cycle', id='base', k=base.k, l=base.l, n=base.n, m=base.m,
                             style=Style(width=2.0)),
                GhostElement(type='ghost_of', ref='base', style=Style(stroke='#aa3333', dash='4,3')),
                FamilyElement(type='family', ref='base', through=(1.0, 1.5), count=5,
                              style=Style(stroke='#3366aa', width=0.75)),
            ]
            panels.append(Scene(title=f"Orthogonality, {_sigma_label(sigma)}", sigma=sigma, sigma_breve=sigma,
                                samples=samples, viewport=Viewport(xmin=-3, xmax=3, ymin=-2.5, ymax=3.5),
                                elements=elements))
        return Figure(title='Orthogonal families', columns=3, panels=panels)

    if name == 's-orthogonality':
        panels = []
        for sigma in (-1, 0, 1):
            base = Cycle(1.0, 0.0, 0.5, -1.0)
            params = FsccParams(sigma, 1.0)
            fu, fv = focus(base, params)
            elements = [
                CycleElement(type='cycle', id='base', k=base.k, l=base.l, n=base.n, m=base.m,
                             style=Style(width=2.0)),
                SGhostElement(type='s_ghost_of', ref='base', style=Style(stroke='#aa3333', dash='4,3')),
                PointElement(type='point', u=fu, v=fv, style=Style(stroke='#aa3333')),
            ]
            # lines through the focus are exactly the lines s-orthogonal to the base cycle
            for i in range(6):
                t = math.pi * i / 6
                a, b = math.sin(t), -math.cos(t)
                elements.append(CycleElement(type='cycle', k=0.0, l=-a / 2.0, n=-b / 2.0, m=-(a * fu + b * fv),
                                             style=Style(stroke='#3366aa', width=0.75)))
            panels.append(Scene(title=f"s-orthogonality, {_sigma_label(sigma)}", sigma=sigma, sigma_breve=sigma,
                                samples=samples, viewport=Viewport(xmin=-3, xmax=3, ymin=-2.5, ymax=3.5),
                                elements=elements))
        return Figure(title='s-orthogonal lines', columns=3, panels=panels)

    raise InvalidScene(f"Unknown built-in figure '{name}'")


BUILTIN_FIGURES = ('k-orbits', 'zero-radius', 'orthogonality', 's-orthogonality')


def render_builtin(name: str, samples: int = 256, precision: int = 6) -> str:
    return render_figure(builtin_figure(name, samples), precision)


def render_file(path: str, precision: int = 6) -> str:
    """Render a scene file, or a built-in figure when path names one."""
    if path in BUILTIN_FIGURES:
        return render_builtin(path, precision=precision)
    try:
        return render_figure(load_scene_file(path), precision)
    except OSError as e:
        raise InvalidScene(f"Cannot read scene file {path}: {str(e)}") from e
    except DomainError as e:
        raise InvalidScene(f"Scene {path} asks for an undefined construction: {str(e)}") from e


def render_directory(directory: str, output_dir: Optional[str] = None,
                     precision: int = 6) -> Dict[str, str]:
    """
    Render every .yaml/.yml scene under directory to an .svg beside it
    (or under output_dir). Returns the output path, or "Error: ..." per file.
    """
    results: Dict[str, str] = {}
    for root, _, files in os.walk(directory):
        for file in sorted(files):
            if not file.endswith(('.yaml', '.yml')):
                continue
            filepath = os.path.join(root, file)
            try:
                target_dir = output_dir or root
                os.makedirs(target_dir, exist_ok=True)
                target = os.path.join(target_dir, os.path.splitext(file)[0] + '.svg')
                with open(target, 'w', encoding='utf-8', newline='\n') as f:
                    f.write(render_file(filepath, precision))
                results[filepath] = target
            except CycleKitError as e:
                logger.error(f"Failed to render {filepath}: {str(e)}")
                results[filepath] = f"Error: {str(e)}"
    logger.info(f"Rendered {sum(1 for r in results.values() if not r.startswith('Error'))} "
                f"of {len(results)} scene(s) under {directory}")
    return results

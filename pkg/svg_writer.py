#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
SVG Writer

Accumulates drawing commands and writes an SVG 1.1 document whose view
box is the bounding box of everything drawn, plus padding. Numbers are
printed with a fixed precision so identical drawings give identical bytes.
"""

from typing import Iterable, Optional, Sequence, Tuple

PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN"
"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">

<svg
    width="%(width)s"
    height="%(height)s"
    viewBox="%(min_x)s %(min_y)s %(width)s %(height)s"
    version="1.1"
    xmlns="http://www.w3.org/2000/svg">
<rect x="%(min_x)s" y="%(min_y)s" width="%(width)s" height="%(height)s" style="fill:#ffffff"/>
"""

POSTAMBLE = """\
</svg>
"""


def escape(text: str) -> str:
    return text.replace('&', '&amp;').replace('<', '&lt;').replace('>', '&gt;')


class SVG:
    def __init__(self, precision: int = 6, pad: float = 10.0):
        self.precision = precision
        self.pad = pad
        self.min_x = None
        self.max_x = None
        self.min_y = None
        self.max_y = None
        self.commands = []

    def fmt(self, value: float) -> str:
        text = '%.*f' % (self.precision, value)
        # no negative zero in the output
        if text.lstrip('-').strip('0.') == '':
            text = text.lstrip('-')
        return text

    def require(self, x: float, y: float) -> None:
        if self.min_x is None:
            self.min_x = self.max_x = x
            self.min_y = self.max_y = y
        else:
            self.min_x = min(self.min_x, x)
            self.max_x = max(self.max_x, x)
            self.min_y = min(self.min_y, y)
            self.max_y = max(self.max_y, y)

    def _points(self, points: Iterable[Tuple[float, float]]) -> str:
        return ' '.join('%s,%s' % (self.fmt(x), self.fmt(y)) for x, y in points)

    def _style(self, color: str, width: float, dash: Optional[str], fill: str = 'none') -> str:
        style = 'fill:%s;stroke:%s;stroke-width:%s' % (fill, color, self.fmt(width))
        if dash:
            style += ';stroke-dasharray:%s' % dash
        return style

    def line(self, points: Sequence[Tuple[float, float]], color: str = '#000000',
             width: float = 1.0, dash: Optional[str] = None) -> None:
        if len(points) < 2:
            return
        for x, y in points:
            self.require(x, y)
        self.commands.append('<polyline points="%s" style="%s" />' % (
            self._points(points), self._style(color, width, dash)))

    def polygon(self, points: Sequence[Tuple[float, float]], color: str = '#000000',
                width: float = 1.0, dash: Optional[str] = None) -> None:
        if len(points) < 3:
            return
        for x, y in points:
            self.require(x, y)
        self.commands.append('<polygon points="%s" style="%s" />' % (
            self._points(points), self._style(color, width, dash)))

    def circle(self, x: float, y: float, radius: float, color: str = '#000000',
               width: float = 1.0, fill: str = 'none') -> None:
        self.require(x - radius, y - radius)
        self.require(x + radius, y + radius)
        self.commands.append('<circle cx="%s" cy="%s" r="%s" style="%s"/>' % (
            self.fmt(x), self.fmt(y), self.fmt(radius), self._style(color, width, None, fill)))

    def text(self, x: float, y: float, text: str, color: str = '#333333', size: float = 12.0) -> None:
        self.require(x, y - size)
        self.require(x + len(text) * size * 0.6, y)
        self.commands.append(
            '<text x="%s" y="%s" fill="%s" font-size="%s" font-family="monospace">%s</text>' % (
                self.fmt(x), self.fmt(y), color, self.fmt(size), escape(text)))

    def rect(self, x: float, y: float, width: float, height: float, color: str = '#cccccc') -> None:
        self.require(x, y)
        self.require(x + width, y + height)
        self.commands.append('<rect x="%s" y="%s" width="%s" height="%s" style="%s"/>' % (
            self.fmt(x), self.fmt(y), self.fmt(width), self.fmt(height), self._style(color, 1.0, None)))

    def to_string(self) -> str:
        if self.min_x is None:
            self.require(0.0, 0.0)
        min_x = self.min_x - self.pad
        min_y = self.min_y - self.pad
        width = self.max_x - self.min_x + 2 * self.pad
        height = self.max_y - self.min_y + 2 * self.pad
        header = PREAMBLE % {
            'min_x': self.fmt(min_x),
            'min_y': self.fmt(min_y),
            'width': self.fmt(width),
            'height': self.fmt(height),
        }
        return header + ''.join(item + '\n' for item in self.commands) + POSTAMBLE

    def save(self, filename: str) -> None:
        with open(filename, 'w', encoding='utf-8', newline='\n') as f:
            f.write(self.to_string())

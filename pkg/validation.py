#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Input Validation Module
Description: Pre-flight checks for command-line input: matrix text, suite
names, sigma values, points and viewports
"""

from typing import Optional, Sequence, Tuple

from errors import CycleKitError
from jet_calculus import MAX_ORDER, parse_matrix_text


def validate_input(user_input, validation_type='matrix', suites: Optional[Sequence[str]] = None,
                   max_order: int = MAX_ORDER) -> Tuple[bool, str]:
    """
    Validate user input of the given type.

    Args:
        user_input (str): The input string to validate
        validation_type (str): 'matrix', 'suite', 'sigma', 'point', 'viewport' or 'positive'
        suites (list): Known suite names, for 'suite'
        max_order (int): Largest accepted matrix order, for 'matrix'

    Returns:
        tuple: (is_valid, error_message)
    """
    if not isinstance(user_input, str) or not user_input.strip():
        return False, "Input must not be empty"
    text = user_input.strip()

    if validation_type == 'matrix':
        try:
            matrix = parse_matrix_text(text)
        except CycleKitError as e:
            return False, str(e)
        if matrix.shape[0] > max_order:
            return False, f"Matrix order {matrix.shape[0]} exceeds the limit {max_order}"
        return True, ""

    elif validation_type == 'suite':
        if suites is not None and text not in suites:
            return False, f"Unknown suite: {text}"
        return True, ""

    elif validation_type == 'sigma':
        if text.lower() in ('e', 'p', 'h', 'elliptic', 'parabolic', 'hyperbolic'):
            return True, ""
        try:
            value = int(text)
        except ValueError:
            return False, "Sigma must be -1, 0, 1 or one of e, p, h"
        if value not in (-1, 0, 1):
            return False, f"Sigma must be -1, 0 or 1, got {value}"
        return True, ""

    elif validation_type == 'point':
        ok, values = _numbers(text, 2)
        if not ok:
            return False, "A point is two numbers 'u,v'"
        return True, ""

    elif validation_type == 'viewport':
        ok, values = _numbers(text, 4)
        if not ok:
            return False, "A viewport is four numbers 'xmin,xmax,ymin,ymax'"
        xmin, xmax, ymin, ymax = values
        if xmax <= xmin or ymax <= ymin:
            return False, "Viewport has zero width or height"
        return True, ""

    elif validation_type == 'positive':
        try:
            value = float(text)
        except ValueError:
            return False, "Input must be a number"
        if not value > 0:
            return False, "Input must be positive"
        return True, ""

    else:
        return False, f"Unknown validation type: {validation_type}"


def _numbers(text: str, count: int) -> Tuple[bool, list]:
    parts = [p for p in text.replace(',', ' ').split() if p]
    if len(parts) != count:
        return False, []
    try:
        return True, [float(p) for p in parts]
    except ValueError:
        return False, []


def parse_point(text: str) -> Tuple[float, float]:
    """'u,v' as a pair of floats; raises ValueError when invalid."""
    ok, values = _numbers(text, 2)
    if not ok:
        raise ValueError(f"Cannot read point '{text}'")
    return values[0], values[1]

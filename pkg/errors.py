#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
CycleKit Errors

Typed failures raised by the geometry, calculus and rendering modules:
- DomainError and its subclasses for mathematically undefined requests
- Input errors for scenes, matrix files and suite names

Nothing in the library answers an undefined request with NaN; it raises
one of these instead.
"""


class CycleKitError(Exception):
    """Base class for every error raised by cyclekit."""


class DomainError(CycleKitError, ValueError):
    """An operation was asked for outside its domain."""


class ZeroDivisor(DomainError):
    """The hypercomplex number is (numerically) a zero divisor."""


class DegenerateCycle(DomainError):
    """The cycle is a straight line (k = 0); its centre lies at infinity."""


class UndefinedFocus(DomainError):
    """The focus needs n != 0."""


class ZeroCycle(DomainError):
    """All four components of the quadruple vanish."""


class MalformedMatrix(DomainError):
    """A matrix is not of the FSCc shape."""


class NoExtremum(DomainError):
    """A one-parameter family has no critical point."""


class NoSuchCycle(DomainError):
    """The constraints defining a cycle are inconsistent."""


class NonSmooth(DomainError):
    """Finite differences at two scales disagree; the functional has a kink."""


class NullLength(DomainError):
    """A length used as a divisor vanishes, as along a light-cone direction."""


class SingularResolvent(DomainError):
    """alpha*e - beta*a is numerically singular."""


class IllConditioned(DomainError):
    """Eigenvalue clusters cannot be separated at the requested tolerance."""


class ConstantMap(DomainError):
    """A constant map has no zero order."""


class OutOfPatch(DomainError):
    """The grid point is too close to the patch boundary for the stencil."""


class InvalidScene(CycleKitError):
    """A scene document failed validation."""


class EmptyViewport(InvalidScene):
    """The viewport has zero width or height."""


class UnresolvedReference(InvalidScene):
    """A scene element refers to an id that does not exist."""


class UnknownSuite(CycleKitError):
    """No verification suite is registered under the requested name."""

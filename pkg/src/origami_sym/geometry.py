"""Lines at allowed angles, their intersections, and plane isometries."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import NearParallel, ParallelLines
from .numeric import (
    DEFAULT_TOL,
    Angle,
    Point,
    RationalPi,
    Tolerance,
    angle_add,
    angle_cos_sin,
    angle_sub,
    same_angle,
)


@dataclass(frozen=True)
class Line:
    """The line ``base + t * (cos dir + i sin dir)``."""

    base: Point
    dir: Angle

    @property
    def offset(self) -> float:
        """Signed distance of the line from the origin along its left normal."""
        c, s = angle_cos_sin(self.dir)
        return -s * self.base.real + c * self.base.imag

    def distance(self, z: Point) -> float:
        c, s = angle_cos_sin(self.dir)
        d = z - self.base
        return abs(-s * d.real + c * d.imag)

    def contains(self, z: Point, tol: Tolerance = DEFAULT_TOL) -> bool:
        return self.distance(z) <= tol.eps_point

    def same_as(self, other: "Line", tol: Tolerance = DEFAULT_TOL) -> bool:
        return same_angle(self.dir, other.dir, tol) and other.contains(self.base, tol)


def line_offset(z: Point, a: Angle) -> float:
    return Line(z, a).offset


def intersect(p: Point, q: Point, alpha: Angle, beta: Angle,
              tol: Tolerance = DEFAULT_TOL) -> Point:
    """Intersection of the line through ``p`` at ``alpha`` with the line through ``q`` at ``beta``.

    Solves ``[[cos a, -cos b], [sin a, -sin b]] (r, s)^T = q - p`` and returns
    ``p + r (cos a + i sin a)``.
    """
    if same_angle(alpha, beta, tol):
        raise ParallelLines(f"lines at {alpha} and {beta} are parallel")
    ca, sa = angle_cos_sin(alpha)
    cb, sb = angle_cos_sin(beta)
    det = -ca * sb + cb * sa  # = sin(alpha - beta)
    exact = isinstance(alpha, RationalPi) and isinstance(beta, RationalPi)
    if not exact and abs(det) < tol.eps_scalar:
        raise NearParallel(f"|sin(beta - alpha)| = {abs(det):.3g} below eps_scalar")
    dx, dy = q.real - p.real, q.imag - p.imag
    # Cramer's rule on the 2x2 system
    r = (dx * -sb + cb * dy) / det
    return complex(p.real + r * ca, p.imag + r * sa)


def project_to_real(q: Point, beta: Angle, tol: Tolerance = DEFAULT_TOL) -> float:
    """Real coordinate where the line through ``q`` at angle ``beta`` meets the real axis."""
    c, s = angle_cos_sin(beta)
    if s == 0.0 or (not beta.is_exact and abs(s) < tol.eps_scalar):
        if abs(q.imag) <= tol.eps_point:
            return q.real
        raise ParallelLines("horizontal line through an off-axis point never meets the real axis")
    return q.real - q.imag * c / s


def rotation_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def reflection_matrix(axis_angle: float) -> np.ndarray:
    c, s = math.cos(2 * axis_angle), math.sin(2 * axis_angle)
    return np.array([[c, s], [s, -c]])


def _apply(m: np.ndarray, z: Point) -> Point:
    x = m[0, 0] * z.real + m[0, 1] * z.imag
    y = m[1, 0] * z.real + m[1, 1] * z.imag
    return complex(x, y)


def rotate(p: Point, theta: float, center: Point = 0j) -> Point:
    return center + _apply(rotation_matrix(theta), p - center)


def reflect(p: Point, axis_angle: float) -> Point:
    """Reflect ``p`` across the line through the origin at ``axis_angle``."""
    return _apply(reflection_matrix(axis_angle), p)


def reflect_angle(eta: Angle, theta: Angle) -> Angle:
    """Direction of the line at ``eta`` after reflecting across the axis at ``theta``."""
    return angle_sub(angle_add(theta, theta), eta)


@dataclass(frozen=True)
class Rotation:
    theta: float
    center: Point = 0j

    def matrix(self) -> np.ndarray:
        return rotation_matrix(self.theta)

    def __call__(self, z: Point) -> Point:
        return rotate(z, self.theta, self.center)


@dataclass(frozen=True)
class Reflection:
    axis_angle: float

    def matrix(self) -> np.ndarray:
        return reflection_matrix(self.axis_angle)

    def __call__(self, z: Point) -> Point:
        return reflect(z, self.axis_angle)


@dataclass(frozen=True)
class Translation:
    by: Point

    def __call__(self, z: Point) -> Point:
        return z + self.by


Isometry = Union[Rotation, Reflection, Translation]

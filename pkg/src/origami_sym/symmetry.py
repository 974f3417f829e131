"""Symmetry classification of origami structures.

Three angles give a lattice and one of the wallpaper groups p2, cmm, p6m.
More angles give a dense set; then only the point group (rotations and
reflections modulo translations) is classified.  A rotation by ``theta`` is a
symmetry iff the angle set is closed under ``a -> a + theta`` and
``exp(i theta)`` lies in M(U); a reflection across ``theta`` iff the angle set
is closed under ``a -> 2 theta - a`` and ``exp(2 i theta)`` lies in M(U).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Optional, Union

import numpy as np

from .construction import (
    AngleSet,
    as_angle_set,
    contains_on_line,
    generate,
    is_lattice_point,
    lattice_basis,
)
from .errors import OutOfRange, TooFewAngles, UnreachableGroup, WrongArity
from .geometry import reflect_angle
from .numeric import (
    DEFAULT_TOL,
    PI,
    Angle,
    Point,
    RationalPi,
    RealAngle,
    Tolerance,
    angle_add,
    angle_distance,
    angle_scale,
    angle_sort_key,
    angle_sub,
    angle_to_json,
    angle_unit,
    normalize_angle,
    same_angle,
)

DEFAULT_MAX_DEPTH = 3
# Real-angle comparisons this close to the eps boundary are flagged
_AMBIGUITY_BAND = 100.0

ZERO = RationalPi(0)
HALF_PI = RationalPi(1, 2)


class WallpaperClass(enum.Enum):
    P2 = "p2"
    CMM = "cmm"
    P6M = "p6m"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Cyclic:
    n: int

    @property
    def label(self) -> str:
        return f"C_{self.n}"

    @property
    def order(self) -> int:
        return self.n


@dataclass(frozen=True)
class Dihedral:
    """Symmetries of a regular n-gon (order 2n)."""

    n: int

    @property
    def label(self) -> str:
        return f"D_{self.n}"

    @property
    def order(self) -> int:
        return 2 * self.n


@dataclass(frozen=True)
class KleinFour:
    @property
    def label(self) -> str:
        return "C2xC2"

    @property
    def order(self) -> int:
        return 4


PointGroup = Union[Cyclic, Dihedral, KleinFour]


def as_dihedral(g: PointGroup) -> PointGroup:
    """View C2 x C2 as the dihedral group D_2; other groups are unchanged."""
    return Dihedral(2) if isinstance(g, KleinFour) else g


def parse_group(text: str) -> PointGroup:
    s = text.strip().replace(" ", "").upper()
    if s in ("C2XC2", "Z2XZ2", "KLEIN", "KLEINFOUR", "V4"):
        return KleinFour()
    s = s.replace("_", "")
    if len(s) >= 2 and s[0] in "CZD" and s[1:].isdigit():
        n = int(s[1:])
        if n < 1:
            raise ValueError(f"group order must be positive: {text!r}")
        return Dihedral(n) if s[0] == "D" else Cyclic(n)
    raise ValueError(f"cannot parse group {text!r}; expected C2xC2, C<n> or D<n>")


@dataclass(frozen=True)
class Proven:
    def to_json(self):
        return "proven"


@dataclass(frozen=True)
class DepthCertified:
    depth: int

    def to_json(self):
        return {"depth": self.depth}


Certification = Union[Proven, DepthCertified]


@dataclass(frozen=True)
class TriangleAngles:
    alpha: Angle
    rho: Angle
    gamma: Angle

    def as_tuple(self):
        return self.alpha, self.rho, self.gamma


@dataclass(frozen=True)
class Membership:
    """Outcome of a membership search; ``proven`` marks an exact lattice decision."""

    member: bool
    depth: Optional[int]
    proven: bool
    searched_to: int

    def __bool__(self):
        return self.member


@dataclass(frozen=True)
class PointGroupResult:
    group: PointGroup
    certification: Certification
    rotation_order: int
    reflection_axes: tuple[Angle, ...]
    ambiguous: bool = False


@dataclass(frozen=True)
class Classification:
    angle_set: AngleSet
    kind: str
    label: str
    point_group: PointGroup
    rotation_order: int
    reflection_axes: tuple[Angle, ...]
    certification: Certification
    wallpaper: Optional[WallpaperClass] = None
    ambiguous: bool = False

    def to_json(self) -> dict:
        return {
            "input": [angle_to_json(a) for a in self.angle_set],
            "kind": self.kind,
            "class": self.label,
            "point_group": self.point_group.label,
            "rotation_order": self.rotation_order,
            "reflection_axes": [a.radians for a in self.reflection_axes],
            "certification": self.certification.to_json(),
            "ambiguous": self.ambiguous,
        }


# -- three angles ------------------------------------------------------------------

def _require_three(U: AngleSet):
    if len(U) != 3:
        raise WrongArity(f"expected exactly 3 angles, got {len(U)}")


def triangle_angles(U, tol: Tolerance = DEFAULT_TOL) -> TriangleAngles:
    U = as_angle_set(U, tol)
    _require_three(U)
    _, a, b = U.angles
    return TriangleAngles(a, angle_sub(b, a), angle_sub(ZERO, b))


def _equalities(t: TriangleAngles, tol: Tolerance):
    """Return (alpha==gamma, alpha==rho, rho==gamma, ambiguous)."""
    pairs = ((t.alpha, t.gamma), (t.alpha, t.rho), (t.rho, t.gamma))
    flags = []
    ambiguous = False
    for x, y in pairs:
        flags.append(same_angle(x, y, tol))
        if not (x.is_exact and y.is_exact):
            d = angle_distance(x, y)
            if tol.eps_angle / _AMBIGUITY_BAND <= d <= tol.eps_angle * _AMBIGUITY_BAND:
                ambiguous = True
    return (*flags, ambiguous)


def wallpaper_analysis(U, tol: Tolerance = DEFAULT_TOL) -> tuple[WallpaperClass, bool]:
    """Wallpaper class plus a flag for Real angles compared near the tolerance."""
    t = triangle_angles(U, tol)
    ag, ar, rg, ambiguous = _equalities(t, tol)
    count = ag + ar + rg
    if count == 2:
        # equal-within-tolerance is not transitive; only reachable at the eps boundary
        count, ambiguous = 3, True
    return {0: WallpaperClass.P2, 1: WallpaperClass.CMM, 3: WallpaperClass.P6M}[count], ambiguous


def classify_wallpaper(U, tol: Tolerance = DEFAULT_TOL) -> WallpaperClass:
    return wallpaper_analysis(U, tol)[0]


def _sorted_axes(axes, tol: Tolerance) -> tuple[Angle, ...]:
    out: list[Angle] = []
    for a in sorted((normalize_angle(x) for x in axes), key=angle_sort_key):
        if not any(same_angle(a, b, tol) for b in out):
            out.append(a)
    return tuple(out)


def reflection_axes_3(U, tol: Tolerance = DEFAULT_TOL) -> tuple[Angle, ...]:
    """Reflection axes of a three-angle structure, one pair per isosceles equality."""
    U = as_angle_set(U, tol)
    t = triangle_angles(U, tol)
    ag, ar, rg, _ = _equalities(t, tol)
    axes: list[Angle] = []
    if ag:
        axes += [ZERO, HALF_PI]
    if ar:
        mid = angle_scale(angle_add(t.alpha, t.rho), Fraction(1, 2))
        axes += [mid, angle_add(mid, HALF_PI)]
    if rg:
        mid = angle_scale(t.alpha, Fraction(1, 2))
        axes += [mid, angle_add(mid, HALF_PI)]
    return _sorted_axes(axes, tol)


# -- closure of the angle set ---------------------------------------------------------

def angle_set_rotation_closed(U, theta, tol: Tolerance = DEFAULT_TOL) -> bool:
    U = as_angle_set(U, tol)
    theta = normalize_angle(theta)
    return all(U.contains(angle_add(a, theta), tol) for a in U)


def angle_set_reflection_closed(U, theta_axis, tol: Tolerance = DEFAULT_TOL) -> bool:
    U = as_angle_set(U, tol)
    axis = normalize_angle(theta_axis)
    return all(U.contains(reflect_angle(a, axis), tol) for a in U)


# -- membership ------------------------------------------------------------------

def _level_points(U: AngleSet, k: int, tol: Tolerance) -> tuple[np.ndarray, bool]:
    if k == 0:
        return np.array([0j, 1 + 0j]), False
    snap = generate(U, k, tol=tol)
    return snap.points, snap.truncated


def _found_depth(p: Point, U: AngleSet, max_depth: int, tol: Tolerance) -> Optional[int]:
    # p is in M_k iff lines through p at two different allowed angles both meet M_{k-1}
    for k in range(1, max_depth + 1):
        prev, _ = _level_points(U, k - 1, tol)
        hits = 0
        for a in U:
            if contains_on_line(prev, p, a, tol):
                hits += 1
                if hits >= 2:
                    return k
    return None


def point_in_M(p: Point, U, max_depth: int = DEFAULT_MAX_DEPTH,
               tol: Tolerance = DEFAULT_TOL) -> Membership:
    """Decide (three angles) or semi-decide (more angles) whether ``p`` lies in M(U).

    For three angles the lattice test is exact and the depth search only
    reports the first level the point appears at.  For denser sets a miss
    means "not found up to max_depth", never "not a member".
    """
    U = as_angle_set(U, tol)
    if len(U) < 3:
        raise TooFewAngles(f"need at least 3 angles, got {len(U)}")
    if max_depth < 1:
        raise ValueError("max_depth must be positive")
    p = complex(p)
    depth = _found_depth(p, U, max_depth, tol)
    if len(U) == 3:
        member = is_lattice_point(p, lattice_basis(U, tol), tol)
        return Membership(member, depth if member else None, True, max_depth)
    return Membership(depth is not None, depth, False, max_depth)


# -- point groups ------------------------------------------------------------------

def uniform_point_group(n: int) -> PointGroup:
    if n < 3:
        raise OutOfRange(f"uniform sets need n >= 3, got {n}")
    return Dihedral(2 * n) if n % 2 else Dihedral(n)


def _uniform_axes(n: int) -> tuple[Angle, ...]:
    m = 2 * n if n % 2 else n
    return tuple(RationalPi(k, m) for k in range(m))


def _as_rational(theta: Angle, limit: int, tol: Tolerance) -> Fraction:
    if isinstance(theta, RationalPi):
        return theta.fraction
    f = Fraction(theta.radians / PI).limit_denominator(limit)
    if abs(float(f) * PI - theta.radians) > 10 * tol.eps_angle:
        raise ArithmeticError(f"rotation {theta} is not a rational multiple of pi")
    return f


def _rotation_order(thetas: list[Fraction]) -> int:
    """Order of the rotation group generated by pi and the given multiples of pi."""
    fracs = thetas + [Fraction(1)]
    den = reduce(math.lcm, (f.denominator for f in fracs))
    g = reduce(math.gcd, (f.numerator * (den // f.denominator) for f in fracs))
    step = Fraction(g, den)  # generator is step * pi
    return int(Fraction(2) / step)


_WALLPAPER_POINT_GROUP = {
    WallpaperClass.P2: (Cyclic(2), 2),
    WallpaperClass.CMM: (KleinFour(), 2),
    WallpaperClass.P6M: (Dihedral(6), 6),
}


def classify_point_group(U, max_depth: int = DEFAULT_MAX_DEPTH, tol: Tolerance = DEFAULT_TOL,
                         fast_paths: bool = True) -> PointGroupResult:
    """Point group of the structure built from ``U``.

    ``fast_paths=False`` skips the theorem-backed shortcuts for uniform and
    three-angle sets and runs the closure-plus-membership search everywhere.
    """
    U = as_angle_set(U, tol)
    if len(U) < 3:
        raise TooFewAngles(f"need at least 3 angles, got {len(U)}")
    if fast_paths:
        n = U.uniform_n()
        if n is not None:
            return PointGroupResult(uniform_point_group(n), Proven(), 2 * n if n % 2 else n,
                                    _uniform_axes(n))
        if len(U) == 3:
            wp, ambiguous = wallpaper_analysis(U, tol)
            group, order = _WALLPAPER_POINT_GROUP[wp]
            return PointGroupResult(group, Proven(), order, reflection_axes_3(U, tol), ambiguous)

    rotations = []
    for u in U.angles[1:]:
        if angle_set_rotation_closed(U, u, tol) and point_in_M(angle_unit(u), U, max_depth, tol):
            rotations.append(_as_rational(u, 2 * len(U), tol))
    order = _rotation_order(rotations)

    axes: list[Angle] = []
    for u in U:
        half = angle_scale(u, Fraction(1, 2))
        if angle_set_reflection_closed(U, half, tol) and point_in_M(angle_unit(u), U, max_depth, tol):
            # negation is a symmetry, so the perpendicular axis comes for free
            axes += [half, angle_add(half, HALF_PI)]
    axes_t = _sorted_axes(axes, tol)
    if axes_t:
        group = KleinFour() if order == 2 else Dihedral(order)
    else:
        group = Cyclic(order)
    return PointGroupResult(group, DepthCertified(max_depth), order, axes_t)


def classify(U, max_depth: int = DEFAULT_MAX_DEPTH, tol: Tolerance = DEFAULT_TOL) -> Classification:
    """Full classification: wallpaper group for three angles, point group otherwise."""
    U = as_angle_set(U, tol)
    if len(U) < 3:
        raise TooFewAngles(f"need at least 3 angles, got {len(U)}")
    res = classify_point_group(U, max_depth, tol)
    if len(U) == 3:
        wp, ambiguous = wallpaper_analysis(U, tol)
        return Classification(U, "wallpaper", wp.value, res.group, res.rotation_order,
                              res.reflection_axes, Proven(), wp, ambiguous)
    return Classification(U, "point_group", res.group.label, res.group, res.rotation_order,
                          res.reflection_axes, res.certification, None, res.ambiguous)


# -- inverse construction ---------------------------------------------------------

def _uniform_set(n: int) -> AngleSet:
    return AngleSet.of([RationalPi(k, n) for k in range(n)])


def inverse_construct(target: PointGroup) -> AngleSet:
    """An angle set whose point group is ``target``."""
    if isinstance(target, KleinFour) or target == Dihedral(2):
        return AngleSet.of([ZERO, RationalPi(1, 4), HALF_PI])
    if isinstance(target, Cyclic):
        n = target.n
        if n < 2 or n % 2:
            raise UnreachableGroup(f"C_{n}: only even-order cyclic groups occur")
        shift = Fraction(1, 4 * n)  # any value in (0, 1/(2n)) works
        angles = [RationalPi(k, n) for k in range(n)]
        angles += [RationalPi.from_fraction(shift + Fraction(k, n)) for k in range(0, n, 2)]
        return AngleSet.of(angles)
    if isinstance(target, Dihedral):
        n = target.n
        if n < 2 or n % 2:
            raise UnreachableGroup(f"D_{n}: only dihedral groups of even-sided polygons occur")
        if n % 4 == 2:
            return _uniform_set(n // 2)
        return _uniform_set(n)
    raise UnreachableGroup(f"unknown target {target!r}")

"""Scalar kernel: angles modulo pi, tolerances and complex-plane points.

Angles come in two flavours.  ``RationalPi(num, den)`` stands for
``(num/den) * pi`` and is kept exact, so closure checks on sets such as
``{k*pi/n}`` never depend on floating point.  ``RealAngle`` wraps an arbitrary
radian value.  Both are normalised into ``[0, pi)`` on construction.

Points are plain Python ``complex`` numbers.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InvalidAngle

PI = math.pi

Point = complex


@dataclass(frozen=True)
class Tolerance:
    eps_angle: float = 1e-10
    eps_point: float = 1e-9
    eps_scalar: float = 1e-9

    def __post_init__(self):
        for name in ("eps_angle", "eps_point", "eps_scalar"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")


DEFAULT_TOL = Tolerance()


class Angle:
    """Common base of ``RationalPi`` and ``RealAngle``."""

    __slots__ = ()

    @property
    def radians(self) -> float:
        raise NotImplementedError

    @property
    def is_exact(self) -> bool:
        return isinstance(self, RationalPi)


@dataclass(frozen=True)
class RationalPi(Angle):
    """The angle ``(num/den) * pi`` reduced to lowest terms with ``0 <= num < den``."""

    num: int
    den: int = 1

    def __post_init__(self):
        if self.den == 0:
            raise InvalidAngle("zero denominator")
        frac = Fraction(self.num, self.den) % 1
        object.__setattr__(self, "num", frac.numerator)
        object.__setattr__(self, "den", frac.denominator)

    @classmethod
    def from_fraction(cls, frac: Fraction) -> "RationalPi":
        return cls(frac.numerator, frac.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    @property
    def radians(self) -> float:
        return PI * self.num / self.den

    def __repr__(self):
        return f"RationalPi({self.num}/{self.den})"

    def __str__(self):
        if self.num == 0:
            return "0"
        head = "pi" if self.num == 1 else f"{self.num}pi"
        return head if self.den == 1 else f"{head}/{self.den}"


@dataclass(frozen=True)
class RealAngle(Angle):
    """A radian value reduced modulo pi."""

    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", _reduce_mod_pi(self.value))

    @property
    def radians(self) -> float:
        return self.value

    def __repr__(self):
        return f"RealAngle({self.value!r})"

    def __str__(self):
        return f"rad:{self.value!r}"


AngleLike = Union[Angle, float, int]


def _reduce_mod_pi(raw) -> float:
    try:
        raw = float(raw)
    except (TypeError, ValueError) as exc:
        raise InvalidAngle(f"not a real number: {raw!r}") from exc
    if not math.isfinite(raw):
        raise InvalidAngle(f"angle must be finite, got {raw!r}")
    out = raw % PI
    # tiny negative inputs round up to exactly pi
    if out >= PI:
        out = 0.0
    return out


def normalize_angle(raw: AngleLike) -> Angle:
    """Reduce ``raw`` (radians, or an existing Angle) into ``[0, pi)``.

    Floats become ``RealAngle``; an ``Angle`` is returned unchanged, which makes
    the function idempotent.
    """
    if isinstance(raw, Angle):
        return raw
    return RealAngle(raw)


def rational_pi(num: int, den: int = 1) -> RationalPi:
    return RationalPi(num, den)


# cos/sin of (num/den)*pi for the denominators with closed forms
_SQRT2_2 = math.sqrt(2.0) / 2.0
_SQRT3_2 = math.sqrt(3.0) / 2.0
_EXACT_COS_SIN = {
    Fraction(0): (1.0, 0.0),
    Fraction(1, 6): (_SQRT3_2, 0.5),
    Fraction(1, 4): (_SQRT2_2, _SQRT2_2),
    Fraction(1, 3): (0.5, _SQRT3_2),
    Fraction(1, 2): (0.0, 1.0),
    Fraction(2, 3): (-0.5, _SQRT3_2),
    Fraction(3, 4): (-_SQRT2_2, _SQRT2_2),
    Fraction(5, 6): (-_SQRT3_2, 0.5),
}


def angle_cos_sin(a: Angle) -> tuple[float, float]:
    """Return ``(cos a, sin a)``; ``sin >= 0`` since ``a`` lies in ``[0, pi)``."""
    if isinstance(a, RationalPi):
        hit = _EXACT_COS_SIN.get(a.fraction)
        if hit is not None:
            return hit
    t = a.radians
    return math.cos(t), math.sin(t)


def angle_add(a: Angle, b: Angle) -> Angle:
    if isinstance(a, RationalPi) and isinstance(b, RationalPi):
        return RationalPi.from_fraction(a.fraction + b.fraction)
    return RealAngle(a.radians + b.radians)


def angle_sub(a: Angle, b: Angle) -> Angle:
    if isinstance(a, RationalPi) and isinstance(b, RationalPi):
        return RationalPi.from_fraction(a.fraction - b.fraction)
    return RealAngle(a.radians - b.radians)


def angle_scale(a: Angle, factor: Fraction | int) -> Angle:
    """Multiply an angle by a rational factor (exact for RationalPi)."""
    factor = Fraction(factor)
    if isinstance(a, RationalPi):
        return RationalPi.from_fraction(a.fraction * factor)
    return RealAngle(a.radians * float(factor))


def angle_distance(a: Angle, b: Angle) -> float:
    """Distance between two angles on the circle R / pi Z."""
    d = abs(a.radians - b.radians) % PI
    return min(d, PI - d)


def same_angle(a: Angle, b: Angle, tol: Tolerance = DEFAULT_TOL) -> bool:
    if isinstance(a, RationalPi) and isinstance(b, RationalPi):
        return a == b
    return angle_distance(a, b) <= tol.eps_angle


def angle_sort_key(a: Angle):
    return a.radians


# -- points ------------------------------------------------------------------

def make_point(re_: float, im_: float = 0.0) -> Point:
    z = complex(re_, im_)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"point must be finite, got {z!r}")
    return z


def points_close(a: Point, b: Point, tol: Tolerance = DEFAULT_TOL) -> bool:
    return abs(a - b) <= tol.eps_point


def unit(theta: float) -> Point:
    """``cos(theta) + i sin(theta)`` for a raw radian value."""
    return complex(math.cos(theta), math.sin(theta))


def angle_unit(a: Angle) -> Point:
    c, s = angle_cos_sin(a)
    return complex(c, s)


# -- JSON and text forms -------------------------------------------------------

def angle_to_json(a: Angle) -> dict:
    if isinstance(a, RationalPi):
        return {"kind": "rational_pi", "num": a.num, "den": a.den}
    return {"kind": "real", "radians": a.radians}


def angle_from_json(obj: dict) -> Angle:
    kind = obj.get("kind")
    if kind == "rational_pi":
        return RationalPi(int(obj["num"]), int(obj["den"]))
    if kind == "real":
        return RealAngle(float(obj["radians"]))
    raise InvalidAngle(f"unknown angle kind {kind!r}")


_RATIONAL_RE = re.compile(r"^([+-]?\d*)\s*\*?\s*(?:pi|π)\s*(?:/\s*(\d+))?$", re.IGNORECASE)
_PLAIN_INT_RE = re.compile(r"^[+-]?\d+$")


def parse_angle(text: str) -> Angle:
    """Parse one term of the angle grammar.

    ``Api/B``, ``Api``, ``pi/B`` and ``0`` give exact ``RationalPi`` values;
    ``rad:<float>`` gives a ``RealAngle``.
    """
    s = text.strip()
    if s.lower().startswith("rad:"):
        return RealAngle(s[4:].strip())
    if _PLAIN_INT_RE.match(s):
        if int(s) != 0:
            raise InvalidAngle(f"bare integer {s!r}: write it as a multiple of pi or rad:<value>")
        return RationalPi(0)
    m = _RATIONAL_RE.match(s)
    if not m:
        raise InvalidAngle(f"cannot parse angle {text!r}")
    head, den = m.groups()
    if head in ("", "+"):
        num = 1
    elif head == "-":
        num = -1
    else:
        num = int(head)
    den_i = int(den) if den else 1
    if den_i == 0:
        raise InvalidAngle(f"zero denominator in {text!r}")
    return RationalPi(num, den_i)


def parse_angle_list(text: str) -> list[Angle]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise InvalidAngle("empty angle list")
    return [parse_angle(p) for p in parts]

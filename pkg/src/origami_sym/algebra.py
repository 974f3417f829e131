"""Chebyshev polynomials of the second kind and real-axis projection formulas."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DegenerateRebase, InvalidIndex, OutOfRange


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial; ``coeffs[i]`` multiplies ``x**i``; no trailing zeros."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(v) for v in c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: float) -> float:
        return eval_poly(self, x)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("x" if e == 1 else f"x^{e}")
            sign = "-" if c < 0 else ("+" if terms else "")
            terms.append(sign + body)
        return "".join(terms)


def eval_poly(p: IntPoly, x: float) -> float:
    """Value at ``x``, correctly rounded.

    Horner in floats loses about 1e-9 for U_20 near x = +-1 because the
    coefficients grow like 2^k and cancel; the exact sum over the binary value
    of ``x`` avoids that.
    """
    xq = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * xq + c
    return float(acc)


@lru_cache(maxsize=None)
def chebyshev_u(k: int) -> IntPoly:
    """U_k from U_0 = 1, U_1 = 2x, U_k = 2x U_{k-1} - U_{k-2}."""
    if k < 0:
        raise InvalidIndex(f"k must be non-negative, got {k}")
    prev, cur = (1,), (0, 2)
    if k == 0:
        return IntPoly(prev)
    for _ in range(k - 1):
        nxt = [0] * (len(cur) + 1)
        for i, c in enumerate(cur):
            nxt[i + 1] += 2 * c
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, tuple(nxt)
    return IntPoly(cur)


def chebyshev_parity_holds(k: int) -> bool:
    return all(c == 0 or (e - k) % 2 == 0 for e, c in enumerate(chebyshev_u(k).coeffs))


def _check_index(n: int, k: int):
    if n < 3:
        raise OutOfRange(f"n must be at least 3, got {n}")
    if not 0 <= k <= n - 2:
        raise InvalidIndex(f"k must lie in [0, {n - 2}], got {k}")


def projection_xk(n: int, k: int) -> float:
    """Shadow on the real axis of [[0,1]]_{pi/n, 2pi/n} along the angle (k+1)pi/n.

    Law of sines in the triangle with apex at that point:
    ``x_k = 2 sin(k pi/n) cos(pi/n) / sin((k+1) pi/n)``.
    """
    _check_index(n, k)
    t = math.pi / n
    return 2.0 * math.sin(k * t) * math.cos(t) / math.sin((k + 1) * t)


def projection_xk_chebyshev(n: int, k: int) -> float:
    """Same quantity written as ``1 + U_{k-2}(c) / U_k(c)`` with ``c = cos(pi/n)``, k >= 2."""
    _check_index(n, k)
    if k < 2:
        raise InvalidIndex("the Chebyshev form needs k >= 2")
    c = math.cos(math.pi / n)
    return 1.0 + eval_poly(chebyshev_u(k - 2), c) / eval_poly(chebyshev_u(k), c)


def projection_xk_rebased(n: int, k: int, i: int, j: int) -> float:
    """Shadow of [[0,1]]_{(i+1)pi/n, (j+1)pi/n} along (k+1)pi/n.

    The triangle over ``[x_i, x_j]`` is similar to the one over ``[0, 1]``, so
    ``x'_k = (x_k - x_i) / (x_j - x_i)``.
    """
    _check_index(n, k)
    _check_index(n, i)
    _check_index(n, j)
    if not i < j:
        raise InvalidIndex(f"need i < j, got i={i}, j={j}")
    xi, xj = projection_xk(n, i), projection_xk(n, j)
    if xj == xi:
        raise DegenerateRebase(f"x_{i} == x_{j}")
    return (projection_xk(n, k) - xi) / (xj - xi)


def two_cos_in_M(n: int) -> bool:
    """Whether 2 cos(pi/n) lies in the origami set of the uniform set {k pi/n}: exactly when n is odd."""
    if n < 3:
        raise OutOfRange(f"n must be at least 3, got {n}")
    return n % 2 == 1

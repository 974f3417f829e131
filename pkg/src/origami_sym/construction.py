"""Iterated intersection closure M_k(U), initial intersections and projections.

The level step works on lines rather than point pairs: every point of
``M_{k-1}`` contributes one line per allowed angle, lines are keyed by their
signed offset from the origin, and ``M_k`` is the set of crossings between
lines of different angles.  Points of ``M_{k-1}`` reappear as the crossing of
their own lines, so the levels are nested.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import InvalidAngle, NearParallel, TooFewAngles, WrongArity
from .geometry import intersect, project_to_real
from .numeric import (
    DEFAULT_TOL,
    PI,
    Angle,
    Point,
    RationalPi,
    Tolerance,
    angle_cos_sin,
    angle_sort_key,
    normalize_angle,
    same_angle,
)

DEFAULT_CAP = 200_000
# raw candidates buffered before an intermediate dedup when a cap is active
_MERGE_EVERY = 400_000
_CHUNK = 2_000_000


@dataclass(frozen=True)
class AngleSet:
    """Sorted, deduplicated angles modulo pi; always contains 0."""

    angles: tuple[Angle, ...]

    @classmethod
    def of(cls, angles: Iterable, tol: Tolerance = DEFAULT_TOL) -> "AngleSet":
        if isinstance(angles, AngleSet):
            return angles
        normed = sorted((normalize_angle(a) for a in angles), key=angle_sort_key)
        kept: list[Angle] = []
        for a in normed:
            dup = next((i for i, b in enumerate(kept) if same_angle(a, b, tol)), None)
            if dup is None:
                kept.append(a)
            elif isinstance(a, RationalPi) and not isinstance(kept[dup], RationalPi):
                kept[dup] = a  # prefer the exact representative
        # a value just below pi is the same direction as 0
        if len(kept) > 1 and same_angle(kept[0], kept[-1], tol):
            last = kept.pop()
            if isinstance(last, RationalPi) and not isinstance(kept[0], RationalPi):
                kept[0] = last
        kept.sort(key=angle_sort_key)
        if not kept or not same_angle(kept[0], RationalPi(0), tol):
            raise InvalidAngle("the angle set must contain the angle 0")
        return cls(tuple(kept))

    def __len__(self):
        return len(self.angles)

    def __iter__(self):
        return iter(self.angles)

    def __getitem__(self, i):
        return self.angles[i]

    @property
    def is_exact(self) -> bool:
        return all(isinstance(a, RationalPi) for a in self.angles)

    def contains(self, a: Angle, tol: Tolerance = DEFAULT_TOL) -> bool:
        return any(same_angle(a, b, tol) for b in self.angles)

    def uniform_n(self) -> Optional[int]:
        """``n`` if the set is exactly ``{k pi / n : 0 <= k < n}``, else None."""
        n = len(self.angles)
        if not self.is_exact:
            return None
        expected = {RationalPi(k, n) for k in range(n)}
        return n if set(self.angles) == expected else None

    def __str__(self):
        return "{" + ", ".join(str(a) for a in self.angles) + "}"


def as_angle_set(U, tol: Tolerance = DEFAULT_TOL) -> AngleSet:
    return U if isinstance(U, AngleSet) else AngleSet.of(U, tol)


@dataclass(frozen=True)
class Box:
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def __post_init__(self):
        vals = (self.xmin, self.xmax, self.ymin, self.ymax)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("bbox bounds must be finite")
        if self.xmin > self.xmax or self.ymin > self.ymax:
            raise ValueError(f"empty bbox {vals}")

    @property
    def area(self) -> float:
        return (self.xmax - self.xmin) * (self.ymax - self.ymin)

    def contains(self, z):
        z = np.asarray(z)
        return ((z.real >= self.xmin) & (z.real <= self.xmax)
                & (z.imag >= self.ymin) & (z.imag <= self.ymax))

    @classmethod
    def around(cls, z: Point, radius: float) -> "Box":
        return cls(z.real - radius, z.real + radius, z.imag - radius, z.imag + radius)


@dataclass(frozen=True)
class LatticeBasis:
    tau: Point

    def __post_init__(self):
        if self.tau.imag == 0:
            raise ValueError("lattice basis needs a non-real tau")


@dataclass(frozen=True)
class RingDescription:
    initial_intersections: tuple[Point, ...]
    projections: tuple[float, ...]


@dataclass(frozen=True, eq=False)
class OrigamiSnapshot:
    """Points of ``M_depth(U)`` (possibly clipped), with the first level each appeared at."""

    angle_set: AngleSet
    depth: int
    points: np.ndarray
    depth_found: np.ndarray
    bbox: Optional[Box] = None
    truncated: bool = False
    tol: Tolerance = DEFAULT_TOL
    _tree: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        self.points.setflags(write=False)
        self.depth_found.setflags(write=False)

    def __len__(self):
        return len(self.points)

    def index_of(self, z: Point) -> Optional[int]:
        if not len(self.points):
            return None
        if not self._tree:
            self._tree.append(cKDTree(np.c_[self.points.real, self.points.imag]))
        d, i = self._tree[0].query([z.real, z.imag])
        return int(i) if d <= self.tol.eps_point else None

    def contains(self, z: Point) -> bool:
        return self.index_of(z) is not None


# -- Algorithms for S and P ------------------------------------------------------

def _dedup_list(values: list, close) -> list:
    out: list = []
    for v in values:
        if not any(close(v, w) for w in out):
            out.append(v)
    return out


def initial_intersections(U, tol: Tolerance = DEFAULT_TOL) -> list[Point]:
    """Distinct ``[[0,1]]_{a,b}`` over pairs ``a < b`` of ``U``."""
    U = as_angle_set(U, tol)
    if len(U) < 2:
        raise TooFewAngles("need at least two angles")
    pts = []
    for k in range(len(U)):
        for j in range(k + 1, len(U)):
            pts.append(intersect(0j, 1 + 0j, U[k], U[j], tol))
    return _dedup_list(pts, lambda a, b: abs(a - b) <= tol.eps_point)


def projections(S: Sequence[Point], U, tol: Tolerance = DEFAULT_TOL) -> list[float]:
    """Distinct real-axis shadows of ``S`` along every nonzero angle of ``U``."""
    U = as_angle_set(U, tol)
    if not S:
        raise ValueError("S must be nonempty")
    nonzero = [a for a in U if not same_angle(a, RationalPi(0), tol)]
    out = [project_to_real(q, a, tol) for a in nonzero for q in S]
    out = [0.0 if v == 0 else v for v in out]  # drop signed zeros
    return _dedup_list(out, lambda a, b: abs(a - b) <= tol.eps_scalar)


def ring_description(U, tol: Tolerance = DEFAULT_TOL) -> RingDescription:
    U = as_angle_set(U, tol)
    if len(U) < 3:
        raise TooFewAngles(f"need at least 3 angles, got {len(U)}")
    S = initial_intersections(U, tol)
    return RingDescription(tuple(S), tuple(projections(S, U, tol)))


def is_dense(U, tol: Tolerance = DEFAULT_TOL) -> bool:
    U = as_angle_set(U, tol)
    if len(U) < 3:
        raise TooFewAngles(f"need at least 3 angles, got {len(U)}")
    return len(U) > 3


def lattice_basis(U, tol: Tolerance = DEFAULT_TOL) -> LatticeBasis:
    U = as_angle_set(U, tol)
    if len(U) != 3:
        raise WrongArity(f"lattice basis needs exactly 3 angles, got {len(U)}")
    return LatticeBasis(intersect(0j, 1 + 0j, U[1], U[2], tol))


def lattice_coords(p: Point, basis: LatticeBasis) -> tuple[float, float]:
    """Real ``(m, n)`` with ``p = m + n * tau``."""
    n = p.imag / basis.tau.imag
    return p.real - n * basis.tau.real, n


def is_lattice_point(p: Point, basis: LatticeBasis, tol: Tolerance = DEFAULT_TOL) -> bool:
    m, n = lattice_coords(p, basis)
    return abs(m - round(m)) <= tol.eps_scalar and abs(n - round(n)) <= tol.eps_scalar


# -- dedup -----------------------------------------------------------------------

def dedup_indices(z: np.ndarray, eps: float) -> np.ndarray:
    """Indices of a maximal prefix-greedy subset of ``z`` with pairwise distance > eps.

    Earlier entries always win.  Grid rounding at cell size ``eps`` merges the
    bulk; a KD-tree pass then catches close pairs split across cell borders.
    """
    if len(z) == 0:
        return np.zeros(0, dtype=np.int64)
    keys = np.stack([np.rint(z.real / eps), np.rint(z.imag / eps)], axis=1)
    if np.abs(keys).max() >= 2 ** 62:
        raise OverflowError("coordinates too large for the dedup grid")
    keys = keys.astype(np.int64)
    _, first = np.unique(keys, axis=0, return_index=True)
    first.sort()
    cand = z[first]
    pairs = cKDTree(np.c_[cand.real, cand.imag]).query_pairs(eps, output_type="ndarray")
    if len(pairs) == 0:
        return first
    pairs = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]
    removed = np.zeros(len(first), dtype=bool)
    for i, j in pairs:
        if not removed[i]:
            removed[j] = True
    return first[~removed]


def _unique_sorted(values: np.ndarray, eps: float) -> np.ndarray:
    v = np.sort(values)
    if len(v) < 2:
        return v
    keep = np.concatenate([[True], np.diff(v) > eps])
    return v[keep]


# -- level step ------------------------------------------------------------------

def _angle_trig(U: AngleSet, tol: Tolerance) -> list[tuple[float, float]]:
    trig = [angle_cos_sin(a) for a in U]
    for i in range(len(U)):
        for j in range(i + 1, len(U)):
            ci, si = trig[i]
            cj, sj = trig[j]
            if abs(ci * sj - si * cj) < tol.eps_scalar:
                raise NearParallel(f"angles {U[i]} and {U[j]} are numerically parallel")
    return trig


def _pair_candidates(o1, o2, ci, si, cj, sj, bbox: Optional[Box], eps):
    """Yield chunks of crossings between lines (angle i, offsets o1) and (angle j, offsets o2).

    Also yields the number of crossings dropped by the bbox as the second item.
    """
    D = ci * sj - si * cj
    A = complex(cj, sj) / D
    B = -complex(ci, si) / D
    n1, n2 = len(o1), len(o2)
    if bbox is None:
        step = max(1, _CHUNK // max(n2, 1))
        for s in range(0, n1, step):
            blk = o1[s:s + step]
            yield (blk[:, None] * A + o2[None, :] * B).ravel(), 0
        return
    # for fixed o1 the crossing moves along B as o2 varies; clip the o2 range
    lo = np.full(n1, -np.inf)
    hi = np.full(n1, np.inf)
    base = o1 * A
    for comp, bmin, bmax, bcoef in ((base.real, bbox.xmin, bbox.xmax, B.real),
                                    (base.imag, bbox.ymin, bbox.ymax, B.imag)):
        if abs(bcoef) < 1e-300:
            outside = (comp < bmin - eps) | (comp > bmax + eps)
            hi[outside] = -np.inf
            continue
        a_ = (bmin - comp) / bcoef
        b_ = (bmax - comp) / bcoef
        lo = np.maximum(lo, np.minimum(a_, b_))
        hi = np.minimum(hi, np.maximum(a_, b_))
    slack = eps / max(abs(B), 1e-300)
    start = np.searchsorted(o2, lo - slack, side="left")
    stop = np.searchsorted(o2, hi + slack, side="right")
    counts = np.maximum(stop - start, 0)
    dropped = n1 * n2 - int(counts.sum())
    yielded_drop = False
    cum = np.cumsum(counts)
    s = 0
    while s < n1:
        # rows s..e-1 hold at most _CHUNK crossings (at least one row)
        prev = cum[s - 1] if s else 0
        e = int(np.searchsorted(cum, prev + _CHUNK, side="right"))
        e = max(e, s + 1)
        c = counts[s:e]
        total = int(c.sum())
        if total:
            rows = np.repeat(np.arange(s, e), c)
            offs = np.arange(total) - np.repeat(np.cumsum(c) - c, c)
            cols = start[rows] + offs
            z = o1[rows] * A + o2[cols] * B
            inside = bbox.contains(z)
            extra = int((~inside).sum())
            yield z[inside], extra + (0 if yielded_drop else dropped)
            yielded_drop = True
        s = e
    if not yielded_drop:
        yield np.zeros(0, dtype=complex), dropped


def _step(prev: np.ndarray, trig, bbox: Optional[Box], tol: Tolerance, room: Optional[int]):
    """Return (new points not in ``prev``, pruned?, capped?)."""
    eps = tol.eps_point
    offsets = [_unique_sorted(-s * prev.real + c * prev.imag, eps) for c, s in trig]
    pruned = False
    capped = False
    kept_new = np.zeros(0, dtype=complex)
    buf: list[np.ndarray] = []
    buffered = 0

    def merge():
        nonlocal kept_new, buf, buffered
        if not buf:
            return
        allz = np.concatenate([prev, kept_new] + buf)
        idx = dedup_indices(allz, eps)
        idx = idx[idx >= len(prev)]
        kept_new = allz[idx]
        buf, buffered = [], 0

    for i in range(len(trig)):
        for j in range(i + 1, len(trig)):
            ci, si = trig[i]
            cj, sj = trig[j]
            for z, dropped in _pair_candidates(offsets[i], offsets[j], ci, si, cj, sj, bbox, eps):
                pruned = pruned or dropped > 0
                if len(z):
                    buf.append(z)
                    buffered += len(z)
                if room is not None and buffered >= _MERGE_EVERY:
                    merge()
                    if len(kept_new) >= room:
                        capped = True
                        break
            if capped:
                break
        if capped:
            break
    merge()
    if room is not None and len(kept_new) > room:
        kept_new = kept_new[:room]
        capped = True
    return kept_new, pruned, capped


def _generate(U: AngleSet, depth: int, bbox: Optional[Box], cap: Optional[int],
              tol: Tolerance) -> OrigamiSnapshot:
    trig = _angle_trig(U, tol)
    seeds = np.array([0j, 1 + 0j])
    stored = seeds if bbox is None else seeds[bbox.contains(seeds)]
    truncated = len(stored) < len(seeds)
    if cap is not None and len(stored) > cap:
        stored, truncated = stored[:cap], True
    # 0 = [[0,1]]_{a,0} and 1 = [[0,1]]_{0,b} are already members of M_1
    depths = np.ones(len(stored), dtype=np.int64)
    work = seeds
    for level in range(1, depth + 1):
        room = None if cap is None else cap - len(stored)
        if room is not None and room <= 0:
            truncated = True
            break
        new, pruned, capped = _step(work, trig, bbox, tol, room)
        truncated = truncated or pruned or capped
        stored = np.concatenate([stored, new])
        depths = np.concatenate([depths, np.full(len(new), level, dtype=np.int64)])
        work = stored
        if capped:
            break
    return OrigamiSnapshot(U, depth, stored, depths, bbox, truncated, tol)


@functools.lru_cache(maxsize=64)
def _generate_cached(U, depth, bbox, cap, tol):
    return _generate(U, depth, bbox, cap, tol)


def generate(U, depth: int, bbox: Optional[Box] = None, cap: Optional[int] = None,
             tol: Tolerance = DEFAULT_TOL) -> OrigamiSnapshot:
    """Compute ``M_depth(U)``.

    With ``bbox`` every level is clipped to the box before the next level is
    built, so the result is a subset of ``M_depth(U)`` inside the box.  With
    ``cap`` generation stops once that many points are stored.  Either kind of
    loss sets ``truncated``.  Sets with more than three angles are dense, so
    when neither bound is given a cap of ``DEFAULT_CAP`` applies.
    """
    U = as_angle_set(U, tol)
    if len(U) < 3:
        raise TooFewAngles(f"need at least 3 angles, got {len(U)}")
    if not isinstance(depth, (int, np.integer)) or depth < 1:
        raise ValueError(f"depth must be a positive integer, got {depth!r}")
    if cap is not None and cap < 1:
        raise ValueError("cap must be positive")
    if len(U) > 3 and bbox is None and cap is None:
        cap = DEFAULT_CAP
    return _generate_cached(U, int(depth), bbox, cap, tol)


def contains_on_line(points: np.ndarray, z: Point, a: Angle, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when some point of ``points`` lies on the line through ``z`` at angle ``a``."""
    if not len(points):
        return False
    c, s = angle_cos_sin(a)
    d = points - z
    return bool(np.any(np.abs(-s * d.real + c * d.imag) <= tol.eps_point))

import cmath
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from scipy.spatial import cKDTree

from origami_sym.construction import (
    AngleSet,
    Box,
    LatticeBasis,
    dedup_indices,
    generate,
    initial_intersections,
    is_dense,
    is_lattice_point,
    lattice_basis,
    lattice_coords,
    projections,
    ring_description,
)
from origami_sym.errors import InvalidAngle, TooFewAngles
from origami_sym.numeric import RationalPi, RealAngle

from conftest import P2, P6_SIX, P6M, CMM, triples

TAU = complex(0.5, math.sqrt(3) / 2)
P4M = tuple(RationalPi(k, 4) for k in range(4))


# -- independent oracle -------------------------------------------------------------

def _oracle_unique(z, eps=1e-7):
    out = []
    for p in z:
        if all(abs(p - q) > eps for q in out):
            out.append(p)
    return out


def brute_levels(U, depth):
    """M_1..M_depth by intersecting every pair of lines directly (numpy solve per pair)."""
    thetas = [a.radians for a in U]
    level = [0j, 1 + 0j]
    out = []
    for _ in range(depth):
        new = []
        for p, q in itertools.product(level, repeat=2):
            for a, b in itertools.permutations(thetas, 2):
                ea, eb = cmath.exp(1j * a), cmath.exp(1j * b)
                m = np.array([[ea.real, -eb.real], [ea.imag, -eb.imag]])
                r, _ = np.linalg.solve(m, [q.real - p.real, q.imag - p.imag])
                new.append(p + r * ea)
        level = _oracle_unique(level + new)
        out.append(level)
    return out


def same_point_sets(snap_points, oracle, eps=1e-7):
    if len(snap_points) != len(oracle):
        return False
    pts = np.asarray(snap_points)
    return all(np.min(np.abs(pts - q)) <= eps for q in oracle)


@pytest.mark.parametrize("U,depth", [
    (P6M, 3), (CMM, 3), (P2, 3), (P4M, 2), (P6_SIX, 2),
    ((RationalPi(0), RealAngle(0.7), RealAngle(1.9)), 3),
    ((RationalPi(0), RealAngle(0.4), RationalPi(1, 2), RealAngle(2.5)), 2),
])
def test_generate_matches_brute_force(U, depth):
    levels = brute_levels(U, depth)
    for k, want in enumerate(levels, start=1):
        snap = generate(U, k)
        assert not snap.truncated
        assert same_point_sets(snap.points, want), (k, len(snap), len(want))


def test_depth_one_p6m():
    snap = generate(P6M, 1)
    assert same_point_sets(snap.points, [0j, 1 + 0j, TAU, TAU.conjugate()])
    assert set(snap.depth_found.tolist()) == {1}


def test_p6m_level_sizes():
    assert [len(generate(P6M, k)) for k in range(1, 6)] == [4, 8, 20, 60, 204]


def test_levels_nested_and_depth_found():
    prev = generate(P4M, 1)
    cur = generate(P4M, 2)
    assert all(cur.contains(z) for z in prev.points)
    for z, d in zip(cur.points, cur.depth_found):
        assert d == (1 if prev.contains(z) else 2)


def test_no_duplicates():
    snap = generate(P6_SIX, 2)
    pts = np.c_[snap.points.real, snap.points.imag]
    d = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
    np.fill_diagonal(d, np.inf)
    assert d.min() > snap.tol.eps_point


def test_bbox_clips_and_flags():
    box = Box(-1, 2, -1, 2)
    full = generate(P4M, 3, cap=10**7)
    part = generate(P4M, 3, bbox=box)
    assert part.truncated
    assert box.contains(part.points).all()
    assert all(full.contains(z) for z in part.points)


def test_empty_bbox_result():
    snap = generate(P6M, 2, bbox=Box(10, 11, 10, 11))
    assert len(snap) == 0 and snap.truncated


def test_cap():
    snap = generate(P6_SIX, 3, cap=5000)
    assert snap.truncated
    assert 5000 <= len(snap) < 5000 + 10**6


def test_dense_default_cap_applies():
    snap = generate(tuple(RationalPi(k, 7) for k in range(7)), 3)
    assert snap.truncated


@pytest.mark.parametrize("bad", [0, -1, 1.5])
def test_bad_depth(bad):
    with pytest.raises(ValueError):
        generate(P6M, bad)


def test_too_few_angles():
    with pytest.raises(TooFewAngles):
        generate((RationalPi(0), RationalPi(1, 2)), 2)


def test_angle_set_requires_zero():
    with pytest.raises(InvalidAngle):
        AngleSet.of([RationalPi(1, 3), RationalPi(2, 3), RationalPi(1, 2)])


def test_angle_set_merges_near_duplicates():
    U = AngleSet.of([RationalPi(0), RealAngle(math.pi / 3), RationalPi(1, 3),
                     RealAngle(math.pi - 1e-13)])
    assert U.angles == (RationalPi(0), RationalPi(1, 3))


def test_uniform_n():
    assert AngleSet.of(P4M).uniform_n() == 4
    assert AngleSet.of(CMM).uniform_n() is None


# -- lattices and rings ------------------------------------------------------------------

def test_lattice_basis_examples():
    assert abs(lattice_basis(P6M).tau - TAU) < 1e-12
    assert abs(lattice_basis(CMM).tau - (1 + 1j)) < 1e-12
    assert abs(lattice_basis(P2).tau - (1 + 2j)) < 1e-12


def test_lattice_coords_examples():
    b = LatticeBasis(TAU)
    assert lattice_coords(TAU, b) == pytest.approx((0, 1), abs=1e-12)
    assert lattice_coords(1 / 3 + 0j, b) == pytest.approx((1 / 3, 0), abs=1e-12)
    assert not is_lattice_point(1 / 3 + 0j, b)
    for tau in (TAU, 1 + 2j, complex(0.3, 0.8)):
        assert lattice_coords(-1 + 2 * tau, LatticeBasis(tau)) == pytest.approx((-1, 2), abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(triples())
def test_three_angle_sets_are_lattices(U):
    basis = lattice_basis(U)
    for z in generate(U, 3).points:
        m, n = lattice_coords(z, basis)
        assert abs(m - round(m)) <= 1e-9 and abs(n - round(n)) <= 1e-9


def test_is_dense():
    assert not is_dense(P6M)
    assert is_dense(tuple(RationalPi(k, 5) for k in range(5)))
    assert is_dense(P4M)


def test_initial_intersections():
    S = initial_intersections(P6M)
    assert len(S) == 2
    assert min(abs(z - 1) for z in S) < 1e-12 and min(abs(z - TAU) for z in S) < 1e-12
    S = initial_intersections(CMM)
    assert sorted((round(z.real, 12), round(z.imag, 12)) for z in S) == [(1, 0), (1, 1)]


def test_projection_examples():
    assert sorted(projections([1 + 0j, 1 + 1j], CMM)) == pytest.approx([0, 1])
    P = ring_description(P4M).projections
    for v in (0, 0.5, 1, 2):
        assert min(abs(p - v) for p in P) < 1e-12
    assert sorted(ring_description(P6M).projections) == pytest.approx([0, 1], abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(triples())
def test_projections_contain_one_and_S_bounded(U):
    ring = ring_description(U)
    assert 1 <= len(ring.initial_intersections) <= math.comb(len(U), 2)
    assert min(abs(p - 1) for p in ring.projections) < 1e-9


def _max_gap(points):
    tree = cKDTree(np.c_[points.real, points.imag])
    d, _ = tree.query(np.c_[points.real, points.imag], k=2)
    return d[:, 1].max()


@pytest.mark.parametrize("U", [P4M, tuple(RationalPi(k, 5) for k in range(5))])
def test_dense_sets_fill_the_box(U):
    # the largest nearest-neighbour gap inside the box keeps shrinking
    box = Box(-1, 2, -1, 2)
    snaps = [generate(U, k, bbox=box) for k in (2, 3, 4)]
    counts = [len(s) for s in snaps]
    gaps = [_max_gap(s.points) for s in snaps]
    assert counts[0] < counts[1] < counts[2]
    assert gaps[0] > gaps[1] > gaps[2]


def test_dedup_indices_keeps_first():
    z = np.array([0, 1e-12, 1, 1 + 2e-12j, 2], dtype=complex)
    assert dedup_indices(z, 1e-9).tolist() == [0, 2, 4]

"""One test per acceptance criterion; a PASS/FAIL line per criterion is printed at the end of the run."""
import cmath
import math
import random
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from origami_sym.algebra import chebyshev_parity_holds, chebyshev_u, eval_poly, projection_xk, projection_xk_chebyshev
from origami_sym.construction import _generate_cached, generate, lattice_basis, lattice_coords, ring_description
from origami_sym.geometry import reflect, rotate
from origami_sym.io_render import render_svg
from origami_sym.construction import Box
from origami_sym.numeric import RationalPi, RealAngle
from origami_sym.symmetry import (
    Cyclic,
    DepthCertified,
    Dihedral,
    KleinFour,
    classify,
    classify_point_group,
    classify_wallpaper,
    inverse_construct,
)

from conftest import CMM, P2, P6_SIX, P6M
from oracles import brute_wallpaper

GOLDEN = Path(__file__).parent / "golden" / "p6m_depth2.svg"
LATTICE_TOL = 1e-9


def uniform(n):
    return tuple(RationalPi(k, n) for k in range(n))


def max_frac_error(points, basis):
    worst = 0.0
    for z in points:
        m, n = lattice_coords(complex(z), basis)
        worst = max(worst, abs(m - round(m)), abs(n - round(n)))
    return worst


def random_triple(rng):
    """Three directions containing 0, pairwise at least 0.1 rad apart, rational or real."""
    while True:
        if rng.random() < 0.5:
            den = rng.randint(3, 12)
            nums = rng.sample(range(1, den), 2)
            U = (RationalPi(0),) + tuple(RationalPi(k, den) for k in nums)
        else:
            U = (RationalPi(0), RealAngle(rng.uniform(0.1, math.pi - 0.1)),
                 RealAngle(rng.uniform(0.1, math.pi - 0.1)))
        r = sorted(a.radians for a in U) + [math.pi]
        if min(b - a for a, b in zip(r, r[1:])) > 0.1:
            return U


def isosceles_triple(rng):
    """Real-angle triple with a forced equality among the triangle angles."""
    kind = rng.randrange(4)
    x = rng.uniform(0.25, 1.3)
    if kind == 0:  # alpha = gamma
        a, b = x, math.pi - x
    elif kind == 1:  # alpha = rho
        a, b = x, 2 * x
    elif kind == 2:  # rho = gamma
        b = rng.uniform(math.pi / 2 + 0.15, math.pi - 0.15)
        a = 2 * b - math.pi
    else:  # equilateral, written in radians
        a, b = math.pi / 3, 2 * math.pi / 3
    return (RationalPi(0), RealAngle(a), RealAngle(b))


def test_criterion_01_wallpaper_examples(report):
    t0 = time.perf_counter()
    got = [classify_wallpaper(U).value for U in (P2, CMM, P6M)]
    dt = time.perf_counter() - t0
    ok = got == ["p2", "cmm", "p6m"] and dt < 1.0
    report(1, ok, f"wallpaper classes {got} in {dt:.3f}s (need exact match, < 1s)")
    assert ok


def test_criterion_02_lattice_basis(report):
    err = abs(lattice_basis(P6M).tau - complex(0.5, math.sqrt(3) / 2))
    ok = err <= 1e-12
    report(2, ok, f"|tau - (1+sqrt3 i)/2| = {err:.1e} (tol 1e-12)")
    assert ok


def test_criterion_03_lattice_integrality(report):
    _generate_cached.cache_clear()
    t0 = time.perf_counter()
    worst_p6m = max_frac_error(generate(P6M, 3).points, lattice_basis(P6M))
    rng = random.Random(3)
    worst_rand = 0.0
    for _ in range(100):
        U = random_triple(rng)
        worst_rand = max(worst_rand, max_frac_error(generate(U, 3).points, lattice_basis(U)))
    dt = time.perf_counter() - t0
    ok = worst_p6m <= LATTICE_TOL and worst_rand <= LATTICE_TOL and dt < 30
    report(3, ok, f"max coord error p6m {worst_p6m:.1e}, 100 random sets {worst_rand:.1e} "
                  f"(tol 1e-9) in {dt:.2f}s (< 30s)")
    assert ok


def test_criterion_04_lattice_symmetries(report):
    pts6 = generate(P6M, 3).points
    rot_err = max_frac_error([rotate(complex(z), math.pi / 3) for z in pts6], lattice_basis(P6M))
    pts4 = generate(CMM, 3).points
    b4 = lattice_basis(CMM)
    refl_err = max(max_frac_error([reflect(complex(z), ax) for z in pts4], b4)
                   for ax in (math.pi / 4, 3 * math.pi / 4))
    ok = rot_err <= LATTICE_TOL and refl_err <= LATTICE_TOL
    report(4, ok, f"rotation pi/3 on p6m err {rot_err:.1e}, reflections pi/4, 3pi/4 on cmm "
                  f"err {refl_err:.1e} (tol 1e-9)")
    assert ok


def test_criterion_05_uniform_point_groups(report):
    want = {3: Dihedral(6), 4: Dihedral(4), 5: Dihedral(10), 6: Dihedral(6), 7: Dihedral(14), 8: Dihedral(8)}
    got = {n: classify_point_group(uniform(n)).group for n in want}
    ok = got == want
    report(5, ok, "uniform n=3..8 -> " + ", ".join(g.label for g in got.values()))
    assert ok


def test_criterion_06_rotation_witness(report):
    w = cmath.exp(1j * math.pi / 5)
    found = None
    for depth in (1, 2):
        pts = generate(uniform(5), depth).points
        d = float(np.min(np.abs(pts - w)))
        if d <= 1e-9:
            found = (depth, d)
            break
    ok = found is not None
    report(6, ok, f"e^(i pi/5) in M_k of uniform n=5: " +
           (f"depth {found[0]}, distance {found[1]:.1e} (tol 1e-9)" if ok else "not found by depth 2"))
    assert ok


def test_criterion_07_chebyshev(report):
    rng = np.random.default_rng(7)
    thetas = rng.uniform(0.01, math.pi - 0.01, 100)
    worst = 0.0
    for k in range(21):
        p = chebyshev_u(k)
        for t in thetas:
            worst = max(worst, abs(eval_poly(p, math.cos(t)) - math.sin((k + 1) * t) / math.sin(t)))
    parity = all(chebyshev_parity_holds(k) for k in range(51))
    base = chebyshev_u(0).coeffs == (1,) and chebyshev_u(1).coeffs == (0, 2)
    ok = worst <= 1e-9 and parity and base
    report(7, ok, f"max |U_k(cos t) - sin((k+1)t)/sin t| = {worst:.1e} over k<=20, 100 t (tol 1e-9); "
                  f"parity k<=50 {parity}; base cases {base}")
    assert ok


def test_criterion_08_projection_identities(report):
    x0_exact = all(projection_xk(n, 0) == 0 for n in range(3, 13))
    err_x1 = max(abs(projection_xk(n, 1) - 1) for n in range(3, 13))
    err_top = max(abs(projection_xk(n, n - 2) - 4 * math.cos(math.pi / n) ** 2) for n in range(3, 13))
    err_cheb = max(abs(projection_xk_chebyshev(n, k) - projection_xk(n, k))
                   for n in range(3, 13) for k in range(2, n - 1))
    ok = x0_exact and err_x1 <= 1e-14 and err_top <= 1e-14 and err_cheb <= 1e-12
    report(8, ok, f"x_0 == 0 exactly {x0_exact}; |x_1 - 1| <= {err_x1:.1e}; "
                  f"|x_(n-2) - 4cos^2(pi/n)| <= {err_top:.1e} (float rounding, tol 1e-14); "
                  f"Chebyshev form err {err_cheb:.1e} (tol 1e-12)")
    assert ok


def test_criterion_09_ring_generators(report):
    P4 = ring_description(uniform(4)).projections
    has_half = any(abs(p - 0.5) <= 1e-12 for p in P4)
    P6 = sorted(ring_description(P6M).projections)
    is01 = len(P6) == 2 and abs(P6[0]) <= 1e-12 and abs(P6[1] - 1) <= 1e-12
    ok = has_half and is01
    report(9, ok, f"p4m projections contain 1/2: {has_half}; p6m projections {P6}")
    assert ok


def test_criterion_10_p6_point_group(report):
    _generate_cached.cache_clear()
    t0 = time.perf_counter()
    res = classify_point_group(P6_SIX)
    dt = time.perf_counter() - t0
    ok = (res.group == Cyclic(6) and res.reflection_axes == ()
          and isinstance(res.certification, DepthCertified) and res.certification.depth <= 3
          and dt < 60)
    report(10, ok, f"six-angle set -> {res.group.label}, axes {len(res.reflection_axes)}, "
                   f"{res.certification} in {dt:.2f}s (< 60s)")
    assert ok


def test_criterion_11_inverse_round_trip(report):
    targets = [KleinFour(), Cyclic(4), Cyclic(6), Dihedral(4), Dihedral(6), Dihedral(10)]
    got = [classify(inverse_construct(G)).point_group for G in targets]
    ok = got == targets
    report(11, ok, "round trip " + ", ".join(f"{G.label}->{g.label}" for G, g in zip(targets, got)))
    assert ok


def test_criterion_12_oracle_equivalence(report):
    rng = random.Random(12)
    cases = [random_triple(rng) for _ in range(140)] + [isosceles_triple(rng) for _ in range(60)]
    bad = []
    for U in cases:
        want, _ = brute_wallpaper([a.radians for a in U])
        if classify_wallpaper(U).value != want:
            bad.append((U, want))
    kinds = {}
    for U in cases:
        k = classify_wallpaper(U).value
        kinds[k] = kinds.get(k, 0) + 1
    ok = not bad
    report(12, ok, f"{len(cases)} triples, {len(bad)} disagreements with the brute-force oracle; "
                   f"class mix {dict(sorted(kinds.items()))}")
    assert ok, bad[:3]


def test_criterion_13_render_determinism(report):
    view = Box(-1.0, 2.0, -1.0, 2.0)
    a = render_svg(generate(P6M, 2), view)
    _generate_cached.cache_clear()
    b = render_svg(generate(P6M, 2), view)
    same = a == b
    golden = a == GOLDEN.read_text()
    ok = same and golden
    report(13, ok, f"p6m depth-2 SVG byte-identical across runs {same}; matches golden {golden}")
    assert ok

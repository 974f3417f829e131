"""Origami sets M(U), their symmetry groups, and the tools around them."""
from .algebra import (IntPoly, chebyshev_u, projection_xk, projection_xk_chebyshev,
                      projection_xk_rebased, two_cos_in_M)
from .construction import (AngleSet, Box, OrigamiSnapshot, generate, is_dense,
                           lattice_basis, lattice_coords, ring_description)
from .errors import OrigamiError
from .geometry import Line, intersect, project_to_real, reflect, rotate
from .io_render import RenderStyle, export_points, load_snapshot_json, render_svg
from .numeric import DEFAULT_TOL, RationalPi, RealAngle, Tolerance, parse_angle, parse_angle_list
from .symmetry import (Cyclic, Dihedral, KleinFour, WallpaperClass, classify,
                       classify_point_group, classify_wallpaper, inverse_construct, point_in_M)

__version__ = "0.1.0"

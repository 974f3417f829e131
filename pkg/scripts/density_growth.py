"""Point counts and largest gaps of M_k(U) inside a box as k grows.

Three-angle sets stay on a lattice (the gap stops shrinking); larger sets
fill the box.
"""
import argparse
import time

import numpy as np
from scipy.spatial import cKDTree

from origami_sym import Box, generate, parse_angle_list


def max_gap(points):
    if len(points) < 2:
        return float("nan")
    xy = np.c_[points.real, points.imag]
    d, _ = cKDTree(xy).query(xy, k=2)
    return float(d[:, 1].max())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--angles", action="append",
                    help="angle set, repeatable (default: p6m, p4m and n=5 uniform)")
    ap.add_argument("--max-depth", type=int, default=4)
    ap.add_argument("--bbox", default="-1,2,-1,2")
    args = ap.parse_args()
    sets = args.angles or ["0,pi/3,2pi/3", "0,pi/4,pi/2,3pi/4", "0,pi/5,2pi/5,3pi/5,4pi/5"]
    box = Box(*(float(v) for v in args.bbox.split(",")))
    print("angles,depth,points,max_gap,seconds")
    for text in sets:
        U = parse_angle_list(text)
        for k in range(1, args.max_depth + 1):
            t0 = time.perf_counter()
            snap = generate(U, k, bbox=box)
            print(f'"{text}",{k},{len(snap)},{max_gap(snap.points):.6f},{time.perf_counter() - t0:.3f}')


if __name__ == "__main__":
    main()

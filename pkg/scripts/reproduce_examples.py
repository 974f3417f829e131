"""Classify the worked examples and print one line per angle set."""
import math
import time

from origami_sym import RationalPi, RealAngle, classify

EXAMPLES = {
    "p2": (RationalPi(0), RealAngle(math.asin(2 * math.sqrt(5) / 5)), RationalPi(1, 2)),
    "cmm": (RationalPi(0), RationalPi(1, 4), RationalPi(1, 2)),
    "p6m": (RationalPi(0), RationalPi(1, 3), RationalPi(2, 3)),
    "p4m": tuple(RationalPi(k, 4) for k in range(4)),
    "D10": tuple(RationalPi(k, 5) for k in range(5)),
    "p6": tuple(RationalPi(n, d) for n, d in ((0, 1), (1, 4), (1, 3), (7, 12), (2, 3), (11, 12))),
}


def main():
    for name, U in EXAMPLES.items():
        t0 = time.perf_counter()
        res = classify(U)
        dt = time.perf_counter() - t0
        axes = ", ".join(f"{a.radians:.4f}" for a in res.reflection_axes) or "-"
        print(f"{name:4s} {', '.join(map(str, U)):45s} -> {res.label:5s} "
              f"order {res.rotation_order:2d}  axes [{axes}]  "
              f"{res.certification.to_json()}  {dt * 1e3:.1f} ms")


if __name__ == "__main__":
    main()

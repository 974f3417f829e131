"""Regenerate tests/golden/p6m_depth2.svg (review the diff before committing)."""
from pathlib import Path

from origami_sym.construction import Box, generate
from origami_sym.io_render import RenderStyle, render_svg
from origami_sym.numeric import RationalPi

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden" / "p6m_depth2.svg"
P6M = (RationalPi(0), RationalPi(1, 3), RationalPi(2, 3))
VIEW = Box(-1.0, 2.0, -1.0, 2.0)


def main():
    svg = render_svg(generate(P6M, 2), VIEW, RenderStyle())
    GOLDEN.parent.mkdir(parents=True, exist_ok=True)
    GOLDEN.write_text(svg)
    print(f"wrote {GOLDEN} ({svg.count('<line')} lines, {svg.count('<circle')} circles)")


if __name__ == "__main__":
    main()

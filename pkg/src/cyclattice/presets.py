"""Ready-made codes for the worked examples (2-D, A2 and E8 shaping)."""

from __future__ import annotations

from . import exact
from .design import S2, S3, WDesign, build
from .lattice import a2_lattice, e8_lattice, make_lattice
from .nested import NestedCode, code_from_coding, code_from_shaping

EXAMPLE_GC = exact.matrix([["4/3", "2/9"], ["4/3", "8/9"]])
EXAMPLE_W = exact.matrix([[4, 9], [3, 8]])

# (a, b) = (4, 9) with witness r = (-1, -2)
ISO_2D = WDesign(kind=S2, n=2, a=4, b=9, M=15, r=(-1, -2))
# a=7, b=17, c=19 with witness (r6, r7, r8) = (95, 65, 92)
ISO_E8 = WDesign(kind=S3, n=8, a=7, b=17, c=19, M=64, r=(0, 0, 0, 0, 0, 95, 65, 92))


def example_coding_lattice():
    return make_lattice(EXAMPLE_GC)


def coprime_code(coord: int = 2) -> NestedCode:
    """M = 5 code; ``coord`` (1-based) selects diag (5, 1) or (1, 5)."""
    diag = (1, 5) if coord == 2 else (5, 1)
    return code_from_coding(example_coding_lattice(), EXAMPLE_W, diag)


def iso_code_2d(M: int = 15) -> NestedCode:
    W, _ = build(WDesign(kind=S2, n=2, a=4, b=9, M=M, r=ISO_2D.r))
    return code_from_coding(example_coding_lattice(), W, (1, M))


def a2_code(M: int = 11) -> NestedCode:
    W, _ = build(WDesign(kind=S2, n=2, a=4, b=9, M=M, r=ISO_2D.r))
    return code_from_shaping(a2_lattice(), W, (1, M))


def e8_code() -> NestedCode:
    W, _ = build(ISO_E8)
    return code_from_shaping(e8_lattice(), W, (1,) * 7 + (ISO_E8.M,))


PRESETS = {
    "fig1a": lambda: coprime_code(2),
    "fig1b": lambda: coprime_code(1),
    "fig2": iso_code_2d,
    "fig3": a2_code,
    "fig4": e8_code,
}

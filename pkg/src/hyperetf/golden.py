"""Reference matrices transcribed verbatim, used as golden values in tests.

Sign matrices are written with ``+``, ``-`` and ``0``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .cyclo import CycloMatrix
from .designs import IncidenceMatrix
from .frame import FrameMatrix, SpanSpec
from .seeds import Q4_SIMPLEX, sylvester_hadamard, unimodular_cosimplex


def _signs(rows: str) -> CycloMatrix:
    table = {"+": 1, "-": -1, "0": 0}
    vals = [[table[ch] for ch in line.split()] for line in rows.strip().splitlines()]
    return CycloMatrix.from_exponents(2, np.where(np.array(vals) < 0, 1, 0), np.array(vals) != 0)


def _bits(rows: str) -> IncidenceMatrix:
    return IncidenceMatrix.from_ascii(rows.replace(" ", ""))


# 6 x 16 Steiner ETF from the affine plane of order 2 and the 3 x 4 simplex
STEINER_6X16 = _signs("""
+ - + - + - + - 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 + - + - + - + -
+ + - - 0 0 0 0 + + - - 0 0 0 0
0 0 0 0 + + - - 0 0 0 0 + + - -
+ - - + 0 0 0 0 0 0 0 0 + - - +
0 0 0 0 + - - + + - - + 0 0 0 0
""")

# 6 x 10 +-1 ETF for the orthogonal complement of the all-ones vector
DESIGN_FLAT_6X10 = _signs("""
+ + + + + + + + + +
+ + + + - - - - - -
+ - - - + + + - - -
- + - - + - - + + -
- - + - - + - + - +
- - - + - - + - + +
""")

AFFINE_PLANE_2 = _bits("""
1100
0011
1010
0101
1001
0110
""")

FANO_PLANE = _bits("""
1100100
0011100
1010010
0101010
1001001
0110001
0000111
""")

SIMPLEX_3X4 = _signs("""
+ - + -
+ + - -
+ - - +
""")

COSIMPLEX_3X2 = _signs("""
+ +
+ -
- +
""")

# dual plane and affine plane in hyperoval block form
DUAL_PLANE_BLOCKED = _bits("""
1001100
1010010
1100001
0111000
0100110
0010101
0001011
""")

AFFINE_PLANE_BLOCKED = _bits("""
1100
1010
1001
0110
0101
0011
""")

# 10-vector ETF for the vectors in R^6 whose last three entries sum to zero
HYPEROVAL_6X10 = _signs("""
+ - - + + + 0 0 0 0
+ + - - 0 0 + + 0 0
+ - + - 0 0 0 0 + +
0 0 0 0 + - + - 0 0
0 0 0 0 - + 0 0 + -
0 0 0 0 0 0 - + - +
""")

# rows of the affine plane grouped into parallel classes, representative first
AFFINE_PLANE_BY_CLASS = _bits("""
0011
1100
0101
1010
0110
1001
""")

CLASS_ORDERED_6X10 = _signs("""
0 0 0 0 0 0 - + - +
+ - - + + + 0 0 0 0
0 0 0 0 - + 0 0 + -
+ + - - 0 0 + + 0 0
0 0 0 0 + - + - 0 0
+ - + - 0 0 0 0 + +
""")

FLAT_6X10 = _signs("""
+ - - + + + - + - +
- + + - - - - + - +
+ + - - - + + + + -
- - + + - + - - + -
+ - + - + - + - + +
- + - + + - + - - -
""")


def _extended() -> CycloMatrix:
    base = DESIGN_FLAT_6X10.rational_values()
    rows = []
    for i in range(6):
        tail = [Fraction(7, 3) if j == i else Fraction(1, 3) for j in range(6)]
        rows.append(list(base[i]) + tail)
    return CycloMatrix.from_rationals(rows)


# 6 x 16 ETF for R^6 obtained by appending six vectors to DESIGN_FLAT_6X10
EXTENDED_6X16 = _extended()


# Layout of the 20 x 76 frame: cell (i, j) names the simplex row (a-e) or
# cosimplex row (f-j) placed in row i within the block of vertex j.
Q4_FRAME_LAYOUT = (
    "aa.........f..f.",
    "..aa......f....f",
    "....aa......ff..",
    "b.b......f...g..",
    ".b..b..f.......g",
    "...b.b..f.....g.",
    "c....cf........h",
    ".cc.....g...g...",
    "...cc....g.g....",
    "d..d...g....h...",
    ".d...d...hg.....",
    "..d.d.g.......h.",
    "e...e...h.h.....",
    ".e.e..h......h..",
    "..e..e.h...h....",
    "......iiii......",
    "......j...iii...",
    ".......j..j..ii.",
    "........j..j.j.i",
    ".........j..j.jj",
)


def q4_frame_affine_plane() -> IncidenceMatrix:
    return IncidenceMatrix([[int(ch != ".") for ch in row] for row in Q4_FRAME_LAYOUT])


def _q4_frame() -> CycloMatrix:
    S = Q4_SIMPLEX.lift(6)
    C = unimodular_cosimplex(4, sylvester_hadamard(2)).lift(6)
    seed_rows = {ch: (S, k) for k, ch in enumerate("abcde")}
    seed_rows.update({ch: (C, k) for k, ch in enumerate("fghij")})
    widths = [6] * 6 + [4] * 10
    starts = np.concatenate([[0], np.cumsum(widths)])
    out = np.zeros((20, int(starts[-1]), 2), dtype=np.int64)
    for i, row in enumerate(Q4_FRAME_LAYOUT):
        for j, ch in enumerate(row):
            if ch != ".":
                M, k = seed_rows[ch]
                out[i, starts[j]:starts[j + 1]] = M.coeffs[k]
    return CycloMatrix(6, out)


Q4_FRAME = _q4_frame()

# paired difference sets in Z_2^4 (bit strings, most significant factor first)
Z2_4_PAIR_D = ("0000", "0010", "1000", "1001", "1100", "1111")
Z2_4_PAIR_D_PRIME = ("0000", "0001", "0010", "0100", "1000", "1001", "1011", "1100", "1110", "1111")


def golden_frames() -> dict[str, FrameMatrix]:
    """Every shipped exact ETF with the subspace it is tight for."""
    return {
        "steiner_6x16": FrameMatrix(STEINER_6X16, SpanSpec.full(6)),
        "design_flat_6x10": FrameMatrix(DESIGN_FLAT_6X10, SpanSpec.zero_sum_all(6)),
        "hyperoval_6x10": FrameMatrix(HYPEROVAL_6X10, SpanSpec.zero_sum_tail(6, 3)),
        "class_ordered_6x10": FrameMatrix(CLASS_ORDERED_6X10, SpanSpec.explicit(
            CycloMatrix.from_rationals(_alternating_projection()), 5)),
        "flat_6x10": FrameMatrix(FLAT_6X10, SpanSpec.zero_sum_all(6)),
        "q4_frame_20x76": FrameMatrix(Q4_FRAME, SpanSpec.zero_sum_tail(20, 5)),
        "extended_6x16": FrameMatrix(EXTENDED_6X16, SpanSpec.full(6)),
    }


def _alternating_projection():
    """Projection onto the orthogonal complement of (1, 0, 1, 0, 1, 0)."""
    u = [1, 0, 1, 0, 1, 0]
    return [[Fraction(int(i == j)) - Fraction(u[i] * u[j], 3) for j in range(6)] for i in range(6)]

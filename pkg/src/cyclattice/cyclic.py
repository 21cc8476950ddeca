"""
Cyclicity of nested lattice codes.

Column t of G_c generates the whole codebook as a cyclic group exactly when
column t of adj(W) has gcd 1. ``generator_order`` is the brute-force
counterpart: the smallest k >= 1 with k g_t in the shaping lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from . import exact
from .errors import DimensionError, NotCyclic, OutOfRangeInfo, SingularMatrixError
from .lattice import Lattice, is_member
from .nested import NestedCode, mod_shaping


@dataclass(frozen=True)
class CoordinateVerdict:
    coordinate: int  # 0-based
    q: Tuple[int, ...]
    gcd: int
    cyclic: bool


@dataclass(frozen=True)
class CyclicityReport:
    M: int
    verdicts: Tuple[CoordinateVerdict, ...]

    @property
    def cyclic_coordinates(self) -> List[int]:
        return [v.coordinate for v in self.verdicts if v.cyclic]

    def is_cyclic(self, coord: int) -> bool:
        return self.verdicts[coord].cyclic


def cyclic_coordinates(W: exact.Matrix) -> CyclicityReport:
    """Per-coordinate cyclicity verdicts from the adjugate columns of W."""
    W = exact.matrix(W)
    if not exact.is_integral(W):
        raise ValueError("W must be an integer matrix")
    d = exact.det(W)
    if d == 0:
        raise SingularMatrixError("W is singular")
    adj = exact.adjugate(W)
    verdicts = []
    for t in range(len(W)):
        q = tuple(row[t] for row in adj)
        g = exact.gcd_vec(q)
        verdicts.append(CoordinateVerdict(t, q, g, g == 1))
    return CyclicityReport(abs(d), tuple(verdicts))


def is_primitive(b: Sequence[int]) -> bool:
    """True iff the open segment from 0 to G b meets no other lattice point, i.e. gcd(b) = 1."""
    if all(v == 0 for v in b):
        raise ValueError("zero vector has no primitive segment")
    return exact.gcd_vec(b) == 1


def segment_hits_lattice(ls: Lattice, b: Sequence[int]) -> bool:
    """Geometric scan: does some point (c/d) G b with 0 < c/d < 1 lie in ``ls``?

    Every lattice point on the segment has this form with d <= max|b_i|.
    """
    p = ls.point(tuple(int(v) for v in b))
    top = max(abs(int(v)) for v in b)
    for d in range(2, top + 1):
        for c in range(1, d):
            f = Fraction(c, d)
            x = tuple(f * v for v in p) if ls.exact else p * (c / d)
            if is_member(ls, x):
                return True
    return False


def n2_row_coprime(W: exact.Matrix) -> Tuple[bool, bool]:
    """2x2 criterion: coordinate i is cyclic iff the other row of W is coprime."""
    W = exact.matrix(W)
    if exact.shape(W) != (2, 2):
        raise DimensionError("n2_row_coprime needs a 2x2 matrix")
    return exact.gcd_vec(W[1]) == 1, exact.gcd_vec(W[0]) == 1


def order_of_column(W: exact.Matrix, coord: int) -> int:
    """Smallest k >= 1 with W^-1 (k e_coord) integral, i.e. M | k q_coord entrywise."""
    W = exact.matrix(W)
    M = abs(exact.det(W))
    if M == 0:
        raise SingularMatrixError("W is singular")
    q = [row[coord] for row in exact.adjugate(W)]
    for k in range(1, M + 1):
        if all((k * v) % M == 0 for v in q):
            return k
    raise AssertionError("unreachable: M q_coord is always divisible by M")


def generator_order(code: NestedCode, coord: int, limit: int = 10**5) -> int:
    if code.M > limit:
        raise ValueError(f"M = {code.M} exceeds limit {limit}")
    return order_of_column(code.W, coord)


def cyclic_encode(code: NestedCode, k: int, coord: int):
    """k g_coord mod L_s for 0 <= k < M; the coordinate must be cyclic."""
    if not 0 <= k < code.M:
        raise OutOfRangeInfo(f"k = {k} outside 0..{code.M - 1}")
    if code.M > 1 and not cyclic_coordinates(code.W).is_cyclic(coord):
        raise NotCyclic(f"coordinate {coord + 1} does not generate the code")
    b = tuple(k if i == coord else 0 for i in range(code.n))
    return mod_shaping(code, code.lc.point(b))

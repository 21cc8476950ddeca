"""
Constructive W-matrix designs for cyclic codes of any size M.

Two structures are supported. ``S2`` fixes the first row to
``(0, ..., 0, a, b)`` with an identity block below it, so the last two
last-row cofactors are +-(-b, a); ``S3`` uses first row ``(0, ..., a, b, c)``
and an extra ``(0, ..., 0, 1, 1)`` row, giving last-row cofactors
+-(-b + c, a, -a) in the last three columns. The overall sign is
(-1)^n. Either way the last row can be chosen by solving a linear
Diophantine equation, and choosing it as M r with sum(r_i C_i) = 1 makes
the last row divisible by M, which is what the isomorphism needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from . import exact
from .errors import DesignError, NoSolution, SingularMatrixError
from .lattice import Lattice, make_lattice

S2, S3 = "S2", "S3"


@dataclass
class WDesign:
    kind: str
    n: int
    a: int
    b: int
    c: int = 0
    M: Optional[int] = None
    fill: Tuple[Tuple[int, int], ...] = ()
    r: Optional[Tuple[int, ...]] = None
    last_row: Optional[Tuple[int, ...]] = None

    @property
    def free_columns(self) -> Tuple[int, ...]:
        k = 2 if self.kind == S2 else 3
        return tuple(range(self.n - k, self.n))

    def top_rows(self) -> exact.Matrix:
        if self.kind == S2:
            return top_rows_s2(self.n, self.a, self.b, self.fill)
        if self.kind == S3:
            if self.fill:
                raise DesignError("S3 designs have no free fill entries")
            return top_rows_s3(self.n, self.a, self.b, self.c)
        raise DesignError(f"unknown design kind {self.kind!r}")


def design_from_dict(d: dict) -> WDesign:
    kind = str(d["kind"]).upper()
    fill = tuple(tuple(int(v) for v in pair) for pair in d.get("fill") or ())
    r = d.get("r")
    last = d.get("last_row")
    return WDesign(kind=kind, n=int(d["n"]), a=int(d["a"]), b=int(d["b"]), c=int(d.get("c") or 0),
                   M=None if d.get("M") is None else int(d["M"]), fill=fill,
                   r=None if r is None else tuple(int(v) for v in r),
                   last_row=None if last is None else tuple(int(v) for v in last))


def top_rows_s2(n: int, a: int, b: int, fill: Sequence[Sequence[int]] = ()) -> exact.Matrix:
    if n < 2:
        raise DesignError("S2 needs n >= 2")
    if exact.gcd_vec((a, b)) != 1:
        raise DesignError(f"gcd(a, b) = gcd({a}, {b}) != 1")
    fill = list(fill) or [(0, 0)] * (n - 2)
    if len(fill) != n - 2:
        raise DesignError(f"S2 with n = {n} takes {n - 2} fill pairs, got {len(fill)}")
    rows = [[0] * (n - 2) + [a, b]]
    for i in range(n - 2):
        rows.append([int(i == j) for j in range(n - 2)] + [int(fill[i][0]), int(fill[i][1])])
    return exact.matrix(rows)


def top_rows_s3(n: int, a: int, b: int, c: int) -> exact.Matrix:
    if n < 3:
        raise DesignError("S3 needs n >= 3")
    if exact.gcd_vec((c - b, a)) != 1:
        raise DesignError(f"gcd(-b + c, a) = gcd({c - b}, {a}) != 1")
    rows = [[0] * (n - 3) + [a, b, c]]
    for i in range(n - 3):
        rows.append([int(i == j) for j in range(n - 3)] + [0, 0, 0])
    rows.append([0] * (n - 2) + [1, 1])
    return exact.matrix(rows)


def _complete(top: exact.Matrix, last_row: Sequence[int]) -> exact.Matrix:
    n = len(top) + 1
    if len(last_row) != n:
        raise DesignError(f"last row must have {n} entries")
    W = exact.matrix(list(top) + [list(last_row)])
    if exact.det(W) == 0:
        raise DesignError("W is rank deficient")
    return W


def build_w_s2(n: int, a: int, b: int, fill: Sequence[Sequence[int]] = (),
               last_row: Sequence[int] = ()) -> exact.Matrix:
    return _complete(top_rows_s2(n, a, b, fill), last_row)


def build_w_s3(n: int, a: int, b: int, c: int, last_row: Sequence[int] = ()) -> exact.Matrix:
    return _complete(top_rows_s3(n, a, b, c), last_row)


def last_row_cofactors(W: exact.Matrix) -> Tuple[int, ...]:
    """(C^(n,1), ..., C^(n,n)); accepts W or just its first n-1 rows."""
    W = exact.matrix(W)
    rows, cols = exact.shape(W)
    if rows == cols - 1:
        W = W + (tuple([0] * cols),)
    elif rows != cols:
        raise ValueError("need a square W or its first n-1 rows")
    n = cols
    return tuple(int(exact.cofactor(W, n - 1, j)) for j in range(n))


def _solve_on(cof: Sequence[int], free: Sequence[int], target: int) -> Tuple[int, ...]:
    sol = exact.solve_diophantine([cof[j] for j in free], target)
    x = [0] * len(cof)
    for j, v in zip(free, sol):
        x[j] = v
    return tuple(x)


def make_isomorphic_last_row(W_top: exact.Matrix, M: int,
                             free: Optional[Sequence[int]] = None) -> Tuple[Tuple[int, ...], exact.Matrix]:
    """Solve sum(r_i C_i) = 1 over the ``free`` columns and set the last row to M r.

    Returns ``(r, W)`` with det W = M and every entry of the last row
    divisible by M. Raises :class:`NoSolution` when the free cofactors are
    not coprime.
    """
    cof = last_row_cofactors(W_top)
    free = tuple(range(len(cof))) if free is None else tuple(free)
    r = _solve_on(cof, free, 1)
    W = exact.matrix(list(W_top) + [[M * v for v in r]])
    assert exact.det(W) == M
    return r, W


def last_row_for_size(W_top: exact.Matrix, M: int, free: Optional[Sequence[int]] = None) -> exact.Matrix:
    """Complete W with a last row giving det W = M (no divisibility requirement)."""
    cof = last_row_cofactors(W_top)
    free = tuple(range(len(cof))) if free is None else tuple(free)
    W = exact.matrix(list(W_top) + [list(_solve_on(cof, free, M))])
    assert exact.det(W) == M
    return W


def witness_value(W_top: exact.Matrix, r: Sequence[int]) -> int:
    """sum(r_i C^(n,i)); a multiplier vector is a valid witness when this is 1."""
    cof = last_row_cofactors(W_top)
    if len(r) != len(cof):
        raise ValueError("witness length mismatch")
    return sum(int(x) * c for x, c in zip(r, cof))


def build(design: WDesign, iso: bool = False) -> Tuple[exact.Matrix, Optional[Tuple[int, ...]]]:
    """Materialize a design as ``(W, r)``; ``r`` is None for non-isomorphic builds.

    Precedence: explicit ``last_row``, then explicit ``r`` (validated), then
    a solved last row for target size ``M``.
    """
    top = design.top_rows()
    if design.last_row is not None:
        if iso:
            raise DesignError("last_row and iso repair are mutually exclusive")
        return _complete(top, design.last_row), None
    if design.M is None:
        raise DesignError("design needs M (or an explicit last_row)")
    M = design.M
    if design.r is not None:
        if witness_value(top, design.r) != 1:
            raise NoSolution(f"witness r = {design.r} does not satisfy sum(r_i C_i) = 1")
        return _complete(top, [M * v for v in design.r]), tuple(design.r)
    if iso:
        r, W = make_isomorphic_last_row(top, M, design.free_columns)
        return W, r
    return last_row_for_size(top, M, design.free_columns), None


def derive_coding_lattice(ls: Lattice, W: exact.Matrix) -> Lattice:
    """Coding lattice with generator G_s W^-1."""
    W = exact.matrix(W)
    if exact.det(W) == 0:
        raise SingularMatrixError("W is singular")
    Winv = exact.inverse(W)
    if ls.exact:
        return make_lattice(exact.matmul(ls.G, Winv), ls.policy)
    return make_lattice(ls.Gf @ exact.to_float(Winv), ls.policy)


def load_design(path: str) -> WDesign:
    import json

    with open(path) as fh:
        return design_from_dict(json.load(fh))

"""
Exact integer/rational matrix arithmetic.

Matrices are plain tuples of row tuples. Integral entries are stored as
``int`` and everything else as ``fractions.Fraction`` so that integer-only
work (the W matrix, adjugates, cofactors) never pays for rational overhead.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from numbers import Rational
from typing import Iterable, Sequence, Tuple, Union

from .errors import DimensionError, NoSolution, SingularMatrixError

Scalar = Union[int, Fraction]
Matrix = Tuple[Tuple[Scalar, ...], ...]
Vector = Tuple[Scalar, ...]


def to_exact(x) -> Scalar:
    """Convert ``x`` to an int or a reduced Fraction.

    Strings such as ``"4/3"`` or ``"0.5"`` are parsed exactly; floats are
    converted exactly (binary value), so pass strings for decimal data.
    """
    if isinstance(x, bool):
        raise TypeError("bool is not a matrix entry")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        f = x
    elif isinstance(x, Rational):
        f = Fraction(x.numerator, x.denominator)
    elif isinstance(x, (float, str)):
        f = Fraction(x)
    elif hasattr(x, "__index__"):
        return int(x)
    else:
        f = Fraction(float(x))
    return f.numerator if f.denominator == 1 else f


def matrix(rows: Iterable[Iterable]) -> Matrix:
    """Build an exact rectangular matrix from nested iterables."""
    out = tuple(tuple(to_exact(v) for v in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise DimensionError("ragged matrix")
    return out


def vector(values: Iterable) -> Vector:
    return tuple(to_exact(v) for v in values)


def shape(m: Matrix) -> Tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def _norm(v: Scalar) -> Scalar:
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def matmul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise DimensionError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    bt = transpose(b)
    return tuple(tuple(_norm(sum(x * y for x, y in zip(row, col))) for col in bt) for row in a)


def matvec(m: Matrix, v: Sequence[Scalar]) -> Vector:
    if shape(m)[1] != len(v):
        raise DimensionError("matrix/vector size mismatch")
    return tuple(_norm(sum(x * y for x, y in zip(row, v))) for row in m)


def scale(m: Matrix, k: Scalar) -> Matrix:
    return tuple(tuple(_norm(k * x) for x in row) for row in m)


def is_integral(m: Matrix) -> bool:
    return all(isinstance(x, int) or x.denominator == 1 for row in m for x in row)


def to_float(m: Matrix):
    import numpy as np

    return np.array([[float(x) for x in row] for row in m], dtype=float)


def _require_square(m: Matrix) -> int:
    r, c = shape(m)
    if r != c:
        raise DimensionError(f"square matrix required, got {r}x{c}")
    return r


def _bareiss(rows: list) -> int:
    """Fraction-free determinant of an integer matrix (list of lists, modified)."""
    n = len(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        for i in range(k + 1, n):
            ri, rk = rows[i], rows[k]
            lead = ri[k]
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                ri[j] = (ri[j] * pivot - lead * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * rows[n - 1][n - 1] if n else 1


def det(m: Matrix) -> Scalar:
    """Exact determinant via Bareiss elimination.

    Rational matrices are first scaled row-wise to integers, so the
    elimination itself only ever touches Python ints.
    """
    m = matrix(m)
    n = _require_square(m)
    if n == 0:
        return 1
    rows = []
    denom = 1
    for row in m:
        lcm = 1
        for x in row:
            if isinstance(x, Fraction):
                lcm = lcm * x.denominator // gcd(lcm, x.denominator)
        denom *= lcm
        rows.append([int(x * lcm) for x in row])
    d = _bareiss(rows)
    return d if denom == 1 else _norm(Fraction(d, denom))


def minor(m: Matrix, i: int, j: int) -> Matrix:
    return tuple(row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i)


def cofactor(m: Matrix, i: int, j: int) -> Scalar:
    """Signed cofactor (-1)^(i+j) det(m without row i, column j); indices are 0-based."""
    sign = -1 if (i + j) % 2 else 1
    return _norm(sign * det(minor(m, i, j)))


def adjugate(m: Matrix) -> Matrix:
    """Transpose of the cofactor matrix.

    ``adjugate(m) @ m == det(m) * I`` holds for singular ``m`` too.
    """
    n = _require_square(m)
    if n == 1:
        return ((1,),)
    cof = [[cofactor(m, i, j) for j in range(n)] for i in range(n)]
    return transpose(tuple(tuple(r) for r in cof))


def inverse(m: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    m = matrix(m)
    n = _require_square(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(_norm(x) for x in row[n:]) for row in aug)


def gcd_vec(v: Iterable[int]) -> int:
    """Non-negative gcd of all entries; the empty/all-zero vector gives 0."""
    return reduce(gcd, (int(x) for x in v), 0)


def ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    r0, r1 = a, b
    s0, s1 = 1, 0
    t0, t1 = 0, 1
    while r1 != 0:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0 < 0:
        r0, s0, t0 = -r0, -s0, -t0
    return r0, s0, t0


def solve_diophantine(coeffs: Sequence[int], target: int) -> Tuple[int, ...]:
    """One integer solution ``x`` of ``sum(coeffs[i] * x[i]) == target``.

    Extended Euclid is folded left to right, so the witness is deterministic.
    Raises :class:`NoSolution` when ``gcd(coeffs)`` does not divide ``target``.
    """
    coeffs = [int(c) for c in coeffs]
    if not coeffs:
        raise ValueError("at least one coefficient is required")
    g, x = 0, []
    for c in coeffs:
        g, s, t = ext_gcd(g, c)
        x = [s * xi for xi in x] + [t]
    if g == 0:
        if target == 0:
            return tuple(0 for _ in coeffs)
        raise NoSolution(f"all coefficients are zero but target is {target}")
    if target % g:
        raise NoSolution(f"gcd {g} of coefficients does not divide {target}")
    k = target // g
    return tuple(k * xi for xi in x)

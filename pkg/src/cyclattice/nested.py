"""
Nested lattice codes with rectangular encoding.

A code is a pair of lattices with the shaping lattice nested in the coding
lattice, the integer matrix W = H_c G_s linking them, and an encoding
diagonal (M_1, ..., M_n) with prod(M_i) = |det W|. Encoding maps an
information vector b to ``G_c b mod L_s``.
"""

from __future__ import annotations

import csv
import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from . import exact
from .errors import (BijectivityViolation, DiagonalProductMismatch, NotACodeword,
                     NotCyclic, OutOfRangeInfo)
from .lattice import FLOAT, Lattice, NumericPolicy, make_lattice, sublattice_W
from .quantize import as_point, mod_lattice, quantize

MAX_CODEBOOK = 10**6


@dataclass(eq=False)
class NestedCode:
    lc: Lattice
    ls: Lattice
    W: exact.Matrix
    M: int
    enc_diag: Tuple[int, ...]
    _table: Optional["Codebook"] = field(default=None, init=False, repr=False)

    @property
    def n(self) -> int:
        return self.lc.n

    @property
    def exact(self) -> bool:
        return self.lc.exact

    @property
    def cyclic_coordinate(self) -> Optional[int]:
        """0-based coordinate t when the diagonal is (1, .., M at t, .., 1), else None."""
        big = [i for i, m in enumerate(self.enc_diag) if m != 1]
        if len(big) == 1:
            return big[0]
        if not big and self.M == 1:
            return self.n - 1
        return None


@dataclass
class Codebook:
    entries: List[Tuple[Tuple[int, ...], object]]
    by_key: Dict[Tuple[int, ...], Tuple[int, ...]]
    by_info: Dict[Tuple[int, ...], object]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Tuple[Tuple[int, ...], object]]:
        return iter(self.entries)

    def codeword(self, b: Sequence[int]):
        return self.by_info[tuple(int(v) for v in b)]


def _as_float_lattice(lat: Lattice) -> Lattice:
    return make_lattice(lat.Gf, NumericPolicy(FLOAT), tag=lat.tag)


def default_diagonal(W: exact.Matrix) -> Tuple[int, ...]:
    """Cyclic diagonal at the highest coordinate whose adjugate column has gcd 1."""
    M = abs(exact.det(W))
    adj = exact.adjugate(W)
    n = len(W)
    for t in reversed(range(n)):
        if exact.gcd_vec(row[t] for row in adj) == 1:
            return tuple(M if i == t else 1 for i in range(n))
    raise NotCyclic("no cyclic coordinate; pass an explicit encoding diagonal")


def make_code(lc: Lattice, ls: Lattice, enc_diag: Optional[Sequence[int]] = None) -> NestedCode:
    """Validate nesting and the encoding diagonal.

    If only one lattice is exact, both are used in float mode. Without
    ``enc_diag`` a cyclic diagonal is chosen (see :func:`default_diagonal`).
    """
    if lc.exact != ls.exact:
        lc, ls = (_as_float_lattice(lc) if lc.exact else lc), (_as_float_lattice(ls) if ls.exact else ls)
    W = sublattice_W(lc, ls)
    M = abs(int(exact.det(W)))
    if enc_diag is None:
        enc_diag = default_diagonal(W)
    enc_diag = tuple(int(m) for m in enc_diag)
    if len(enc_diag) != lc.n or any(m < 1 for m in enc_diag):
        raise DiagonalProductMismatch(f"diagonal {enc_diag} must have {lc.n} positive entries")
    if math.prod(enc_diag) != M:
        raise DiagonalProductMismatch(f"prod{enc_diag} = {math.prod(enc_diag)} != |det W| = {M}")
    return NestedCode(lc=lc, ls=ls, W=W, M=M, enc_diag=enc_diag)


def code_from_coding(lc: Lattice, W, enc_diag=None) -> NestedCode:
    """Shaping lattice G_s = G_c W."""
    W = exact.matrix(W)
    if lc.exact:
        ls = make_lattice(exact.matmul(lc.G, W), lc.policy)
    else:
        ls = make_lattice(lc.Gf @ exact.to_float(W), lc.policy)
    return make_code(lc, ls, enc_diag)


def code_from_shaping(ls: Lattice, W, enc_diag=None) -> NestedCode:
    """Coding lattice G_c = G_s W^-1."""
    from .design import derive_coding_lattice

    return make_code(derive_coding_lattice(ls, W), ls, enc_diag)


def mod_shaping(code: NestedCode, x):
    """x - Q_s(x): the representative of x + L_s in the zero-centered Voronoi cell."""
    y, _ = mod_lattice(code.ls, x)
    return y


def _check_info(code: NestedCode, b) -> Tuple[int, ...]:
    b = tuple(int(v) for v in b)
    if len(b) != code.n or any(not 0 <= v < m for v, m in zip(b, code.enc_diag)):
        raise OutOfRangeInfo(f"info vector {b} outside Z_{code.enc_diag}")
    return b


def encode(code: NestedCode, b: Sequence[int]):
    """y = G_c b - Q_s(G_c b)."""
    b = _check_info(code, b)
    return mod_shaping(code, code.lc.point(b))


def codeword_key(code: NestedCode, y) -> Tuple[int, ...]:
    """Integer coordinates H_c y of a coding-lattice point; raises NotACodeword otherwise."""
    y = as_point(code.lc, y)
    u = code.lc.coords(y)
    if code.exact:
        if not all(isinstance(v, int) for v in u):
            raise NotACodeword("point is not in the coding lattice")
        return tuple(u)
    r = np.rint(u)
    if np.abs(u - r).max() > code.lc.policy.tol * max(1.0, np.abs(u).max()):
        raise NotACodeword("point is not in the coding lattice")
    return tuple(int(v) for v in r)


def enumerate_codebook(code: NestedCode, limit: int = MAX_CODEBOOK) -> Codebook:
    """Encode every admissible info vector, checking injectivity and Voronoi membership."""
    if code.M > limit:
        raise ValueError(f"codebook size {code.M} exceeds limit {limit}")
    entries, by_key, by_info = [], {}, {}
    zero = (0,) * code.n
    for b in itertools.product(*(range(m) for m in code.enc_diag)):
        y = encode(code, b)
        key = codeword_key(code, y)
        if key in by_key:
            raise BijectivityViolation(f"info vectors {by_key[key]} and {b} share a codeword")
        if quantize(code.ls, y).index != zero:
            raise BijectivityViolation(f"codeword of {b} is outside the Voronoi cell")
        entries.append((b, y))
        by_key[key] = b
        by_info[b] = y
    return Codebook(entries, by_key, by_info)


def _table(code: NestedCode) -> Codebook:
    if code._table is None:
        code._table = enumerate_codebook(code)
    return code._table


def index_cyclic(code: NestedCode, y) -> Tuple[int, ...]:
    """Bezout-based indexing for a cyclic diagonal.

    With u = H_c y we have adj(W) u = k q_t (mod M), and any integer vector
    c with c . q_t = 1 recovers k = c . adj(W) u (mod M).
    """
    t = code.cyclic_coordinate
    if t is None:
        raise NotCyclic("encoding diagonal is not cyclic")
    u = codeword_key(code, y)
    adj = exact.adjugate(code.W)
    q = [row[t] for row in adj]
    c = exact.solve_diophantine(q, 1)
    v = exact.matvec(adj, u)
    k = sum(ci * vi for ci, vi in zip(c, v)) % code.M
    b = tuple(k if i == t else 0 for i in range(code.n))
    if codeword_key(code, encode(code, b)) != u:
        raise NotACodeword("point is not a codeword of this code")
    return b


def index(code: NestedCode, y, method: str = "auto") -> Tuple[int, ...]:
    """Inverse of :func:`encode`.

    ``method`` is ``"cyclic"``, ``"table"`` or ``"auto"`` (cyclic when the
    diagonal allows it).
    """
    if method == "auto":
        method = "cyclic" if code.cyclic_coordinate is not None else "table"
    if method == "cyclic":
        return index_cyclic(code, y)
    key = codeword_key(code, y)
    try:
        return _table(code).by_key[key]
    except KeyError:
        raise NotACodeword("point is not a codeword of this code") from None


def code_rate(code_or_n, M: Optional[int] = None) -> float:
    """(1/n) log2 M in bits per dimension."""
    if isinstance(code_or_n, NestedCode):
        n, M = code_or_n.n, code_or_n.M
    else:
        n = code_or_n
    return math.log2(M) / n


def usage_metrics(n: int, M: Optional[int] = None, K: Optional[int] = None):
    """Exact codeword usage ``(U_c, U_s)`` as Fractions.

    U_c = 2^floor(log2 M) / M for a cyclic code of size M. U_s is the
    self-similar figure 2^(n floor(log2 K)) / K^n; it is None when M is not
    a perfect n-th power and K is not given.
    """
    if K is not None:
        if K < 1:
            raise ValueError("K must be >= 1")
        if M is not None and M != K ** n:
            raise ValueError("M must equal K^n")
        M = K ** n
    if M is None or M < 1:
        raise ValueError("M must be >= 1")
    U_c = Fraction(2 ** (M.bit_length() - 1), M)
    if K is None:
        root = round(M ** (1.0 / n))
        K = next((k for k in (root - 1, root, root + 1) if k >= 1 and k ** n == M), None)
    U_s = None if K is None else Fraction(2 ** (n * (K.bit_length() - 1)), M)
    return U_c, U_s


# Export ------------------------------------------------------------------

def _fmt_float(v) -> str:
    return f"{float(v):.12g}"


def write_codebook_csv(code: NestedCode, book: Codebook, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    n = code.n
    w.writerow([f"b_{i + 1}" for i in range(n)] + [f"y_{i + 1}" for i in range(n)])
    for b, y in book:
        w.writerow(list(b) + [_fmt_float(v) for v in y])


def codebook_to_json(code: NestedCode, book: Codebook) -> str:
    rows = []
    for b, y in book:
        yy = [str(v) for v in y] if code.exact else [float(v) for v in y]
        rows.append({"b": list(b), "y": yy})
    return json.dumps({"n": code.n, "M": code.M, "enc_diag": list(code.enc_diag),
                       "exact": code.exact, "codewords": rows}, indent=1)

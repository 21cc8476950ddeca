"""
Group structure of a codebook and exhaustive isomorphism checks.

Info vectors form Z_M1 x ... x Z_Mn under coordinate-wise modular
addition; codewords form a group under addition mod the shaping lattice.
The encoder is an isomorphism when enc(b1 + b2) = enc(b1) + enc(b2) for all
pairs. A sufficient algebraic test is that row i of W is divisible by M_i.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from . import exact
from .errors import NotACodeword, OutOfRangeInfo
from .nested import NestedCode, codeword_key, enumerate_codebook, mod_shaping

MAX_PAIRS = 10**7


@dataclass(frozen=True)
class GroupSpec:
    enc_diag: Tuple[int, ...]

    @property
    def order(self) -> int:
        return math.prod(self.enc_diag)

    def elements(self):
        return itertools.product(*(range(m) for m in self.enc_diag))


def info_add(b1: Sequence[int], b2: Sequence[int], spec: GroupSpec) -> Tuple[int, ...]:
    for b in (b1, b2):
        if len(b) != len(spec.enc_diag) or any(not 0 <= v < m for v, m in zip(b, spec.enc_diag)):
            raise OutOfRangeInfo(f"{tuple(b)} is not in Z_{spec.enc_diag}")
    return tuple((x + y) % m for x, y, m in zip(b1, b2, spec.enc_diag))


def codeword_add(code: NestedCode, y1, y2):
    """(y1 + y2) mod L_s. Inputs must be coding-lattice points."""
    codeword_key(code, y1)
    codeword_key(code, y2)
    if code.exact:
        s = tuple(a + b for a, b in zip(y1, y2))
    else:
        s = y1 + y2
    return mod_shaping(code, s)


def check_divisibility(W: exact.Matrix, spec: GroupSpec) -> bool:
    """True iff every entry of row i of W is divisible by M_i."""
    W = exact.matrix(W)
    if len(W) != len(spec.enc_diag):
        raise ValueError("W and the encoding diagonal have different sizes")
    return all(int(x) % m == 0 for row, m in zip(W, spec.enc_diag) for x in row)


@dataclass(frozen=True)
class IsoReport:
    holds: bool
    pairs_checked: int
    counterexample: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None


def verify_isomorphism(code: NestedCode, limit: int = MAX_PAIRS) -> IsoReport:
    """Check enc(b1 + b2) == enc(b1) + enc(b2) over all ordered pairs.

    Codewords are compared through their integer coding-lattice coordinates,
    so float mode needs no distance tolerance here. The first violating pair
    in lexicographic order is reported.
    """
    if code.M ** 2 > limit:
        raise ValueError(f"M^2 = {code.M ** 2} exceeds limit {limit}")
    spec = GroupSpec(code.enc_diag)
    book = enumerate_codebook(code)
    keys = {b: codeword_key(code, y) for b, y in book}
    count = 0
    for b1, y1 in book:
        for b2, y2 in book:
            count += 1
            s = codeword_add(code, y1, y2)
            try:
                k = codeword_key(code, s)
            except NotACodeword:
                return IsoReport(False, count, (b1, b2))
            if k != keys[info_add(b1, b2, spec)]:
                return IsoReport(False, count, (b1, b2))
    return IsoReport(True, count)

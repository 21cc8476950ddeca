"""Brute-force reference implementations shared by the tests.

These avoid the library's algorithms on purpose: nearest points come from
small explicit candidate sets with exact distances, orders from repeated
addition, and codebooks from a plain scan over shaping-lattice indices.
"""

import itertools
import math
from fractions import Fraction

import numpy as np


def _frac(v):
    return v if isinstance(v, Fraction) else Fraction(v)


def lex_nearest(cands, x):
    """(index, point) of the closest candidate; ties go to the smallest index."""
    best = None
    for idx, p in cands:
        d = sum((_frac(a) - _frac(b)) ** 2 for a, b in zip(x, p))
        key = (d, idx)
        if best is None or key < best[0]:
            best = (key, idx, p)
    return best[1], best[2]


def zn_nearest(x):
    """Nearest integer vector: every nearest point uses floor or ceil per axis."""
    x = [_frac(v) for v in x]
    opts = [sorted({math.floor(v), math.ceil(v)}) for v in x]
    cands = [(c, c) for c in itertools.product(*opts)]
    return lex_nearest(cands, x)[0]


def e8_nearest_point(x):
    """Nearest E8 point (as exact coordinates) over all floor/ceil patterns of both cosets.

    E8 = D8 ∪ (D8 + ½); for each coset the nearest D8 point rounds every
    coordinate up or down, so 2 * 256 candidates cover every nearest point.
    Returns the list of all points at minimum distance.
    """
    x = [_frac(v) for v in x]
    half = Fraction(1, 2)
    pts = []
    for shift in (0, half):
        opts = [sorted({math.floor(v - shift), math.ceil(v - shift)}) for v in x]
        for c in itertools.product(*opts):
            if sum(c) % 2 == 0:
                pts.append(tuple(v + shift for v in c))
    d = [sum((a - b) ** 2 for a, b in zip(x, p)) for p in pts]
    m = min(d)
    return [p for p, dd in zip(pts, d) if dd == m]


def box_nearest_index(G, x, radius=3, exact_mode=True):
    """Scan integer coordinates within ``radius`` of round(G^-1 x); G must be well reduced."""
    Gf = np.array([[float(v) for v in row] for row in G])
    t = np.linalg.solve(Gf, np.array([float(v) for v in x]))
    c = np.rint(t).astype(int)
    n = len(x)
    best = None
    for dz in itertools.product(range(-radius, radius + 1), repeat=n):
        z = tuple(int(a + b) for a, b in zip(c, dz))
        if exact_mode:
            p = [sum(_frac(G[i][j]) * z[j] for j in range(n)) for i in range(n)]
            d = sum((_frac(a) - b) ** 2 for a, b in zip(x, p))
            key = (d, z)
        else:
            p = Gf @ np.array(z, dtype=float)
            d = float(np.sum((np.array(x, dtype=float) - p) ** 2))
            key = (round(d, 9), z)
        if best is None or key < best:
            best = key
    return best[1]


def order_by_addition(W, col):
    """Additive order of W^-1 e_col modulo Z^n, computed with exact fractions."""
    n = len(W)
    A = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(W)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        A[c] = [v / A[c][c] for v in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    g = [A[i][n + col] for i in range(n)]
    acc = list(g)
    k = 1
    while any(v.denominator != 1 for v in acc):
        acc = [a + b for a, b in zip(acc, g)]
        k += 1
    return k


def brute_codeword(Gc, Gs, b, span=15):
    """G_c b mod L_s by scanning shaping indices in [-span, span]^2 (2-D only)."""
    n = len(b)
    x = [sum(_frac(Gc[i][j]) * b[j] for j in range(n)) for i in range(n)]
    cands = []
    for z in itertools.product(range(-span, span + 1), repeat=n):
        p = tuple(sum(_frac(Gs[i][j]) * z[j] for j in range(n)) for i in range(n))
        cands.append((z, p))
    z, p = lex_nearest(cands, x)
    return tuple(a - c for a, c in zip(x, p)), z

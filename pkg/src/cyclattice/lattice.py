"""
Lattice values, membership and nesting tests.

A lattice is stored by its generator matrix G (columns are basis vectors)
and check matrix H = G^-1. In exact mode both are exact rational matrices
and every test is exact; in float mode they are numpy arrays and
integrality is decided with a tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import exact
from .errors import DimensionError, NotNested, SingularMatrixError

EXACT = "exact"
FLOAT = "float"

GENERIC, ZN, A2, E8 = "Generic", "Zn", "A2", "E8"
QUANTIZER_TAGS = (GENERIC, ZN, A2, E8)


@dataclass(frozen=True)
class NumericPolicy:
    mode: str = EXACT
    tol: float = 1e-9

    def __post_init__(self):
        if self.mode not in (EXACT, FLOAT):
            raise ValueError(f"unknown numeric mode {self.mode!r}")
        if self.mode == FLOAT and not self.tol > 0:
            raise ValueError("float mode needs a positive tolerance")

    @property
    def exact(self) -> bool:
        return self.mode == EXACT


@dataclass(frozen=True, eq=False)
class Lattice:
    """Full-rank lattice in R^n; use :func:`make_lattice` to construct."""

    n: int
    Gf: np.ndarray
    Hf: np.ndarray
    policy: NumericPolicy
    tag: str = GENERIC
    G: Optional[exact.Matrix] = field(default=None, repr=False)
    H: Optional[exact.Matrix] = field(default=None, repr=False)

    @property
    def exact(self) -> bool:
        return self.policy.exact

    def point(self, z):
        """G @ z in the lattice's arithmetic (tuple of exact scalars or ndarray)."""
        if self.exact and _is_exact_vec(z):
            return exact.matvec(self.G, z)
        return self.Gf @ np.asarray(z, dtype=float)

    def coords(self, x):
        """H @ x: the (generally fractional) basis coordinates of a point."""
        if self.exact and _is_exact_vec(x):
            return exact.matvec(self.H, x)
        return self.Hf @ np.asarray(x, dtype=float)

    def generator(self):
        return self.G if self.exact else self.Gf


def _is_exact_vec(v) -> bool:
    return isinstance(v, tuple) and all(isinstance(x, (int, Fraction)) for x in v)


def _entries_exact(G) -> bool:
    if isinstance(G, np.ndarray):
        return G.dtype.kind in "iu" or (G.dtype == object and all(
            isinstance(x, (int, Fraction)) for x in G.ravel()))
    return all(isinstance(x, (int, Fraction, str)) and _parses_exact(x) for row in G for x in row)


def _parses_exact(x) -> bool:
    if not isinstance(x, str):
        return True
    try:
        Fraction(x)
    except ValueError:
        return False
    return True


def make_lattice(G, policy: Optional[NumericPolicy] = None, tag: Optional[str] = None) -> Lattice:
    """Validate a square full-rank generator matrix and build a :class:`Lattice`.

    Without an explicit policy, exact mode is chosen when every entry is an
    int, Fraction or fraction string, and float mode otherwise. Without an
    explicit tag, the closed-form quantizer tag is detected by checking
    whether G generates Z^n, A2 or E8 (in the built-in embeddings).
    """
    if policy is None:
        policy = NumericPolicy(EXACT if _entries_exact(G) else FLOAT)
    if policy.exact:
        Gx = exact.matrix(G.tolist() if isinstance(G, np.ndarray) else G)
        r, c = exact.shape(Gx)
        if r != c or r == 0:
            raise DimensionError(f"generator must be square, got {r}x{c}")
        Hx = exact.inverse(Gx)
        Gf, Hf = exact.to_float(Gx), exact.to_float(Hx)
    else:
        Gx = Hx = None
        Gf = np.array([[float(Fraction(x)) if isinstance(x, str) else float(x) for x in row] for row in G], dtype=float)
        if Gf.ndim != 2 or Gf.shape[0] != Gf.shape[1] or Gf.shape[0] == 0:
            raise DimensionError(f"generator must be square, got shape {Gf.shape}")
        if abs(np.linalg.det(Gf)) <= policy.tol * max(1.0, np.abs(Gf).max()) ** Gf.shape[0]:
            raise SingularMatrixError("generator matrix is singular")
        Hf = np.linalg.inv(Gf)
    n = Gf.shape[0]
    lat = Lattice(n=n, Gf=Gf, Hf=Hf, policy=policy, tag=GENERIC, G=Gx, H=Hx)
    if tag is None:
        tag = detect_tag(lat)
    elif tag not in QUANTIZER_TAGS:
        raise ValueError(f"unknown quantizer tag {tag!r}")
    return Lattice(n=n, Gf=Gf, Hf=Hf, policy=policy, tag=tag, G=Gx, H=Hx)


def _same_lattice(lat: Lattice, ref_G, tol: float) -> bool:
    ref_G = np.asarray(ref_G, dtype=float)
    if ref_G.shape != lat.Gf.shape:
        return False
    T = np.linalg.solve(ref_G, lat.Gf)
    if np.abs(T - np.rint(T)).max() > 1e-9 + tol:
        return False
    return abs(abs(np.linalg.det(np.rint(T))) - 1.0) < 0.5


def detect_tag(lat: Lattice) -> str:
    tol = 0.0 if lat.exact else lat.policy.tol
    if _same_lattice(lat, np.eye(lat.n), tol):
        return ZN
    if lat.n == 2 and _same_lattice(lat, a2_generator_float(), tol):
        return A2
    if lat.n == 8 and _same_lattice(lat, exact.to_float(E8_GENERATOR), tol):
        return E8
    return GENERIC


def is_member(lat: Lattice, x) -> bool:
    """True iff H @ x is an integer vector."""
    if len(x) != lat.n:
        raise DimensionError(f"point has dimension {len(x)}, lattice has {lat.n}")
    if lat.exact and _is_exact_vec(x):
        return all(isinstance(v, int) for v in lat.coords(x))
    t = lat.Hf @ np.asarray(x, dtype=float)
    return bool(np.all(np.abs(t - np.rint(t)) <= lat.policy.tol))


def sublattice_W(lc: Lattice, ls: Lattice) -> exact.Matrix:
    """Return the integer nesting matrix W = H_c @ G_s, or raise :class:`NotNested`."""
    if lc.n != ls.n:
        raise DimensionError("lattices have different dimensions")
    if lc.exact and ls.exact:
        W = exact.matmul(lc.H, ls.G)
        if not exact.is_integral(W):
            raise NotNested("H_c @ G_s has non-integer entries")
        return W
    tol = max(lc.policy.tol if not lc.exact else 0.0, ls.policy.tol if not ls.exact else 0.0)
    Wf = lc.Hf @ ls.Gf
    Wr = np.rint(Wf)
    if np.abs(Wf - Wr).max() > tol:
        raise NotNested("H_c @ G_s is not integral within tolerance")
    return exact.matrix(Wr.astype(int).tolist())


def volume(lat: Lattice):
    """|det G|; exact scalar in exact mode, float otherwise."""
    if lat.exact:
        return abs(exact.det(lat.G))
    return abs(float(np.linalg.det(lat.Gf)))


# Built-in lattices ----------------------------------------------------------

# Standard E8 basis (columns), det 1; generates D8 ∪ (D8 + ½·1).
E8_GENERATOR = exact.transpose(exact.matrix([
    [2, 0, 0, 0, 0, 0, 0, 0],
    [-1, 1, 0, 0, 0, 0, 0, 0],
    [0, -1, 1, 0, 0, 0, 0, 0],
    [0, 0, -1, 1, 0, 0, 0, 0],
    [0, 0, 0, -1, 1, 0, 0, 0],
    [0, 0, 0, 0, -1, 1, 0, 0],
    [0, 0, 0, 0, 0, -1, 1, 0],
    ["1/2"] * 8,
]))


def a2_generator_float() -> np.ndarray:
    """Hexagonal generator with columns (sqrt(3)/2, 1/2) and (0, 1)."""
    return np.array([[math.sqrt(3) / 2, 0.0], [0.5, 1.0]])


def integer_lattice(n: int) -> Lattice:
    return make_lattice(exact.identity(n), NumericPolicy(EXACT), tag=ZN)


def a2_lattice(tol: float = 1e-9) -> Lattice:
    return make_lattice(a2_generator_float(), NumericPolicy(FLOAT, tol), tag=A2)


def e8_lattice() -> Lattice:
    return make_lattice(E8_GENERATOR, NumericPolicy(EXACT), tag=E8)


# Matrix files -----------------------------------------------------------------

def parse_matrix(obj: dict):
    """Entries from a ``{"rows", "cols", "entries"}`` object.

    Integers and fraction strings stay exact; JSON floats make the matrix
    a float matrix.
    """
    rows, cols, entries = int(obj["rows"]), int(obj["cols"]), obj["entries"]
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise ValueError(f"entries do not match declared shape {rows}x{cols}")
    if any(isinstance(v, float) for r in entries for v in r):
        return [[float(Fraction(v)) if isinstance(v, str) else float(v) for v in r] for r in entries]
    return exact.matrix(entries)


def load_matrix(path: str):
    import json

    with open(path) as fh:
        return parse_matrix(json.load(fh))


def matrix_to_json(m) -> dict:
    if isinstance(m, np.ndarray):
        entries = [[float(v) for v in row] for row in m]
    else:
        entries = [[v if isinstance(v, int) else str(v) for v in row] for row in m]
    return {"rows": len(entries), "cols": len(entries[0]) if entries else 0, "entries": entries}


def builtin_lattice(name: str) -> Optional[Lattice]:
    """``Z<n>``, ``A2`` or ``E8`` by name; None for anything else."""
    key = name.strip().upper()
    if key == "A2":
        return a2_lattice()
    if key == "E8":
        return e8_lattice()
    if key.startswith("Z") and key[1:].isdigit() and int(key[1:]) > 0:
        return integer_lattice(int(key[1:]))
    return None

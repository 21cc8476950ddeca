"""
Nearest-lattice-point quantization.

``cvp_enumerate`` is the reference: a depth-first enumeration of every
integer vector inside a certified box/ball around the input, so it is
correct for any basis. ``quantize`` dispatches to closed-form decoders for
Z^n, A2 and E8 and then certifies the result against the lattice's
Voronoi-relevant vectors; boundary cases (ties) and any certification
failure are handed to the enumerator so both paths share one tie rule.

Tie rule: among equidistant nearest points, the one whose integer index
vector is lexicographically smallest wins. The rule is translation
invariant, which keeps ``x mod L`` well defined on cosets.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from . import exact
from .errors import DimensionError
from .lattice import A2, E8, ZN, Lattice, a2_generator_float, volume

MAX_ENUM_DIM = 10
REL_TIE_TOL = 1e-9


@dataclass(frozen=True)
class QuantResult:
    point: object  # exact tuple in exact mode, ndarray in float mode
    index: Tuple[int, ...]
    tie: bool = False


def as_point(lat: Lattice, x):
    """Coerce ``x`` to the lattice's arithmetic: exact tuple or float ndarray."""
    if len(x) != lat.n:
        raise DimensionError(f"point has dimension {len(x)}, lattice has {lat.n}")
    if lat.exact:
        return tuple(exact.to_exact(v) for v in x)
    return np.asarray([float(v) for v in x], dtype=float)


def _dist2(lat: Lattice, x, z):
    p = lat.point(tuple(int(v) for v in z))
    if lat.exact:
        return sum((a - b) ** 2 for a, b in zip(x, p))
    return float(np.sum((x - p) ** 2))


def cvp_enumerate(lat: Lattice, x, radius_factor: float = 1.0) -> QuantResult:
    """Closest lattice point by exhaustive enumeration.

    The search radius is the distance to the Babai rounding point (scaled by
    ``radius_factor``); any point at least as close lies in the box
    ``|z_i - (H x)_i| <= |row_i(H)| * r``, and the enumeration visits every
    integer vector of that box that is also inside the ball.
    """
    if lat.n > MAX_ENUM_DIM:
        raise DimensionError(f"enumeration is limited to n <= {MAX_ENUM_DIM}")
    x = as_point(lat, x)
    xf = np.asarray([float(v) for v in x])
    n = lat.n
    t = lat.Hf @ xf
    z0 = np.rint(t)
    d0 = float(np.sum((xf - lat.Gf @ z0) ** 2))
    scale2 = max(d0, float(np.sum(lat.Gf ** 2)) / n)
    bound = d0 * radius_factor ** 2 * (1 + 1e-7) + 1e-10 * scale2
    radius = math.sqrt(bound)
    box = np.linalg.norm(lat.Hf, axis=1) * radius + 1e-9
    lo = np.ceil(t - box).astype(int)
    hi = np.floor(t + box).astype(int)

    Q, R = np.linalg.qr(lat.Gf)
    y = Q.T @ xf
    found = []
    z = [0] * n
    state = {"bound": bound}

    def descend(i: int, partial: float) -> None:
        # coordinates n-1 .. i+1 are fixed in z
        rii = R[i, i]
        c = (y[i] - sum(R[i, j] * z[j] for j in range(i + 1, n))) / rii
        rem = state["bound"] - partial
        if rem < 0:
            return
        w = math.sqrt(rem) / abs(rii)
        a = max(lo[i], math.ceil(c - w - 1e-12))
        b = min(hi[i], math.floor(c + w + 1e-12))
        for v in range(a, b + 1):
            d = partial + (rii * (v - c)) ** 2
            if d > state["bound"]:
                continue
            z[i] = v
            if i == 0:
                found.append((d, tuple(z)))
                tighter = d * (1 + 1e-7) + 1e-10 * scale2
                if tighter < state["bound"]:
                    state["bound"] = tighter
            else:
                descend(i - 1, d)
        z[i] = 0

    descend(n - 1, 0.0)
    if not found:
        # radius_factor < 1 can exclude everything; fall back to Babai
        found = [(d0, tuple(int(v) for v in z0))]
    fbest = min(d for d, _ in found)
    cands = [zz for d, zz in found if d <= fbest * (1 + 1e-6) + 1e-9 * scale2]
    return _pick(lat, x, cands)


def _pick(lat: Lattice, x, cands) -> QuantResult:
    dists = [(_dist2(lat, x, zz), zz) for zz in cands]
    dmin = min(d for d, _ in dists)
    if lat.exact:
        ties = sorted(zz for d, zz in dists if d == dmin)
    else:
        ties = sorted(zz for d, zz in dists if d <= dmin * (1 + REL_TIE_TOL) + 1e-300)
    win = ties[0]
    return QuantResult(point=lat.point(win), index=win, tie=len(ties) > 1)


# Closed-form decoders (Euclidean coordinates, vectorized over rows) ----------

def _round_half_away(x: np.ndarray) -> np.ndarray:
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def _zn_many(X: np.ndarray) -> np.ndarray:
    return _round_half_away(X)


def _a2_many(X: np.ndarray) -> np.ndarray:
    # A2 = R ∪ (R + g1) with R the rectangular lattice (sqrt3 Z) x Z
    s3 = math.sqrt(3.0)
    step = np.array([s3, 1.0])
    shift = np.array([s3 / 2, 0.5])
    p0 = _round_half_away(X / step) * step
    p1 = _round_half_away((X - shift) / step) * step + shift
    d0 = np.sum((X - p0) ** 2, axis=1)
    d1 = np.sum((X - p1) ** 2, axis=1)
    return np.where((d0 <= d1)[:, None], p0, p1)


def _d8_many(X: np.ndarray) -> np.ndarray:
    f = _round_half_away(X)
    odd = (np.sum(f, axis=1) % 2) != 0
    if np.any(odd):
        rows = np.nonzero(odd)[0]
        delta = X[rows] - f[rows]
        k = np.argmax(np.abs(delta), axis=1)
        step = np.where(delta[np.arange(len(rows)), k] >= 0, 1.0, -1.0)
        f[rows, k] += step
    return f


def _e8_many(X: np.ndarray) -> np.ndarray:
    p0 = _d8_many(X)
    p1 = _d8_many(X - 0.5) + 0.5
    d0 = np.sum((X - p0) ** 2, axis=1)
    d1 = np.sum((X - p1) ** 2, axis=1)
    return np.where((d0 <= d1)[:, None], p0, p1)


_FAST = {ZN: _zn_many, A2: _a2_many, E8: _e8_many}


def _relevant_vectors(tag: str, n: int):
    """Voronoi-relevant vectors in Euclidean coordinates (exact where possible)."""
    if tag == ZN:
        out = []
        for i in range(n):
            for s in (1, -1):
                out.append(tuple(s if j == i else 0 for j in range(n)))
        return out
    if tag == A2:
        G = a2_generator_float()
        g1, g2 = G[:, 0], G[:, 1]
        return [tuple(s * v) for v in (g1, g2, g2 - g1) for s in (1, -1)]
    if tag == E8:
        half = Fraction(1, 2)
        out = []
        for i, j in itertools.combinations(range(8), 2):
            for si in (1, -1):
                for sj in (1, -1):
                    v = [0] * 8
                    v[i], v[j] = si, sj
                    out.append(tuple(v))
        for signs in itertools.product((1, -1), repeat=8):
            if signs.count(-1) % 2 == 0:
                out.append(tuple(s * half for s in signs))
        return out
    raise ValueError(f"no relevant vectors for tag {tag}")


_RELEVANT_CACHE: dict = {}


def _relevant(tag: str, n: int):
    key = (tag, n)
    if key not in _RELEVANT_CACHE:
        vs = _relevant_vectors(tag, n)
        Vf = np.array([[float(a) for a in v] for v in vs])
        _RELEVANT_CACHE[key] = (vs, Vf, np.sum(Vf ** 2, axis=1))
    return _RELEVANT_CACHE[key]


def quantize(lat: Lattice, x) -> QuantResult:
    """Nearest point of ``lat`` to ``x`` under the lexicographic tie rule."""
    x = as_point(lat, x)
    if lat.tag not in _FAST:
        return cvp_enumerate(lat, x)
    xf = np.asarray([float(v) for v in x])
    p = _FAST[lat.tag](xf[None, :])[0]
    z = tuple(int(v) for v in np.rint(lat.Hf @ p))
    pz = lat.point(z)
    if lat.exact:
        e = tuple(a - b for a, b in zip(x, pz))
        ef = np.array([float(v) for v in e])
    else:
        e = ef = x - pz
    vs, Vf, norms = _relevant(lat.tag, lat.n)
    # p is nearest iff e.v <= |v|^2 / 2 for every relevant v; equality is a tie
    slack = norms / 2 - Vf @ ef
    margin = 1e-7 * max(float(ef @ ef), float(norms.min()))
    close = np.nonzero(slack <= margin)[0]
    if len(close) == 0:
        return QuantResult(point=pz, index=z, tie=False)
    if lat.exact:
        for k in close:
            v = vs[k]
            s = Fraction(sum(a * a for a in v), 2) - sum(a * b for a, b in zip(e, v))
            if s <= 0:
                return cvp_enumerate(lat, x)
        return QuantResult(point=pz, index=z, tie=False)
    return cvp_enumerate(lat, x)


def quantize_many_float(lat: Lattice, X: np.ndarray) -> np.ndarray:
    """Float nearest points for many rows at once; boundary ties are not resolved."""
    X = np.asarray(X, dtype=float)
    if lat.tag in _FAST:
        return _FAST[lat.tag](X)
    out = np.empty_like(X)
    for i, row in enumerate(X):
        out[i] = lat.Gf @ np.array(cvp_enumerate(lat, row).index, dtype=float)
    return out


def normalized_second_moment(lat: Lattice, samples: int = 10**6, seed: int = 0,
                             chunk: int = 200_000) -> float:
    """Monte Carlo estimate of G(L) = E|e|^2 / (n V^(2/n)).

    Points are drawn uniformly from the fundamental parallelotope, so the
    quantization error ``x - Q(x)`` is uniform over the Voronoi cell.
    """
    if samples < 10**4:
        raise ValueError("at least 10^4 samples are required")
    rng = np.random.default_rng(seed)
    total = 0.0
    left = samples
    while left > 0:
        m = min(chunk, left)
        U = rng.random((m, lat.n))
        X = U @ lat.Gf.T
        E = X - quantize_many_float(lat, X)
        total += float(np.sum(E * E))
        left -= m
    vol = float(volume(lat))
    return total / samples / (lat.n * vol ** (2.0 / lat.n))


def shaping_gain_estimate(lat: Lattice, samples: int = 10**6, seed: int = 0) -> float:
    """Shaping gain in dB relative to the cube, 10 log10((1/12) / G(L))."""
    G = normalized_second_moment(lat, samples, seed)
    return 10 * math.log10((1 / 12) / G)


def mod_lattice(lat: Lattice, x) -> Tuple[object, Optional[QuantResult]]:
    """``x - Q(x)`` together with the quantization result."""
    x = as_point(lat, x)
    q = quantize(lat, x)
    if lat.exact:
        return tuple(a - b for a, b in zip(x, q.point)), q
    return x - q.point, q

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclattice import exact, presets
from cyclattice.cyclic import cyclic_coordinates
from cyclattice.design import (S2, S3, WDesign, build, build_w_s2, build_w_s3, derive_coding_lattice,
                               design_from_dict, last_row_cofactors, last_row_for_size, load_design,
                               make_isomorphic_last_row, top_rows_s2, top_rows_s3, witness_value)
from cyclattice.errors import DesignError, NoSolution, SingularMatrixError
from cyclattice.iso import GroupSpec, check_divisibility, verify_isomorphism
from cyclattice.lattice import e8_lattice, integer_lattice, sublattice_W
from cyclattice.nested import make_code


def float_cofactors(top):
    """C_j = det of W with e_j as last row, via numpy LU (independent of the exact code)."""
    n = len(top) + 1
    out = []
    for j in range(n):
        m = np.array([[float(v) for v in row] for row in top] + [[float(i == j) for i in range(n)]])
        out.append(int(round(np.linalg.det(m))))
    return tuple(out)


coprime_pair = st.tuples(st.integers(-30, 30), st.integers(-30, 30)).filter(lambda p: math.gcd(*p) == 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7), coprime_pair, st.data())
def test_s2_cofactor_parity(n, ab, data):
    a, b = ab
    fill = [tuple(data.draw(st.lists(st.integers(-4, 4), min_size=2, max_size=2))) for _ in range(n - 2)]
    top = top_rows_s2(n, a, b, fill)
    cof = last_row_cofactors(top)
    assert cof == float_cofactors(top)
    s = (-1) ** n
    assert cof[-2:] == (s * -b, s * a)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 8), st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))
def test_s3_cofactor_parity(n, a, b, c):
    if math.gcd(c - b, a) != 1:
        with pytest.raises(DesignError):
            top_rows_s3(n, a, b, c)
        return
    top = top_rows_s3(n, a, b, c)
    cof = last_row_cofactors(top)
    assert cof == float_cofactors(top)
    s = (-1) ** n
    assert cof[:n - 3] == (0,) * (n - 3)
    assert cof[-3:] == (s * (c - b), s * a, -s * a)


def test_e8_cofactor_triple():
    top = presets.ISO_E8.top_rows()
    assert last_row_cofactors(top)[-3:] == (2, 7, -7)
    assert float_cofactors(top)[-3:] == (2, 7, -7)
    assert witness_value(top, presets.ISO_E8.r) == 1


def test_2d_witness():
    top = top_rows_s2(2, 4, 9)
    assert last_row_cofactors(top) == (-9, 4)
    assert witness_value(top, (-1, -2)) == 1
    W, r = build(presets.ISO_2D)
    assert W == ((4, 9), (-15, -30)) and r == (-1, -2)
    assert exact.det(W) == 15
    assert check_divisibility(W, GroupSpec((1, 15)))


def test_gcd_violations():
    with pytest.raises(DesignError):
        top_rows_s2(2, 2, 4)
    with pytest.raises(DesignError):
        top_rows_s3(8, 2, 1, 3)
    with pytest.raises(DesignError):
        top_rows_s2(1, 1, 1)
    with pytest.raises(DesignError):
        top_rows_s2(4, 1, 2, [(0, 0)])


def test_bad_witness_and_rank():
    with pytest.raises(NoSolution):
        build(WDesign(kind=S2, n=2, a=4, b=9, M=15, r=(1, 1)))
    with pytest.raises(DesignError):
        build_w_s2(2, 4, 9, last_row=(8, 18))
    with pytest.raises(DesignError):
        build(WDesign(kind=S3, n=4, a=1, b=0, c=1, M=3, fill=((1, 1),)))
    with pytest.raises(DesignError):
        build(WDesign(kind=S2, n=2, a=4, b=9))


def test_explicit_last_row():
    W = build_w_s3(3, 1, 0, 1, last_row=(1, 0, 0))
    W2, r = build(WDesign(kind=S3, n=3, a=1, b=0, c=1, last_row=(1, 0, 0)))
    assert W == W2 and r is None


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), coprime_pair, st.integers(1, 40))
def test_iso_repair(n, ab, M):
    a, b = ab
    top = top_rows_s2(n, a, b)
    r, W = make_isomorphic_last_row(top, M, range(n - 2, n))
    assert exact.det(W) == M
    assert all(v % M == 0 for v in W[-1])
    assert cyclic_coordinates(W).is_cyclic(n - 1)
    diag = (1,) * (n - 1) + (M,)
    assert check_divisibility(W, GroupSpec(diag))
    if M <= 12:
        ls = integer_lattice(n)
        code = make_code(derive_coding_lattice(ls, W), ls, diag)
        assert verify_isomorphism(code).holds


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 6), st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 500))
def test_size_only_last_row(n, a, b, c, M):
    if math.gcd(c - b, a) != 1:
        return
    W = last_row_for_size(top_rows_s3(n, a, b, c), M, range(n - 3, n))
    assert exact.det(W) == M
    assert cyclic_coordinates(W).is_cyclic(n - 1)


def test_derive_coding_lattice_round_trip():
    W, _ = build(presets.ISO_E8)
    ls = e8_lattice()
    lc = derive_coding_lattice(ls, W)
    assert sublattice_W(lc, ls) == W
    with pytest.raises(SingularMatrixError):
        derive_coding_lattice(integer_lattice(2), [[1, 2], [2, 4]])


def test_design_files(tmp_path):
    p = tmp_path / "d.json"
    p.write_text(json.dumps({"kind": "s3", "n": 8, "a": 7, "b": 17, "c": 19, "M": 64,
                             "r": [0, 0, 0, 0, 0, 95, 65, 92]}))
    d = load_design(str(p))
    assert d == presets.ISO_E8
    assert d.free_columns == (5, 6, 7)
    assert design_from_dict({"kind": "S2", "n": 3, "a": 1, "b": 2, "fill": [[1, 1]]}).fill == ((1, 1),)

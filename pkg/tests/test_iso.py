import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclattice import exact, presets
from cyclattice.cyclic import cyclic_coordinates
from cyclattice.errors import BijectivityViolation, NotACodeword, OutOfRangeInfo
from cyclattice.iso import GroupSpec, check_divisibility, codeword_add, info_add, verify_isomorphism
from cyclattice.lattice import integer_lattice
from cyclattice.nested import code_from_coding, encode, enumerate_codebook, codeword_key


def test_group_spec():
    g = GroupSpec((2, 3))
    assert g.order == 6
    assert len(list(g.elements())) == 6
    assert info_add((1, 2), (1, 2), g) == (0, 1)
    with pytest.raises(OutOfRangeInfo):
        info_add((2, 0), (0, 0), g)


def test_divisibility_examples():
    assert not check_divisibility(presets.EXAMPLE_W, GroupSpec((1, 5)))
    assert not check_divisibility(presets.EXAMPLE_W, GroupSpec((5, 1)))
    assert check_divisibility([[4, 9], [-15, -30]], GroupSpec((1, 15)))
    assert check_divisibility([[3, 0], [0, 3]], GroupSpec((3, 3)))
    with pytest.raises(ValueError):
        check_divisibility(presets.EXAMPLE_W, GroupSpec((5,)))


@pytest.mark.parametrize("name", ["fig1a", "fig1b"])
def test_m5_code_isomorphic_without_divisibility(name):
    """Row divisibility fails, yet the cyclic encoding is a homomorphism from Z_5."""
    code = presets.PRESETS[name]()
    assert not check_divisibility(code.W, GroupSpec(code.enc_diag))
    rep = verify_isomorphism(code)
    assert rep.holds and rep.pairs_checked == 25


def test_designed_codes_isomorphic():
    code = presets.iso_code_2d()
    rep = verify_isomorphism(code)
    assert rep.holds and rep.pairs_checked == 225
    a2 = presets.a2_code()
    assert not a2.exact
    rep = verify_isomorphism(a2)
    assert rep.holds and rep.pairs_checked == 121


def test_non_isomorphic_rectangular_code():
    code = code_from_coding(integer_lattice(2), [[2, 1], [0, 2]], (2, 2))
    assert len(enumerate_codebook(code)) == 4
    rep = verify_isomorphism(code)
    assert not rep.holds
    assert rep.counterexample == ((0, 1), (0, 1))
    # confirm the counterexample independently
    y = encode(code, (0, 1))
    assert codeword_key(code, codeword_add(code, y, y)) != codeword_key(code, encode(code, (0, 0)))


def test_codeword_add_rejects_non_points():
    code = presets.coprime_code(2)
    with pytest.raises(NotACodeword):
        codeword_add(code, (0, 0), ("1/7", 0))


def test_pair_limit():
    with pytest.raises(ValueError):
        verify_isomorphism(presets.iso_code_2d(), limit=100)


def _codes_2d():
    for w in itertools.product(range(-4, 5), repeat=4):
        W = ((w[0], w[1]), (w[2], w[3]))
        d = abs(exact.det(W))
        if not 1 <= d <= 12:
            continue
        for m1 in (m for m in range(1, d + 1) if d % m == 0):
            yield W, (m1, d // m1)


def test_divisibility_sufficient_and_cyclic_always_iso():
    lc = presets.example_coding_lattice()
    seen_div = seen_cyc = 0
    for i, (W, diag) in enumerate(_codes_2d()):
        if i % 29:
            continue
        code = code_from_coding(lc, W, diag)
        try:
            enumerate_codebook(code)
        except BijectivityViolation:
            continue
        holds = verify_isomorphism(code).holds
        if check_divisibility(W, GroupSpec(diag)):
            assert holds
            seen_div += 1
        if code.cyclic_coordinate is not None:
            assert holds
            seen_cyc += 1
    assert seen_div > 3 and seen_cyc > 40


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_codeword_addition_group_laws(data):
    code = presets.iso_code_2d()
    book = enumerate_codebook(code)
    pick = st.integers(0, code.M - 1)
    y1, y2, y3 = (book.codeword((0, data.draw(pick))) for _ in range(3))
    key = lambda y: codeword_key(code, y)  # noqa: E731
    assert key(codeword_add(code, y1, y2)) == key(codeword_add(code, y2, y1))
    left = codeword_add(code, codeword_add(code, y1, y2), y3)
    right = codeword_add(code, y1, codeword_add(code, y2, y3))
    assert key(left) == key(right)
    assert key(codeword_add(code, y1, (0, 0))) == key(y1)

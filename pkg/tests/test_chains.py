import pytest
from hypothesis import given, strategies as st

from cubenerve import chains
from cubenerve.chains import Chain, ChainDomainError, ComplexId


def words(n, deg=None):
    return st.sampled_from(chains.basis(n, deg))


@st.composite
def homogeneous_chains(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    deg = draw(st.integers(0, n))
    ws = draw(st.lists(words(n, deg), max_size=6))
    cs = draw(st.lists(st.integers(-3, 3), min_size=len(ws), max_size=len(ws)))
    return Chain(n, dict(zip(ws, cs)))


def bd(c):
    return chains.boundary(c) if c and c.degree else Chain(c.n)


@given(homogeneous_chains())
def test_boundary_squares_to_zero(c):
    assert not bd(bd(c))


@given(homogeneous_chains())
def test_augmentation_kills_boundaries(c):
    if c.degree == 1:
        assert chains.augmentation(chains.boundary(c)) == 0


@given(homogeneous_chains())
def test_signed_parts_split_the_chain(c):
    neg, pos = chains.signed_parts(c)
    assert pos - neg == c
    assert chains.is_nonneg(pos) and chains.is_nonneg(neg)
    assert not set(pos.support()) & set(neg.support())


@given(homogeneous_chains())
def test_json_round_trip(c):
    assert Chain.from_json(c.to_json()) == c


def test_boundary_of_unit_square():
    # d(u_1 x u_1) = d u_1 x u_1 - u_1 x d u_1
    assert chains.boundary(Chain.of("**")) == Chain(2, {"+*": 1, "-*": -1, "*+": -1, "*-": 1})


def test_boundary_parts_of_u3():
    c = Chain.of("***")
    assert chains.boundary_part(c, "-") == Chain.of("-**", "*+*", "**-")
    assert chains.boundary_part(c, "+") == Chain.of("+**", "*-*", "**+")


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.integers(1, n + 1), st.sampled_from("-+"),
                                                      homogeneous_chains(max_n=n))))
def test_face_inclusions_are_chain_maps(case):
    i, s, c = case
    if c.n + 1 < i:
        return
    assert bd(chains.face_inclusion(i, s, c)) == chains.face_inclusion(i, s, bd(c))


@pytest.mark.parametrize("n", range(0, 6))
def test_basis_counts_and_order(n):
    for deg in range(n + 1):
        assert len(chains.basis(n, deg)) == chains.count_basis(n, deg)
    b = chains.basis(n)
    assert list(b) == sorted(b, key=chains.word_key)
    assert len(b) == 3 ** n


def test_face_notation_round_trip():
    assert chains.face_name("-*+") == "d3+d1-u1"
    for w in chains.basis(4):
        assert chains.parse_face_name(chains.face_name(w)) == w
    with pytest.raises(ValueError):
        chains.parse_face_name("d5+u1")


def test_complexes():
    assert len(ComplexId.shell(3).basis()) == 26
    box = ComplexId.box(3, 2, "+")
    assert box.sigma == "*+*"
    assert len(box.basis()) == 25
    assert not chains.in_complex(Chain.of("*+*"), box)
    assert chains.in_complex(Chain.of("*-*"), box)
    with pytest.raises(ValueError):
        ComplexId(3, "box", "***")


def test_domain_errors():
    with pytest.raises(ChainDomainError):
        chains.boundary(Chain.of("--"))
    with pytest.raises(ChainDomainError):
        Chain(2, {"-*": 1, "**": 1}).degree
    with pytest.raises(ChainDomainError):
        chains.augmentation(Chain.of("-*"))
    with pytest.raises(ValueError):
        Chain.of("-*") + Chain.of("-")
    with pytest.raises(ValueError):
        Chain.of("-x")


def test_printing():
    assert str(Chain(2, {"-*": 2, "*+": -1})) == "2*-* - *+"
    assert str(Chain(2)) == "0"

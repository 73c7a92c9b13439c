import itertools
import math

import pytest
from hypothesis import given, strategies as st

from cubenerve import chains, nerve, precubical as pc
from cubenerve.precubical import FaceOp, MalformedWordError, PrecubicalOp


def ops(text, n):
    return pc.PrecubicalOp.parse(text, n)


def normal_forms(word):
    """Every terminal word reachable by rewriting at any position, in any order."""
    seen, stack, out = {tuple(word)}, [tuple(word)], set()
    while stack:
        w = stack.pop()
        positions = pc.rewrite_positions(list(w))
        if not positions:
            out.add(w)
        for j in positions:
            nxt = tuple(pc.rewrite_at(list(w), j))
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return out


@pytest.mark.parametrize("n", range(1, 6))
def test_rewriting_is_confluent_and_terminating(n):
    for length in range(0, min(n, 4) + 1):
        for word in pc.all_words(n, length):
            finals = normal_forms(word)
            assert len(finals) == 1
            (final,) = finals
            assert pc.normalize(word, n).factors == final


@pytest.mark.parametrize("n", range(1, 6))
def test_standard_forms_are_distinct_operations(n):
    # the action on the identity cube is an independent model of each operation
    x = nerve.identity_cube(n)
    seen = {}
    for length in range(0, n + 1):
        forms = {pc.normalize(w, n) for w in pc.all_words(n, length)}
        assert len(forms) == math.comb(n, length) * 2 ** length
        for op in forms:
            y = x
            for f in reversed(op.factors):
                y = nerve.face(y, f.index, f.sign)
            key = tuple(y.items())
            assert key not in seen
            seen[key] = op


@pytest.mark.parametrize("n", range(1, 5))
def test_words_act_like_their_standard_form(n):
    x = nerve.identity_cube(n)
    for length in range(1, min(n, 3) + 1):
        for word in pc.all_words(n, length):
            y = x
            for f in reversed(word):
                y = nerve.face(y, f.index, f.sign)
            assert y == nerve.apply_op(pc.normalize(word, n), x)


def test_relation_example():
    # d_i^a d_j^b = d_j^b d_{i+1}^a for i >= j
    assert pc.normalize(pc.parse_word("d2+ d1-"), 3) == ops("d1- d3+", 3)
    assert pc.normalize(pc.parse_word("d1+ d1-"), 2) == ops("d1- d2+", 2)


def test_words_equal_to_returns_only_equal_words():
    op = ops("d1- d2+ d4-", 5)
    words = pc.words_equal_to(op)
    assert len(words) > 1
    assert all(pc.normalize(list(w), 5) == op for w in words)


@pytest.mark.parametrize("n", range(1, 6))
def test_complementary_counts(n):
    for k in range(1, n + 1):
        for s in "-+":
            assert len(pc.complementary_ops(n, k, s)) == 2 ** (n - 1)
            assert len(pc.extreme_ops_opposite(n, k, s)) == 2 ** (n - 1)


def test_extreme_ops_on_2_cubes():
    extreme = {str(op) for op in pc.all_ops(2) if pc.is_extreme(op)}
    assert extreme == {"id", "d1-", "d1+", "d2-", "d2+", "d1- d2-", "d1+ d2+"}


def test_complementary_to_d1_minus_on_2_cubes():
    assert {str(op) for op in pc.complementary_ops(2, 1, "-")} == {"id", "d2+"}


def test_five_cube_list_opposite_d3_minus():
    left = ["", "d1-", "d1+ d2+", "d2+"]
    right = ["", "d4+", "d4+ d5+", "d5-"]
    expected = {ops(" ".join(filter(None, [a, "d3+", b])), 5) for a in left for b in right}
    assert set(pc.extreme_ops_opposite(5, 3, "-")) == expected
    comp = {ops(" ".join(filter(None, [a, b])) or "id", 5) for a in left for b in right}
    assert set(pc.complementary_ops(5, 3, "-")) == comp


@pytest.mark.parametrize("n", range(2, 6))
def test_single_faces_complementary_iff_twisted_signs_agree(n):
    for k, l in itertools.product(range(1, n + 1), repeat=2):
        for g, d in itertools.product("-+", repeat=2):
            op = PrecubicalOp(n, (FaceOp(l, d),))
            expected = k != l and (-1) ** k * (1 if g == "+" else -1) == (-1) ** l * (1 if d == "+" else -1)
            assert pc.is_complementary(op, k, g) == expected


@pytest.mark.parametrize("n", range(1, 6))
def test_complementary_ops_avoid_neighbouring_factors(n):
    # any box that is thin away from these factors is therefore admissible
    for k in range(1, n + 1):
        for g in "-+":
            banned = {FaceOp(k, "-"), FaceOp(k, "+")}
            if k > 1:
                banned.add(FaceOp(k - 1, g))
            if k < n:
                banned.add(FaceOp(k + 1, g))
            for op in pc.complementary_ops(n, k, g):
                assert not banned & set(op.factors)


@pytest.mark.parametrize("n", range(0, 5))
def test_basis_round_trip(n):
    for w in chains.basis(n):
        assert pc.op_to_basis(pc.basis_to_op(w)) == w
    for op in pc.all_ops(n):
        assert pc.basis_to_op(pc.op_to_basis(op)) == op


@given(st.integers(1, 5).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, n).flatmap(
        lambda length: st.sampled_from(pc.all_words(n, length)) if length <= 3 else st.just([])))))
def test_identity_is_neutral_for_compose(case):
    n, word = case
    op = pc.normalize(word, n)
    assert pc.compose(pc.PrecubicalOp.identity(n), op) == op
    assert op.target_dim == n - len(word)


@pytest.mark.parametrize("text", ["d0-", "x1-", "d1", "d-1+", "dd+"])
def test_bad_face_tokens(text):
    with pytest.raises(MalformedWordError):
        FaceOp.parse(text)


def test_non_standard_form_rejected():
    with pytest.raises(MalformedWordError):
        PrecubicalOp(3, (FaceOp(2, "-"), FaceOp(1, "+")))
    with pytest.raises(MalformedWordError):
        PrecubicalOp(2, (FaceOp(3, "-"),))


def test_word_out_of_range():
    with pytest.raises(MalformedWordError):
        pc.normalize(pc.parse_word("d2- d2+"), 2)

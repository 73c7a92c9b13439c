import itertools
import random
from collections import defaultdict

import pytest

from cubenerve import categories, chains, omega, precubical
from cubenerve import nerve as nv


@pytest.fixture(scope="module")
def C():
    return categories.counterexample_category()


@pytest.fixture(scope="module")
def I():
    return categories.interval_category()


@pytest.fixture(scope="module")
def cubes(C):
    return {n: nv.enumerate_cubes(C, n) for n in range(4)}


def test_cube_counts(C, I):
    assert [len(nv.enumerate_cubes(I, n)) for n in range(4)] == [2, 3, 6, 20]
    assert [len(nv.enumerate_cubes(C, n)) for n in range(3)] == [3, 7, 35]


def test_enumerated_cubes_satisfy_relations(cubes):
    for n in (2, 3):
        sample = random.Random(n).sample(cubes[n], min(60, len(cubes[n])))
        for x in sample:
            again = nv.NerveCube(x.target, n, x.images(), check=True)
            assert again.problems() == []


@pytest.mark.parametrize("n", [1, 2, 3])
def test_identity_cube_evaluates_to_input(n):
    x = nv.identity_cube(n)
    for e in omega.generate(n):
        assert nv.evaluate(x, e) == e


def test_evaluate_on_atoms(cubes):
    for x in cubes[2]:
        for w in chains.basis(2):
            assert nv.evaluate(x, omega.atom(w)) == x.image(w)


def test_face_relations(cubes):
    rng = random.Random(7)
    for x in rng.sample(cubes[3], 80):
        for i, j in itertools.product(range(1, 3), repeat=2):
            if i < j:
                continue
            for a, b in itertools.product("-+", repeat=2):
                lhs = nv.face(nv.face(x, j, b), i, a)
                rhs = nv.face(nv.face(x, i + 1, a), j, b)
                assert lhs == rhs


def test_apply_op_matches_iterated_faces(cubes):
    x = cubes[3][123]
    for op in precubical.all_ops(3):
        y = x
        for f in reversed(op.factors):
            y = nv.face(y, f.index, f.sign)
        assert nv.apply_op(op, x) == y


def test_box_fill_gives_composite_of_edges(C):
    # box opposite d1-: d2- = a-, d1+ = b, d2+ thin at e
    images = {"--": "c", "+-": "d", "++": "e", "-+": "e", "*-": "a-", "+*": "b", "*+": "e"}
    b = nv.NerveBox(C, 2, 1, "-", images)
    assert nv.box_admissible(b)
    x = nv.fill_box(b)
    assert x.image("-*") == C.comp(0, "a-", "b") == "ab"
    assert nv.is_thin(x) and x.top == "ab"


def test_box_with_non_thin_complement_is_rejected(C):
    images = {"--": "c", "+-": "c", "++": "d", "-+": "d", "*-": "c", "+*": "a-", "*+": "d"}
    b = nv.NerveBox(C, 2, 1, "-", images)
    assert nv.box_admissible(b)
    images = {"--": "c", "+-": "c", "++": "e", "-+": "d", "*-": "c", "+*": "ab", "*+": "b"}
    b = nv.NerveBox(C, 2, 1, "-", images)
    assert not nv.box_admissible(b)
    with pytest.raises(nv.InadmissibleBoxError):
        nv.fill_box(b)


def test_shells_over_interval_all_commute(I):
    shells = nv.enumerate_shells(I, 2)
    assert shells
    for s in shells:
        assert nv.is_thin(nv.fill_shell(s))


def test_non_commuting_shell_has_no_filler(C):
    images = {"--": "c", "+-": "d", "-+": "d", "++": "d",
              "-*": "a-", "*+": "d", "*-": "a+", "+*": "d"}
    s = nv.NerveShell(C, 2, images)
    with pytest.raises(nv.NoThinFiller) as info:
        nv.fill_shell(s)
    assert (info.value.minus, info.value.plus) == ("a-", "a+")
    # the non-thin 2-cube with this shell carries A
    x = nv.NerveCube(C, 2, {**images, "**": "A"})
    assert not nv.is_thin(x)


def test_refilling_thin_cubes(cubes):
    for n in (1, 2, 3):
        for x in cubes[n]:
            if not nv.is_thin(x):
                continue
            assert nv.fill_shell(nv.shell_of(x)) == x
            for k in range(1, n + 1):
                for s in "-+":
                    b = nv.box_of(x, k, s)
                    if nv.box_admissible(b):
                        assert nv.fill_box(b) == x


def test_admissible_boxes_have_exactly_one_thin_filler(cubes):
    for n in (2, 3):
        groups = defaultdict(list)
        for x in cubes[n]:
            for k in range(1, n + 1):
                for s in "-+":
                    groups[nv.box_of(x, k, s)].append(x)
        for b, xs in groups.items():
            if nv.box_admissible(b):
                assert sum(nv.is_thin(x) for x in xs) == 1


def test_thin_filler_of_commuting_shell_is_unique(cubes):
    for n in (2, 3):
        groups = defaultdict(list)
        for x in cubes[n]:
            groups[nv.shell_of(x)].append(x)
        for s, xs in groups.items():
            thin = [x for x in xs if nv.is_thin(x)]
            assert len(thin) <= 1
            if thin:
                assert nv.fill_shell(s) == thin[0]


def test_face_mismatch_is_detected(C, cubes):
    x = next(c for c in cubes[2] if c.image("*-") == "a-")
    faces = {(i, s): nv.face(x, i, s) for i in (1, 2) for s in "-+"}
    faces[2, "-"] = next(c for c in cubes[1] if c.top == "b")
    with pytest.raises(nv.FaceMismatchError):
        nv.shell_from_faces(C, 2, faces)


def test_relation_violations_are_reported(C):
    with pytest.raises(nv.RelationError):
        nv.NerveCube(C, 1, {"-": "c", "+": "e", "*": "a-"})


def test_zero_cubes_are_not_thin(cubes):
    with pytest.raises(ValueError):
        nv.is_thin(cubes[0][0])


def test_missing_face_of_box_is_not_a_face(cubes):
    b = nv.box_of(cubes[2][0], 1, "-")
    with pytest.raises(ValueError):
        nv.face(b, 1, "-")
    assert nv.face(b, 2, "+").n == 1


def test_cube_to_json(cubes):
    x = cubes[2][5]
    data = x.to_json()
    assert data["complex"] == str(x.complex)
    assert nv.NerveCube(x.target, 2, data["images"]) == x

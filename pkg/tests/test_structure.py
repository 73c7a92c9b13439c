import random

import pytest

from cubenerve import categories, structure as sx
from cubenerve import nerve as nv
from cubenerve.nerve import face


@pytest.fixture(scope="module")
def C():
    return categories.counterexample_category()


@pytest.fixture(scope="module")
def cubes(C):
    return {n: nv.enumerate_cubes(C, n) for n in range(3)}


def sample(pool, k, seed=0):
    return random.Random(seed).sample(pool, min(k, len(pool)))


def test_degeneracy_faces(cubes):
    for n in (0, 1, 2):
        for x in sample(cubes[n], 15):
            for k in range(1, n + 2):
                e = sx.degeneracy(k, x)
                assert e.n == n + 1 and nv.is_thin(e)
                assert face(e, k, "-") == face(e, k, "+") == x
                for i in range(1, n + 2):
                    if i < k:
                        assert face(e, i, "+") == sx.degeneracy(k - 1, face(x, i, "+"))
                    elif i > k:
                        assert face(e, i, "-") == sx.degeneracy(k, face(x, i - 1, "-"))


def test_connection_faces(cubes):
    for n in (1, 2):
        for x in sample(cubes[n], 15):
            for k in range(1, n + 1):
                for s, t in (("-", "+"), ("+", "-")):
                    g = sx.connection(k, s, x)
                    assert nv.is_thin(g)
                    assert face(g, k, s) == face(g, k + 1, s) == x
                    edge = sx.degeneracy(k, face(x, k, t))
                    assert face(g, k, t) == face(g, k + 1, t) == edge


def test_composite_of_edges_is_category_composite(C, cubes):
    for x in cubes[1]:
        for y in cubes[1]:
            if sx.composable(1, x, y):
                assert sx.composite(1, x, y).top == C.comp(0, x.top, y.top)
            else:
                with pytest.raises(nv.ComposabilityError):
                    sx.composer(1, x, y)


def test_composer_faces(cubes):
    pairs = [(x, y) for x in cubes[2] for y in cubes[2] if sx.composable(1, x, y)]
    for x, y in sample(pairs, 40):
        g = sx.composer(1, x, y)
        assert face(g, 1, "+") == y
        assert face(g, 2, "-") == x
        assert face(g, 2, "+") == sx.degeneracy(1, face(y, 1, "+"))
        assert nv.is_thin(g)
        z = sx.composite(1, x, y)
        assert face(z, 1, "-") == face(x, 1, "-")
        assert face(z, 1, "+") == face(y, 1, "+")


def test_units_for_composition(cubes):
    for x in cubes[2]:
        for k in (1, 2):
            assert sx.composite(k, sx.degeneracy(k, face(x, k, "-")), x) == x
            assert sx.composite(k, x, sx.degeneracy(k, face(x, k, "+"))) == x


def test_psi_has_degenerate_second_faces(cubes):
    for x in cubes[2]:
        y = sx.psi(1, x)
        for a in "-+":
            assert face(y, 2, a) == sx.degeneracy(1, face(face(x, 2, a), 1, a))
        assert sx.thin_by_structure(x) == nv.is_thin(x)


def test_whiskered_two_cell_becomes_identity(C, cubes):
    # the non-identity 2-cell A composed with b is the thin square on ab
    a_cube = next(x for x in cubes[2] if x.top == "A" and face(x, 2, "+").top == "d")
    b_edge = next(x for x in cubes[1] if x.top == "b")
    b_square = sx.degeneracy(1, b_edge)
    assert sx.composable(2, a_cube, b_square)
    out = sx.composite(2, a_cube, b_square)
    assert out.top == "ab" and nv.is_thin(out)


def test_range_errors(cubes):
    x = cubes[1][0]
    with pytest.raises(ValueError):
        sx.degeneracy(3, x)
    with pytest.raises(ValueError):
        sx.connection(2, "+", x)
    with pytest.raises(ValueError):
        sx.psi(1, x)
    with pytest.raises(ValueError):
        sx.Psi(cubes[0][0])

import pytest

from cubenerve import categories, omega
from cubenerve.categories import FiniteOmegaCategory, validate_category
from cubenerve.omega import CompositionError


@pytest.fixture(scope="module")
def fixture_category():
    return categories.counterexample_category()


def test_fixture_is_valid(fixture_category):
    assert validate_category(fixture_category) == []


def test_fixture_whiskering(fixture_category):
    C = fixture_category
    assert C.d(1, "-", "A") == "a-" and C.d(1, "+", "A") == "a+"
    for x in ("a-", "a+", "A"):
        assert C.comp(0, x, "b") == "ab"
    assert not C.is_identity(1, "A") and C.is_identity(1, "ab")
    with pytest.raises(CompositionError):
        C.comp(0, "b", "a-")


def test_interval_category():
    I = categories.interval_category()
    assert sorted(I.cells) == ["*", "+", "-"]
    assert validate_category(I) == []
    assert I.comp(0, "-", "*") == "*"


@pytest.mark.parametrize("m", [1, 2, 3])
def test_materialized_cubes_are_valid(m):
    C, element = categories.materialize(m)
    assert len(C.cells) == len(omega.generate(m))
    if m <= 2:
        assert validate_category(C) == []
    x = next(c for c in C.cells if element[c] == omega.atom("*" * m))
    assert not C.is_identity(m - 1, x)


def test_broken_tables_are_reported(fixture_category):
    data = fixture_category.to_json()
    data["comp"]["0"] = [t for t in data["comp"]["0"] if t[:2] != ["a-", "b"]]
    broken = FiniteOmegaCategory.from_json(data)
    assert any("a-" in p for p in validate_category(broken))

    data = fixture_category.to_json()
    data["d"]["0,+"]["A"] = "c"
    assert validate_category(FiniteOmegaCategory.from_json(data))


def test_json_round_trip(fixture_category):
    again = FiniteOmegaCategory.from_json(fixture_category.to_json())
    assert again.cells == fixture_category.cells
    for p in range(2):
        for x in again.cells:
            for s in "-+":
                assert again.d(p, s, x) == fixture_category.d(p, s, x)
            for y in again.cells:
                assert again.composable(p, x, y) == fixture_category.composable(p, x, y)

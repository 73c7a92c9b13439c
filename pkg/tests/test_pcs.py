import itertools
import random

import pytest

from cubenerve import categories, chains, precubical
from cubenerve import pcs
from cubenerve.pcs import FinitePCS, GenericBox, GenericShell


@pytest.fixture(scope="module")
def nerve2():
    return pcs.export_nerve(categories.counterexample_category(), 2)


@pytest.fixture(scope="module")
def nerve3():
    return pcs.export_nerve(categories.counterexample_category(), 3)


def square():
    """One thin square with distinct vertices and edges."""
    cubes = {v: (0, False) for v in "abcd"}
    cubes.update({e: (1, False) for e in ("ab", "cd", "ac", "bd")})
    cubes["s"] = (2, True)
    faces = {"ab": {(1, "-"): "a", (1, "+"): "b"}, "cd": {(1, "-"): "c", (1, "+"): "d"},
             "ac": {(1, "-"): "a", (1, "+"): "c"}, "bd": {(1, "-"): "b", (1, "+"): "d"},
             "s": {(1, "-"): "ab", (1, "+"): "cd", (2, "-"): "ac", (2, "+"): "bd"}}
    return FinitePCS(cubes, faces, name="square")


def test_exported_nerve_is_valid(nerve2, nerve3):
    assert pcs.validate_pcs(nerve2) == []
    assert pcs.validate_pcs(nerve3) == []
    assert [len(nerve3.cubes(n)) for n in range(4)] == [3, 7, 35, 709]


def test_swapped_face_tables_are_rejected():
    X = square()
    assert pcs.validate_pcs(X) == []
    data = X.to_json()
    data["faces"]["s"]["1,-"], data["faces"]["s"]["1,+"] = "cd", "ab"
    assert pcs.validate_pcs(FinitePCS.from_json(data))


def test_missing_faces_and_thin_points_are_rejected():
    data = square().to_json()
    del data["faces"]["s"]["2,+"]
    assert pcs.validate_pcs(FinitePCS.from_json(data))
    data = square().to_json()
    data["cubes"][0]["thin"] = True
    assert any("0-cube" in p for p in pcs.validate_pcs(FinitePCS.from_json(data)))


def test_json_round_trip(tmp_path, nerve2):
    path = tmp_path / "x.json"
    nerve2.dump(path)
    again = FinitePCS.load(path)
    assert again.to_json() == nerve2.to_json()
    with pytest.raises(pcs.PCSError):
        FinitePCS.from_json({"cubes": [{"id": "a", "dim": 0}, {"id": "a", "dim": 0}]})


def test_operations_on_shells_do_not_depend_on_order(nerve3):
    rng = random.Random(3)
    for n in (2, 3):
        for c in rng.sample(nerve3.cubes(n), 30):
            faces = {(i, s): nerve3.face(c, i, s) for i in range(1, n + 1) for s in "-+"}
            shell = GenericShell.of(n, faces)
            for op in precubical.all_ops(n):
                if op.is_identity:
                    continue
                values = {pcs.apply_op(nerve3, op, shell, choose=lambda ps, j=j: ps[j % len(ps)])
                          for j in range(n)}
                assert values == {pcs.apply_op(nerve3, op, c)}


def test_operations_on_boxes_agree_with_the_cube(nerve3):
    c = nerve3.cubes(3)[100]
    for k, g in itertools.product(range(1, 4), "-+"):
        faces = {(i, s): nerve3.face(c, i, s) for i in range(1, 4) for s in "-+" if (i, s) != (k, g)}
        b = GenericBox.of(3, k, g, faces)
        for op in precubical.complementary_ops(3, k, g):
            if not op.is_identity:
                assert pcs.apply_op(nerve3, op, b) == pcs.apply_op(nerve3, op, c)
        with pytest.raises(pcs.PCSError):
            pcs.apply_word(nerve3, chains.insert_letter("**", k, g), b)


def test_admissibility_grows_with_thin_cubes(nerve2):
    # marking more cubes thin never destroys admissibility
    thin_all = nerve2.with_changes(add={c: (nerve2.dim(c), nerve2.dim(c) > 0,
                                            {(i, s): nerve2.face(c, i, s)
                                             for i in range(1, nerve2.dim(c) + 1) for s in "-+"})
                                        for c in nerve2.cubes() if nerve2.dim(c) > 0})
    for faces in pcs.enumerate_face_systems(nerve2, 2, skip=(1, "-")):
        b = GenericBox.of(2, 1, "-", faces)
        if pcs.box_admissible(nerve2, b):
            assert pcs.box_admissible(thin_all, b)


def test_square_admissibility():
    X = square()
    faces = {(i, s): X.face("s", i, s) for i in (1, 2) for s in "-+"}
    shell = GenericShell.of(2, faces)
    assert not pcs.box_admissible(X, GenericBox.of(2, 1, "-", {k: v for k, v in faces.items()
                                                                 if k != (1, "-")}))
    assert not pcs.shell_admissible(X, shell)
    assert pcs.fillers(X, shell) == ["s"]


@pytest.mark.parametrize("max_dim", [1, 2, 3])
def test_nerve_is_complete(nerve3, max_dim):
    rep = pcs.completeness_check(nerve3, max_dim)
    assert rep.complete, rep.to_json()
    assert rep.checked_dims == list(range(1, max_dim + 1))


def test_interval_nerve_is_complete():
    X = pcs.export_nerve(categories.interval_category(), 3)
    rep = pcs.completeness_check(X, 3)
    assert rep.complete and rep.admissible_shells > 0


def test_truncation_skips_dimensions_above_the_data(nerve2):
    rep = pcs.completeness_check(nerve2, 4)
    assert rep.complete
    assert rep.checked_dims == [1, 2] and rep.skipped_dims == [3, 4]
    assert rep.skipped > 0


def test_seeded_duplicate_breaks_uniqueness(nerve2):
    X, c = pcs.seeded_duplicate(nerve2)
    assert pcs.validate_pcs(X) == []
    rep = pcs.completeness_check(X, 2)
    assert not rep.complete and not rep.existence_failures
    assert rep.uniqueness_failures
    assert all(c in fs and f"{c}'" in fs for _, _, fs in rep.uniqueness_failures)


def test_seeded_removal_breaks_existence(nerve2):
    X, c = pcs.seeded_removal(nerve2)
    assert c not in X and pcs.validate_pcs(X) == []
    rep = pcs.completeness_check(X, 2)
    assert rep.existence_failures and not rep.uniqueness_failures
    with pytest.raises(pcs.PCSError):
        pcs.seeded_removal(nerve2, 1)

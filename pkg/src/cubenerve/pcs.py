"""Finite stratified precubical sets and a truncated completeness check.

Cubes are opaque string identifiers.  Operations are handled through their
basis words: a word with letter a at position i and ``*`` elsewhere stands
for the operation that keeps the ``*`` coordinates, so applying it means
taking the face d_i^a at some non-``*`` position and then the operation
given by the shortened word.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from . import chains, precubical, signs


class PCSError(ValueError):
    pass


def _face_key(i, sign):
    return f"{i},{sign}"


def _parse_face_key(key):
    i, s = key.split(",")
    return int(i), signs.check_sign(s.strip())


class FinitePCS:
    """Cubes X_0..X_N with face maps and thin subsets."""

    def __init__(self, cubes, faces, name=None):
        # cubes: id -> (dim, thin); faces: id -> {(i, sign): id}
        self._cubes = {c: (int(d), bool(t)) for c, (d, t) in cubes.items()}
        self._faces = {c: dict(f) for c, f in faces.items()}
        self.name = name
        self._by_dim = {}
        for c, (d, _) in self._cubes.items():
            self._by_dim.setdefault(d, []).append(c)
        self._face_index = {}

    @property
    def top_dim(self):
        return max(self._by_dim, default=-1)

    def cubes(self, n=None):
        if n is None:
            return list(self._cubes)
        return list(self._by_dim.get(n, ()))

    def __contains__(self, c):
        return c in self._cubes

    def __len__(self):
        return len(self._cubes)

    def dim(self, c):
        return self._cubes[c][0]

    def is_thin(self, c):
        return self._cubes[c][1]

    def face(self, c, i, sign):
        try:
            return self._faces[c][i, sign]
        except KeyError:
            raise PCSError(f"cube {c!r} has no face d_{i}^{sign}") from None

    def faces_of(self, c):
        n = self.dim(c)
        return tuple(self.face(c, i, s) for i in range(1, n + 1) for s in signs.SIGNS)

    def cubes_with_faces(self, n, faces: dict):
        """n-cubes whose faces agree with ``faces`` (a full or partial face map)."""
        if n not in self._face_index:
            self._face_index[n] = {}
            for c in self.cubes(n):
                self._face_index[n].setdefault(self.faces_of(c), []).append(c)
        keys = [(i, s) for i in range(1, n + 1) for s in signs.SIGNS]
        if len(faces) == len(keys):
            return list(self._face_index[n].get(tuple(faces[k] for k in keys), ()))
        return [c for c in self.cubes(n) if all(self.face(c, *k) == v for k, v in faces.items())]

    def with_changes(self, add=None, remove=(), name=None):
        cubes = {c: v for c, v in self._cubes.items() if c not in set(remove)}
        faces = {c: f for c, f in self._faces.items() if c not in set(remove)}
        for c, (d, thin, f) in (add or {}).items():
            cubes[c] = (d, thin)
            faces[c] = dict(f)
        return FinitePCS(cubes, faces, name=name or self.name)

    def to_json(self):
        return {
            "cubes": [{"dim": d, "id": c, "thin": t} for c, (d, t) in self._cubes.items()],
            "faces": {c: {_face_key(i, s): v for (i, s), v in sorted(f.items())}
                      for c, f in self._faces.items() if f},
        }

    @classmethod
    def from_json(cls, data, name=None):
        cubes = {}
        for entry in data["cubes"]:
            c = str(entry["id"])
            if c in cubes:
                raise PCSError(f"duplicate cube id {c!r}")
            cubes[c] = (int(entry["dim"]), bool(entry.get("thin", False)))
        faces = {c: {} for c in cubes}
        for c, table in data.get("faces", {}).items():
            if c not in cubes:
                raise PCSError(f"faces given for unknown cube {c!r}")
            faces[c] = {_parse_face_key(k): str(v) for k, v in table.items()}
        return cls(cubes, faces, name=name)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(json.load(fh), name=str(path))

    def dump(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=1)


def validate_pcs(X: FinitePCS) -> list[str]:
    """Missing or ill-typed faces, violated face relations, thin 0-cubes."""
    out = []
    for c in X.cubes():
        n = X.dim(c)
        if n == 0 and X.is_thin(c):
            out.append(f"0-cube {c!r} is marked thin")
        want = {(i, s) for i in range(1, n + 1) for s in signs.SIGNS}
        have = set(X._faces.get(c, {}))
        if have != want:
            out.append(f"cube {c!r}: faces {sorted(have)} instead of {sorted(want)}")
            continue
        for key in want:
            f = X._faces[c][key]
            if f not in X:
                out.append(f"face d_{key[0]}^{key[1]} of {c!r} is unknown cube {f!r}")
            elif X.dim(f) != n - 1:
                out.append(f"face d_{key[0]}^{key[1]} of {c!r} has dimension {X.dim(f)}")
    if out:
        return out
    for c in X.cubes():
        n = X.dim(c)
        for j in range(1, n):
            for i in range(j, n):
                for a, b in itertools.product(signs.SIGNS, repeat=2):
                    lhs = X.face(X.face(c, j, b), i, a)
                    rhs = X.face(X.face(c, i + 1, a), j, b)
                    if lhs != rhs:
                        out.append(f"cube {c!r}: d_{i}^{a} d_{j}^{b} gives {lhs!r} "
                                   f"but d_{j}^{b} d_{i + 1}^{a} gives {rhs!r}")
    return out


@dataclass(frozen=True)
class GenericShell:
    n: int
    faces: tuple        # sorted ((i, sign), id) pairs

    @classmethod
    def of(cls, n, faces: dict):
        return cls(n, tuple(sorted(faces.items())))

    def face(self, i, sign):
        return dict(self.faces)[i, sign]

    @property
    def missing(self):
        return None


@dataclass(frozen=True)
class GenericBox:
    n: int
    k: int
    sign: str
    faces: tuple

    @classmethod
    def of(cls, n, k, sign, faces: dict):
        return cls(n, k, sign, tuple(sorted(faces.items())))

    def face(self, i, sign):
        if (i, sign) == (self.k, self.sign):
            raise PCSError(f"d_{i}^{sign} is the missing face of this box")
        return dict(self.faces)[i, sign]

    @property
    def missing(self):
        return (self.k, self.sign)


def face_system_problems(X: FinitePCS, n, faces: dict) -> list[str]:
    """Violations of d_i^a s_j^b = d_j^b s_{i+1}^a (i >= j) among the given faces."""
    out = []
    for (j, b), sj in faces.items():
        for (i1, a), si in faces.items():
            i = i1 - 1
            if i < j:
                continue
            if X.face(sj, i, a) != X.face(si, j, b):
                out.append(f"d_{i}^{a} s_{j}^{b} != d_{j}^{b} s_{i1}^{a}")
    return out


def apply_word(X: FinitePCS, word: str, s, choose=None):
    """theta s where theta has basis word ``word``; s is a cube id, shell or box.

    ``choose`` picks which non-``*`` position is taken first when s is a shell or
    box (default: the last allowed one); the answer must not depend on it.
    """
    if isinstance(s, str):
        c = s
        for i in range(len(word), 0, -1):
            if word[i - 1] != "*":
                c = X.face(c, i, word[i - 1])
        return c
    positions = [i for i, a in enumerate(word, start=1) if a != "*" and (i, a) != s.missing]
    if not positions:
        raise PCSError("the identity and the missing face are undefined on shells and boxes")
    i = positions[-1] if choose is None else choose(positions)
    return apply_word(X, chains.delete_letter(word, i), s.face(i, word[i - 1]))


def apply_op(X: FinitePCS, op: precubical.PrecubicalOp, s, choose=None):
    if not isinstance(s, str) and op.ambient != s.n:
        raise PCSError(f"operation on {op.ambient}-cubes applied to an {s.n}-shell or box")
    return apply_word(X, precubical.op_to_basis(op), s, choose)


def _thin_word(X, word, s):
    return chains.degree(word) > 0 and X.is_thin(apply_word(X, word, s))


def box_admissible(X: FinitePCS, b: GenericBox) -> bool:
    for op in precubical.complementary_ops(b.n, b.k, b.sign):
        if not op.is_identity and not _thin_word(X, precubical.op_to_basis(op), b):
            return False
    return True


def _restrict(s: GenericShell, k, sign):
    faces = {key: v for key, v in s.faces if key != (k, sign)}
    return GenericBox.of(s.n, k, sign, faces)


def shell_witnesses(X: FinitePCS, s: GenericShell):
    out = []
    ops = [(i, a) for i in range(1, s.n + 1) for a in signs.SIGNS]
    for idx, (k, g) in enumerate(ops):
        for (l, d) in ops[idx + 1:]:
            if signs.twist(g, k) == signs.twist(d, l) or s.face(k, g) != s.face(l, d):
                continue
            if box_admissible(X, _restrict(s, k, g)) and box_admissible(X, _restrict(s, l, d)):
                out.append(((k, g), (l, d)))
    return out


def shell_admissible(X: FinitePCS, s: GenericShell) -> bool:
    return bool(shell_witnesses(X, s))


def enumerate_face_systems(X: FinitePCS, n, skip=None):
    """Every consistent assignment of (n-1)-cubes to the faces of I^n except ``skip``."""
    keys = [(i, a) for i in range(1, n + 1) for a in signs.SIGNS if (i, a) != skip]
    pool = X.cubes(n - 1)
    chosen = {}

    def walk(j):
        if j == len(keys):
            yield dict(chosen)
            return
        key = keys[j]
        for c in pool:
            chosen[key] = c
            if not _conflicts(X, key, chosen):
                yield from walk(j + 1)
        del chosen[key]

    yield from walk(0)


def _conflicts(X, new, faces):
    (q, c), sq = new, faces[new]
    for (p, a), sp in faces.items():
        if (p, a) == new:
            continue
        # relation between s_p^a and s_q^c, written with the smaller index second
        if p < q:
            if X.face(sq, p, a) != X.face(sp, q - 1, c):
                return True
        elif p > q:
            if X.face(sp, q, c) != X.face(sq, p - 1, a):
                return True
    return False


def fillers(X: FinitePCS, s, thin_only=True):
    """n-cubes agreeing with the shell or box on all its faces."""
    faces = dict(s.faces)
    out = X.cubes_with_faces(s.n, faces)
    return [c for c in out if X.is_thin(c)] if thin_only else out


@dataclass
class CompletenessReport:
    max_dim: int
    checked_dims: list = field(default_factory=list)
    admissible_boxes: int = 0
    admissible_shells: int = 0
    boxes_seen: int = 0
    shells_seen: int = 0
    skipped: int = 0
    skipped_dims: list = field(default_factory=list)
    existence_failures: list = field(default_factory=list)
    uniqueness_failures: list = field(default_factory=list)
    thin_face_failures: list = field(default_factory=list)

    @property
    def complete(self):
        return not (self.existence_failures or self.uniqueness_failures or self.thin_face_failures)

    def to_json(self):
        def show(items):
            return [{"kind": kind, "structure": _describe(obj), "fillers": list(fs)}
                    for kind, obj, fs in items]
        return {
            "complete": self.complete,
            "max_dim": self.max_dim,
            "checked_dims": self.checked_dims,
            "boxes": self.boxes_seen,
            "admissible_boxes": self.admissible_boxes,
            "shells": self.shells_seen,
            "admissible_shells": self.admissible_shells,
            "skipped": self.skipped,
            "skipped_dims": self.skipped_dims,
            "existence_failures": show(self.existence_failures),
            "uniqueness_failures": show(self.uniqueness_failures),
            "thin_face_failures": show(self.thin_face_failures),
        }


def _describe(obj):
    faces = {f"d{i}{s}": v for (i, s), v in obj.faces}
    if isinstance(obj, GenericBox):
        return {"box": obj.n, "opposite": f"d{obj.k}{obj.sign}", "faces": faces}
    return {"shell": obj.n, "faces": faces}


def completeness_check(X: FinitePCS, max_dim) -> CompletenessReport:
    """Unique thin fillers for admissible boxes and shells of dimension <= max_dim,
    plus thinness of the added face when every given face of a box is thin.

    Structures whose fillers would have to exceed the cubes present in X are
    counted as skipped instead of being reported as failures.
    """
    rep = CompletenessReport(max_dim)
    for n in range(1, max_dim + 1):
        if n > X.top_dim:
            if n == X.top_dim + 1:
                count = sum(1 for _ in enumerate_face_systems(X, n))
                count += sum(1 for k in range(1, n + 1) for g in signs.SIGNS
                             for _ in enumerate_face_systems(X, n, skip=(k, g)))
                rep.skipped += count
            rep.skipped_dims.append(n)
            continue
        rep.checked_dims.append(n)
        for k in range(1, n + 1):
            for g in signs.SIGNS:
                for faces in enumerate_face_systems(X, n, skip=(k, g)):
                    b = GenericBox.of(n, k, g, faces)
                    rep.boxes_seen += 1
                    if not box_admissible(X, b):
                        continue
                    rep.admissible_boxes += 1
                    fs = fillers(X, b)
                    if not fs:
                        rep.existence_failures.append(("box", b, fs))
                    elif len(fs) > 1:
                        rep.uniqueness_failures.append(("box", b, fs))
                    elif all(X.is_thin(v) for v in faces.values()):
                        if not X.is_thin(X.face(fs[0], k, g)):
                            rep.thin_face_failures.append(("box", b, fs))
        for faces in enumerate_face_systems(X, n):
            s = GenericShell.of(n, faces)
            rep.shells_seen += 1
            if not shell_admissible(X, s):
                continue
            rep.admissible_shells += 1
            fs = fillers(X, s)
            if not fs:
                rep.existence_failures.append(("shell", s, fs))
            elif len(fs) > 1:
                rep.uniqueness_failures.append(("shell", s, fs))
    return rep


# nerves as finite stratified precubical sets

def export_nerve(target, max_dim, name=None) -> FinitePCS:
    """The nerve of a finite omega-category truncated at max_dim."""
    from . import nerve as nv
    ids = {}
    cubes = {}
    faces = {}
    for n in range(max_dim + 1):
        for idx, x in enumerate(nv.enumerate_cubes(target, n)):
            ids[x] = f"{n}:{idx}"
    for x, c in ids.items():
        n = x.n
        cubes[c] = (n, n > 0 and nv.is_thin(x))
        faces[c] = {(i, s): ids[nv.face(x, i, s)] for i in range(1, n + 1) for s in signs.SIGNS}
    return FinitePCS(cubes, faces, name=name or f"nerve of {getattr(target, 'name', target)}")


def seeded_duplicate(X: FinitePCS, n=2) -> tuple[FinitePCS, str]:
    """A copy of a thin n-cube filling an admissible box: fillers stop being unique."""
    for k in range(1, n + 1):
        for g in signs.SIGNS:
            for c in X.cubes(n):
                if not X.is_thin(c):
                    continue
                faces = {(i, s): X.face(c, i, s) for i in range(1, n + 1) for s in signs.SIGNS
                         if (i, s) != (k, g)}
                if box_admissible(X, GenericBox.of(n, k, g, faces)):
                    twin = f"{c}'"
                    all_faces = {(i, s): X.face(c, i, s) for i in range(1, n + 1) for s in signs.SIGNS}
                    return X.with_changes(add={twin: (n, True, all_faces)},
                                          name=f"{X.name} with duplicated {c}"), c
    raise PCSError("no thin cube fills an admissible box")


def seeded_removal(X: FinitePCS, n=2) -> tuple[FinitePCS, str]:
    """Drop a thin top-dimensional cube that fills an admissible box."""
    if X.top_dim != n:
        raise PCSError("remove only from the top dimension, so no face map dangles")
    dup, c = seeded_duplicate(X, n)
    return X.with_changes(remove=[c], name=f"{X.name} without {c}"), c

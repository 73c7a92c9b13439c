"""Cubical nerves of omega-categories.

An n-cube of the nerve of C is an omega-functor nu I^n -> C.  Because
nu I^n is freely generated by its atoms, a cube is stored as the table
of atom images, one target cell per basis element of I^n.  Shells and
boxes are the same kind of table restricted to S^n or B(sigma).
"""

from __future__ import annotations

from functools import lru_cache

from . import chains, omega, precubical, signs
from .chains import ComplexId
from .omega import CompositionError


class RelationError(ValueError):
    """An image table that does not define an omega-functor."""


class NoThinFiller(ValueError):
    def __init__(self, shell, minus, plus):
        super().__init__(f"shell has no thin filler: the two composites are {minus!r} and {plus!r}")
        self.shell = shell
        self.minus = minus
        self.plus = plus


class InadmissibleBoxError(ValueError):
    pass


class ComposabilityError(ValueError):
    pass


class FaceMismatchError(ValueError):
    """Face cubes that do not agree where they overlap."""


class _NerveMap:
    """Images of the atoms of a subcomplex of I^n in an omega-category."""

    __slots__ = ("target", "complex", "_images", "_hash")

    def __init__(self, target, complex: ComplexId, images, check=True):
        self.target = target
        self.complex = complex
        expected = complex.basis()
        images = dict(images)
        if set(images) != set(expected):
            missing = sorted(set(expected) - set(images), key=chains.word_key)
            extra = sorted(set(images) - set(expected), key=chains.word_key)
            raise RelationError(f"image table for {complex}: missing {missing}, unexpected {extra}")
        self._images = images
        self._hash = None
        if check:
            problems = self.problems()
            if problems:
                raise RelationError("; ".join(problems[:5]))

    @property
    def n(self):
        return self.complex.n

    def image(self, word):
        return self._images[word]

    def images(self):
        return dict(self._images)

    def items(self):
        return [(w, self._images[w]) for w in self.complex.basis()]

    def problems(self) -> list[str]:
        """Violations of the generating relations among atom images."""
        C = self.target
        out = []
        for w in self.complex.basis():
            p = chains.degree(w)
            v = self._images[w]
            if not C.is_identity(p, v):
                out.append(f"image of {w} is not an identity for comp_{p}")
                continue
            if p == 0:
                continue
            for s in signs.SIGNS:
                try:
                    want = evaluate_tree(self, omega.standard_tree(w, p - 1, s))
                except (CompositionError, KeyError) as exc:
                    out.append(f"d_{p - 1}^{s} of the image of {w}: {exc}")
                    continue
                if C.d(p - 1, s, v) != want:
                    out.append(f"d_{p - 1}^{s} of the image of {w} is {C.d(p - 1, s, v)!r}, "
                               f"the composite of its boundary atoms is {want!r}")
        return out

    def _key(self):
        return (self.complex, tuple(self._images[w] for w in self.complex.basis()))

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.target is other.target and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, id(self.target), self._key()))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{w}: {v}" for w, v in self.items())
        return f"{type(self).__name__}({self.complex}, {{{body}}})"

    def to_json(self):
        return {"complex": str(self.complex),
                "images": {w: _cell_json(v) for w, v in self.items()}}


def _cell_json(v):
    return v.to_json() if hasattr(v, "to_json") else v


class NerveCube(_NerveMap):
    __slots__ = ()

    def __init__(self, target, n, images, check=True):
        super().__init__(target, ComplexId.cube(n), images, check)

    @property
    def top(self):
        return self._images[chains.unit(self.n)]


class NerveShell(_NerveMap):
    __slots__ = ()

    def __init__(self, target, n, images, check=True):
        if n < 1:
            raise ValueError("shells have dimension at least 1")
        super().__init__(target, ComplexId.shell(n), images, check)


class NerveBox(_NerveMap):
    __slots__ = ("k", "sign")

    def __init__(self, target, n, k, sign, images, check=True):
        if n < 1:
            raise ValueError("boxes have dimension at least 1")
        self.k = k
        self.sign = signs.check_sign(sign)
        super().__init__(target, ComplexId.box(n, k, sign), images, check)


def evaluate_tree(x: _NerveMap, tree):
    C = x.target
    return omega.fold(tree, lambda w: x.image(w), lambda p, a, b: C.comp(p, a, b))


@lru_cache(maxsize=None)
def _tree(e):
    return omega.decompose(e)


def evaluate(x: _NerveMap, e):
    """The image of an element of nu I^n under the functor x."""
    if e.n != x.n:
        raise ValueError(f"element of nu I^{e.n} evaluated on a map from nu I^{x.n}")
    problems = omega.check(e, x.complex)
    if problems:
        raise ValueError(f"element does not lie in nu {x.complex}: {problems}")
    try:
        return evaluate_tree(x, _tree(e))
    except CompositionError as exc:
        raise RelationError(f"composite demanded by the decomposition is undefined: {exc}") from exc


def identity_cube(n, target=None):
    """The cube nu I^n -> nu I^n sending every atom to itself."""
    from .categories import CubeCategory
    target = target or CubeCategory(n)
    return NerveCube(target, n, {w: omega.atom(w) for w in chains.basis(n)}, check=False)


# faces and assembly

def face(x: _NerveMap, i, sign):
    """The face d_i^sign, i.e. precomposition with the face inclusion."""
    signs.check_sign(sign)
    n = x.n
    if not 1 <= i <= n:
        raise ValueError(f"face index {i} out of range for an {n}-cube")
    if isinstance(x, NerveBox) and (i, sign) == (x.k, x.sign):
        raise ValueError(f"d_{i}^{sign} is the missing face of this box")
    images = {}
    for t in chains.basis(n - 1):
        w = chains.insert_letter(t, i, sign)
        images[t] = x.image(w)
    return NerveCube(x.target, n - 1, images, check=False)


def apply_op(op: precubical.PrecubicalOp, x: _NerveMap):
    """theta x for a precubical operation theta; faces are applied right to left."""
    if op.ambient != x.n:
        raise ValueError(f"operation on {op.ambient}-cubes applied to an {x.n}-dimensional map")
    word = precubical.op_to_basis(op)
    if not x.complex.contains(word):
        raise ValueError(f"{op} is not defined on {x.complex}")
    positions = [i for i, c in enumerate(word, start=1) if c == "*"]
    images = {}
    for t in chains.basis(len(positions)):
        w = list(word)
        for pos, c in zip(positions, t):
            w[pos - 1] = c
        images[t] = x.image("".join(w))
    return NerveCube(x.target, len(positions), images, check=False)


def _assemble(target, n, faces, skip=None):
    """Image table on the words of I^n covered by the given faces."""
    images = {}
    for w in chains.basis(n):
        found = None
        for i, c in enumerate(w, start=1):
            if c == "*" or (i, c) == skip:
                continue
            f = faces[i, c]
            v = f.image(chains.delete_letter(w, i))
            if found is None:
                found = (i, c, v)
            elif found[2] != v:
                raise FaceMismatchError(
                    f"faces d_{found[0]}^{found[1]} and d_{i}^{c} disagree at {w}: "
                    f"{found[2]!r} != {v!r}")
        if found is not None:
            images[w] = found[2]
    return images


def _check_faces(target, n, faces, expected):
    if set(faces) != expected:
        raise ValueError(f"expected faces {sorted(expected)}, got {sorted(faces)}")
    for key, f in faces.items():
        if f.n != n - 1 or f.target is not target:
            raise ValueError(f"face {key} is not an {n - 1}-cube of the same nerve")


def shell_from_faces(target, n, faces, check=True) -> NerveShell:
    """The shell with the given faces; ``faces`` maps (i, sign) to (n-1)-cubes."""
    _check_faces(target, n, faces, {(i, s) for i in range(1, n + 1) for s in signs.SIGNS})
    images = _assemble(target, n, faces)
    images.pop(chains.unit(n), None)
    return NerveShell(target, n, images, check)


def box_from_faces(target, n, k, sign, faces, check=True) -> NerveBox:
    """The box opposite d_k^sign with the given faces."""
    expected = {(i, s) for i in range(1, n + 1) for s in signs.SIGNS} - {(k, sign)}
    _check_faces(target, n, faces, expected)
    images = _assemble(target, n, faces, skip=(k, sign))
    return NerveBox(target, n, k, sign, images, check)


def shell_of(x: NerveCube) -> NerveShell:
    images = x.images()
    del images[chains.unit(x.n)]
    return NerveShell(x.target, x.n, images, check=False)


def box_of(x: NerveCube, k, sign) -> NerveBox:
    sigma = chains.insert_letter(chains.unit(x.n - 1), k, sign)
    images = x.images()
    del images[chains.unit(x.n)]
    del images[sigma]
    return NerveBox(x.target, x.n, k, sign, images, check=False)


def restrict_shell(s: NerveShell, k, sign) -> NerveBox:
    sigma = chains.insert_letter(chains.unit(s.n - 1), k, sign)
    images = s.images()
    del images[sigma]
    return NerveBox(s.target, s.n, k, sign, images, check=False)


# thinness, admissibility, fillers

def _is_thin_word(x, word):
    p = chains.degree(word)
    return p > 0 and x.target.is_identity(p - 1, x.image(word))


def is_thin(x: NerveCube) -> bool:
    if x.n == 0:
        raise ValueError("0-cubes are never thin")
    return _is_thin_word(x, chains.unit(x.n))


def box_admissible(b: NerveBox, k=None, sign=None) -> bool:
    """Every non-identity operation complementary to the missing face gives a thin cube."""
    k = b.k if k is None else k
    sign = b.sign if sign is None else sign
    if (k, sign) != (b.k, b.sign):
        raise ValueError(f"box is opposite d_{b.k}^{b.sign}, not d_{k}^{sign}")
    for op in precubical.complementary_ops(b.n, k, sign):
        if op.is_identity:
            continue
        if not _is_thin_word(b, precubical.op_to_basis(op)):
            return False
    return True


def admissibility_witnesses(s: NerveShell):
    """Pairs ((k, g), (l, d)) that make the shell admissible."""
    out = []
    n = s.n
    ops = [(i, a) for i in range(1, n + 1) for a in signs.SIGNS]
    for idx, (k, g) in enumerate(ops):
        for (l, d) in ops[idx + 1:]:
            if signs.twist(g, k) == signs.twist(d, l):
                continue
            if face(s, k, g) != face(s, l, d):
                continue
            if box_admissible(restrict_shell(s, k, g)) and box_admissible(restrict_shell(s, l, d)):
                out.append(((k, g), (l, d)))
    return out


def shell_admissible(s: NerveShell) -> bool:
    return bool(admissibility_witnesses(s))


def shell_composites(s: NerveShell):
    """The images of d_{n-1}^- <u_n> and d_{n-1}^+ <u_n>."""
    u = chains.unit(s.n)
    try:
        return tuple(evaluate_tree(s, omega.standard_tree(u, s.n - 1, a)) for a in signs.SIGNS)
    except CompositionError as exc:
        raise RelationError(str(exc)) from exc


def fill_shell(s: NerveShell, check=True) -> NerveCube:
    """The unique thin filler; it exists exactly when the shell commutes."""
    minus, plus = shell_composites(s)
    if minus != plus:
        raise NoThinFiller(s, minus, plus)
    images = s.images()
    images[chains.unit(s.n)] = minus
    return NerveCube(s.target, s.n, images, check)


def missing_face_image(b: NerveBox):
    """The image of the missing atom forced by a thin filler."""
    n = b.n
    tree = omega.standard_tree(chains.unit(n), n - 1, signs.twist(b.sign, b.k))
    try:
        return evaluate_tree(b, tree)
    except CompositionError as exc:
        raise RelationError(str(exc)) from exc


def extend_box(b: NerveBox, check=True) -> NerveShell:
    images = b.images()
    sigma = chains.insert_letter(chains.unit(b.n - 1), b.k, b.sign)
    images[sigma] = missing_face_image(b)
    return NerveShell(b.target, b.n, images, check)


def fill_box(b: NerveBox, check=True) -> NerveCube:
    if not box_admissible(b):
        raise InadmissibleBoxError(f"box opposite d_{b.k}^{b.sign} is not admissible")
    return fill_shell(extend_box(b, check), check)


# enumeration

def enumerate_cubes(target, n, cells=None):
    """Every n-cube of the nerve of a finite omega-category, in a fixed order."""
    cells = list(target.cells if cells is None else cells)
    words = sorted(chains.basis(n), key=lambda w: (chains.degree(w), chains.word_key(w)))
    by_degree = {}
    for p in range(n + 1):
        index = {}
        for c in cells:
            if not target.is_identity(p, c):
                continue
            key = None if p == 0 else (target.d(p - 1, "-", c), target.d(p - 1, "+", c))
            index.setdefault(key, []).append(c)
        by_degree[p] = index

    class _Partial:
        def __init__(self):
            self.table = {}

        def image(self, w):
            return self.table[w]

    partial = _Partial()
    partial.target = target
    out = []

    def walk(i):
        if i == len(words):
            out.append(NerveCube(target, n, dict(partial.table), check=False))
            return
        w = words[i]
        p = chains.degree(w)
        if p == 0:
            cands = by_degree[0].get(None, [])
        else:
            try:
                key = tuple(evaluate_tree(partial, omega.standard_tree(w, p - 1, s))
                            for s in signs.SIGNS)
            except CompositionError:
                return
            cands = by_degree[p].get(key, [])
        for c in cands:
            partial.table[w] = c
            walk(i + 1)
        partial.table.pop(w, None)

    walk(0)
    return out


def enumerate_shells(target, n):
    """Every n-shell, from the (n-1)-cubes, keyed by face compatibility."""
    faces_pool = enumerate_cubes(target, n - 1)
    out = []
    keys = [(i, a) for i in range(1, n + 1) for a in signs.SIGNS]

    def walk(j, chosen):
        if j == len(keys):
            try:
                out.append(shell_from_faces(target, n, dict(chosen), check=False))
            except FaceMismatchError:
                pass
            return
        for f in faces_pool:
            chosen[keys[j]] = f
            if _partial_consistent(n, chosen):
                walk(j + 1, chosen)
        chosen.pop(keys[j], None)

    walk(0, {})
    return out


def _partial_consistent(n, faces):
    # d_i^a s_j^b = d_j^b s_{i+1}^a for i >= j, on the faces chosen so far
    for (j, b), f in faces.items():
        for (i1, a), g in faces.items():
            i = i1 - 1
            if i < j:
                continue
            if face(g, j, b) != face(f, i, a):
                return False
    return True

"""The omega-categories nu K of double sequences of chains.

An element of nu I^n is a double sequence ``(x_0^-, x_0^+ | x_1^-, x_1^+ | ...)``
of chains of I^n; shells and boxes are handled as subsets of nu I^n by
restricting which basis elements may occur (see ``chains.ComplexId``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import chains, signs
from .chains import Chain, ComplexId


class CompositionError(ValueError):
    pass


class DecompositionError(RuntimeError):
    pass


class DoubleSequence:
    """Levels q = 0..n, each a pair (negative chain, positive chain)."""

    __slots__ = ("n", "levels", "_hash")

    def __init__(self, n, levels=()):
        levels = [tuple(pair) for pair in levels]
        if len(levels) > n + 1:
            extra = levels[n + 1:]
            if any(a or b for a, b in extra):
                raise ValueError(f"nonzero chain above degree {n} in nu I^{n}")
            levels = levels[:n + 1]
        zero = Chain(n)
        levels += [(zero, zero)] * (n + 1 - len(levels))
        for a, b in levels:
            if a.n != n or b.n != n:
                raise ValueError("all chains of a double sequence must lie in I^n")
        self.n = n
        self.levels = tuple(levels)
        self._hash = None

    def neg(self, q):
        return self.chain(q, "-")

    def pos(self, q):
        return self.chain(q, "+")

    def chain(self, q, sign):
        if q > self.n:
            return Chain(self.n)
        return self.levels[q][0 if sign == "-" else 1]

    @property
    def top(self):
        """Least p such that the element is an identity for comp_p."""
        for q in range(self.n, -1, -1):
            a, b = self.levels[q]
            if a or b:
                return q
        return 0

    def __add__(self, other):
        return DoubleSequence(self.n, [(a + c, b + d) for (a, b), (c, d)
                                       in zip(self.levels, other.levels)])

    def __sub__(self, other):
        return DoubleSequence(self.n, [(a - c, b - d) for (a, b), (c, d)
                                       in zip(self.levels, other.levels)])

    def __eq__(self, other):
        if not isinstance(other, DoubleSequence):
            return NotImplemented
        return self.n == other.n and self.levels == other.levels

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.levels))
        return self._hash

    def __repr__(self):
        return f"DoubleSequence({self.n}, {str(self)})"

    def __str__(self):
        top = self.top
        parts = [f"{a}, {b}" for a, b in self.levels[:top + 1]]
        if top < self.n:
            parts.append("0, 0")
        return "(" + " | ".join(parts) + ")"

    def to_json(self):
        return [{"neg": a.to_json(), "pos": b.to_json()} for a, b in self.levels]

    @classmethod
    def from_json(cls, data):
        levels = [(Chain.from_json(lv["neg"]), Chain.from_json(lv["pos"])) for lv in data]
        if not levels:
            raise ValueError("empty double sequence")
        return cls(levels[0][0].n, levels)


def check(x: DoubleSequence, complex: ComplexId | None = None) -> list[str]:
    """Violated membership conditions for nu K (empty when x is a member)."""
    problems = []
    K = complex or ComplexId.cube(x.n)
    if K.n != x.n:
        return [f"element of nu I^{x.n} checked against {K}"]
    for q, (a, b) in enumerate(x.levels):
        for sign, c in (("-", a), ("+", b)):
            if c and c.degrees() != {q}:
                problems.append(f"x_{q}^{sign} is not a {q}-chain")
                continue
            if not chains.is_nonneg(c):
                problems.append(f"x_{q}^{sign} is not >= 0")
            if not chains.in_complex(c, K):
                problems.append(f"x_{q}^{sign} leaves {K}")
    if problems:
        return problems
    for sign in signs.SIGNS:
        if chains.augmentation(x.chain(0, sign)) != 1:
            problems.append(f"augmentation of x_0^{sign} is not 1")
    for q in range(x.n):
        diff = x.pos(q) - x.neg(q)
        for sign in signs.SIGNS:
            c = x.chain(q + 1, sign)
            if diff != (chains.boundary(c) if c else Chain(x.n)):
                problems.append(f"x_{q}^+ - x_{q}^- != boundary of x_{q + 1}^{sign}")
    return problems


def validate(x: DoubleSequence, complex: ComplexId | None = None) -> bool:
    return not check(x, complex)


def lies_in(x: DoubleSequence, K: ComplexId) -> bool:
    return all(chains.in_complex(c, K) for pair in x.levels for c in pair)


def d(p, sign, x: DoubleSequence) -> DoubleSequence:
    if p < 0:
        raise ValueError("p must be >= 0")
    if p >= x.n:
        return x
    c = x.chain(p, sign)
    return DoubleSequence(x.n, list(x.levels[:p]) + [(c, c)])


def comp(p, x: DoubleSequence, y: DoubleSequence) -> DoubleSequence:
    if x.n != y.n:
        raise CompositionError("elements of different nu I^n")
    w = d(p, "+", x)
    w2 = d(p, "-", y)
    if w != w2:
        diffs = [f"level {q}: {a} vs {b}" for q, (a, b)
                 in enumerate(zip(w.levels, w2.levels)) if a != b]
        raise CompositionError(f"d_{p}^+ x != d_{p}^- y ({'; '.join(diffs)})")
    return x - w + y


def composable(p, x, y):
    return d(p, "+", x) == d(p, "-", y)


def is_identity_for(p, x: DoubleSequence) -> bool:
    return x.top <= p


@lru_cache(maxsize=None)
def atom(word: str) -> DoubleSequence:
    """The atom <sigma>, by iterated positive/negative boundary parts."""
    chains.check_word(word)
    n, p = len(word), chains.degree(word)
    top = Chain.of(word)
    levels = [None] * (p + 1)
    levels[p] = (top, top)
    for sign_index, sign in enumerate(signs.SIGNS):
        c = top
        for q in range(p - 1, -1, -1):
            c = chains.boundary_part(c, sign)
            pair = list(levels[q] or (None, None))
            pair[sign_index] = c
            levels[q] = tuple(pair)
    return DoubleSequence(n, levels)


def atom_by_tensor_formula(word: str) -> DoubleSequence:
    """The atom <sigma> from the tensor product formula over the factors of I^n.

    A ``*`` factor contributes either u_1 (degree 1) or d^s u_1 where s is the
    current sign; each degree-1 choice flips the sign for later factors.
    """
    n, p = len(word), chains.degree(word)
    levels = []
    for q in range(p + 1):
        pair = []
        for sign in signs.SIGNS:
            terms = {}
            stack = [(0, "", sign, 0)]
            while stack:
                i, prefix, s, deg = stack.pop()
                if deg > q:
                    continue
                if i == n:
                    if deg == q:
                        terms[prefix] = terms.get(prefix, 0) + 1
                    continue
                c = word[i]
                if c != "*":
                    stack.append((i + 1, prefix + c, s, deg))
                else:
                    stack.append((i + 1, prefix + s, s, deg))
                    stack.append((i + 1, prefix + "*", signs.neg(s), deg + 1))
            pair.append(Chain(n, terms))
        levels.append(tuple(pair))
    return DoubleSequence(n, levels)


def atoms(n):
    return [atom(w) for w in chains.basis(n)]


# -- composition trees --------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    atom: str

    def __str__(self):
        return f"<{self.atom}>"


@dataclass(frozen=True)
class Node:
    p: int
    left: "Leaf | Node"
    right: "Leaf | Node"

    def __str__(self):
        return f"({self.left} #{self.p} {self.right})"


CompositionTree = "Leaf | Node"


def fold(tree, leaf, node):
    """Evaluate a tree bottom-up with ``leaf(word)`` and ``node(p, l, r)``."""
    if isinstance(tree, Leaf):
        return leaf(tree.atom)
    return node(tree.p, fold(tree.left, leaf, node), fold(tree.right, leaf, node))


def evaluate_tree(tree) -> DoubleSequence:
    return fold(tree, atom, comp)


def leaves(tree):
    if isinstance(tree, Leaf):
        return [tree.atom]
    return leaves(tree.left) + leaves(tree.right)


def comp_tree(p, *trees):
    """Left-nested comp_p of several trees."""
    out = trees[0]
    for t in trees[1:]:
        out = Node(p, out, t)
    return out


def tree_to_json(tree):
    if isinstance(tree, Leaf):
        return {"atom": tree.atom}
    return {"comp": tree.p, "left": tree_to_json(tree.left), "right": tree_to_json(tree.right)}


def tree_from_json(data):
    if "atom" in data:
        return Leaf(chains.check_word(data["atom"]))
    return Node(int(data["comp"]), tree_from_json(data["left"]), tree_from_json(data["right"]))


def face_str(tree):
    if isinstance(tree, Leaf):
        return f"<{chains.face_name(tree.atom)}>"
    return f"({face_str(tree.left)} comp_{tree.p} {face_str(tree.right)})"


# -- decomposition into atoms -------------------------------------------------

def decompose(x: DoubleSequence):
    """A composition tree of atoms whose value is x.

    Repeatedly splits x = y comp_q z, trying q = top-1 first and descending.
    A split is determined by the parts Y_j <= x_j^- (j > q) that go into y;
    each choice of Y_j is confined to a box computed from Y_{j+1}, so the
    search is a depth-first walk over those boxes.  Both halves of a
    nontrivial split are strictly smaller in the order that compares the
    negative chains from the top level down, so the recursion terminates.
    """
    memo = {}
    return _decompose(x, memo)


def _decompose(x, memo):
    if x in memo:
        return memo[x]
    p = x.top
    top = x.neg(p)
    tree = None
    if p == 0:
        if len(top) != 1 or top.coeff(top.support()[0]) != 1:
            raise DecompositionError(f"not an element of nu I^{x.n}: {x}")
        tree = Leaf(top.support()[0])
    elif len(top) == 1 and top.coeff(top.support()[0]) == 1 and atom(top.support()[0]) == x:
        tree = Leaf(top.support()[0])
    else:
        for q in range(p - 1, -1, -1):
            split = _find_split(x, q, p)
            if split is not None:
                y, z = split
                if check(y) or check(z) or comp(q, y, z) != x:
                    raise DecompositionError(f"invalid split of {x} along {q}")
                tree = Node(q, _decompose(y, memo), _decompose(z, memo))
                break
    if tree is None:
        raise DecompositionError(f"no decomposition found for {x}")
    memo[x] = tree
    return tree


def _box_choices(lo: dict, hi: dict):
    """All integer chains (as dicts) between lo and hi componentwise, lex-small first."""
    keys = sorted(set(lo) | set(hi), key=chains.word_key)
    ranges = []
    for w in keys:
        a, b = lo.get(w, 0), hi.get(w, 0)
        if a > b:
            return
        ranges.append([(w, v) for v in range(a, b + 1)])
    # prefer few, lexicographically small terms
    combos = list(itertools.product(*ranges))
    combos.sort(key=lambda combo: (sum(v for _, v in combo),
                                   [-v for _, v in combo]))
    for combo in combos:
        yield {w: v for w, v in combo if v}


def _find_split(x, q, p):
    n = x.n
    full = [x.neg(j) for j in range(q + 1, p + 1)]

    def search(j, upper_y, chosen):
        # chosen[j] for levels above; upper_y is Y_{j+1}
        if j == q:
            w = x.neg(q) + (chains.boundary(upper_y) if upper_y else Chain(n))
            if not chains.is_nonneg(w):
                return None
            ys = [chosen[i] for i in range(q + 1, p + 1)]
            if all(not c for c in ys) or ys == full:
                return None
            return ys
        xj = x.neg(j)
        upper_rest = x.neg(j + 1) - upper_y if j < p else Chain(n)
        b_y = chains.boundary(upper_y).terms() if upper_y else {}
        b_rest = chains.boundary(upper_rest).terms() if upper_rest else {}
        lo = {w: max(0, -v) for w, v in b_y.items() if -v > 0}
        hi = dict(xj.terms())
        for w, v in b_rest.items():
            hi[w] = min(hi.get(w, 0), xj.coeff(w) + v)
        for w in list(lo):
            hi.setdefault(w, 0)
        for choice in _box_choices(lo, hi):
            yj = Chain(n, choice)
            chosen[j] = yj
            found = search(j - 1, yj, chosen)
            if found is not None:
                return found
        chosen.pop(j, None)
        return None

    ys = search(p, Chain(n), {})
    if ys is None:
        return None
    y_levels = list(x.levels[:q])
    z_levels = list(x.levels[:q])
    wq = x.neg(q) + chains.boundary(ys[0])
    y_levels.append((x.neg(q), wq))
    z_levels.append((wq, x.pos(q)))
    for idx, j in enumerate(range(q + 1, p + 1)):
        yj = ys[idx]
        zj = x.neg(j) - yj
        y_up = ys[idx + 1] if idx + 1 < len(ys) else Chain(n)
        z_up = x.neg(j + 1) - y_up if j < p else Chain(n)
        y_levels.append((yj, yj + (chains.boundary(y_up) if y_up else Chain(n))))
        z_levels.append((zj, zj + (chains.boundary(z_up) if z_up else Chain(n))))
    return DoubleSequence(n, y_levels), DoubleSequence(n, z_levels)


@lru_cache(maxsize=None)
def standard_tree(word: str, p: int, sign: str):
    """Cached decomposition of d_p^sign <word>; used by nerve evaluation."""
    return decompose(d(p, sign, atom(word)))


# -- materialization ----------------------------------------------------------

def generate(n, max_rounds=None):
    """All elements of nu I^n, by closing the atoms under every comp_p.

    Feasible for n <= 3.
    """
    elements = set(atoms(n))
    frontier = set(elements)
    rounds = 0
    while frontier and (max_rounds is None or rounds < max_rounds):
        rounds += 1
        by_source = {}
        for e in elements:
            for p in range(n):
                by_source.setdefault((p, d(p, "-", e)), []).append(e)
        new = set()
        for x in elements:
            for p in range(n):
                for y in by_source.get((p, d(p, "+", x)), ()):
                    if x in frontier or y in frontier:
                        z = comp(p, x, y)
                        if z not in elements:
                            new.add(z)
        elements |= new
        frontier = new
    return sorted(elements, key=_element_key)


def _element_key(x):
    return tuple((tuple(chains.word_key(w) + (c,) for w, c in a.items()),
                  tuple(chains.word_key(w) + (c,) for w, c in b.items()))
                 for a, b in x.levels)

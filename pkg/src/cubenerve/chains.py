"""The standard cube chain complexes I^n and their subcomplexes.

Basis elements of I^n are length-n strings over ``-``, ``+``, ``*``: the
tensor product of d^-u_1, d^+u_1 and u_1 factor by factor.  The degree of a
basis element is its number of ``*`` letters.  Chains are finitely
supported integer combinations of basis elements of one I^n.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache

from . import signs

LETTERS = ("-", "+", "*")
_ORDER = {"-": 0, "+": 1, "*": 2}


class ChainDomainError(ValueError):
    pass


def word_key(word):
    """Total order on basis elements: by letters with - < + < *."""
    return tuple(_ORDER[c] for c in word)


def check_word(word, n=None):
    if any(c not in _ORDER for c in word):
        raise ValueError(f"basis word may only contain '-', '+', '*': {word!r}")
    if n is not None and len(word) != n:
        raise ValueError(f"basis word {word!r} does not have length {n}")
    return word


def degree(word):
    return word.count("*")


def unit(n):
    """u_n, the top basis element of I^n."""
    return "*" * n


@lru_cache(maxsize=None)
def basis(n, deg=None):
    words = ("".join(t) for t in itertools.product(LETTERS, repeat=n))
    if deg is not None:
        words = (w for w in words if degree(w) == deg)
    return tuple(sorted(words, key=word_key))


def count_basis(n, deg):
    return math.comb(n, deg) * 2 ** (n - deg)


def insert_letter(word, i, letter):
    return word[:i - 1] + letter + word[i - 1:]


def delete_letter(word, i):
    return word[:i - 1] + word[i:]


def face_name(word):
    """Render e.g. ``-*+`` as ``d3+d1-u1`` (face inclusions applied to u_m)."""
    parts = [f"d{i}{c}" for i, c in reversed(list(enumerate(word, start=1))) if c != "*"]
    return "".join(parts) + f"u{degree(word)}"


_FACE_TOKEN = re.compile(r"d(\d+)([-+])")


def parse_face_name(text):
    """Inverse of ``face_name``: ``d3+d1-u1`` -> ``-*+``."""
    text = text.replace(" ", "")
    m = re.fullmatch(r"((?:d\d+[-+])*)u(\d+)", text)
    if not m:
        raise ValueError(f"cannot parse basis element {text!r}")
    word = unit(int(m.group(2)))
    for i, sign in reversed(_FACE_TOKEN.findall(m.group(1))):
        i = int(i)
        if not 1 <= i <= len(word) + 1:
            raise ValueError(f"face index {i} out of range in {text!r}")
        word = insert_letter(word, i, sign)
    return word


class Chain:
    """An integer chain in I^n; immutable, zero coefficients elided."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n, terms=None):
        self.n = n
        clean = {}
        if terms:
            for w, c in dict(terms).items():
                if len(w) != n:
                    check_word(w, n)
                if c:
                    clean[w] = clean.get(w, 0) + c
        self._terms = {w: c for w, c in clean.items() if c}
        self._hash = None

    @classmethod
    def of(cls, *words, n=None):
        """Sum of basis elements (repeats add up)."""
        if n is None:
            if not words:
                raise ValueError("need n for the empty chain")
            n = len(words[0])
        terms = {}
        for w in words:
            check_word(w, n)
            terms[w] = terms.get(w, 0) + 1
        return cls(n, terms)

    @classmethod
    def zero(cls, n):
        return cls(n)

    def coeff(self, word):
        return self._terms.get(word, 0)

    def items(self):
        return sorted(self._terms.items(), key=lambda t: word_key(t[0]))

    def terms(self):
        return dict(self._terms)

    def support(self):
        return sorted(self._terms, key=word_key)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.support())

    def __bool__(self):
        return bool(self._terms)

    def degrees(self):
        return {degree(w) for w in self._terms}

    @property
    def degree(self):
        """The common degree of all terms; None for the zero chain."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise ChainDomainError(f"chain is not homogeneous: degrees {sorted(ds)}")
        return ds.pop()

    def _check(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        if other.n != self.n:
            raise ValueError(f"chains in I^{self.n} and I^{other.n} cannot be combined")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for w, c in other._terms.items():
            terms[w] = terms.get(w, 0) + c
        return Chain(self.n, terms)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Chain(self.n, {w: -c for w, c in self._terms.items()})

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return Chain(self.n, {w: k * c for w, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Chain({self.n}, {dict(self.items())!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for w, c in self.items():
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            sep = "-" if c < 0 else "+"
            out.append(f"{sep} {mag}{w}")
        text = " ".join(out)
        return text[2:] if text.startswith("+ ") else "-" + text[1:]

    def to_json(self):
        return {"n": self.n,
                "terms": [{"word": w, "coeff": c} for w, c in self.items()]}

    @classmethod
    def from_json(cls, data):
        n = int(data["n"])
        terms = {}
        for t in data["terms"]:
            w = check_word(t["word"], n)
            terms[w] = terms.get(w, 0) + int(t["coeff"])
        return cls(n, terms)


@lru_cache(maxsize=None)
def _boundary_word(word):
    out = {}
    stars = 0
    for i, c in enumerate(word):
        if c == "*":
            s = -1 if stars % 2 else 1
            plus = word[:i] + "+" + word[i + 1:]
            minus = word[:i] + "-" + word[i + 1:]
            out[plus] = out.get(plus, 0) + s
            out[minus] = out.get(minus, 0) - s
            stars += 1
    return out


def boundary(c: Chain) -> Chain:
    d = c.degree
    if d is None:
        return Chain(c.n)
    if d == 0:
        raise ChainDomainError("boundary of a degree-0 chain")
    terms = {}
    for w, k in c.terms().items():
        for v, s in _boundary_word(w).items():
            terms[v] = terms.get(v, 0) + k * s
    return Chain(c.n, terms)


def augmentation(c: Chain) -> int:
    d = c.degree
    if d not in (None, 0):
        raise ChainDomainError("augmentation is only defined in degree 0")
    return sum(k for _, k in c.items())


def signed_parts(c: Chain):
    """(negative, positive) parts: c = positive - negative, disjoint supports."""
    terms = c.terms()
    pos = Chain(c.n, {w: k for w, k in terms.items() if k > 0})
    negative = Chain(c.n, {w: -k for w, k in terms.items() if k < 0})
    return negative, pos


def boundary_part(c: Chain, sign):
    """d^- c or d^+ c: the negative or positive part of the boundary."""
    negative, pos = signed_parts(boundary(c))
    return pos if sign == "+" else negative


def face_inclusion(i, sign, c: Chain) -> Chain:
    """The chain map I^{n-1} -> I^n inserting d^sign u_1 at position i."""
    signs.check_sign(sign)
    n = c.n + 1
    if not 1 <= i <= n:
        raise ChainDomainError(f"face index {i} out of range for I^{n}")
    return Chain(n, {insert_letter(w, i, sign): k for w, k in c.terms().items()})


def is_nonneg(c: Chain) -> bool:
    return all(k >= 0 for _, k in c.items())


def is_sum_of_basis(c: Chain) -> bool:
    """True when every coefficient is 0 or 1."""
    return all(k == 1 for _, k in c.items())


@dataclass(frozen=True)
class ComplexId:
    """Names one of I^n (``cube``), S^n (``shell``) or B(sigma) (``box``)."""

    n: int
    kind: str = "cube"
    sigma: str | None = None

    def __post_init__(self):
        if self.kind not in ("cube", "shell", "box"):
            raise ValueError(f"unknown complex kind {self.kind!r}")
        if self.kind == "box":
            if self.sigma is None or len(self.sigma) != self.n or degree(self.sigma) != self.n - 1:
                raise ValueError("a box needs a basis element of degree n-1 of I^n")
        elif self.sigma is not None:
            raise ValueError("only boxes carry sigma")

    @classmethod
    def cube(cls, n):
        return cls(n)

    @classmethod
    def shell(cls, n):
        return cls(n, "shell")

    @classmethod
    def box(cls, n, k, sign):
        return cls(n, "box", insert_letter(unit(n - 1), k, sign))

    @property
    def excluded(self):
        if self.kind == "cube":
            return frozenset()
        if self.kind == "shell":
            return frozenset([unit(self.n)])
        return frozenset([unit(self.n), self.sigma])

    def contains(self, word):
        return len(word) == self.n and word not in self.excluded

    def basis(self):
        return tuple(w for w in basis(self.n) if w not in self.excluded)

    def __str__(self):
        if self.kind == "cube":
            return f"I^{self.n}"
        if self.kind == "shell":
            return f"S^{self.n}"
        return f"B({self.sigma})"


def in_complex(c: Chain, K: ComplexId) -> bool:
    if c.n != K.n:
        raise ValueError(f"chain in I^{c.n} tested against {K}")
    return not (set(c.terms()) & K.excluded)

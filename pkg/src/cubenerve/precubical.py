"""Precubical operations: words in the face operators d_i^a.

A word is written left to right as in ``d1- d2+`` and acts right to left:
the rightmost factor is applied first, to cubes of the ambient dimension.
Standard form has strictly increasing indices; every word has exactly one.

Operations on n-cubes correspond to the standard basis elements of I^n.
A basis element is encoded as a string over ``-``, ``+``, ``*`` (``*`` is
the interval u_1); the operation d_{i1}^{a1} ... d_{ip}^{ap} corresponds to
the word with letter a_r at position i_r and ``*`` elsewhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import signs


class MalformedWordError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class FaceOp:
    index: int
    sign: str

    def __post_init__(self):
        signs.check_sign(self.sign)
        if self.index < 1:
            raise MalformedWordError(f"face index must be >= 1, got {self.index}")

    def __str__(self):
        return f"d{self.index}{self.sign}"

    @classmethod
    def parse(cls, token: str) -> FaceOp:
        token = token.strip()
        if len(token) < 3 or token[0] != "d" or token[-1] not in "-+":
            raise MalformedWordError(f"cannot parse face operation {token!r}")
        try:
            index = int(token[1:-1])
        except ValueError:
            raise MalformedWordError(f"cannot parse face operation {token!r}") from None
        return cls(index, token[-1])


@dataclass(frozen=True)
class PrecubicalOp:
    """An operation from ambient-cubes to (ambient - len(factors))-cubes, in standard form."""

    ambient: int
    factors: tuple[FaceOp, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if self.ambient < 0:
            raise MalformedWordError("ambient dimension must be >= 0")
        indices = [f.index for f in self.factors]
        if any(a >= b for a, b in zip(indices, indices[1:])):
            raise MalformedWordError(f"not in standard form: {_render(self.factors)}")
        if indices and indices[-1] > self.ambient:
            raise MalformedWordError(
                f"index {indices[-1]} out of range on {self.ambient}-cubes")

    @property
    def target_dim(self):
        return self.ambient - len(self.factors)

    @property
    def is_identity(self):
        return not self.factors

    def indices(self):
        return {f.index for f in self.factors}

    def __str__(self):
        return _render(self.factors)

    @classmethod
    def identity(cls, n):
        return cls(n, ())

    @classmethod
    def parse(cls, text: str, ambient: int) -> PrecubicalOp:
        """Parse ``"d1- d3+"`` (any order; the result is normalized) or ``"id"``."""
        return normalize(parse_word(text), ambient)


def parse_word(text: str) -> list[FaceOp]:
    text = text.strip()
    if text in ("", "id"):
        return []
    return [FaceOp.parse(tok) for tok in text.split()]


def _render(factors):
    return " ".join(map(str, factors)) if factors else "id"


def check_word(word, ambient):
    """Raise unless the r-th factor from the right is valid on (ambient - r + 1)-cubes."""
    for r, face in enumerate(reversed(word), start=1):
        dim = ambient - r + 1
        if face.index > dim:
            raise MalformedWordError(
                f"{face} cannot act on {dim}-cubes (factor {r} from the right "
                f"of {_render(word)} on {ambient}-cubes)")


def rewrite_positions(word):
    """Positions j where the pair (word[j], word[j+1]) admits a rewrite."""
    return [j for j in range(len(word) - 1) if word[j].index >= word[j + 1].index]


def rewrite_at(word, j):
    """Apply d_i^a d_j^b = d_j^b d_{i+1}^a (i >= j) to the pair at position j."""
    left, right = word[j], word[j + 1]
    if left.index < right.index:
        raise MalformedWordError(f"no rewrite applies at position {j}")
    out = list(word)
    out[j] = FaceOp(right.index, right.sign)
    out[j + 1] = FaceOp(left.index + 1, left.sign)
    return out


def normalize(word, ambient: int) -> PrecubicalOp:
    word = list(word)
    check_word(word, ambient)
    # each rewrite removes exactly one inversion, so this terminates
    while True:
        positions = rewrite_positions(word)
        if not positions:
            return PrecubicalOp(ambient, tuple(word))
        word = rewrite_at(word, positions[0])


def compose(first: PrecubicalOp, second: PrecubicalOp) -> PrecubicalOp:
    """The operation ``first`` followed by ``second`` (written second.first)."""
    if second.ambient != first.target_dim:
        raise MalformedWordError("dimension mismatch in composition")
    return normalize(list(second.factors) + list(first.factors), first.ambient)


def _sign_profile(op):
    return {signs.value(f.sign) * (-1) ** (f.index - r)
            for r, f in enumerate(op.factors, start=1)}


def is_extreme(op: PrecubicalOp) -> bool:
    return len(_sign_profile(op)) <= 1


def insert_factor(op: PrecubicalOp, face: FaceOp) -> PrecubicalOp:
    """Insert a factor with a new index into a standard decomposition."""
    if face.index in op.indices():
        raise MalformedWordError(f"{op} already has a factor with index {face.index}")
    return PrecubicalOp(op.ambient, tuple(sorted(op.factors + (face,))))


def is_complementary(op: PrecubicalOp, k: int, sign: str) -> bool:
    if k in op.indices():
        return False
    return is_extreme(insert_factor(op, FaceOp(k, signs.neg(sign))))


def all_ops(n: int):
    """Every operation on n-cubes, in canonical basis order."""
    from .chains import basis
    return [basis_to_op(w) for w in basis(n)]


def complementary_ops(n: int, k: int, sign: str) -> list[PrecubicalOp]:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    return [op for op in all_ops(n) if is_complementary(op, k, sign)]


def extreme_ops_opposite(n: int, k: int, sign: str) -> list[PrecubicalOp]:
    """Extreme operations whose standard decomposition has the factor d_k^{-sign}."""
    opposite = FaceOp(k, signs.neg(sign))
    return [op for op in all_ops(n) if is_extreme(op) and opposite in op.factors]


def op_to_basis(op: PrecubicalOp) -> str:
    letters = ["*"] * op.ambient
    for f in op.factors:
        letters[f.index - 1] = f.sign
    return "".join(letters)


def basis_to_op(word: str) -> PrecubicalOp:
    factors = tuple(FaceOp(i, a) for i, a in enumerate(word, start=1) if a != "*")
    return PrecubicalOp(len(word), factors)


def words_equal_to(op: PrecubicalOp):
    """All (not necessarily standard) words whose normal form is ``op``.

    Found by closing {op} under the rewrite relation in both directions;
    exponential, intended for small checks only.
    """
    start = tuple(op.factors)
    seen = {start}
    frontier = [start]
    while frontier:
        word = frontier.pop()
        for j in range(len(word) - 1):
            a, b = word[j], word[j + 1]
            cands = []
            if a.index >= b.index:
                cands.append((FaceOp(b.index, b.sign), FaceOp(a.index + 1, a.sign)))
            # inverse rewrite: d_j^b d_{i+1}^a -> d_i^a d_j^b when i >= j
            if b.index - 1 >= a.index:
                cands.append((FaceOp(b.index - 1, b.sign), FaceOp(a.index, a.sign)))
            for pair in cands:
                new = word[:j] + pair + word[j + 2:]
                if new not in seen:
                    seen.add(new)
                    frontier.append(new)
    return sorted(seen)


def all_words(n: int, length: int):
    """Every valid word of the given length acting on n-cubes."""
    pools = []
    for r in range(length, 0, -1):
        dim = n - r + 1
        pools.append([FaceOp(i, a) for i in range(1, dim + 1) for a in signs.SIGNS])
    return [list(w) for w in itertools.product(*pools)]

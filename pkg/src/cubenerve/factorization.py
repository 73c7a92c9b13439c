"""Projection onto a face of I^n, its chain homotopy, and the factorization
of d_{n-1}^{(-)^{k-1}g} <u_n> through the box opposite d_k^g.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import chains, omega, signs
from .chains import Chain, ComplexId
from .omega import DoubleSequence, Leaf, Node


class ConsistencyError(RuntimeError):
    """A construction that cannot fail produced an invalid value."""


@dataclass(frozen=True)
class ProjectionPair:
    n: int
    k: int
    sign: str

    def __post_init__(self):
        signs.check_sign(self.sign)
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")

    @property
    def sigma(self):
        return chains.insert_letter(chains.unit(self.n - 1), self.k, self.sign)

    @property
    def box(self):
        return ComplexId.box(self.n, self.k, self.sign)

    @property
    def face_sign(self):
        """The sign (-)^{k-1} g of the identity that gets factorized."""
        return signs.twist(self.sign, self.k - 1)


def _map_words(pp, c, fn):
    if c.n != pp.n:
        raise ValueError(f"chain in I^{c.n}, projection on I^{pp.n}")
    terms = {}
    for w, k in c.terms().items():
        out = fn(w)
        if out is not None:
            v, s = out
            terms[v] = terms.get(v, 0) + s * k
    return Chain(pp.n, terms)


def f_map(pp: ProjectionPair, c: Chain) -> Chain:
    i = pp.k - 1

    def f(w):
        if w[i] == "*":
            return None
        return w[:i] + pp.sign + w[i + 1:], 1

    return _map_words(pp, c, f)


def d_homotopy(pp: ProjectionPair, c: Chain) -> Chain:
    # the sign uses the degree of the tensor factor left of position k
    i = pp.k - 1
    opposite = signs.neg(pp.sign)

    def D(w):
        if w[i] != opposite:
            return None
        left_degree = chains.degree(w[:i])
        return w[:i] + "*" + w[i + 1:], -((-1) ** left_degree) * signs.value(pp.sign)

    return _map_words(pp, c, D)


def _bd(c):
    return chains.boundary(c) if c else Chain(c.n)


def _unit_chain(pp, q, sign):
    if q < 0:
        return Chain(pp.n)
    return omega.atom(chains.unit(pp.n)).chain(q, sign)


def a_q_beta(pp: ProjectionPair, q: int, beta: str) -> DoubleSequence:
    if not 1 <= q <= pp.n - 1:
        raise ValueError(f"need 1 <= q <= n-1, got q={q}, n={pp.n}")
    un = omega.atom(chains.unit(pp.n))
    levels = [un.levels[i] for i in range(q - 1)]
    base = _unit_chain(pp, q - 1, beta)
    other = base - _bd(d_homotopy(pp, base))
    pair = {beta: base, signs.neg(beta): other}
    levels.append((pair["-"], pair["+"]))
    top = signs.value(beta) * d_homotopy(pp, base)
    levels.append((top, top))
    x = DoubleSequence(pp.n, levels)
    problems = omega.check(x, pp.box)
    if problems:
        raise ConsistencyError(f"A_{q}^{beta} for {pp}: {problems}")
    return x


def a_q(pp: ProjectionPair, q: int) -> DoubleSequence:
    if not 0 <= q <= pp.n - 1:
        raise ValueError(f"need 0 <= q <= n-1, got q={q}, n={pp.n}")
    x = omega.atom(pp.sigma)
    for j in range(1, q + 1):
        try:
            x = omega.comp(j - 1, omega.comp(j - 1, a_q_beta(pp, j, "-"), x),
                           a_q_beta(pp, j, "+"))
        except omega.CompositionError as exc:
            raise ConsistencyError(f"A_{j} for {pp}: {exc}") from exc
    return x


def factorize(pp: ProjectionPair):
    """A tree  A_{n-1}^- comp_{n-2} ( ... (A_1^- comp_0 <sigma> comp_0 A_1^+) ... ) comp_{n-2} A_{n-1}^+.

    Each A_q^beta appears as its own decomposition into atoms.
    """
    tree = Leaf(pp.sigma)
    for q in range(1, pp.n):
        left = omega.decompose(a_q_beta(pp, q, "-"))
        right = omega.decompose(a_q_beta(pp, q, "+"))
        tree = Node(q - 1, Node(q - 1, left, tree), right)
    return tree


def factors(pp: ProjectionPair):
    """{(q, beta): A_q^beta} for 1 <= q <= n-1."""
    return {(q, b): a_q_beta(pp, q, b) for q in range(1, pp.n) for b in signs.SIGNS}


def verify(pp: ProjectionPair) -> dict:
    """Evaluate the factorization and compare with the identity it should equal."""
    target = omega.d(pp.n - 1, pp.face_sign, omega.atom(chains.unit(pp.n)))
    tree = factorize(pp)
    value = omega.evaluate_tree(tree)
    return {
        "evaluates_correctly": value == target,
        "last_factor_matches": a_q(pp, pp.n - 1) == target,
        "factors_in_box": all(omega.lies_in(a, pp.box) for a in factors(pp).values()),
    }


def _boundary0(c):
    # boundary of a 0-chain is zero here
    return chains.boundary(c) if c and c.degree else Chain(c.n)


def homotopy_defects(pp: ProjectionPair) -> list[str]:
    """Basis elements where dD + Dd = id - f fails."""
    out = []
    for w in chains.basis(pp.n):
        c = Chain.of(w)
        lhs = _boundary0(d_homotopy(pp, c)) + d_homotopy(pp, _boundary0(c))
        rhs = c - f_map(pp, c)
        if lhs != rhs:
            out.append(w)
    return out


def complementary_parts(pp: ProjectionPair, q: int):
    """D<u_n>_{q-1}^+ and -D<u_n>_{q-1}^-."""
    un = omega.atom(chains.unit(pp.n))
    return d_homotopy(pp, un.chain(q - 1, "+")), -d_homotopy(pp, un.chain(q - 1, "-"))


def complementary_support_problems(pp: ProjectionPair, q: int) -> list[str]:
    """Each part must be a 0/1 sum of basis elements of operations complementary to d_k^g."""
    from . import precubical
    out = []
    for label, c in zip(("plus", "minus"), complementary_parts(pp, q)):
        if not chains.is_sum_of_basis(c):
            out.append(f"{label} part has coefficients other than 1: {c}")
        for w in c.support():
            op = precubical.basis_to_op(w)
            if not precubical.is_complementary(op, pp.k, pp.sign):
                out.append(f"{label} part contains {w} ({op}), not complementary")
    return out

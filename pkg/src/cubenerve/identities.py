"""Sampled checks of the cubical-nerve identities for filler-built operations.

Each equation draws instances from the cubes of a nerve up to a given
dimension (and from composable pairs, triples and quadruples of them),
round-robin over dimensions and parameters so low dimensions are covered
exhaustively before high ones are sampled.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import nerve as nv
from . import signs
from .nerve import face as D
from .nerve import is_thin
from .structure import (Psi, composable, composer, composite, connection, degeneracy,
                        psi, thin_by_structure)

E = degeneracy


def G(k, s, x):
    return connection(k, s, x)


def C(k, x, y):
    return composite(k, x, y)


class Context:
    """Cubes of one nerve by dimension, with composability indices."""

    def __init__(self, target, max_dim):
        self.target = target
        self.max_dim = max_dim
        self.cubes = {n: nv.enumerate_cubes(target, n) for n in range(max_dim + 1)}
        self._by_lower = {}
        self._pairs = {}

    def by_lower_face(self, n, k):
        key = (n, k)
        if key not in self._by_lower:
            index = {}
            for c in self.cubes[n]:
                index.setdefault(D(c, k, "-"), []).append(c)
            self._by_lower[key] = index
        return self._by_lower[key]

    def after(self, n, k, x):
        """Cubes y with d_k^- y = d_k^+ x."""
        return self.by_lower_face(n, k).get(D(x, k, "+"), [])

    def pairs(self, n, k):
        key = (n, k)
        if key not in self._pairs:
            self._pairs[key] = [(x, y) for x in self.cubes[n] for y in self.after(n, k, x)]
        return self._pairs[key]


@dataclass
class Equation:
    name: str
    shape: str                      # cube, pair, triple or quad
    params: Callable                # n -> list of parameter tuples
    check: Callable                 # (params, args) -> bool
    min_dim: int = 0
    where: Callable | None = None   # optional filter on args


def _ks(n):
    return [(k,) for k in range(1, n + 1)]


def _signed(n, lo=1, hi=None):
    hi = n if hi is None else hi
    return [(k, s) for k in range(lo, hi + 1) for s in signs.SIGNS]


def _face_below_composite(p, a):
    (k, i, al), (x, y) = p, a
    return D(C(k, x, y), i, al) == C(k - 1, D(x, i, al), D(y, i, al))


def _face_above_composite(p, a):
    (k, i, al), (x, y) = p, a
    return D(C(k, x, y), i, al) == C(k, D(x, i, al), D(y, i, al))


def _interchange(p, a):
    (k, l), (x, y, z, w) = p, a
    return C(l, C(k, x, y), C(k, z, w)) == C(k, C(l, x, z), C(l, y, w))


def _recover_from_psi(p, a):
    (k,), (x,) = p, a
    left = C(k + 1, E(k, D(x, k, "-")), G(k, "+", D(x, k + 1, "+")))
    right = C(k + 1, G(k, "-", D(x, k + 1, "-")), E(k, D(x, k, "+")))
    return C(k, C(k, left, psi(k, x)), right) == x


def _faces_of_Psi(p, a):
    (i, al), (x,) = p, a
    y = Psi(x)
    return D(y, i, al) == E(1, D(D(y, 1, "+"), i - 1, al))


def _thin_pair(a):
    return all(c.n > 0 and is_thin(c) for c in a)


EQUATIONS = [
    Equation("composite of thin cubes is thin", "pair", _ks,
             lambda p, a: is_thin(C(p[0], *a)), 1, _thin_pair),
    Equation("eps_k eps_l x = eps_{l+1} eps_k x (k <= l)", "cube",
             lambda n: [(k, l) for l in range(1, n + 2) for k in range(1, l + 1)],
             lambda p, a: E(p[0], E(p[1], a[0])) == E(p[1] + 1, E(p[0], a[0]))),
    Equation("Gamma_k eps_l x = eps_{l+1} Gamma_k x (k < l)", "cube",
             lambda n: [(k, s, l) for k, s in _signed(n) for l in range(k + 1, n + 2)],
             lambda p, a: G(p[0], p[1], E(p[2], a[0])) == E(p[2] + 1, G(p[0], p[1], a[0])), 1),
    Equation("Gamma_k eps_k x = eps_{k+1} eps_k x", "cube",
             lambda n: _signed(n + 1),
             lambda p, a: G(p[0], p[1], E(p[0], a[0])) == E(p[0] + 1, E(p[0], a[0]))),
    Equation("Gamma_k eps_l x = eps_l Gamma_{k-1} x (k > l)", "cube",
             lambda n: [(k, s, l) for k, s in _signed(n + 1, lo=2) for l in range(1, k)],
             lambda p, a: G(p[0], p[1], E(p[2], a[0])) == E(p[2], G(p[0] - 1, p[1], a[0])), 1),
    Equation("Gamma_k Gamma_l x = Gamma_{l+1} Gamma_k x (k < l)", "cube",
             lambda n: [(k, s, l, t) for k, s in _signed(n) for l, t in _signed(n) if k < l],
             lambda p, a: (G(p[0], p[1], G(p[2], p[3], a[0]))
                           == G(p[2] + 1, p[3], G(p[0], p[1], a[0]))), 2),
    Equation("Gamma_k Gamma_k x = Gamma_{k+1} Gamma_k x", "cube", _signed,
             lambda p, a: G(p[0], p[1], G(p[0], p[1], a[0])) == G(p[0] + 1, p[1], G(p[0], p[1], a[0])),
             1),
    Equation("d_i(x o_k y) = d_i x o_{k-1} d_i y (i < k)", "pair",
             lambda n: [(k, i, al) for k in range(2, n + 1) for i, al in _signed(k - 1)],
             _face_below_composite, 2),
    Equation("d_k^-(x o_k y) = d_k^- x", "pair", _ks,
             lambda p, a: D(C(p[0], *a), p[0], "-") == D(a[0], p[0], "-"), 1),
    Equation("d_k^+(x o_k y) = d_k^+ y", "pair", _ks,
             lambda p, a: D(C(p[0], *a), p[0], "+") == D(a[1], p[0], "+"), 1),
    Equation("d_i(x o_k y) = d_i x o_k d_i y (i > k)", "pair",
             lambda n: [(k, i, al) for k in range(1, n) for i, al in _signed(n, lo=k + 1)],
             _face_above_composite, 2),
    Equation("eps_k d_k^- x o_k x = x", "cube", _ks,
             lambda p, a: C(p[0], E(p[0], D(a[0], p[0], "-")), a[0]) == a[0], 1),
    Equation("x o_k eps_k d_k^+ x = x", "cube", _ks,
             lambda p, a: C(p[0], a[0], E(p[0], D(a[0], p[0], "+"))) == a[0], 1),
    Equation("Gamma_k^+ x o_k Gamma_k^- x = eps_{k+1} x", "cube", _ks,
             lambda p, a: C(p[0], G(p[0], "+", a[0]), G(p[0], "-", a[0])) == E(p[0] + 1, a[0]), 1),
    Equation("Gamma_k^+ x o_{k+1} Gamma_k^- x = eps_k x", "cube", _ks,
             lambda p, a: C(p[0] + 1, G(p[0], "+", a[0]), G(p[0], "-", a[0])) == E(p[0], a[0]), 1),
    Equation("eps_j(x o_k y) = eps_j x o_{k+1} eps_j y (j <= k)", "pair",
             lambda n: [(k, j) for k in range(1, n + 1) for j in range(1, k + 1)],
             lambda p, a: E(p[1], C(p[0], *a)) == C(p[0] + 1, E(p[1], a[0]), E(p[1], a[1])), 1),
    Equation("eps_j(x o_k y) = eps_j x o_k eps_j y (j > k)", "pair",
             lambda n: [(k, j) for k in range(1, n + 1) for j in range(k + 1, n + 2)],
             lambda p, a: E(p[1], C(p[0], *a)) == C(p[0], E(p[1], a[0]), E(p[1], a[1])), 1),
    Equation("Gamma_j(x o_k y) = Gamma_j x o_{k+1} Gamma_j y (j < k)", "pair",
             lambda n: [(k, j, s) for k in range(2, n + 1) for j, s in _signed(k - 1)],
             lambda p, a: (G(p[1], p[2], C(p[0], *a))
                           == C(p[0] + 1, G(p[1], p[2], a[0]), G(p[1], p[2], a[1]))), 2),
    Equation("Gamma_k^-(x o_k y) = (Gamma_k^- x o_k eps_{k+1} y) o_{k+1} Gamma_k^- y", "pair", _ks,
             lambda p, a: (G(p[0], "-", C(p[0], *a))
                           == C(p[0] + 1, C(p[0], G(p[0], "-", a[0]), E(p[0] + 1, a[1])),
                                G(p[0], "-", a[1]))), 1),
    Equation("Gamma_k^-(x o_k y) = (Gamma_k^- x o_{k+1} eps_k y) o_k Gamma_k^- y", "pair", _ks,
             lambda p, a: (G(p[0], "-", C(p[0], *a))
                           == C(p[0], C(p[0] + 1, G(p[0], "-", a[0]), E(p[0], a[1])),
                                G(p[0], "-", a[1]))), 1),
    Equation("Gamma_k^+(x o_k y) = Gamma_k^+ x o_k (eps_k x o_{k+1} Gamma_k^+ y)", "pair", _ks,
             lambda p, a: (G(p[0], "+", C(p[0], *a))
                           == C(p[0], G(p[0], "+", a[0]),
                                C(p[0] + 1, E(p[0], a[0]), G(p[0], "+", a[1])))), 1),
    Equation("Gamma_k^+(x o_k y) = Gamma_k^+ x o_{k+1} (eps_{k+1} x o_k Gamma_k^+ y)", "pair", _ks,
             lambda p, a: (G(p[0], "+", C(p[0], *a))
                           == C(p[0] + 1, G(p[0], "+", a[0]),
                                C(p[0], E(p[0] + 1, a[0]), G(p[0], "+", a[1])))), 1),
    Equation("Gamma_j(x o_k y) = Gamma_j x o_k Gamma_j y (j > k)", "pair",
             lambda n: [(k, j, s) for k in range(1, n) for j, s in _signed(n, lo=k + 1)],
             lambda p, a: (G(p[1], p[2], C(p[0], *a))
                           == C(p[0], G(p[1], p[2], a[0]), G(p[1], p[2], a[1]))), 2),
    Equation("(x o_k y) o_l (z o_k w) = (x o_l z) o_k (y o_l w)", "quad",
             lambda n: [(k, l) for k in range(1, n + 1) for l in range(1, n + 1) if k != l],
             _interchange, 2),
    Equation("(x o_k y) o_k z = x o_k (y o_k z)", "triple", _ks,
             lambda p, a: C(p[0], C(p[0], a[0], a[1]), a[2]) == C(p[0], a[0], C(p[0], a[1], a[2])), 1),
    Equation("degeneracies are thin", "cube", lambda n: _ks(n + 1),
             lambda p, a: is_thin(E(p[0], a[0]))),
    Equation("connections are thin", "cube", _signed,
             lambda p, a: is_thin(G(p[0], p[1], a[0])), 1),
    Equation("composites of thin cubes are thin when thinness is recomputed from Psi", "pair", _ks,
             lambda p, a: thin_by_structure(C(p[0], *a)), 1, _thin_pair),
    Equation("psi_k x is defined", "cube", lambda n: _ks(n - 1),
             lambda p, a: psi(p[0], a[0]).n == a[0].n, 2),
    Equation("d_{k+1} psi_k x = eps_k d_k d_{k+1} x", "cube",
             lambda n: [(k, al) for k in range(1, n) for al in signs.SIGNS],
             lambda p, a: (D(psi(p[0], a[0]), p[0] + 1, p[1])
                           == E(p[0], D(D(a[0], p[0] + 1, p[1]), p[0], p[1]))), 2),
    Equation("d_i psi_k x = psi_k d_i x (i > k+1)", "cube",
             lambda n: [(k, i, al) for k in range(1, n) for i, al in _signed(n, lo=k + 2)],
             lambda p, a: D(psi(p[0], a[0]), p[1], p[2]) == psi(p[0], D(a[0], p[1], p[2])), 3),
    Equation("psi_k eps_{k+1} x = eps_k x", "cube", _ks,
             lambda p, a: psi(p[0], E(p[0] + 1, a[0])) == E(p[0], a[0]), 1),
    Equation("x is recovered from psi_k x", "cube", lambda n: _ks(n - 1), _recover_from_psi, 2),
    Equation("d_i Psi x = eps_1 d_{i-1} d_1^+ Psi x (i > 1)", "cube",
             lambda n: _signed(n, lo=2), _faces_of_Psi, 2),
]


def equation_names():
    return [eq.name for eq in EQUATIONS]


def _stream(eq, ctx, n, params, rng):
    if eq.shape == "cube":
        pool = [(x,) for x in ctx.cubes[n]]
        rng.shuffle(pool)
        yield from pool
        return
    k = params[0]   # pair-shaped equations put the composition index first
    pairs = list(ctx.pairs(n, k))
    rng.shuffle(pairs)
    if eq.shape == "pair":
        yield from pairs
        return
    for x, y in pairs:
        if eq.shape == "triple":
            zs = ctx.after(n, k, y)
            if zs:
                yield (x, y, rng.choice(zs))
        else:
            l = params[1]
            zs = [z for z in ctx.after(n, l, x)]
            rng.shuffle(zs)
            for z in zs[:4]:
                ws = [w for w in ctx.after(n, l, y) if composable(k, z, w)]
                if ws:
                    yield (x, y, z, rng.choice(ws))
                    break


@dataclass
class EquationResult:
    name: str
    instances: int = 0
    failures: int = 0
    by_dim: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self):
        return self.failures == 0


def check_equation(eq: Equation, ctx: Context, samples=200, seed=0) -> EquationResult:
    rng = random.Random(f"{seed}:{eq.name}:{ctx.target.name}")
    res = EquationResult(eq.name)
    start = time.perf_counter()
    streams = []
    for n in range(eq.min_dim, ctx.max_dim + 1):
        for params in eq.params(n):
            streams.append((n, params, _stream(eq, ctx, n, params, rng)))
    seen = set()
    while streams and res.instances < samples:
        alive = []
        for n, params, it in streams:
            if res.instances >= samples:
                break
            for args in it:
                if eq.where and not eq.where(args):
                    continue
                if (params, args) in seen:
                    continue
                seen.add((params, args))
                res.instances += 1
                res.by_dim[n] = res.by_dim.get(n, 0) + 1
                try:
                    ok = eq.check(params, args)
                except (nv.ComposabilityError, nv.NoThinFiller, nv.RelationError,
                        nv.InadmissibleBoxError, nv.FaceMismatchError) as exc:
                    ok = False
                    res.witnesses.append((n, params, f"{type(exc).__name__}: {exc}"))
                if not ok:
                    res.failures += 1
                    if len(res.witnesses) < 5:
                        res.witnesses.append((n, params, args))
                alive.append((n, params, it))
                break
        streams = alive
    res.seconds = time.perf_counter() - start
    return res


def identity_suite(target, max_dim=3, samples=200, seed=0, names=None):
    """{equation name: EquationResult} for one nerve."""
    ctx = target if isinstance(target, Context) else Context(target, max_dim)
    out = {}
    for eq in EQUATIONS:
        if names is not None and eq.name not in names:
            continue
        out[eq.name] = check_equation(eq, ctx, samples, seed)
    return out


@dataclass
class RoundTripResult:
    cubes: int = 0
    stratification_mismatches: int = 0
    pairs: int = 0
    composer_mismatches: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def ok(self):
        return not (self.stratification_mismatches or self.composer_mismatches)


def round_trips(target, max_dim=3, pair_limit=None, seed=0) -> RoundTripResult:
    """Thinness via Psi against the original thinness on every cube of dimension 1..max_dim;
    G_k(x, y) against Gamma_k^- x o_{k+1} eps_k y on composable pairs."""
    ctx = target if isinstance(target, Context) else Context(target, max_dim)
    rng = random.Random(seed)
    res = RoundTripResult()
    for n in range(1, ctx.max_dim + 1):
        for x in ctx.cubes[n]:
            res.cubes += 1
            if thin_by_structure(x) != is_thin(x):
                res.stratification_mismatches += 1
                res.witnesses.append(("thin", x))
        pairs = [(k, x, y) for k in range(1, n + 1) for x, y in ctx.pairs(n, k)]
        if pair_limit is not None and len(pairs) > pair_limit:
            pairs = rng.sample(pairs, pair_limit)
        for k, x, y in pairs:
            res.pairs += 1
            if composer(k, x, y) != composite(k + 1, G(k, "-", x), E(k, y)):
                res.composer_mismatches += 1
                res.witnesses.append(("composer", k, x, y))
    return res


def count_composable_pairs(ctx: Context, n):
    return sum(len(ctx.pairs(n, k)) for k in range(1, n + 1))

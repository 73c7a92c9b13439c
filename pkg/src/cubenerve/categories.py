"""Strict omega-categories usable as nerve targets.

A target provides ``d(p, sign, x)``, ``comp(p, x, y)`` (raising
``CompositionError`` when undefined) and ``is_identity(p, x)``.
"""

from __future__ import annotations

import itertools

from . import omega, signs
from .omega import CompositionError


class FiniteOmegaCategory:
    """An omega-category given by finite tables, truncated at ``level``.

    Every cell is an identity for comp_p when p >= level; d_p is the
    identity map there and comp_p is only defined on equal pairs.
    """

    def __init__(self, level, cells, d, comp, name=None):
        self.level = level
        self.cells = tuple(cells)
        self._cellset = set(self.cells)
        self._d = {(p, s): dict(table) for (p, s), table in d.items()}
        self._comp = {p: dict(table) for p, table in comp.items()}
        self.name = name
        for p in range(level):
            for s in signs.SIGNS:
                self._d.setdefault((p, s), {})
            self._comp.setdefault(p, {})

    def __contains__(self, x):
        return x in self._cellset

    def d(self, p, sign, x):
        if p >= self.level:
            return x
        return self._d[p, sign][x]

    def comp(self, p, x, y):
        if p >= self.level:
            if x != y:
                raise CompositionError(f"comp_{p} of distinct cells {x!r}, {y!r}")
            return x
        try:
            return self._comp[p][x, y]
        except KeyError:
            raise CompositionError(f"{x!r} comp_{p} {y!r} is undefined") from None

    def composable(self, p, x, y):
        if p >= self.level:
            return x == y
        return (x, y) in self._comp[p]

    def is_identity(self, p, x):
        return self.d(p, "-", x) == x and self.d(p, "+", x) == x

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FiniteOmegaCategory{label}: {len(self.cells)} cells, level {self.level}>"

    def to_json(self):
        return {
            "level": self.level,
            "cells": list(self.cells),
            "d": {f"{p},{s}": dict(t) for (p, s), t in sorted(self._d.items())},
            "comp": {str(p): [[x, y, z] for (x, y), z in t.items()]
                     for p, t in sorted(self._comp.items())},
        }

    @classmethod
    def from_json(cls, data, name=None):
        d = {}
        for key, table in data["d"].items():
            p, s = key.split(",")
            d[int(p), signs.check_sign(s.strip())] = table
        comp = {int(p): {(x, y): z for x, y, z in rows} for p, rows in data["comp"].items()}
        return cls(int(data["level"]), data["cells"], d, comp, name=name)


def validate_category(C: FiniteOmegaCategory) -> list[str]:
    """Exhaustively check the omega-category axioms on the finite tables."""
    problems = []
    cells = C.cells
    N = C.level
    for (p, s), table in C._d.items():
        for x in cells:
            if x not in table:
                problems.append(f"d_{p}^{s} undefined on {x!r}")
            elif table[x] not in C:
                problems.append(f"d_{p}^{s}({x!r}) is not a cell")
    for p, table in C._comp.items():
        for (x, y), z in table.items():
            if z not in C or x not in C or y not in C:
                problems.append(f"comp_{p} table mentions an unknown cell: {(x, y, z)!r}")
    if problems:
        return problems

    ps = range(N + 1)
    for x in cells:
        for p in range(N):
            for a, b in itertools.product(signs.SIGNS, repeat=2):
                if C.d(p, b, C.d(p, a, x)) != C.d(p, a, x):
                    problems.append(f"d_{p}^{b} d_{p}^{a} {x!r} != d_{p}^{a} {x!r}")
        for p, q in itertools.combinations(ps, 2):
            for a, b in itertools.product(signs.SIGNS, repeat=2):
                lhs = C.d(p, a, C.d(q, b, x))
                mid = C.d(q, b, C.d(p, a, x))
                if not lhs == mid == C.d(p, a, x):
                    problems.append(f"d_{p}^{a} d_{q}^{b} law fails at {x!r}")
        if not C.is_identity(N, x):
            problems.append(f"{x!r} is not an identity for comp_{N}")

    for p in range(N):
        for x in cells:
            for y in cells:
                want = C.d(p, "+", x) == C.d(p, "-", y)
                have = C.composable(p, x, y)
                if want != have:
                    problems.append(f"comp_{p}({x!r}, {y!r}) defined={have}, expected {want}")
        for x in cells:
            lo, hi = C.d(p, "-", x), C.d(p, "+", x)
            if C.composable(p, lo, x) and C.comp(p, lo, x) != x:
                problems.append(f"left unit law fails for comp_{p} at {x!r}")
            if C.composable(p, x, hi) and C.comp(p, x, hi) != x:
                problems.append(f"right unit law fails for comp_{p} at {x!r}")
        pairs = list(C._comp[p].items())
        for (x, y), z in pairs:
            if C.d(p, "-", z) != C.d(p, "-", x) or C.d(p, "+", z) != C.d(p, "+", y):
                problems.append(f"source/target of {x!r} comp_{p} {y!r} wrong")
            for q in range(N + 1):
                if q == p:
                    continue
                for a in signs.SIGNS:
                    dx, dy = C.d(q, a, x), C.d(q, a, y)
                    if not C.composable(p, dx, dy) or C.comp(p, dx, dy) != C.d(q, a, z):
                        problems.append(
                            f"d_{q}^{a}({x!r} comp_{p} {y!r}) != d_{q}^{a} x comp_{p} d_{q}^{a} y")
        by_left = {}
        for (x, y), z in pairs:
            by_left.setdefault(x, []).append((y, z))
        for (x, y), xy in pairs:
            for w, yw in by_left.get(y, ()):
                if not C.composable(p, xy, w) or not C.composable(p, x, yw):
                    problems.append(f"associativity: partial definedness at {(x, y, w)!r}")
                elif C.comp(p, xy, w) != C.comp(p, x, yw):
                    problems.append(f"comp_{p} not associative at {(x, y, w)!r}")
    for p, q in itertools.combinations(range(N), 2):
        # for p < q the left side being defined forces the right side to be
        # (x comp_q y) comp_p (z comp_q w) = (x comp_p z) comp_q (y comp_p w)
        for (x, y), xy in C._comp[q].items():
            for (z, w), zw in C._comp[q].items():
                if not C.composable(p, xy, zw):
                    continue
                if not (C.composable(p, x, z) and C.composable(p, y, w)):
                    problems.append(f"interchange: partial definedness at {(p, q, x, y, z, w)!r}")
                    continue
                xz, yw = C.comp(p, x, z), C.comp(p, y, w)
                if not C.composable(q, xz, yw) or C.comp(q, xz, yw) != C.comp(p, xy, zw):
                    problems.append(f"interchange fails at {(p, q, x, y, z, w)!r}")
    return problems


class CubeCategory:
    """nu I^m as a target, without materializing it; cells are DoubleSequences."""

    def __init__(self, m):
        self.m = m

    def d(self, p, sign, x):
        return omega.d(p, sign, x)

    def comp(self, p, x, y):
        return omega.comp(p, x, y)

    def is_identity(self, p, x):
        return omega.is_identity_for(p, x)

    def __repr__(self):
        return f"<CubeCategory nu I^{self.m}>"

    def __eq__(self, other):
        return isinstance(other, CubeCategory) and other.m == self.m

    def __hash__(self):
        return hash(("CubeCategory", self.m))


def materialize(m, names=None):
    """nu I^m as a FiniteOmegaCategory, plus the map cell name -> element.

    Cells are named by their position in ``omega.generate(m)`` unless a
    naming function is supplied.
    """
    elements = omega.generate(m)
    name_of = {}
    for i, e in enumerate(elements):
        name_of[e] = names(e) if names else f"e{i}"
    d = {}
    for p in range(m):
        for s in signs.SIGNS:
            d[p, s] = {name_of[e]: name_of[omega.d(p, s, e)] for e in elements}
    comp = {}
    for p in range(m):
        table = {}
        by_source = {}
        for e in elements:
            by_source.setdefault(omega.d(p, "-", e), []).append(e)
        for x in elements:
            for y in by_source.get(omega.d(p, "+", x), ()):
                table[name_of[x], name_of[y]] = name_of[omega.comp(p, x, y)]
        comp[p] = table
    C = FiniteOmegaCategory(m, [name_of[e] for e in elements], d, comp, name=f"nu I^{m}")
    return C, {v: k for k, v in name_of.items()}


def interval_category():
    """nu I^1 with readable cell names: the objects '-' and '+' and the arrow '*'."""
    C, _ = materialize(1, names=lambda e: e.neg(1).support()[0] if e.top == 1
                       else e.neg(0).support()[0])
    C.name = "nu I^1"
    return C


def counterexample_category():
    """A 2-category with a 2-cell A: a- => a+ whose whiskering by b is an identity.

    Objects c, d, e; 1-cells a-, a+ : c -> d, b : d -> e, ab : c -> e; the only
    non-identity 2-cell is A, and a- comp_0 b = a+ comp_0 b = A comp_0 b = ab.
    """
    cells = ["c", "d", "e", "a-", "a+", "b", "ab", "A"]
    src0 = {"c": "c", "d": "d", "e": "e", "a-": "c", "a+": "c", "b": "d", "ab": "c", "A": "c"}
    tgt0 = {"c": "c", "d": "d", "e": "e", "a-": "d", "a+": "d", "b": "e", "ab": "e", "A": "d"}
    src1 = {x: x for x in cells}
    tgt1 = {x: x for x in cells}
    src1["A"], tgt1["A"] = "a-", "a+"
    d = {(0, "-"): src0, (0, "+"): tgt0, (1, "-"): src1, (1, "+"): tgt1}

    whisker = {("a-", "b"): "ab", ("a+", "b"): "ab", ("A", "b"): "ab"}
    comp0 = {}
    for x in cells:
        for y in cells:
            if tgt0[x] != src0[y]:
                continue
            if src0[x] == tgt0[x] and src1[x] == x:
                comp0[x, y] = y          # x is an object
            elif src0[y] == tgt0[y] and src1[y] == y:
                comp0[x, y] = x          # y is an object
            else:
                comp0[x, y] = whisker[x, y]
    comp1 = {}
    for x in cells:
        for y in cells:
            if tgt1[x] != src1[y]:
                continue
            comp1[x, y] = y if tgt1[x] == x else x
    return FiniteOmegaCategory(2, cells, d, {0: comp0, 1: comp1}, name="counterexample")

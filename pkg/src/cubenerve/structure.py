"""Degeneracies, connections and compositions built from thin fillers.

Every operation here is the unique thin filler of an admissible shell or
box assembled from lower-dimensional values, so the construction recurses
on dimension.  Nothing uses the target category directly; only faces,
thinness and the two filling operations.
"""

from __future__ import annotations

from functools import lru_cache

from . import signs
from .nerve import (ComposabilityError, NerveCube, box_from_faces, face, fill_box,
                    fill_shell, shell_from_faces)

# relation checks on every filler are redundant (face agreement already
# forces them) and dominate the cost at dimension 5
CHECK_FILLERS = False


def _need(cond, msg):
    if not cond:
        raise ValueError(msg)


@lru_cache(maxsize=None)
def degeneracy(k, x: NerveCube) -> NerveCube:
    """eps_k x, an (n+1)-cube for an n-cube x, 1 <= k <= n+1."""
    n = x.n + 1
    _need(1 <= k <= n, f"degeneracy eps_{k} undefined on {x.n}-cubes")
    faces = {}
    for i in range(1, n + 1):
        for a in signs.SIGNS:
            if i < k:
                faces[i, a] = degeneracy(k - 1, face(x, i, a))
            elif i == k:
                faces[i, a] = x
            else:
                faces[i, a] = degeneracy(k, face(x, i - 1, a))
    return fill_shell(shell_from_faces(x.target, n, faces, CHECK_FILLERS), CHECK_FILLERS)


@lru_cache(maxsize=None)
def connection(k, sign, x: NerveCube) -> NerveCube:
    """Gamma_k^sign x, an (n+1)-cube for an n-cube x, 1 <= k <= n."""
    signs.check_sign(sign)
    _need(1 <= k <= x.n, f"connection Gamma_{k} undefined on {x.n}-cubes")
    n = x.n + 1
    other = signs.neg(sign)
    faces = {}
    for i in range(1, n + 1):
        for a in signs.SIGNS:
            if i < k:
                faces[i, a] = connection(k - 1, sign, face(x, i, a))
            elif i in (k, k + 1):
                faces[i, a] = x if a == sign else degeneracy(k, face(x, k, other))
            else:
                faces[i, a] = connection(k, sign, face(x, i - 1, a))
    return fill_shell(shell_from_faces(x.target, n, faces, CHECK_FILLERS), CHECK_FILLERS)


def composable(k, x: NerveCube, y: NerveCube) -> bool:
    return x.n == y.n and 1 <= k <= x.n and face(x, k, "+") == face(y, k, "-")


@lru_cache(maxsize=None)
def composer(k, x: NerveCube, y: NerveCube) -> NerveCube:
    """G_k(x, y): the thin filler of a box opposite d_k^- with d_k^+ = y, d_{k+1}^- = x."""
    if not composable(k, x, y):
        raise ComposabilityError(f"d_{k}^+ x != d_{k}^- y, cannot form the composite along {k}")
    n = x.n + 1
    faces = {}
    for i in range(1, n + 1):
        for a in signs.SIGNS:
            if i < k:
                faces[i, a] = composer(k - 1, face(x, i, a), face(y, i, a))
            elif i == k:
                if a == "+":
                    faces[i, a] = y
            elif i == k + 1:
                faces[i, a] = x if a == "-" else degeneracy(k, face(y, k, "+"))
            else:
                faces[i, a] = composer(k, face(x, i - 1, a), face(y, i - 1, a))
    box = box_from_faces(x.target, n, k, "-", faces, CHECK_FILLERS)
    return fill_box(box, CHECK_FILLERS)


def composite(k, x: NerveCube, y: NerveCube) -> NerveCube:
    """x o_k y, the missing face of the composer."""
    return face(composer(k, x, y), k, "-")


def compose(k, *cubes):
    """Left-nested x_1 o_k x_2 o_k ... o_k x_m."""
    out = cubes[0]
    for c in cubes[1:]:
        out = composite(k, out, c)
    return out


@lru_cache(maxsize=None)
def psi(k, x: NerveCube) -> NerveCube:
    _need(1 <= k <= x.n - 1, f"psi_{k} undefined on {x.n}-cubes")
    left = connection(k, "+", face(x, k + 1, "-"))
    right = connection(k, "-", face(x, k + 1, "+"))
    return compose(k + 1, left, x, right)


def Psi(x: NerveCube) -> NerveCube:
    """psi_1 psi_2 ... psi_{n-1} x (psi_{n-1} is applied first)."""
    _need(x.n > 0, "Psi is undefined on 0-cubes")
    for k in range(x.n - 1, 0, -1):
        x = psi(k, x)
    return x


def thin_by_structure(x: NerveCube) -> bool:
    """Thinness recomputed from the constructed operations: Psi x = eps_1 d_1^+ Psi x."""
    _need(x.n > 0, "0-cubes are never thin")
    y = Psi(x)
    return y == degeneracy(1, face(y, 1, "+"))


def clear_caches():
    for fn in (degeneracy, connection, composer, psi):
        fn.cache_clear()

"""Brute-force count of indecomposables over GF(2) with capped dimension vectors.

Every representation with a given dimension vector is listed, grouped into
orbits of the base-change group, and one member per orbit is tested for
indecomposability. Orbits are isomorphism classes, so no isomorphism test is
involved. Exponential; only meant for tiny caps.
"""
from __future__ import annotations

import itertools

import numpy as np

from .algebra import Algebra
from .exactlin import Matrix
from .modrep import RepresentationError, is_indecomposable, module_from_generators


def _all_matrices(r: int, c: int):
    for bits in itertools.product((0, 1), repeat=r * c):
        yield np.array(bits, dtype=np.int64).reshape(r, c)


def _general_linear(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    out = []
    for g in _all_matrices(n, n):
        inv = _inverse_mod2(g)
        if inv is not None:
            out.append((g, inv))
    return out


def _inverse_mod2(g: np.ndarray):
    n = g.shape[0]
    a = np.concatenate([g % 2, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r, c]), None)
        if piv is None:
            return None
        a[[c, piv]] = a[[piv, c]]
        for r in range(n):
            if r != c and a[r, c]:
                a[r] ^= a[c]
    return a[:, n:]


def _arrows(A: Algebra) -> list[tuple[int, int, int]]:
    idem = set(A.idempotents)
    return [(g, A.left_vertex[g], A.right_vertex[g]) for g in A.generators if g not in idem]


def _build(A: Algebra, dims, blocks):
    F = A.field
    off = np.cumsum([0] + list(dims))
    n = int(off[-1])
    gens = {}
    for v, e in enumerate(A.idempotents):
        m = np.zeros((n, n), dtype=np.int64)
        for i in range(off[v], off[v + 1]):
            m[i, i] = 1
        gens[e] = Matrix(F, F.array(m), _trusted=True)
    for (g, s, t), b in zip(_arrows(A), blocks):
        m = np.zeros((n, n), dtype=np.int64)
        m[off[s]:off[s + 1], off[t]:off[t + 1]] = b
        gens[g] = Matrix(F, F.array(m), _trusted=True)
    return module_from_generators(A, gens, n)


def count_indecomposables(A: Algebra, caps) -> dict[tuple[int, ...], int]:
    """Number of indecomposable isoclasses per nonzero dimension vector ``<= caps``."""
    if A.field.to_json() != {"kind": "prime", "p": 2}:
        raise ValueError("enumeration is only implemented over GF(2)")
    arrows = _arrows(A)
    out = {}
    for dims in itertools.product(*(range(c + 1) for c in caps)):
        if sum(dims) == 0:
            continue
        groups = [_general_linear(d) for d in dims]
        shapes = [(dims[s], dims[t]) for _, s, t in arrows]
        seen = set()
        count = 0
        for blocks in itertools.product(*(list(_all_matrices(r, c)) for r, c in shapes)):
            key = b"".join(b.astype(np.uint8).tobytes() for b in blocks)
            if key in seen:
                continue
            for gs in itertools.product(*groups):
                moved = [(gs[s][0] @ b @ gs[t][1]) % 2 for b, (_, s, t) in zip(blocks, arrows)]
                seen.add(b"".join(m.astype(np.uint8).tobytes() for m in moved))
            try:
                m = _build(A, dims, blocks)
            except RepresentationError:
                continue
            if is_indecomposable(m):
                count += 1
        if count:
            out[tuple(dims)] = count
    return out

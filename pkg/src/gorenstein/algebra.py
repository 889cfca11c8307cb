"""Finite-dimensional basic algebras given by structure constants.

Paths compose in traversal order: for arrows ``a: u -> v`` and ``b: v -> w``
the product ``a * b`` is the path "first a, then b".  With this convention a
left module is a representation of the opposite quiver and the indecomposable
projective at a vertex ``v`` is spanned by the paths ending at ``v``.
"""
from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Sequence

import numpy as np

from .exactlin import (
    FieldMismatch,
    Matrix,
    colspace,
    extend_to_basis,
    hstack,
    rank,
    rref,
    solve,
    NoSolution,
)


class NotAdmissible(ValueError):
    pass


class NotNilpotent(ValueError):
    pass


class InvalidAlgebra(ValueError):
    pass


DEFAULT_LENGTH_CAP = 30


@dataclass(frozen=True)
class QuiverPresentation:
    """Bound quiver ``kQ/I``; relation terms are ``(coefficient, arrow names)``."""

    field: object
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]
    relations: tuple[tuple[tuple[object, tuple[str, ...]], ...], ...] = ()

    def arrow_index(self, name: str) -> int:
        for i, (a, _, _) in enumerate(self.arrows):
            if a == name:
                return i
        raise KeyError(f"unknown arrow {name!r}")


class Algebra:
    """Basic algebra with a basis adapted to its vertex idempotents.

    ``mult[i, j]`` is the coordinate vector of ``b_i * b_j``.  Every basis
    element satisfies ``e_s b e_t = b`` for exactly one pair of vertices; the
    non-radical basis elements are exactly the vertex idempotents.
    """

    def __init__(self, field, labels: Sequence[str], mult: np.ndarray, unit: np.ndarray,
                 idempotents: Sequence[int], radical: Sequence[int],
                 vertex_labels: Sequence[str] | None = None, *, check: bool = True,
                 name: str = ""):
        self.field = field
        self.labels = tuple(labels)
        self.mult = mult
        self.mult.setflags(write=False)
        self.unit = unit
        self.unit.setflags(write=False)
        self.idempotents = tuple(int(i) for i in idempotents)
        self.radical = tuple(int(i) for i in radical)
        self.vertex_labels = tuple(vertex_labels) if vertex_labels is not None else tuple(
            str(i + 1) for i in range(len(self.idempotents)))
        self.name = name
        self._opposite: Algebra | None = None
        n = len(self.labels)
        if mult.shape != (n, n, n) or unit.shape != (n,):
            raise InvalidAlgebra("structure constant shapes do not match the basis")
        self.left_vertex, self.right_vertex = self._vertices_of_basis()
        if check:
            self.validate()

    # -- basic data ---------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def n_vertices(self) -> int:
        return len(self.idempotents)

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"<Algebra{nm} dim={self.dim} over {self.field}>"

    @cached_property
    def key(self) -> str:
        """Stable content hash of the structure constants."""
        payload = json.dumps({
            "field": self.field.to_json(),
            "labels": self.labels,
            "vertices": self.vertex_labels,
            "idempotents": self.idempotents,
            "radical": self.radical,
            "mult": [[self.field.encode(x) for x in self.mult[i].flat] for i in range(self.dim)],
        }, sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return self is other or self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field.element(1)
        return v

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no basis element labelled {label!r}") from None

    def vertex_index(self, v) -> int:
        if isinstance(v, int):
            return v
        return self.vertex_labels.index(str(v))

    def product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        out = np.einsum("i,j,ijk->k", x, y, self.mult) if self.field.dtype is not object else \
            _obj_bilinear(x, y, self.mult, self.field)
        return self.field.reduce(out)

    def left_mult(self, i: int) -> Matrix:
        """Matrix of ``x -> b_i * x`` on coordinates."""
        return Matrix(self.field, self.mult[i, :, :].T.copy(), _trusted=True)

    def right_mult(self, i: int) -> Matrix:
        """Matrix of ``x -> x * b_i`` on coordinates."""
        return Matrix(self.field, self.mult[:, i, :].T.copy(), _trusted=True)

    def left_mult_vec(self, x: np.ndarray) -> Matrix:
        acc = self.field.zeros((self.dim, self.dim))
        for i in np.flatnonzero(x != 0):
            acc = acc + self.mult[i, :, :].T * x[i]
        return Matrix(self.field, self.field.reduce(acc), _trusted=True)

    def right_mult_vec(self, x: np.ndarray) -> Matrix:
        acc = self.field.zeros((self.dim, self.dim))
        for i in np.flatnonzero(x != 0):
            acc = acc + self.mult[:, i, :].T * x[i]
        return Matrix(self.field, self.field.reduce(acc), _trusted=True)

    def _vertices_of_basis(self):
        left, right = [], []
        for i in range(self.dim):
            ls = [v for v, e in enumerate(self.idempotents) if self.mult[e, i, i] != 0]
            rs = [v for v, e in enumerate(self.idempotents) if self.mult[i, e, i] != 0]
            if len(ls) != 1 or len(rs) != 1:
                raise InvalidAlgebra(f"basis element {self.labels[i]!r} is not adapted to the idempotents")
            left.append(ls[0])
            right.append(rs[0])
        return tuple(left), tuple(right)

    # -- derived structure --------------------------------------------------

    @cached_property
    def radical_generators(self) -> tuple[int, ...]:
        """Radical basis elements spanning J modulo J^2 (arrows for path algebras)."""
        if not self.radical:
            return ()
        sq = self.radical_power_basis(2)
        cand = Matrix(self.field, np.stack([self.basis_vector(i) for i in self.radical], axis=1), _trusted=True)
        chosen = extend_to_basis(sq, cand)
        return tuple(self.radical[j] for j in chosen)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        return tuple(self.idempotents) + self.radical_generators

    def radical_power_basis(self, k: int) -> Matrix:
        """Column basis of J^k (k >= 1)."""
        cur = [self.basis_vector(i) for i in self.radical]
        cur_m = _cols(self.field, cur, self.dim)
        for _ in range(k - 1):
            prods = []
            for v in cur_m.a.T:
                for j in self.radical:
                    prods.append(self.product(v, self.basis_vector(j)))
            cur_m = colspace(_cols(self.field, prods, self.dim))
            if cur_m.cols == 0:
                break
        return colspace(cur_m)

    @cached_property
    def loewy_length(self) -> int:
        k = 1
        while self.radical_power_basis(k).cols:
            k += 1
        return k

    def opposite(self) -> "Algebra":
        if self._opposite is None:
            op = Algebra(self.field, self.labels, self.mult.transpose(1, 0, 2).copy(), self.unit.copy(),
                         self.idempotents, self.radical, self.vertex_labels, check=False,
                         name=f"{self.name}^op" if self.name else "")
            op._opposite = self
            self._opposite = op
        return self._opposite

    # -- validation ---------------------------------------------------------

    def validate(self) -> None:
        F = self.field
        n = self.dim
        M = self.mult
        if F.dtype is not object:
            lhs = F.reduce(np.einsum("ijk,klm->ijlm", M, M))
            rhs = F.reduce(np.einsum("jlk,ikm->ijlm", M, M))
            if np.any(lhs != rhs):
                raise InvalidAlgebra("multiplication is not associative")
        else:
            for i, j, l in itertools.product(range(n), repeat=3):
                a = self.product(M[i, j], self.basis_vector(l))
                b = self.product(self.basis_vector(i), M[j, l])
                if np.any(a != b):
                    raise InvalidAlgebra("multiplication is not associative")
        for i in range(n):
            e = self.basis_vector(i)
            if np.any(self.product(self.unit, e) != e) or np.any(self.product(e, self.unit) != e):
                raise InvalidAlgebra("unit is not a two-sided identity")
        total = F.zeros(n)
        for a in self.idempotents:
            total = F.reduce(total + self.basis_vector(a))
            for b in self.idempotents:
                expected = self.basis_vector(a) if a == b else F.zeros(n)
                if np.any(M[a, b] != expected):
                    raise InvalidAlgebra("vertex idempotents are not orthogonal idempotents")
        if np.any(total != self.unit):
            raise InvalidAlgebra("vertex idempotents do not sum to the unit")
        if sorted(set(self.idempotents) | set(self.radical)) != list(range(n)) or \
                set(self.idempotents) & set(self.radical):
            raise InvalidAlgebra("basis must split as vertex idempotents plus radical")
        rad = set(self.radical)
        for i in self.radical:
            for j in range(n):
                for prod in (M[i, j], M[j, i]):
                    if any(prod[k] != 0 for k in range(n) if k not in rad):
                        raise InvalidAlgebra("radical is not a two-sided ideal")
        # nilpotency: J^N = 0 for some N <= dim
        k = 1
        while self.radical_power_basis(k).cols:
            k += 1
            if k > n + 1:
                raise InvalidAlgebra("radical is not nilpotent")


def _obj_bilinear(x, y, mult, field):
    out = field.zeros(mult.shape[2])
    for i in np.flatnonzero(x != 0):
        for j in np.flatnonzero(y != 0):
            out = out + mult[i, j] * (x[i] * y[j])
    return out


def _cols(field, vecs, dim) -> Matrix:
    if not vecs:
        return Matrix.zeros(field, dim, 0)
    return Matrix(field, field.reduce(np.stack(list(vecs), axis=1)), _trusted=True)


# -- construction from a quiver presentation --------------------------------


def _path_label(q: QuiverPresentation, path) -> str:
    if path[0] == "e":
        return f"e_{q.vertices[path[1]]}"
    return ".".join(q.arrows[a][0] for a in path)


def _paths_by_length(q: QuiverPresentation, max_len: int):
    vidx = {v: i for i, v in enumerate(q.vertices)}
    src = [vidx[a[1]] for a in q.arrows]
    tgt = [vidx[a[2]] for a in q.arrows]
    levels = [[("e", v) for v in range(len(q.vertices))]]
    if max_len >= 1:
        levels.append([(a,) for a in range(len(q.arrows))])
    for _ in range(2, max_len + 1):
        _extend_levels(levels, q, src, tgt)
    return levels, src, tgt


def _extend_levels(levels, q, src, tgt) -> None:
    nxt = []
    for p in levels[-1]:
        for a in range(len(q.arrows)):
            if tgt[p[-1]] == src[a]:
                nxt.append(p + (a,))
    levels.append(sorted(nxt))


def _endpoints(path, src, tgt):
    if path[0] == "e":
        return path[1], path[1]
    return src[path[0]], tgt[path[-1]]


def _concat(p, q, src, tgt):
    """Traversal-order concatenation or ``None`` when not composable."""
    if _endpoints(p, src, tgt)[1] != _endpoints(q, src, tgt)[0]:
        return None
    if p[0] == "e":
        return q
    if q[0] == "e":
        return p
    return p + q


def _check_presentation(q: QuiverPresentation):
    vset = set(q.vertices)
    if len(vset) != len(q.vertices):
        raise ValueError("duplicate vertex labels")
    names = [a[0] for a in q.arrows]
    if len(set(names)) != len(names):
        raise ValueError("duplicate arrow names")
    for name, s, t in q.arrows:
        if s not in vset or t not in vset:
            raise ValueError(f"arrow {name!r} has an undeclared endpoint")
    vidx = {v: i for i, v in enumerate(q.vertices)}
    rels = []
    for rel in q.relations:
        terms = []
        ends = set()
        for coeff, path in rel:
            c = q.field.element(coeff)
            if c == 0:
                raise ValueError("relation coefficients must be nonzero")
            if len(path) < 2:
                raise NotAdmissible("relation term outside the square of the arrow ideal")
            idx = tuple(q.arrow_index(a) for a in path)
            for a, b in zip(idx, idx[1:]):
                if q.arrows[a][2] != q.arrows[b][1]:
                    raise ValueError(f"path {'.'.join(path)} is not composable")
            ends.add((vidx[q.arrows[idx[0]][1]], vidx[q.arrows[idx[-1]][2]]))
            terms.append((c, idx))
        if len(ends) > 1:
            raise ValueError("relation paths are not parallel")
        if terms:
            rels.append(terms)
    return rels


def from_presentation(q: QuiverPresentation, length_cap: int = DEFAULT_LENGTH_CAP, name: str = "") -> Algebra:
    """Basis of ``kQ/I`` by linear elimination over the truncated path space."""
    if length_cap < 1:
        raise ValueError("length_cap must be >= 1")
    F = q.field
    rels = _check_presentation(q)
    # levels are grown on demand: with loops the path count is exponential in the length
    levels, src, tgt = _paths_by_length(q, 1)
    for L in range(1, length_cap + 1):
        if L + 1 >= len(levels) and len(levels) <= length_cap:
            _extend_levels(levels, q, src, tgt)
        paths = [p for lev in levels[:L + 1] for p in lev]
        pidx = {p: i for i, p in enumerate(paths)}
        rows = []
        for terms in rels:
            minlen = min(len(t[1]) for t in terms)
            s0, t0 = _endpoints(terms[0][1], src, tgt)
            for lx in range(0, L - minlen + 1):
                for x in levels[lx]:
                    if _endpoints(x, src, tgt)[1] != s0:
                        continue
                    for ly in range(0, L - minlen - lx + 1):
                        for y in levels[ly]:
                            if _endpoints(y, src, tgt)[0] != t0:
                                continue
                            row = F.zeros(len(paths))
                            for c, path in terms:
                                w = _concat(_concat(x, path, src, tgt), y, src, tgt)
                                if w is not None and (w[0] == "e" or len(w) <= L):
                                    row[pidx[w]] = F.reduce(row[pidx[w]] + c)
                            if np.any(row != 0):
                                rows.append(row)
        # eliminate with longest paths leftmost so that pivots land on long paths
        order = list(range(len(paths)))[::-1]
        if rows:
            U = Matrix(F, np.stack(rows)[:, order], _trusted=True)
            R, rk, piv = rref(U)
        else:
            R, rk, piv = Matrix.zeros(F, 0, len(paths)), 0, []
        pivot_paths = {order[c] for c in piv}
        top = [pidx[p] for p in levels[L]] if L < len(levels) else []
        if all(i in pivot_paths for i in top):
            return _build_quotient(q, paths, pidx, order, R, piv, pivot_paths, L, src, tgt, name)
    raise NotNilpotent(f"no length L <= {length_cap} with all paths of length L in the ideal")


def _build_quotient(q, paths, pidx, order, R, piv, pivot_paths, L, src, tgt, name):
    F = q.field
    basis_paths = [p for i, p in enumerate(paths) if i not in pivot_paths]
    bidx = {p: i for i, p in enumerate(basis_paths)}
    n = len(basis_paths)
    # normal form of each pivot path: minus the rest of its rref row
    normal = {}
    for r, c in enumerate(piv):
        p = paths[order[c]]
        vec = F.zeros(n)
        for cc in range(R.cols):
            if cc != c and R.a[r, cc] != 0:
                vec[bidx[paths[order[cc]]]] = F.reduce(-R.a[r, cc])
        normal[p] = vec

    def reduce_path(w):
        vec = F.zeros(n)
        if w is None or (w[0] != "e" and len(w) >= L):
            return vec
        if w in bidx:
            vec[bidx[w]] = F.element(1)
            return vec
        return normal[w].copy()

    mult = F.zeros((n, n, n))
    for i, p in enumerate(basis_paths):
        for j, r in enumerate(basis_paths):
            mult[i, j] = reduce_path(_concat(p, r, src, tgt))
    idem = [bidx[("e", v)] for v in range(len(q.vertices))]
    unit = F.zeros(n)
    for i in idem:
        unit[i] = F.element(1)
    radical = [i for i in range(n) if i not in idem]
    labels = [_path_label(q, p) for p in basis_paths]
    alg = Algebra(F, labels, mult, unit, idem, radical, q.vertices, name=name)
    alg.presentation = q
    alg.basis_paths = tuple(basis_paths)
    alg.path_normal_form = reduce_path
    alg.length_bound = L
    return alg


def relation_vector(alg: Algebra, rel) -> np.ndarray:
    """Reduced coordinates of a relation (should be zero)."""
    q = alg.presentation
    F = alg.field
    out = F.zeros(alg.dim)
    for coeff, path in rel:
        idx = tuple(q.arrow_index(a) for a in path)
        out = F.reduce(out + alg.path_normal_form(idx) * F.element(coeff))
    return out


# -- constructions ------------------------------------------------------------


def opposite(a: Algebra) -> Algebra:
    return a.opposite()


def ground_algebra(field) -> Algebra:
    """The one-dimensional algebra ``k``."""
    mult = field.zeros((1, 1, 1))
    mult[0, 0, 0] = field.element(1)
    unit = field.zeros(1)
    unit[0] = field.element(1)
    return Algebra(field, ["1"], mult, unit, [0], [], ["*"], name="k")


def tensor(a: Algebra, b: Algebra, name: str = "") -> Algebra:
    """``a (x)_k b`` with basis pairs ordered a-major."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    F = a.field
    na, nb = a.dim, b.dim
    if F.dtype is not object:
        mult = F.reduce(np.einsum("ikp,jlq->ijklpq", a.mult, b.mult).reshape(na * nb, na * nb, na * nb))
    else:
        mult = F.zeros((na * nb, na * nb, na * nb))
        for i, j, k, l in itertools.product(range(na), range(nb), range(na), range(nb)):
            mult[i * nb + j, k * nb + l] = np.kron(a.mult[i, k], b.mult[j, l])
    unit = F.reduce(np.kron(a.unit, b.unit))
    labels = [f"({x},{y})" for x in a.labels for y in b.labels]
    idem = [i * nb + j for i in a.idempotents for j in b.idempotents]
    vlabels = [f"({x},{y})" for x in a.vertex_labels for y in b.vertex_labels]
    radical = [i * nb + j for i in range(na) for j in range(nb) if i in a.radical or j in b.radical]
    return Algebra(F, labels, mult, unit, idem, radical, vlabels,
                   name=name or (f"{a.name}(x){b.name}" if a.name and b.name else ""))


def enveloping(a: Algebra) -> Algebra:
    return tensor(a, a.opposite(), name=f"{a.name}^e" if a.name else "")


# -- algebra maps --------------------------------------------------------------


def presentation_map(alg: Algebra, target: Algebra, images: dict[str, np.ndarray]) -> Matrix:
    """Matrix (target.dim x alg.dim) of the map determined by vertex/arrow images.

    ``images`` maps vertex labels and arrow names of ``alg.presentation`` to
    coordinate vectors in ``target``; basis paths go to products of images.
    """
    q = alg.presentation
    F = alg.field
    cols = []
    for p in alg.basis_paths:
        if p[0] == "e":
            cols.append(F.array(images[q.vertices[p[1]]]))
        else:
            v = F.array(images[q.arrows[p[0]][0]])
            for a in p[1:]:
                v = target.product(v, F.array(images[q.arrows[a][0]]))
            cols.append(v)
    return _cols(F, cols, target.dim)


def is_algebra_isomorphism(a: Algebra, b: Algebra, phi: Matrix) -> bool:
    """Check that ``phi`` is a unital multiplicative bijection ``a -> b``."""
    if phi.shape != (b.dim, a.dim) or rank(phi) != a.dim:
        return False
    F = a.field
    img = [phi.a[:, i] for i in range(a.dim)]
    if np.any(F.reduce(phi.a @ a.unit) != b.unit):
        return False
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = b.product(img[i], img[j])
            rhs = F.reduce(phi.a @ a.mult[i, j])
            if np.any(lhs != rhs):
                return False
    return True


def from_structure_constants(field, labels, mult, unit, idempotents, radical, vertex_labels=None, name=""):
    """Public constructor that always validates."""
    return Algebra(field, labels, field.array(mult), field.array(unit), idempotents, radical,
                   vertex_labels, check=True, name=name)

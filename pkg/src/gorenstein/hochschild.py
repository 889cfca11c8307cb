"""Hochschild cohomology in low degrees and its action on modules.

Cochains live on the bar complex relative to the semisimple subalgebra ``E``
spanned by the vertex idempotents, normalised by the radical ``J``:
``C^n = Hom_{E-E}(J^{(x)_E n}, A)``. A chain ``(j_1, .., j_n)`` of radical
basis elements is nonzero in ``J^{(x)_E n}`` iff consecutive elements match at
their vertices, and a cochain sends it into ``e_{l(j_1)} A e_{r(j_n)}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra
from .exactlin import Coordinates, Matrix, colspace, extend_to_basis, hstack, kernel_basis, rank, solve, vstack
from .homology import min_proj_resolution
from .modrep import FreeSum, Module, ModuleMap, free_map, projective_free_core, zero_module
from .stable import DEFAULT_BOUND, _cover_onto, _require_gp, cosyzygy_gp, stable_cone, stable_dim

DEFAULT_DEGREE_CAP = 4


class DegreeCapExceeded(ValueError):
    pass


class BarComplex:
    """Normalised ``E``-relative bar complex of ``A`` with coefficients in ``A``."""

    def __init__(self, a: Algebra, cap: int = DEFAULT_DEGREE_CAP):
        self.algebra = a
        self.cap = cap
        self.rad = [i for i in a.radical]
        self._chains: dict[int, list] = {}
        self._diff: dict[int, Matrix] = {}
        # products of radical basis elements expanded in the radical basis
        self._rprod = {}
        ridx = {r: k for k, r in enumerate(self.rad)}
        for x in self.rad:
            for y in self.rad:
                v = a.mult[x, y]
                terms = [(r, v[r]) for r in np.flatnonzero(v != 0)]
                for r, _ in terms:
                    if r not in ridx:
                        raise ValueError("radical is not closed under multiplication")
                self._rprod[x, y] = terms

    # chains of length 0 are keyed by ("e", v)
    def left(self, c) -> int:
        return c[1] if c and c[0] == "e" else self.algebra.left_vertex[c[0]]

    def right(self, c) -> int:
        return c[1] if c and c[0] == "e" else self.algebra.right_vertex[c[-1]]

    def chains(self, n: int) -> list:
        if n in self._chains:
            return self._chains[n]
        A = self.algebra
        if n == 0:
            out = [("e", v) for v in range(A.n_vertices)]
        elif n == 1:
            out = [(r,) for r in self.rad]
        else:
            out = [c + (r,) for c in self.chains(n - 1) for r in self.rad
                   if A.right_vertex[c[-1]] == A.left_vertex[r]]
        self._chains[n] = out
        return out

    def sub(self, c, start: int, stop: int):
        """Subchain ``c[start:stop]`` with empty chains keyed by the appropriate vertex."""
        part = tuple(c[start:stop])
        if part:
            return part
        A = self.algebra
        if start == 0:
            return ("e", A.left_vertex[c[0]])
        return ("e", A.right_vertex[c[start - 1]])

    def cochain_basis(self, n: int) -> list[tuple]:
        """Pairs ``(chain index, algebra basis index)`` allowed by E-bilinearity."""
        key = ("basis", n)
        if key in self._chains:
            return self._chains[key]
        A = self.algebra
        out = []
        for ci, c in enumerate(self.chains(n)):
            l, r = self.left(c), self.right(c)
            for b in range(A.dim):
                if A.left_vertex[b] == l and A.right_vertex[b] == r:
                    out.append((ci, b))
        self._chains[key] = out
        return out

    def chain_index(self, n: int):
        key = ("index", n)
        if key not in self._chains:
            self._chains[key] = {c: i for i, c in enumerate(self.chains(n))}
        return self._chains[key]

    def cochain_index(self, n: int):
        key = ("cindex", n)
        if key not in self._chains:
            self._chains[key] = {p: i for i, p in enumerate(self.cochain_basis(n))}
        return self._chains[key]

    def dim(self, n: int) -> int:
        return len(self.cochain_basis(n))

    def _check_cap(self, n: int):
        if n > self.cap:
            raise DegreeCapExceeded(f"degree {n} exceeds the cap {self.cap}")

    def differential(self, n: int) -> Matrix:
        """Matrix of ``delta : C^n -> C^{n+1}``."""
        if n in self._diff:
            return self._diff[n]
        self._check_cap(n)
        A = self.algebra
        F = A.field
        src_basis = self.cochain_basis(n)
        src_by_chain: dict[int, list] = {}
        for k, (ci, b) in enumerate(src_basis):
            src_by_chain.setdefault(ci, []).append((k, b))
        cidx = self.chain_index(n)
        tgt_index = self.cochain_index(n + 1)
        out = F.zeros((self.dim(n + 1), len(src_basis)))
        one = F.element(1)

        def add(chain_t, vec, col, coeff):
            ct = self.chain_index(n + 1)[chain_t]
            for r in np.flatnonzero(vec != 0):
                row = tgt_index[(ct, int(r))]
                out[row, col] = out[row, col] + coeff * vec[r]

        for c in self.chains(n + 1):
            # a_1 phi(a_2 .. a_{n+1})
            tail = cidx[self.sub(c, 1, n + 1)]
            for k, b in src_by_chain.get(tail, []):
                add(c, A.mult[c[0], b], k, one)
            # sum (-1)^i phi(.., a_i a_{i+1}, ..)
            for i in range(1, n + 1):
                sign = one if i % 2 == 0 else -one
                for r, mu in self._rprod[c[i - 1], c[i]]:
                    merged = tuple(c[:i - 1]) + (int(r),) + tuple(c[i + 1:])
                    mi = cidx.get(merged)
                    if mi is None:
                        continue
                    for k, b in src_by_chain.get(mi, []):
                        vec = A.basis_vector(b)
                        add(c, vec, k, sign * mu)
            # (-1)^{n+1} phi(a_1 .. a_n) a_{n+1}
            head = cidx[self.sub(c, 0, n)]
            sign = one if (n + 1) % 2 == 0 else -one
            for k, b in src_by_chain.get(head, []):
                add(c, A.mult[b, c[-1]], k, sign)
        M = Matrix(F, F.reduce(out), _trusted=True)
        self._diff[n] = M
        return M

    def value(self, vec: Matrix, n: int, chain) -> np.ndarray:
        """``phi(chain)`` as an algebra element for the cochain ``vec``."""
        A = self.algebra
        out = A.field.zeros(A.dim)
        ci = self.chain_index(n)[chain]
        idx = self.cochain_index(n)
        for b in range(A.dim):
            k = idx.get((ci, b))
            if k is not None:
                out[b] = vec.a[k, 0]
        return out

    def cup(self, u: Matrix, p: int, v: Matrix, q: int) -> Matrix:
        """Cup product cochain ``(u v)(a_1..a_{p+q}) = u(a_1..a_p) v(a_{p+1}..)``."""
        A = self.algebra
        F = A.field
        n = p + q
        self._check_cap(n)
        out = F.zeros((self.dim(n), 1))
        idx = self.cochain_index(n)
        for ci, c in enumerate(self.chains(n)):
            if n == 0:
                left_part = right_part = c
            else:
                left_part = self.sub(c, 0, p)
                right_part = self.sub(c, p, n)
            x = self.value(u, p, left_part)
            y = self.value(v, q, right_part)
            prod = A.product(x, y)
            for b in np.flatnonzero(prod != 0):
                out[idx[(ci, int(b))], 0] = prod[b]
        return Matrix(F, out, _trusted=True)

    def coboundaries(self, n: int) -> Matrix:
        if n == 0:
            return Matrix.zeros(self.algebra.field, self.dim(0), 0)
        return colspace(self.differential(n - 1))

    def cocycles(self, n: int) -> Matrix:
        return kernel_basis(self.differential(n))

    def is_coboundary(self, vec: Matrix, n: int) -> bool:
        B = self.coboundaries(n)
        return rank(hstack(self.algebra.field, [B, vec])) == B.cols


_complexes: dict = {}


def bar_complex(a: Algebra, cap: int = DEFAULT_DEGREE_CAP) -> BarComplex:
    key = (a.key, cap)
    if key not in _complexes:
        _complexes[key] = BarComplex(a, cap)
    return _complexes[key]


@dataclass(eq=False)
class CohomologyClass:
    algebra: Algebra
    degree: int
    cocycle: Matrix
    normalized: bool = True
    complex: BarComplex | None = field(default=None, repr=False)

    def value(self, chain) -> np.ndarray:
        return self.complex.value(self.cocycle, self.degree, chain)

    def __mul__(self, other: "CohomologyClass") -> "CohomologyClass":
        bc = self.complex
        vec = bc.cup(self.cocycle, self.degree, other.cocycle, other.degree)
        return CohomologyClass(self.algebra, self.degree + other.degree, vec, True, bc)

    def to_json(self) -> dict:
        F = self.algebra.field
        chains = self.complex.chains(self.degree)
        return {
            "degree": self.degree,
            "normalized": self.normalized,
            "terms": [[list(chains[ci]) if chains[ci][0] != "e" else ["e", chains[ci][1]],
                       self.algebra.labels[b], F.encode(self.cocycle.a[k, 0])]
                      for k, (ci, b) in enumerate(self.complex.cochain_basis(self.degree))
                      if self.cocycle.a[k, 0] != 0],
        }


def hh(a: Algebra, n: int, cap: int = DEFAULT_DEGREE_CAP) -> tuple[int, list[CohomologyClass]]:
    """``dim HH^n(A)`` and cocycles representing a basis."""
    if n > cap:
        raise DegreeCapExceeded(f"degree {n} exceeds the cap {cap}")
    bc = bar_complex(a, max(cap, n + 1))
    Z = bc.cocycles(n)
    B = bc.coboundaries(n)
    picks = extend_to_basis(B, Z)
    classes = [CohomologyClass(a, n, Z.take_cols([j]), True, bc) for j in picks]
    return len(classes), classes


def unit_class(a: Algebra) -> CohomologyClass:
    bc = bar_complex(a)
    F = a.field
    vec = F.zeros((bc.dim(0), 1))
    idx = bc.cochain_index(0)
    for v, e in enumerate(a.idempotents):
        vec[idx[(v, e)], 0] = F.element(1)
    return CohomologyClass(a, 0, Matrix(F, vec, _trusted=True), True, bc)


def center_dim(a: Algebra) -> int:
    """Dimension of the centre by solving ``x b = b x`` for all basis ``b``."""
    F = a.field
    blocks = [a.right_mult(b) - a.left_mult(b) for b in range(a.dim)]
    return kernel_basis(vstack(F, blocks, cols=a.dim)).cols


def same_class(u: CohomologyClass, v: CohomologyClass) -> bool:
    if u.degree != v.degree:
        return False
    return u.complex.is_coboundary(u.cocycle - v.cocycle, u.degree)


# -- action on modules ------------------------------------------------------------------


class ModuleBar:
    """``B_n = A (x)_E J^{(x)_E n} (x)_E x``: one copy of ``A e_{l(c)}`` per chain and vector of ``e_{r(c)} x``."""

    def __init__(self, bc: BarComplex, x: Module):
        self.bc = bc
        self.x = x
        self._terms: dict[int, tuple] = {}
        self._diff: dict[int, ModuleMap] = {}

    def term(self, n: int):
        if n not in self._terms:
            bc = self.bc
            verts, labels = [], []
            for c in bc.chains(n):
                r = bc.right(c)
                for t in range(self.x.vertex_bases[r].cols):
                    verts.append(bc.left(c))
                    labels.append((c, t))
            P = FreeSum(bc.algebra, verts)
            self._terms[n] = (P, {lab: k for k, lab in enumerate(labels)}, labels)
        return self._terms[n]

    def augmentation(self) -> ModuleMap:
        P, _, labels = self.term(0)
        images = [self.x.vertex_bases[c[1]].take_cols([t]) for c, t in labels]
        return free_map(P, self.x, images)

    def differential(self, n: int) -> ModuleMap:
        """``d : B_n -> B_{n-1}`` for ``n >= 1``."""
        if n in self._diff:
            return self._diff[n]
        bc = self.bc
        A = bc.algebra
        F = A.field
        P, _, labels = self.term(n)
        Q, qpos, _ = self.term(n - 1)
        one = F.element(1)
        images = []
        for c, t in labels:
            col = Matrix.zeros(F, Q.dim, 1)
            # j_1 (x) (j_2 .. j_n) (x) m
            k = qpos[(bc.sub(c, 1, n), t)]
            col = col + Q.embed(k, A.basis_vector(c[0]))
            for i in range(1, n):
                sign = one if i % 2 == 0 else -one
                for r, mu in bc._rprod[c[i - 1], c[i]]:
                    merged = tuple(c[:i - 1]) + (int(r),) + tuple(c[i + 1:])
                    if merged not in bc.chain_index(n - 1):
                        continue
                    k = qpos[(merged, t)]
                    col = col + Q.embed(k, A.basis_vector(A.idempotents[bc.left(merged)])).scale(sign * mu)
            # (-1)^n (j_1 .. j_{n-1}) (x) j_n m
            sign = one if n % 2 == 0 else -one
            head = bc.sub(c, 0, n - 1)
            r = bc.right(c)
            m_t = self.x.vertex_bases[r].take_cols([t])
            jm = self.x.action[c[-1]] @ m_t
            lv = bc.right(head)
            coords = Coordinates(self.x.vertex_bases[lv])(jm) if self.x.vertex_bases[lv].cols else None
            if coords is not None:
                for s in np.flatnonzero(coords.a[:, 0] != 0):
                    k = qpos[(head, int(s))]
                    col = col + Q.embed(k, A.basis_vector(A.idempotents[bc.left(head)])).scale(
                        sign * coords.a[s, 0])
            images.append(col)
        d = free_map(P, Q, images)
        self._diff[n] = d
        return d

    def cocycle_map(self, b: CohomologyClass) -> ModuleMap:
        """``B_n -> x``, ``a (x) c (x) m -> a b(c) m``."""
        P, _, labels = self.term(b.degree)
        images = []
        for c, t in labels:
            m_t = self.x.vertex_bases[self.bc.right(c)].take_cols([t])
            images.append(self.x.act_vec(b.value(c)) @ m_t)
        return free_map(P, self.x, images)


def _lift_generators(P: FreeSum, targets: list[Matrix], d: ModuleMap) -> ModuleMap:
    """Map ``P -> d.source`` whose composite with ``d`` sends generators to ``targets``."""
    B = d.source
    images = []
    for k, v in enumerate(P.vertices):
        Ev = B.action[B.algebra.idempotents[v]]
        sol = solve(d.matrix @ Ev, targets[k])
        images.append(Ev @ sol)
    return free_map(P, B, images)


def act(b: CohomologyClass, x: Module, cap: int = DEFAULT_DEGREE_CAP) -> ModuleMap:
    """Map ``Omega^n x -> x`` representing the image of ``b`` in ``Ext^n(x, x)``."""
    n = b.degree
    if n > cap:
        raise DegreeCapExceeded(f"degree {n} exceeds the cap {cap}")
    if n == 0:
        central = b.complex.value(b.cocycle, 0, ("e", 0))
        for v in range(1, x.algebra.n_vertices):
            central = central + b.complex.value(b.cocycle, 0, ("e", v))
        return ModuleMap(x, x, x.act_vec(x.field.reduce(central)))
    mb = ModuleBar(b.complex, x)
    res = min_proj_resolution(x, n + 1)
    if len(res.terms) <= n:
        # Omega^n x = 0
        z = zero_module(x.algebra)
        return ModuleMap(z, x, Matrix.zeros(x.field, x.dim, 0))
    # comparison P_k -> B_k lifting the identity of x
    P0 = res.terms[0]
    aug = mb.augmentation()
    h = _lift_generators(P0, [res.augmentation.matrix.take_cols([g]) for g in P0.gen_positions], aug)
    for k in range(1, n + 1):
        Pk = res.terms[k]
        dP = res.differentials[k - 1]
        targets = [(h.matrix @ dP.matrix).take_cols([g]) for g in Pk.gen_positions]
        h = _lift_generators(Pk, targets, mb.differential(k))
    f = ModuleMap(res.terms[n], x, mb.cocycle_map(b).matrix @ h.matrix)
    if n + 1 < len(res.terms) and not (f.matrix @ res.differentials[n].matrix).is_zero():
        raise AssertionError("transferred class is not a cocycle")
    onto = _cover_onto(x, n)
    sec = solve(onto.matrix, Matrix.identity(x.field, onto.target.dim))
    return ModuleMap(onto.target, x, f.matrix @ sec)


# -- Koszul objects ----------------------------------------------------------------------------


def koszul_object(x: Module, b: CohomologyClass, bound: int = DEFAULT_BOUND) -> Module:
    """``x//b``: the cone of ``Omega^s x -> x`` shifted by ``Omega^{-s}`` so that it sits in
    the triangle ``x -> Omega^{-s} x -> x//b``."""
    s = b.degree
    if s < 1:
        raise ValueError("Koszul objects need a class of positive degree")
    _require_gp(x, bound)
    core = projective_free_core(x)
    if core.dim == 0:
        return core
    f = act(b, core)
    cone = stable_cone(f, bound)
    return cosyzygy_gp(cone.core, s, bound)


def kos_swap_check(x: Module, y: Module, b: CohomologyClass, bound: int = DEFAULT_BOUND) -> dict:
    s = b.degree
    lhs = stable_dim(x, koszul_object(y, b, bound))
    rhs = stable_dim(koszul_object(x, b, bound), cosyzygy_gp(y, s + 1, bound))
    return {"lhs": lhs, "rhs": rhs, "degree": s, "equal": lhs == rhs, "pass": lhs == rhs}


# -- windows -----------------------------------------------------------------------------------


@dataclass(eq=False)
class SubalgebraWindow:
    algebra: Algebra
    degrees: range
    basis_per_degree: dict
    includes_identity: bool
    connected: bool

    def closed_under_cup(self) -> bool:
        top = self.degrees.stop - 1
        for p in self.degrees:
            for q in self.degrees:
                if p + q > top:
                    continue
                for u in self.basis_per_degree[p]:
                    for v in self.basis_per_degree[q]:
                        w = u * v
                        bc = w.complex
                        if not (bc.differential(p + q) @ w.cocycle).is_zero():
                            return False
                        span = hstack(self.algebra.field,
                                      [bc.coboundaries(p + q)] + [c.cocycle for c in self.basis_per_degree[p + q]],
                                      rows=bc.dim(p + q))
                        if rank(hstack(self.algebra.field, [span, w.cocycle])) != rank(span):
                            return False
        return True


def subalgebra_window(a: Algebra, top: int, cap: int = DEFAULT_DEGREE_CAP) -> SubalgebraWindow:
    if top > cap:
        raise DegreeCapExceeded(f"degree {top} exceeds the cap {cap}")
    bases = {n: hh(a, n, cap)[1] for n in range(top + 1)}
    unit = unit_class(a)
    bc = unit.complex
    span = hstack(a.field, [c.cocycle for c in bases[0]], rows=bc.dim(0))
    inc = rank(hstack(a.field, [span, unit.cocycle])) == rank(span)
    return SubalgebraWindow(a, range(top + 1), bases, inc, len(bases[0]) == 1)

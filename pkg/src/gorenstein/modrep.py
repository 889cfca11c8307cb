"""Finite-dimensional left modules and their morphisms."""
from __future__ import annotations

import hashlib
import itertools
from fractions import Fraction
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np
import sympy

from .algebra import Algebra, tensor
from .exactlin import (
    Coordinates,
    Matrix,
    NoSolution,
    block_diag,
    colspace,
    extend_to_basis,
    hstack,
    inverse,
    kernel_basis,
    kronecker,
    rank,
    rref,
    solve,
    vstack,
)


class AlgebraMismatch(ValueError):
    pass


class RepresentationError(ValueError):
    """Action matrices do not define a module."""


class BudgetExceeded(RuntimeError):
    pass


class UnsupportedExtension(ValueError):
    pass


#: exhaustive idempotent search is allowed up to this many endomorphisms
IDEMPOTENT_SEARCH_BUDGET = 2**20


class Module:
    """Left module given by one action matrix per algebra basis element."""

    def __init__(self, algebra: Algebra, action: Sequence[Matrix], *, check: bool = True, name: str = ""):
        self.algebra = algebra
        self.action = tuple(action)
        self.name = name
        if len(self.action) != algebra.dim:
            raise RepresentationError("need one action matrix per basis element")
        d = self.action[0].rows if self.action else 0
        for m in self.action:
            if m.shape != (d, d) or m.field != algebra.field:
                raise RepresentationError("action matrices must be square, of equal size, over the algebra's field")
        if check:
            self.check_representation()

    @property
    def dim(self) -> int:
        return self.action[0].rows

    @property
    def field(self):
        return self.algebra.field

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"<Module{nm} dim={self.dim} dimvec={self.dim_vector}>"

    def act(self, i: int) -> Matrix:
        return self.action[i]

    def act_vec(self, x: np.ndarray) -> Matrix:
        F = self.field
        acc = F.zeros((self.dim, self.dim))
        for i in np.flatnonzero(x != 0):
            acc = acc + self.action[i].a * x[i]
        return Matrix(F, F.reduce(acc), _trusted=True)

    def check_representation(self) -> None:
        """Representation property on generator x basis pairs (enough by induction)."""
        A = self.algebra
        I = Matrix.identity(self.field, self.dim)
        if self.act_vec(A.unit) != I:
            raise RepresentationError("unit does not act as the identity")
        for g in A.generators:
            Ag = self.action[g]
            for j in range(A.dim):
                if Ag @ self.action[j] != self.act_vec(A.mult[g, j]):
                    raise RepresentationError(
                        f"action of {A.labels[g]}*{A.labels[j]} is not the product of actions")

    def equals(self, other: "Module") -> bool:
        return self.algebra == other.algebra and all(x == y for x, y in zip(self.action, other.action)) \
            and self.dim == other.dim

    @cached_property
    def key(self) -> str:
        h = hashlib.sha256(self.algebra.key.encode())
        h.update(str(self.dim).encode())
        for m in self.action:
            h.update(np.ascontiguousarray(np.array([self.field.encode(x) for x in m.a.flat], dtype=object)).tobytes()
                     if self.field.dtype is object else np.ascontiguousarray(m.a).tobytes())
        return h.hexdigest()

    @cached_property
    def vertex_bases(self) -> tuple[Matrix, ...]:
        """Column bases of ``e_v M`` for each vertex."""
        return tuple(colspace(self.action[e]) for e in self.algebra.idempotents)

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(b.cols for b in self.vertex_bases)

    @cached_property
    def adapted(self):
        """(T, T^-1, offsets) for the basis concatenating the ``e_v M`` bases."""
        T = hstack(self.field, list(self.vertex_bases), rows=self.dim)
        Tinv = inverse(T) if self.dim else T
        offsets = np.cumsum([0] + [b.cols for b in self.vertex_bases])
        return T, Tinv, tuple(int(o) for o in offsets)


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: Module
    target: Module
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ValueError(f"map matrix has shape {self.matrix.shape}, "
                             f"expected {(self.target.dim, self.source.dim)}")

    def check(self) -> None:
        if self.source.algebra != self.target.algebra:
            raise AlgebraMismatch("map between modules over different algebras")
        for g in self.source.algebra.generators:
            if self.matrix @ self.source.action[g] != self.target.action[g] @ self.matrix:
                raise RepresentationError("matrix does not commute with the action")

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix - other.matrix)

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix.scale(c))

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    @property
    def rank(self) -> int:
        return rank(self.matrix)

    def is_injective(self) -> bool:
        return self.rank == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank == self.target.dim


def identity_map(m: Module) -> ModuleMap:
    return ModuleMap(m, m, Matrix.identity(m.field, m.dim))


def zero_map(m: Module, n: Module) -> ModuleMap:
    return ModuleMap(m, n, Matrix.zeros(m.field, n.dim, m.dim))


def zero_module(a: Algebra) -> Module:
    return Module(a, [Matrix.zeros(a.field, 0, 0)] * a.dim, check=False, name="0")


# -- standard modules ---------------------------------------------------------


def regular(a: Algebra) -> Module:
    return Module(a, [a.left_mult(i) for i in range(a.dim)], check=False, name="A")


class FreeSum(Module):
    """Direct sum of indecomposable projectives ``A e_v`` in a fixed order.

    Summand ``j`` has basis the algebra basis elements ending at vertex
    ``vertices[j]``; its generator is the idempotent ``e_v``.
    """

    def __init__(self, algebra: Algebra, vertices: Sequence[int], name: str = ""):
        self.vertices = tuple(int(v) for v in vertices)
        self.summand_basis = []
        self.offsets = [0]
        self.gen_positions = []
        for v in self.vertices:
            idx = [i for i in range(algebra.dim) if algebra.right_vertex[i] == v]
            self.summand_basis.append(idx)
            self.gen_positions.append(self.offsets[-1] + idx.index(algebra.idempotents[v]))
            self.offsets.append(self.offsets[-1] + len(idx))
        blocks = []
        for i in range(algebra.dim):
            Li = algebra.left_mult(i)
            blocks.append(block_diag(algebra.field, [Li.take_rows(idx).take_cols(idx) for idx in self.summand_basis])
                          if self.vertices else Matrix.zeros(algebra.field, 0, 0))
        super().__init__(algebra, blocks, check=False, name=name)

    def component(self, x: Matrix, j: int) -> np.ndarray:
        """Element of A (coordinates) given by summand ``j`` of the column ``x``."""
        F = self.field
        out = F.zeros(self.algebra.dim)
        seg = x.a[self.offsets[j]:self.offsets[j + 1], 0]
        out[self.summand_basis[j]] = seg
        return out

    def embed(self, j: int, elem: np.ndarray) -> Matrix:
        """Column for the algebra element ``elem`` (in ``A e_v``) placed in summand ``j``."""
        F = self.field
        col = F.zeros((self.dim, 1))
        col[self.offsets[j]:self.offsets[j + 1], 0] = elem[self.summand_basis[j]]
        return Matrix(F, col, _trusted=True)


def projective(a: Algebra, v) -> FreeSum:
    v = a.vertex_index(v)
    return FreeSum(a, [v], name=f"P({a.vertex_labels[v]})")


def free_map(P: FreeSum, m: Module, images: Sequence[Matrix]) -> ModuleMap:
    """The map ``P -> m`` sending the j-th generator to ``images[j]`` (in ``e_v m``)."""
    F = m.field
    cols = []
    for j, idx in enumerate(P.summand_basis):
        x = images[j]
        for i in idx:
            cols.append(m.action[i] @ x)
    mat = hstack(F, cols, rows=m.dim)
    return ModuleMap(P, m, mat)


def free_hom_coordinates(P: FreeSum, f: ModuleMap) -> list[Matrix]:
    """Generator images of a map out of a free sum."""
    return [f.matrix.take_cols([p]) for p in P.gen_positions]


def simple(a: Algebra, v) -> Module:
    v = a.vertex_index(v)
    F = a.field
    acts = []
    for i in range(a.dim):
        acts.append(Matrix.of(F, [[1 if i == a.idempotents[v] else 0]]))
    return Module(a, acts, check=False, name=f"S({a.vertex_labels[v]})")


def dual_module(m: Module) -> Module:
    """``D m = Hom_k(m, k)`` as a module over the opposite algebra."""
    nm = f"D{m.name}" if m.name else ""
    return Module(m.algebra.opposite(), [x.T for x in m.action], check=False, name=nm)


def dual_map(f: ModuleMap) -> ModuleMap:
    return ModuleMap(dual_module(f.target), dual_module(f.source), f.matrix.T)


def dual_map_between(f: ModuleMap, dsource: Module, dtarget: Module) -> ModuleMap:
    """``D f : D target -> D source`` using already materialised duals."""
    return ModuleMap(dtarget, dsource, f.matrix.T)


def injective(a: Algebra, v) -> Module:
    v = a.vertex_index(v)
    m = dual_module(projective(a.opposite(), v))
    m.name = f"I({a.vertex_labels[v]})"
    return m


def direct_sum(ms: Sequence[Module], algebra: Algebra | None = None):
    """Return ``(sum, injections, projections)``."""
    ms = list(ms)
    if not ms:
        if algebra is None:
            raise ValueError("direct_sum of nothing needs an algebra")
        z = zero_module(algebra)
        return z, [], []
    a = ms[0].algebra
    for m in ms:
        if m.algebra != a:
            raise AlgebraMismatch("direct_sum over different algebras")
    F = a.field
    acts = [block_diag(F, [m.action[i] for m in ms]) for i in range(a.dim)]
    s = Module(a, acts, check=False)
    inj, proj = [], []
    off = 0
    for m in ms:
        e = F.zeros((s.dim, m.dim))
        for k in range(m.dim):
            e[off + k, k] = F.element(1)
        E = Matrix(F, e, _trusted=True)
        inj.append(ModuleMap(m, s, E))
        proj.append(ModuleMap(s, m, E.T))
        off += m.dim
    return s, inj, proj


def tensor_module(m: Module, n: Module, ab: Algebra | None = None) -> Module:
    """External tensor product over ``tensor(m.algebra, n.algebra)``."""
    ab = ab or tensor(m.algebra, n.algebra)
    acts = [kronecker(x, y) for x in m.action for y in n.action]
    return Module(ab, acts, check=False)


def scalar_extension(m: Module, target_field) -> Module:
    if target_field == m.field:
        return m
    raise UnsupportedExtension(f"extension {m.field} -> {target_field} is not supported")


# -- sub and quotient modules -----------------------------------------------


def submodule(m: Module, basis: Matrix, name: str = "") -> tuple[Module, ModuleMap]:
    """Submodule spanned by the (independent) columns of ``basis`` and its inclusion."""
    F = m.field
    k = basis.cols
    if k == 0:
        z = zero_module(m.algebra)
        return z, ModuleMap(z, m, Matrix.zeros(F, m.dim, 0))
    coords = Coordinates(basis)
    try:
        acts = [coords(x @ basis) for x in m.action]
    except NoSolution:
        raise RepresentationError("subspace is not invariant under the action") from None
    s = Module(m.algebra, acts, check=False, name=name)
    return s, ModuleMap(s, m, basis)


def quotient(m: Module, sub: Matrix, name: str = "") -> tuple[Module, ModuleMap]:
    """``m / span(sub)`` and the projection; ``sub`` must be invariant."""
    F = m.field
    n = m.dim
    if sub.cols == 0:
        q = Module(m.algebra, m.action, check=False, name=name)
        return q, ModuleMap(m, q, Matrix.identity(F, n))
    R, k, piv = rref(sub.T)
    R = R[:k, :]
    nonp = [c for c in range(n) if c not in set(piv)]
    E = Matrix.identity(F, n).take_rows(piv)
    P = (Matrix.identity(F, n) - R.T @ E).take_rows(nonp)
    L = Matrix.identity(F, n).take_cols(nonp)
    for x in m.action:
        # invariance: P x sub must vanish
        if not (P @ x @ sub).is_zero():
            raise RepresentationError("quotient by a non-invariant subspace")
    acts = [P @ x @ L for x in m.action]
    q = Module(m.algebra, acts, check=False, name=name)
    return q, ModuleMap(m, q, P)


def kernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    return submodule(f.source, kernel_basis(f.matrix))


def image(f: ModuleMap) -> tuple[Module, ModuleMap]:
    return submodule(f.target, colspace(f.matrix))


def cokernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    return quotient(f.target, colspace(f.matrix))


def radical_subspace(m: Module) -> Matrix:
    F = m.field
    gens = m.algebra.radical_generators
    if not gens or m.dim == 0:
        return Matrix.zeros(F, m.dim, 0)
    return colspace(hstack(F, [m.action[g] for g in gens]))


def socle_subspace(m: Module) -> Matrix:
    F = m.field
    gens = m.algebra.radical_generators
    if not gens:
        return Matrix.identity(F, m.dim)
    return kernel_basis(vstack(F, [m.action[g] for g in gens], cols=m.dim))


def radical(m: Module) -> tuple[Module, ModuleMap]:
    return submodule(m, radical_subspace(m))


def socle(m: Module) -> tuple[Module, ModuleMap]:
    return submodule(m, socle_subspace(m))


def top(m: Module) -> tuple[Module, ModuleMap]:
    return quotient(m, radical_subspace(m))


def radical_series_dims(m: Module) -> tuple[int, ...]:
    dims = []
    cur = m
    while cur.dim:
        dims.append(cur.dim)
        cur, _ = radical(cur)
    return tuple(dims)


def socle_series_dims(m: Module) -> tuple[int, ...]:
    dims = []
    cur = m
    while cur.dim:
        s = socle_subspace(cur)
        dims.append(s.cols)
        cur, _ = quotient(cur, s)
    return tuple(dims)


def top_multiplicities(m: Module) -> tuple[int, ...]:
    t, _ = top(m)
    return t.dim_vector


# -- covers and envelopes -----------------------------------------------------


def projective_cover(m: Module) -> tuple[FreeSum, ModuleMap]:
    """Minimal epimorphism from a sum of indecomposable projectives."""
    F = m.field
    A = m.algebra
    chosen_span = radical_subspace(m)
    vertices, images = [], []
    for v, basis in enumerate(m.vertex_bases):
        picks = extend_to_basis(chosen_span, basis)
        for j in picks:
            x = basis.take_cols([j])
            vertices.append(v)
            images.append(x)
            chosen_span = hstack(F, [chosen_span, x])
    P = FreeSum(A, vertices)
    return P, free_map(P, m, images)


def injective_envelope(m: Module) -> tuple[Module, ModuleMap]:
    """Minimal monomorphism into an injective, dual to the cover over A^op."""
    dm = dual_module(m)
    P, eps = projective_cover(dm)
    I = dual_module(P)
    # D(D m) is m itself (same matrices), so the dual of eps lands in m
    return I, ModuleMap(m, I, eps.matrix.T)


# -- Hom spaces ---------------------------------------------------------------


def _check_same(m: Module, n: Module):
    if m.algebra != n.algebra:
        raise AlgebraMismatch("modules over different algebras")


def hom_basis(m: Module, n: Module) -> list[ModuleMap]:
    """Basis of Hom_A(m, n) from the intertwining equations of the generators.

    Maps preserve the vertex decomposition, so the unknowns are only the blocks
    ``e_v m -> e_v n``; each radical generator ``g = e_s g e_t`` contributes
    the block equation ``X_s G^m_{st} = G^n_{st} X_t``.
    """
    _check_same(m, n)
    F = m.field
    if m.dim == 0 or n.dim == 0:
        return []
    A = m.algebra
    Tm, Tminv, om = m.adapted
    Tn, Tninv, on = n.adapted
    dm = [om[v + 1] - om[v] for v in range(A.n_vertices)]
    dn = [on[v + 1] - on[v] for v in range(A.n_vertices)]
    var_off = np.cumsum([0] + [dn[v] * dm[v] for v in range(A.n_vertices)])
    nvars = int(var_off[-1])
    if nvars == 0:
        return []
    eq_blocks = []
    for g in A.radical_generators:
        s, t = A.left_vertex[g], A.right_vertex[g]
        if dn[s] * dm[t] == 0:
            continue
        Gm = (Tminv @ m.action[g] @ Tm)[om[s]:om[s + 1], om[t]:om[t + 1]]
        Gn = (Tninv @ n.action[g] @ Tn)[on[s]:on[s + 1], on[t]:on[t + 1]]
        row = F.zeros((dn[s] * dm[t], nvars))
        # vec_r(X_s Gm) = (I kron Gm^T) vec_r(X_s); vec_r(Gn X_t) = (Gn kron I) vec_r(X_t)
        blk_s = kronecker(Matrix.identity(F, dn[s]), Gm.T)
        blk_t = kronecker(Gn, Matrix.identity(F, dm[t]))
        row[:, var_off[s]:var_off[s + 1]] = F.reduce(row[:, var_off[s]:var_off[s + 1]] + blk_s.a)
        row[:, var_off[t]:var_off[t + 1]] = F.reduce(row[:, var_off[t]:var_off[t + 1]] - blk_t.a)
        eq_blocks.append(Matrix(F, row, _trusted=True))
    system = vstack(F, eq_blocks, cols=nvars)
    K = kernel_basis(system) if system.rows else Matrix.identity(F, nvars)
    maps = []
    for c in range(K.cols):
        X = F.zeros((n.dim, m.dim))
        for v in range(A.n_vertices):
            blk = K.a[var_off[v]:var_off[v + 1], c].reshape(dn[v], dm[v])
            X[on[v]:on[v + 1], om[v]:om[v + 1]] = blk
        Xm = Tn @ Matrix(F, X, _trusted=True) @ Tminv
        maps.append(ModuleMap(m, n, Xm))
    return maps


def hom_dim(m: Module, n: Module) -> int:
    return len(hom_basis(m, n))


def maps_matrix(maps: Sequence[ModuleMap], rows: int, cols: int, field) -> Matrix:
    """Columns are the row-major flattenings of the map matrices."""
    if not maps:
        return Matrix.zeros(field, rows * cols, 0)
    return hstack(field, [f.matrix.flat() for f in maps])


# -- endomorphism rings, decomposition, isomorphism ------------------------------


def _sympy_domain(field):
    if field.kind == "prime":
        return sympy.GF(field.p)
    return sympy.QQ


def _charpoly_factors(x: Matrix):
    """Distinct monic irreducible factors of the characteristic polynomial."""
    from sympy.polys.matrices import DomainMatrix

    F = x.field
    dom = _sympy_domain(F)
    rows = [[dom.convert(int(v)) if F.kind == "prime" else dom.convert(sympy.Rational(v.numerator, v.denominator))
             for v in row] for row in x.a]
    dm = DomainMatrix(rows, x.shape, dom)
    coeffs = dm.charpoly()
    t = sympy.Symbol("t")
    if F.kind == "prime":
        poly = sympy.Poly([int(c) % F.p for c in coeffs], t, modulus=F.p)
    else:
        poly = sympy.Poly([dom.to_sympy(c) for c in coeffs], t, domain=sympy.QQ)
    _, facs = poly.factor_list()
    out = []
    for f, _ in facs:
        cs = f.all_coeffs()
        lead = cs[0]
        if F.kind == "prime":
            inv = pow(int(lead) % F.p, F.p - 2, F.p)
            cs = [(int(c) * inv) % F.p for c in cs]
        else:
            cs = [Fraction(str(c)) / Fraction(str(lead)) for c in cs]
        out.append(tuple(cs))
    return sorted(set(out), key=lambda c: (len(c), [str(v) for v in c]))


def _poly_eval(coeffs, x: Matrix) -> Matrix:
    F = x.field
    acc = Matrix.zeros(F, x.rows, x.cols)
    I = Matrix.identity(F, x.rows)
    for c in coeffs:
        acc = acc @ x + I.scale(c)
    return acc


def _matrix_power(x: Matrix, k: int) -> Matrix:
    out = Matrix.identity(x.field, x.rows)
    base = x
    while k:
        if k & 1:
            out = out @ base
        base = base @ base
        k >>= 1
    return out


def _subspace_product(F, left: list[Matrix], right: list[Matrix]) -> list[Matrix]:
    prods = [a @ b for a in left for b in right]
    if not prods:
        return []
    cols = colspace(hstack(F, [p.flat() for p in prods]))
    n = left[0].rows
    return [Matrix(F, cols.a[:, k].reshape(n, n).copy(), _trusted=True) for k in range(cols.cols)]


def _local_certificate(F, basis: list[Matrix], dim: int):
    """Return ``("local", None)``, ``("split", x)`` or ``("unknown", None)``."""
    I = Matrix.identity(F, dim)
    shifted = []
    nonsplit = False
    for x in basis:
        facs = _charpoly_factors(x)
        if len(facs) > 1:
            return "split", x
        f = facs[0]
        if len(f) != 2:
            nonsplit = True
            continue
        lam = F.element(-f[1])
        shifted.append(x - I.scale(lam))
    if nonsplit:
        return "unknown", None
    # kernel of the eigenvalue functional: must be a codimension-one nilpotent ideal
    span = colspace(hstack(F, [s.flat() for s in shifted])) if shifted else Matrix.zeros(F, dim * dim, 0)
    if span.cols != len(basis) - 1:
        return "notlocal", None
    N = [Matrix(F, span.a[:, k].reshape(dim, dim).copy(), _trusted=True) for k in range(span.cols)]
    if N:
        prod = _subspace_product(F, N, N)
        if prod and rank(hstack(F, [span] + [p.flat() for p in prod])) != span.cols:
            return "notlocal", None
        power = N
        for _ in range(dim + 1):
            power = _subspace_product(F, power, N)
            if not power:
                break
        else:
            return "notlocal", None
        if power:
            return "notlocal", None
    return "local", None


def _splitting_search(F, basis: list[Matrix], dim: int, seed: int):
    cands = []
    for a, b in itertools.product(basis, repeat=2):
        cands.append(a @ b)
    for a, b in itertools.combinations(basis, 2):
        cands.append(a + b)
    for x in cands:
        if len(_charpoly_factors(x)) > 1:
            return x
    rng = np.random.default_rng(seed)
    trials = min(IDEMPOTENT_SEARCH_BUDGET, 2000)
    for _ in range(trials):
        coeffs = F.random((len(basis),), rng)
        x = Matrix.zeros(F, dim, dim)
        for c, b in zip(coeffs, basis):
            if c != 0:
                x = x + b.scale(c)
        if len(_charpoly_factors(x)) > 1:
            return x
    raise BudgetExceeded(f"no splitting endomorphism found within {trials} random trials "
                         f"(budget {IDEMPOTENT_SEARCH_BUDGET})")


def _fitting_split(x: Matrix):
    facs = _charpoly_factors(x)
    y = _matrix_power(_poly_eval(facs[0], x), x.rows)
    return kernel_basis(y), colspace(y)


_default_seed = 0


def set_default_seed(seed: int) -> None:
    """Seed for the randomized splitting search used when no certificate is found."""
    global _default_seed
    _default_seed = int(seed)


def endomorphism_status(m: Module, seed: int | None = None):
    """Classify End(m) as local or find an endomorphism with a Fitting splitting."""
    F = m.field
    basis = [f.matrix for f in hom_basis(m, m)]
    status, x = _local_certificate(F, basis, m.dim)
    if status == "local":
        return "local", None
    if status == "split":
        return "split", x
    return "split", _splitting_search(F, basis, m.dim, _default_seed if seed is None else seed)


def is_indecomposable(m: Module) -> bool:
    if m.dim == 0:
        return False
    return endomorphism_status(m)[0] == "local"


@dataclass(eq=False)
class Summand:
    module: Module
    inclusion: ModuleMap
    projection: ModuleMap


def decompose(m: Module, seed: int | None = None) -> list[Summand]:
    """Krull-Schmidt decomposition into indecomposable summands."""
    F = m.field
    if m.dim == 0:
        return []
    pieces: list[tuple[Module, Matrix]] = []
    stack = [(m, Matrix.identity(F, m.dim))]
    while stack:
        cur, incl = stack.pop()
        status, x = endomorphism_status(cur, seed)
        if status == "local":
            pieces.append((cur, incl))
            continue
        kb, ib = _fitting_split(x)
        k_mod, k_inc = submodule(cur, kb)
        i_mod, i_inc = submodule(cur, ib)
        # push in reverse so the kernel part is processed first
        stack.append((i_mod, incl @ i_inc.matrix))
        stack.append((k_mod, incl @ k_inc.matrix))
    B = hstack(F, [inc for _, inc in pieces])
    Binv = inverse(B)
    out = []
    off = 0
    for mod, inc in pieces:
        proj = Binv.take_rows(range(off, off + mod.dim))
        out.append(Summand(mod, ModuleMap(mod, m, inc), ModuleMap(m, mod, proj)))
        off += mod.dim
    return out


def _iso_indecomposable(x: Module, y: Module):
    if x.dim != y.dim or x.dim_vector != y.dim_vector:
        return None
    if x.dim == 0:
        return ModuleMap(x, y, Matrix.zeros(x.field, 0, 0))
    fs = hom_basis(x, y)
    for f in fs:
        if f.rank == x.dim:
            return f
    gs = hom_basis(y, x)
    # End(x) is local: non-invertible elements form a subspace, so basis pairs suffice
    for f in fs:
        for g in gs:
            if rank(g.matrix @ f.matrix) == x.dim:
                return f
    return None


def _precheck(m: Module, n: Module) -> bool:
    if m.dim != n.dim or m.dim_vector != n.dim_vector:
        return False
    if top_multiplicities(m) != top_multiplicities(n):
        return False
    if socle(m)[0].dim_vector != socle(n)[0].dim_vector:
        return False
    if radical_series_dims(m) != radical_series_dims(n) or socle_series_dims(m) != socle_series_dims(n):
        return False
    return True


def find_isomorphism(m: Module, n: Module) -> ModuleMap | None:
    """An explicit isomorphism ``m -> n`` or ``None``."""
    _check_same(m, n)
    if not _precheck(m, n):
        return None
    if m.dim == 0:
        return ModuleMap(m, n, Matrix.zeros(m.field, 0, 0))
    ds_m = decompose(m)
    ds_n = decompose(n)
    if len(ds_m) != len(ds_n):
        return None
    used = [False] * len(ds_n)
    total = Matrix.zeros(m.field, n.dim, m.dim)
    for sm in ds_m:
        for j, sn in enumerate(ds_n):
            if used[j]:
                continue
            f = _iso_indecomposable(sm.module, sn.module)
            if f is not None:
                used[j] = True
                total = total + sn.inclusion.matrix @ f.matrix @ sm.projection.matrix
                break
        else:
            return None
    return ModuleMap(m, n, total)


def iso_test(m: Module, n: Module) -> bool:
    return find_isomorphism(m, n) is not None


def is_projective_indecomposable(x: Module) -> bool:
    tm = top_multiplicities(x)
    if sum(tm) != 1:
        return False
    v = tm.index(1)
    return x.dim == len([i for i in range(x.algebra.dim) if x.algebra.right_vertex[i] == v])


def is_projective(m: Module) -> bool:
    P, _ = projective_cover(m)
    return P.dim == m.dim


def is_injective(m: Module) -> bool:
    return is_projective(dual_module(m))


def split_projectives(m: Module) -> tuple[Module, Module]:
    """``(core, projective part)``; ``m`` is their direct sum."""
    core, _, proj, _ = split_projectives_with_maps(m)
    return core, proj


def split_projectives_with_maps(m: Module):
    F = m.field
    if m.dim == 0:
        return m, identity_map(m), m, identity_map(m)
    if is_projective(m):
        z = zero_module(m.algebra)
        return z, ModuleMap(z, m, Matrix.zeros(F, m.dim, 0)), m, identity_map(m)
    parts = decompose(m)
    core_cols = [s.inclusion.matrix for s in parts if not is_projective_indecomposable(s.module)]
    proj_cols = [s.inclusion.matrix for s in parts if is_projective_indecomposable(s.module)]
    core, ci = submodule(m, hstack(F, core_cols, rows=m.dim))
    proj, pi = submodule(m, hstack(F, proj_cols, rows=m.dim))
    return core, ci, proj, pi


def projective_free_core(m: Module) -> Module:
    return split_projectives(m)[0]


def injective_free_core(m: Module) -> Module:
    return dual_module(projective_free_core(dual_module(m)))


# -- modules from generator data ---------------------------------------------------


def _generator_words(A: Algebra):
    """Words in generators whose products form a basis of A, with change of basis."""
    F = A.field
    if hasattr(A, "_gen_words"):
        return A._gen_words
    words = [(g,) for g in A.idempotents]
    vecs = [A.basis_vector(g) for g in A.idempotents]
    frontier = list(zip(words, vecs))
    span = Matrix(F, np.stack(vecs, axis=1), _trusted=True)
    while span.cols < A.dim and frontier:
        nxt = []
        for w, v in frontier:
            for g in A.radical_generators:
                nv = A.product(A.basis_vector(g), v)
                if not np.any(nv != 0):
                    continue
                cand = hstack(F, [span, Matrix(F, nv.reshape(-1, 1), _trusted=True)])
                if rank(cand) > span.cols:
                    span = cand
                    words.append((g,) + w)
                    vecs.append(nv)
                    nxt.append(((g,) + w, nv))
        frontier = nxt
    if span.cols < A.dim:
        raise RepresentationError("algebra is not generated by its idempotents and radical generators")
    coords = solve(span, Matrix.identity(F, A.dim))
    A._gen_words = (words, coords)
    return A._gen_words


def module_from_generators(A: Algebra, gens: dict[int, Matrix], dim: int, name: str = "") -> Module:
    """Complete an action given on idempotents and radical generators; missing ones are zero."""
    F = A.field
    words, coords = _generator_words(A)
    Z = Matrix.zeros(F, dim, dim)
    g = {i: gens.get(i, Z) for i in A.generators}
    word_act = []
    for w in words:
        acc = Matrix.identity(F, dim)
        for letter in w:
            acc = acc @ g[letter]
        word_act.append(acc)
    acts = []
    for i in range(A.dim):
        acc = F.zeros((dim, dim))
        for k in np.flatnonzero(coords.a[:, i] != 0):
            acc = acc + word_act[k].a * coords.a[k, i]
        acts.append(Matrix(F, F.reduce(acc), _trusted=True))
    return Module(A, acts, check=True, name=name)

"""Minimal resolutions, Ext, homological dimensions, Nakayama functor and AR translate."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import cache as _cache
from .algebra import Algebra
from .exactlin import Coordinates, Matrix, colspace, extend_to_basis, hstack, kernel_basis, rank, vstack
from .modrep import (
    FreeSum,
    Module,
    ModuleMap,
    cokernel,
    dual_module,
    free_map,
    hom_basis,
    kernel,
    projective_cover,
    projective_free_core,
    radical_subspace,
    regular,
    submodule,
)
from .serialize import matrix_to_json, module_to_json


@dataclass(frozen=True)
class AboveBound:
    """A homological dimension that exceeds ``bound``."""

    bound: int

    def __str__(self):
        return f">{self.bound}"


class NotWithinBound(Exception):
    def __init__(self, bound: int, side: str = ""):
        self.bound = bound
        self.side = side
        super().__init__(f"injective dimension of the {side or 'regular'} module exceeds {bound}")


class ZaksViolation(AssertionError):
    """Left and right self-injective dimensions differ; this is a bug, not mathematics."""


class ResolutionError(AssertionError):
    pass


@dataclass(eq=False)
class Resolution:
    """Minimal (co)resolution.

    For the projective kind ``terms[k] = P_k``, ``differentials[k-1] : P_k -> P_{k-1}``,
    ``augmentation : P_0 -> m`` and ``syzygies[k] = (Omega^k m, inclusion into P_{k-1})``
    (``syzygies[0]`` is ``m`` with the identity). The injective kind stores the
    duals: ``differentials[k-1] : I_{k-1} -> I_k``, ``augmentation : m -> I_0`` and
    ``syzygies[k] = (Sigma^k m, projection from I_{k-1})``.
    """

    kind: str
    module: Module
    terms: list = field(default_factory=list)
    differentials: list = field(default_factory=list)
    augmentation: ModuleMap | None = None
    syzygies: list = field(default_factory=list)
    stabilized: bool = False

    @property
    def length_computed(self) -> int:
        return len(self.terms)

    def term_dims(self) -> list[int]:
        return [t.dim for t in self.terms]


# -- projective resolutions ------------------------------------------------------


def _step(res: Resolution) -> None:
    omega, _ = res.syzygies[-1]
    if omega.dim == 0:
        res.stabilized = True
        return
    P, eps = projective_cover(omega)
    K, inc = kernel(eps)
    if res.terms:
        prev_inc = res.syzygies[-1][1]
        res.differentials.append(ModuleMap(P, res.terms[-1], prev_inc.matrix @ eps.matrix))
    else:
        res.augmentation = eps
    res.terms.append(P)
    res.syzygies.append((K, inc))
    if K.dim == 0:
        res.stabilized = True


def _cache_request(m: Module, n: int) -> dict:
    return {"algebra": m.algebra.key, "module": module_to_json(m), "kind": "projective", "length": n}


def _to_payload(res: Resolution) -> dict:
    return {
        "terms": [list(t.vertices) for t in res.terms],
        "augmentation": matrix_to_json(res.augmentation.matrix) if res.augmentation else None,
        "differentials": [matrix_to_json(d.matrix) for d in res.differentials],
        "inclusions": [matrix_to_json(inc.matrix) for _, inc in res.syzygies[1:]],
        "stabilized": res.stabilized,
    }


def _from_payload(m: Module, payload: dict) -> Resolution:
    A, F = m.algebra, m.field
    res = Resolution("projective", m)
    res.syzygies.append((m, ModuleMap(m, m, Matrix.identity(F, m.dim))))
    for k, verts in enumerate(payload["terms"]):
        P = FreeSum(A, verts)
        res.terms.append(P)
        if k == 0:
            res.augmentation = ModuleMap(P, m, Matrix.of(F, payload["augmentation"], shape=(m.dim, P.dim)))
        else:
            prev = res.terms[k - 1]
            res.differentials.append(
                ModuleMap(P, prev, Matrix.of(F, payload["differentials"][k - 1], shape=(prev.dim, P.dim))))
        inc_rows = payload["inclusions"][k]
        basis = Matrix.of(F, inc_rows, shape=(P.dim, len(inc_rows[0]) if inc_rows else 0))
        res.syzygies.append(submodule(P, basis))
    res.stabilized = payload["stabilized"]
    return res


def min_proj_resolution(m: Module, n: int) -> Resolution:
    """Terms ``P_0 .. P_n`` (fewer when a syzygy vanishes) of the minimal resolution."""
    if n < 0:
        raise ValueError("resolution length must be non-negative")
    res = getattr(m, "_proj_res", None)
    if res is None:
        store = _cache.active()
        if store is not None:
            key = store.key(_cache_request(m, n))
            payload = store.get(key)
            if payload is not None:
                res = _from_payload(m, payload)
                m._proj_res = res
                return res
        res = Resolution("projective", m)
        res.syzygies.append((m, ModuleMap(m, m, Matrix.identity(m.field, m.dim))))
        if m.dim == 0:
            res.stabilized = True
        m._proj_res = res
    grew = False
    while len(res.terms) < n + 1 and not res.stabilized:
        _step(res)
        grew = True
    store = _cache.active()
    if store is not None and grew:
        store.put(store.key(_cache_request(m, n)), _to_payload(res))
    return res


def syzygy(m: Module, i: int) -> Module:
    if i == 0:
        return m
    res = min_proj_resolution(m, i - 1)
    if i < len(res.syzygies):
        return res.syzygies[i][0]
    return res.syzygies[-1][0]  # already zero


def syzygy_with_inclusion(m: Module, i: int) -> tuple[Module, ModuleMap, Module]:
    """``(Omega^i m, inclusion, P_{i-1})`` for ``i >= 1``."""
    res = min_proj_resolution(m, i - 1)
    if i < len(res.syzygies):
        om, inc = res.syzygies[i]
        return om, inc, res.terms[i - 1]
    om, inc = res.syzygies[-1]
    return om, inc, res.terms[-1] if res.terms else om


def check_resolution(res: Resolution) -> None:
    """Complex, exactness and minimality checks; raise ResolutionError on failure."""
    if res.kind == "injective":
        dual = Resolution("projective", dual_module(res.module))
        dual.terms = [dual_module(t) for t in res.terms]
        dual.differentials = [ModuleMap(dual_module(d.target), dual_module(d.source), d.matrix.T)
                              for d in res.differentials]
        if res.augmentation is not None:
            dual.augmentation = ModuleMap(dual.terms[0], dual.module, res.augmentation.matrix.T)
        dual.syzygies = [(dual_module(s), None) for s, _ in res.syzygies]
        dual.stabilized = res.stabilized
        check_resolution(dual)
        return
    maps = ([res.augmentation] if res.augmentation else []) + res.differentials
    for k in range(1, len(maps)):
        if not (maps[k - 1].matrix @ maps[k].matrix).is_zero():
            raise ResolutionError(f"differentials {k - 1}, {k} do not compose to zero")
    if maps and maps[0].rank != res.module.dim:
        raise ResolutionError("augmentation is not surjective")
    for k in range(1, len(maps)):
        # exactness at the source of maps[k-1]
        src = maps[k - 1].source
        if maps[k].rank != src.dim - maps[k - 1].rank:
            raise ResolutionError(f"not exact at term {k - 1}")
        # minimality: image lands in the radical
        rad = radical_subspace(src)
        if rank(hstack(src.field, [rad, maps[k].matrix])) != rad.cols:
            raise ResolutionError(f"differential {k} leaves the radical")
    if res.stabilized and maps and maps[-1].rank != maps[-1].source.dim:
        raise ResolutionError("stabilized resolution does not end with a monomorphism")


# -- injective coresolutions --------------------------------------------------------


def min_inj_coresolution(m: Module, n: int) -> Resolution:
    dm = dual_module(m)
    pr = min_proj_resolution(dm, n)
    res = Resolution("injective", m)
    res.terms = [dual_module(t) for t in pr.terms]
    res.differentials = [ModuleMap(res.terms[k], res.terms[k + 1], d.matrix.T)
                         for k, d in enumerate(pr.differentials)]
    if pr.augmentation is not None:
        res.augmentation = ModuleMap(m, res.terms[0], pr.augmentation.matrix.T)
    res.syzygies = [(m, ModuleMap(m, m, Matrix.identity(m.field, m.dim)))]
    for k, (om, inc) in enumerate(pr.syzygies[1:], start=1):
        sig = dual_module(om)
        res.syzygies.append((sig, ModuleMap(res.terms[k - 1], sig, inc.matrix.T)))
    res.stabilized = pr.stabilized
    return res


def cosyzygy_inj(m: Module, i: int) -> Module:
    return dual_module(syzygy(dual_module(m), i))


# -- Ext ---------------------------------------------------------------------------


def _hom_free_coords(P: FreeSum, n: Module) -> tuple[list[int], list[Matrix]]:
    offs = [0]
    bases = []
    for v in P.vertices:
        B = n.vertex_bases[v]
        bases.append(B)
        offs.append(offs[-1] + B.cols)
    return offs, bases


def _cochain_differential(d: ModuleMap, n: Module) -> Matrix:
    """Matrix of ``Hom(P, n) -> Hom(Q, n)``, ``f -> f d`` for ``d : Q -> P`` between free sums."""
    P, Q = d.target, d.source
    F = n.field
    po, pb = _hom_free_coords(P, n)
    qo, qb = _hom_free_coords(Q, n)
    out = F.zeros((qo[-1], po[-1]))
    coords = [Coordinates(b) for b in qb]
    for k, gpos in enumerate(Q.gen_positions):
        col = d.matrix.take_cols([gpos])
        if qb[k].cols == 0:
            continue
        for l in range(len(P.vertices)):
            if pb[l].cols == 0:
                continue
            c = P.component(col, l)
            if not c.any():
                continue
            blk = coords[k](n.act_vec(c) @ pb[l])
            out[qo[k]:qo[k + 1], po[l]:po[l + 1]] = blk.a
    return Matrix(F, out, _trusted=True)


def _hom_dim_free(P: FreeSum, n: Module) -> int:
    return sum(n.dim_vector[v] for v in P.vertices)


def ext_cochains(m: Module, n: Module, upto: int):
    """Cochain dims ``H_0..H_upto`` and differentials ``delta_0..delta_upto``."""
    res = min_proj_resolution(m, upto + 1)
    dims, deltas = [], []
    for j in range(upto + 1):
        if j < len(res.terms):
            H = _hom_dim_free(res.terms[j], n)
        else:
            H = 0
        dims.append(H)
        if j + 1 < len(res.terms):
            deltas.append(_cochain_differential(res.differentials[j], n))
        else:
            deltas.append(Matrix.zeros(n.field, 0, H))
    return res, dims, deltas


def ext(m: Module, n: Module, i: int) -> int:
    """``dim Ext^i_A(m, n)``."""
    if i < 0:
        raise ValueError("negative degree")
    _, dims, deltas = ext_cochains(m, n, i)
    r_in = rank(deltas[i - 1]) if i > 0 else 0
    return dims[i] - rank(deltas[i]) - r_in


def ext_cocycles(m: Module, n: Module, i: int) -> list[ModuleMap]:
    """Cocycles ``P_i -> n`` whose classes form a basis of ``Ext^i(m, n)``."""
    res, dims, deltas = ext_cochains(m, n, i)
    if dims[i] == 0:
        return []
    F = n.field
    Z = kernel_basis(deltas[i]) if deltas[i].rows else Matrix.identity(F, dims[i])
    B = colspace(deltas[i - 1]) if i > 0 and deltas[i - 1].cols else Matrix.zeros(F, dims[i], 0)
    picks = extend_to_basis(B, Z)
    P = res.terms[i]
    offs, bases = _hom_free_coords(P, n)
    out = []
    for j in picks:
        z = Z.take_cols([j])
        images = [bases[l] @ z[offs[l]:offs[l + 1], :] for l in range(len(P.vertices))]
        out.append(free_map(P, n, images))
    return out


# -- dimensions ----------------------------------------------------------------------


def proj_dimension(m: Module, bound: int):
    """Projective dimension, or :class:`AboveBound` when it exceeds ``bound``."""
    if m.dim == 0:
        return 0
    res = min_proj_resolution(m, bound)
    if res.stabilized:
        return len(res.terms) - 1
    return AboveBound(bound)


def inj_dimension(m: Module, bound: int):
    return proj_dimension(dual_module(m), bound)


def is_gorenstein(a: Algebra, bound: int) -> int:
    """Common self-injective dimension of ``A`` on both sides."""
    left = inj_dimension(regular(a), bound)
    right = inj_dimension(regular(a.opposite()), bound)
    for side, val in (("left", left), ("right", right)):
        if isinstance(val, AboveBound):
            raise NotWithinBound(bound, side)
    if left != right:
        raise ZaksViolation(f"left injective dimension {left} differs from right {right}")
    return left


def gorenstein_dimension(a: Algebra, bound: int):
    """Like :func:`is_gorenstein` but returns :class:`AboveBound` instead of raising."""
    try:
        return is_gorenstein(a, bound)
    except NotWithinBound:
        return AboveBound(bound)


# -- Hom into the regular module, Nakayama functor ----------------------------------------


def hom_to_regular(m: Module):
    """``Hom_A(m, A)`` as a left ``A^op``-module, with its basis of maps ``m -> A``."""
    cached = getattr(m, "_hom_reg", None)
    if cached is not None:
        return cached
    A = m.algebra
    F = m.field
    basis = hom_basis(m, regular(A))
    op = A.opposite()
    if not basis:
        out = (Module(op, [Matrix.zeros(F, 0, 0)] * A.dim, check=False), basis)
        m._hom_reg = out
        return out
    flat = hstack(F, [f.matrix.flat() for f in basis])
    coords = Coordinates(flat)
    acts = []
    for b in range(A.dim):
        R = A.right_mult(b)
        # (f . b)(x) = f(x) b
        acts.append(hstack(F, [coords((R @ f.matrix).flat()) for f in basis]))
    out = (Module(op, acts, check=True), basis)
    m._hom_reg = out
    return out


def dual_hom_map(f: ModuleMap) -> Matrix:
    """Matrix of ``Hom(f, A) : Hom(target, A) -> Hom(source, A)``."""
    hm, bm = hom_to_regular(f.source)
    hn, bn = hom_to_regular(f.target)
    F = f.source.field
    if not bm or not bn:
        return Matrix.zeros(F, len(bm), len(bn))
    coords = Coordinates(hstack(F, [g.matrix.flat() for g in bm]))
    return hstack(F, [coords((g.matrix @ f.matrix).flat()) for g in bn])


def nakayama(m: Module) -> Module:
    """``nu m = D Hom_A(m, A)``."""
    cached = getattr(m, "_nakayama", None)
    if cached is None:
        cached = dual_module(hom_to_regular(m)[0])
        m._nakayama = cached
    return cached


def nakayama_map(f: ModuleMap) -> ModuleMap:
    return ModuleMap(nakayama(f.source), nakayama(f.target), dual_hom_map(f).T)


def nakayama_inverse(m: Module) -> Module:
    """``nu^- m = Hom_A(D A, m)`` computed as ``D nu_{A^op} D`` read back over A."""
    return dual_module(nakayama(dual_module(m)))


# -- Auslander transpose and AR translate ----------------------------------------------


def transpose(m: Module) -> Module:
    """Projective-free core of ``Tr m`` (a module over the opposite algebra)."""
    A = m.algebra
    op = A.opposite()
    res = min_proj_resolution(m, 1)
    if not res.terms:
        return Module(op, [Matrix.zeros(m.field, 0, 0)] * A.dim, check=False)
    P0 = res.terms[0]
    P1 = res.terms[1] if len(res.terms) > 1 else FreeSum(A, [])
    Q0 = FreeSum(op, P0.vertices)
    Q1 = FreeSum(op, P1.vertices)
    F = m.field
    images = []
    for l in range(len(P0.vertices)):
        col = Matrix.zeros(F, Q1.dim, 1)
        for k, gpos in enumerate(P1.gen_positions):
            c = P0.component(res.differentials[0].matrix.take_cols([gpos]), l)
            if c.any():
                col = col + Q1.embed(k, c)
        images.append(col)
    dstar = free_map(Q0, Q1, images)
    tr, _ = cokernel(dstar)
    return projective_free_core(tr)


def tau(m: Module) -> Module:
    """AR translate ``D Tr m``."""
    return dual_module(transpose(m))


def tau_inv(m: Module) -> Module:
    """Inverse AR translate ``Tr D m``."""
    return transpose(dual_module(m))

"""Stable categories of Gorenstein projective and injective modules."""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Algebra
from .exactlin import Coordinates, Matrix, colspace, hstack, rank, solve, vstack
from .homology import (
    AboveBound,
    NotWithinBound,
    cosyzygy_inj,
    ext,
    hom_to_regular,
    is_gorenstein,
    nakayama,
    proj_dimension,
    syzygy,
    syzygy_with_inclusion,
    tau,
)
from .modrep import (
    FreeSum,
    Module,
    ModuleMap,
    cokernel,
    decompose,
    direct_sum,
    dual_module,
    free_map,
    hom_basis,
    identity_map,
    injective_envelope,
    injective_free_core,
    is_projective,
    kernel,
    projective,
    projective_cover,
    projective_free_core,
    quotient,
    regular,
    split_projectives_with_maps,
    submodule,
)

DEFAULT_BOUND = 8


class GorensteinUnknown(Exception):
    pass


class NotGorensteinProjective(ValueError):
    pass


class NotProjective(ValueError):
    pass


def gorenstein_dim(a: Algebra, bound: int = DEFAULT_BOUND) -> int:
    memo = a.__dict__.setdefault("_gor_dim", {})
    if bound not in memo:
        try:
            memo[bound] = is_gorenstein(a, bound)
        except NotWithinBound as exc:
            memo[bound] = exc
    val = memo[bound]
    if isinstance(val, Exception):
        raise GorensteinUnknown(str(val))
    return val


# -- membership ---------------------------------------------------------------


def is_gorenstein_projective(x: Module, bound: int = DEFAULT_BOUND) -> bool:
    """``Ext^i(x, A) = 0`` for ``1 <= i <= d``.

    Checking the window up to ``d = injdim A`` is enough: higher Ext into A
    vanish by dimension shifting, and vanishing against A gives vanishing
    against every projective.
    """
    d = gorenstein_dim(x.algebra, bound)
    A = regular(x.algebra)
    return all(ext(x, A, i) == 0 for i in range(1, d + 1))


def is_gorenstein_injective(y: Module, bound: int = DEFAULT_BOUND) -> bool:
    return is_gorenstein_projective(dual_module(y), bound)


def _require_gp(x: Module, bound: int = DEFAULT_BOUND):
    if not is_gorenstein_projective(x, bound):
        raise NotGorensteinProjective(f"{x!r} is not Gorenstein projective")


# -- stable Hom ------------------------------------------------------------------


@dataclass(eq=False)
class StableHomSpace:
    source: Module
    target: Module
    total_basis: list
    factoring_subspace: Matrix  # flattened maps as columns
    mode: str
    representatives: list = field(default_factory=list)

    @property
    def stable_dim(self) -> int:
        return len(self.total_basis) - self.factoring_subspace.cols

    def _coords(self):
        c = getattr(self, "_coord_cache", None)
        if c is None:
            F = self.source.field
            cols = [self.factoring_subspace] + [f.matrix.flat() for f in self.representatives]
            c = Coordinates(hstack(F, cols, rows=self.source.dim * self.target.dim))
            self._coord_cache = c
        return c

    def stable_coords(self, f: Matrix) -> Matrix:
        """Coordinates of the class of ``f`` in the basis of representatives."""
        k = self.factoring_subspace.cols
        full = self._coords()(f.flat())
        return full[k:, :]

    def is_stably_zero(self, f: Matrix) -> bool:
        return self.stable_coords(f).is_zero()


def _finish(space: StableHomSpace) -> StableHomSpace:
    F = space.source.field
    fac = space.factoring_subspace
    reps = []
    cur = fac
    for f in space.total_basis:
        trial = hstack(F, [cur, f.matrix.flat()])
        if rank(trial) > cur.cols:
            reps.append(f)
            cur = trial
    space.representatives = reps
    return space


def _flat_span(F, maps, rows) -> Matrix:
    if not maps:
        return Matrix.zeros(F, rows, 0)
    return colspace(hstack(F, [f.matrix.flat() for f in maps]))


def stable_hom(x: Module, y: Module) -> StableHomSpace:
    """``Hom(x, y)`` modulo maps factoring through a projective (the cover of ``y``)."""
    F = x.field
    total = hom_basis(x, y)
    P, eps = projective_cover(y)
    through = [eps @ h for h in hom_basis(x, P)]
    fac = _flat_span(F, through, x.dim * y.dim)
    return _finish(StableHomSpace(x, y, total, fac, "underline"))


def costable_hom(x: Module, y: Module) -> StableHomSpace:
    """``Hom(x, y)`` modulo maps factoring through an injective (the envelope of ``x``)."""
    F = x.field
    total = hom_basis(x, y)
    I, mono = injective_envelope(x)
    through = [h @ mono for h in hom_basis(I, y)]
    fac = _flat_span(F, through, x.dim * y.dim)
    return _finish(StableHomSpace(x, y, total, fac, "overline"))


def stable_dim(x: Module, y: Module) -> int:
    return stable_hom(x, y).stable_dim


# -- cosyzygies inside Gproj --------------------------------------------------------


@dataclass(eq=False)
class GpEmbedding:
    """``0 -> x -> Q -> C -> 0`` with ``Q`` projective and ``C = Omega^{-1} x`` (not reduced)."""

    x: Module
    q: FreeSum
    iota: ModuleMap
    c: Module
    pi: ModuleMap
    hom_bases: dict


def gp_embedding(x: Module) -> GpEmbedding:
    """Universal map into projectives: one copy of ``P(v)`` per basis map ``x -> P(v)``."""
    A = x.algebra
    F = x.field
    verts, rows, bases = [], [], {}
    for v in range(A.n_vertices):
        hb = hom_basis(x, projective(A, v))
        bases[v] = hb
        for f in hb:
            verts.append(v)
            rows.append(f.matrix)
    Q = FreeSum(A, verts)
    iota = ModuleMap(x, Q, vstack(F, rows, cols=x.dim))
    if iota.rank != x.dim:
        raise NotGorensteinProjective("module is not torsionless, so it has no cosyzygy")
    C, pi = cokernel(iota)
    return GpEmbedding(x, Q, iota, C, pi, bases)


def factor_through_embedding(emb: GpEmbedding, g: ModuleMap) -> ModuleMap:
    """``h : Q -> P`` with ``h iota = g`` for a map ``g : x -> P`` into a free sum."""
    P = g.target
    F = g.source.field
    H = F.zeros((P.dim, emb.q.dim))
    qstart = {}
    for j, v in enumerate(emb.q.vertices):
        qstart.setdefault(v, j)
    for l, w in enumerate(P.vertices):
        comp = g.matrix[P.offsets[l]:P.offsets[l + 1], :]
        hb = emb.hom_bases[w]
        if not hb:
            if not comp.is_zero():
                raise NotGorensteinProjective("map into a projective does not factor")
            continue
        coords = solve(hstack(F, [f.matrix.flat() for f in hb]), comp.flat())
        for k in range(len(hb)):
            c = coords.a[k, 0]
            if c == 0:
                continue
            j = qstart[w] + k
            size = P.offsets[l + 1] - P.offsets[l]
            for t in range(size):
                H[P.offsets[l] + t, emb.q.offsets[j] + t] = c
    return ModuleMap(emb.q, P, Matrix(F, F.reduce(H), _trusted=True))


def cosyzygy_gp(x: Module, i: int = 1, bound: int = DEFAULT_BOUND) -> Module:
    """``Omega^{-i} x`` via ``(Omega (x^*))^*`` with ``(-)^* = Hom(-, A)``, projective-free core."""
    if i < 0:
        raise ValueError("use syzygy for negative shifts")
    _require_gp(x, bound)
    cur = projective_free_core(x)
    for _ in range(i):
        star, _ = hom_to_regular(cur)
        om = syzygy(star, 1)
        back, _ = hom_to_regular(om)
        cur = projective_free_core(back)
    return cur


def cosyzygy_gp_by_embedding(x: Module, i: int = 1) -> Module:
    """Same object as :func:`cosyzygy_gp`, from cokernels of the universal embedding."""
    cur = projective_free_core(x)
    for _ in range(i):
        cur = projective_free_core(gp_embedding(cur).c)
    return cur


def syzygy_core(y: Module, i: int) -> Module:
    return projective_free_core(syzygy(y, i))


# -- Gorenstein projective approximation ----------------------------------------------


@dataclass(eq=False)
class GpApproximation:
    target: Module
    x: Module
    f_part: Module
    epi: ModuleMap
    mono: ModuleMap
    correction: tuple = ()
    d: int = 0

    def check(self, bound: int = DEFAULT_BOUND) -> None:
        if not (self.epi.matrix @ self.mono.matrix).is_zero():
            raise AssertionError("approximation sequence is not a complex")
        if self.epi.rank != self.target.dim or self.mono.rank != self.f_part.dim:
            raise AssertionError("approximation sequence is not exact at the ends")
        if self.x.dim != self.f_part.dim + self.target.dim:
            raise AssertionError("approximation sequence is not exact in the middle")
        if not is_gorenstein_projective(self.x, bound):
            raise AssertionError("approximating module is not Gorenstein projective")
        pd = proj_dimension(self.f_part, bound)
        if isinstance(pd, AboveBound) or pd > self.d:
            raise AssertionError(f"kernel has projective dimension {pd} > {self.d}")


def _lift_to(epi_target: Module, pi: ModuleMap, values: Matrix) -> Matrix:
    """Matrix ``phi`` with ``phi pi = values`` given ``pi`` surjective."""
    sec = solve(pi.matrix, Matrix.identity(pi.source.field, pi.target.dim))
    return values @ sec


def gp_approximation(m: Module, bound: int = DEFAULT_BOUND, check: bool = True) -> GpApproximation:
    """``0 -> F_M -> X_M -> M -> 0`` with ``X_M`` Gorenstein projective and ``pd F_M <= d``.

    ``Omega^d m`` is Gorenstein projective; walking back along the minimal
    resolution, each step replaces ``Omega^j m`` by the cosyzygy of the
    previous Gorenstein projective and the comparison map is induced by
    factoring through the universal embedding.
    """
    A = m.algebra
    F = m.field
    d = gorenstein_dim(A, bound)
    if d == 0:
        approx = GpApproximation(m, m, _zero(A), identity_map(m), ModuleMap(_zero(A), m, Matrix.zeros(F, m.dim, 0)), (), 0)
        if check:
            approx.check(bound)
        return approx
    # G = Omega^d m and phi : G -> Omega^d m (identity)
    G = syzygy(m, d)
    phi = identity_map(G)
    for j in range(d, 0, -1):
        if G.dim == 0:
            tgt = syzygy(m, j - 1)
            phi = ModuleMap(G, tgt, Matrix.zeros(F, tgt.dim, 0))
            continue
        _, inc_j, P = syzygy_with_inclusion(m, j)   # Omega^j m inside P_{j-1}
        # P_{j-1} -> Omega^{j-1} m
        onto = _augmentation(m) if j == 1 else _cover_onto(m, j - 1)
        g = ModuleMap(G, P, inc_j.matrix @ phi.matrix)
        emb = gp_embedding(G)
        h = factor_through_embedding(emb, g)
        phi = ModuleMap(emb.c, onto.target, _lift_to(onto.target, emb.pi, onto.matrix @ h.matrix))
        G = emb.c
    X, epi = G, phi
    correction: tuple = ()
    if epi.rank < m.dim:
        C, q = cokernel(epi)
        Pc, eps = projective_cover(C)
        sec = solve(q.matrix, Matrix.identity(F, C.dim))
        images = []
        for k, v in enumerate(Pc.vertices):
            y = eps.matrix.take_cols([Pc.gen_positions[k]])
            images.append(m.action[A.idempotents[v]] @ sec @ y)
        psi = free_map(Pc, m, images)
        X, inj, _ = direct_sum([G, Pc])
        epi = ModuleMap(X, m, hstack(F, [phi.matrix, psi.matrix]))
        correction = Pc.vertices
    X, epi = _trim_projectives(X, epi)
    K, mono = kernel(epi)
    approx = GpApproximation(m, X, K, epi, mono, correction, d)
    if check:
        approx.check(bound)
    return approx


def _trim_projectives(X: Module, epi: ModuleMap):
    """Drop projective summands of ``X`` that are not needed for surjectivity."""
    F = X.field
    if X.dim == 0:
        return X, epi
    _, ci, proj, pi = split_projectives_with_maps(X)
    if proj.dim == 0:
        return X, epi
    pieces = [pi.matrix @ s.inclusion.matrix for s in decompose(proj)]
    keep = list(range(len(pieces)))
    target = epi.target.dim
    for k in range(len(pieces)):
        trial = [j for j in keep if j != k]
        cols = hstack(F, [ci.matrix] + [pieces[j] for j in trial], rows=X.dim)
        if rank(epi.matrix @ cols) == target:
            keep = trial
    if len(keep) == len(pieces):
        return X, epi
    cols = hstack(F, [ci.matrix] + [pieces[j] for j in keep], rows=X.dim)
    Y, inc = submodule(X, cols)
    return Y, ModuleMap(Y, epi.target, epi.matrix @ inc.matrix)


def _zero(A: Algebra) -> Module:
    from .modrep import zero_module
    return zero_module(A)


def _augmentation(m: Module) -> ModuleMap:
    from .homology import min_proj_resolution
    return min_proj_resolution(m, 0).augmentation


def _cover_onto(m: Module, j: int) -> ModuleMap:
    """The epimorphism ``P_j -> Omega^j m`` of the minimal resolution."""
    from .homology import min_proj_resolution
    res = min_proj_resolution(m, j)
    om, inc = res.syzygies[j]
    d = res.differentials[j - 1]  # P_j -> P_{j-1}, lands in Omega^j m
    coords = Coordinates(inc.matrix)
    return ModuleMap(res.terms[j], om, coords(d.matrix))


# -- Tate cohomology, Serre functor ---------------------------------------------------------


def tate_hom(x: Module, y: Module, i: int, bound: int = DEFAULT_BOUND) -> int:
    """``dim Hom_stable(x, Omega^{-i} y)``."""
    _require_gp(x, bound)
    _require_gp(y, bound)
    target = cosyzygy_gp(y, i, bound) if i >= 0 else syzygy_core(y, -i)
    return stable_dim(x, target)


def serre_functor(x: Module, bound: int = DEFAULT_BOUND) -> Module:
    """``F x = Omega GP(nu x)``, projective-free core."""
    _require_gp(x, bound)
    X = gp_approximation(nakayama(x), bound).x
    return syzygy_core(X, 1)


def serre_functor_via_tau(x: Module, bound: int = DEFAULT_BOUND) -> Module:
    """``Omega^{-1} GP(D Tr x)``."""
    _require_gp(x, bound)
    X = gp_approximation(tau(x), bound).x
    return cosyzygy_gp(projective_free_core(X), 1, bound)


def composition_pairing_rank(left: StableHomSpace, right: StableHomSpace, out: StableHomSpace) -> int:
    """Rank of ``f -> (g -> g f)`` from stable ``left`` into Hom(stable ``right``, stable ``out``)."""
    F = left.source.field
    if not left.representatives:
        return 0
    cols = []
    for f in left.representatives:
        parts = [out.stable_coords(g.matrix @ f.matrix) for g in right.representatives]
        cols.append(vstack(F, parts, cols=1))
    return rank(hstack(F, cols))


def serre_duality_check(x: Module, y: Module, bound: int = DEFAULT_BOUND) -> dict:
    _require_gp(x, bound)
    _require_gp(y, bound)
    Fx = serre_functor(x, bound)
    hxy = stable_hom(x, y)
    hyf = stable_hom(y, Fx)
    hxf = stable_hom(x, Fx)
    r = composition_pairing_rank(hxy, hyf, hxf)
    return {
        "dim_hom_x_y": hxy.stable_dim,
        "dim_hom_y_Fx": hyf.stable_dim,
        "equal": hxy.stable_dim == hyf.stable_dim,
        "left_nondegenerate": r == hxy.stable_dim,
        "pass": hxy.stable_dim == hyf.stable_dim and r == hxy.stable_dim,
    }


# -- cones ---------------------------------------------------------------------------------


@dataclass(eq=False)
class StableCone:
    """Triangle ``x -> y -> cone -> Omega^{-1} x`` realised by a pushout."""

    core: Module
    full: Module
    f: ModuleMap
    u: ModuleMap       # y -> full
    w: ModuleMap       # full -> Omega^{-1} x (unreduced)
    shift: Module


def stable_cone(f: ModuleMap, bound: int = DEFAULT_BOUND) -> StableCone:
    """Pushout of ``Q <- x -> y`` along the universal embedding of ``x``."""
    x, y = f.source, f.target
    _require_gp(x, bound)
    _require_gp(y, bound)
    F = x.field
    emb = gp_embedding(x)
    S, inj, proj = direct_sum([emb.q, y])
    # pushout = (Q + y) / {(iota a, -f a)}
    rel = hstack(F, [vstack(F, [emb.iota.matrix, -f.matrix])]) if x.dim else Matrix.zeros(F, S.dim, 0)
    full, qmap = quotient(S, colspace(rel))
    u = ModuleMap(y, full, qmap.matrix @ inj[1].matrix)
    # (q, b) -> pi(q) is well defined on the pushout
    w_on_sum = ModuleMap(S, emb.c, emb.pi.matrix @ proj[0].matrix)
    sec = solve(qmap.matrix, Matrix.identity(F, full.dim))
    w = ModuleMap(full, emb.c, w_on_sum.matrix @ sec)
    return StableCone(projective_free_core(full), full, f, u, w, emb.c)


# -- projective level duality --------------------------------------------------------------


def happel_check(p: Module, q: Module, degrees: int = 2) -> dict:
    if not (is_projective(p) and is_projective(q)):
        raise NotProjective("happel_check needs projective arguments")
    nu_p = nakayama(p)
    lhs = len(hom_basis(p, q))
    rhs = len(hom_basis(q, nu_p))
    higher = all(ext(p, q, i) == 0 and ext(q, nu_p, i) == 0 for i in range(1, degrees + 1))
    return {"dim_hom_p_q": lhs, "dim_hom_q_nu_p": rhs, "equal": lhs == rhs,
            "higher_ext_vanish": higher, "pass": lhs == rhs and higher}


def sigma2_dtr_check(x: Module) -> bool:
    """``Sigma^2 (D Tr x)`` and ``nu x`` agree up to injective summands."""
    from .modrep import iso_test
    lhs = injective_free_core(cosyzygy_inj(tau(x), 2))
    rhs = injective_free_core(nakayama(x))
    return iso_test(lhs, rhs)

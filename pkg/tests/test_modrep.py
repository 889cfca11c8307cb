import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gorenstein import corpus
from gorenstein.exactlin import Matrix, inverse, kernel_basis, kronecker, rank, vstack
from gorenstein.modrep import (
    Module,
    RepresentationError,
    decompose,
    direct_sum,
    dual_map,
    dual_module,
    find_isomorphism,
    hom_basis,
    hom_dim,
    injective,
    is_indecomposable,
    is_injective,
    is_projective,
    iso_test,
    module_from_generators,
    projective,
    projective_cover,
    regular,
    simple,
    socle,
    split_projectives,
    top,
)


def hom_dim_oracle(m: Module, n: Module) -> int:
    """Commutation with every basis element, solved as one linear system on vec(X)."""
    F = m.field
    A = m.algebra
    In, Im = Matrix.identity(F, n.dim), Matrix.identity(F, m.dim)
    blocks = [kronecker(Im, n.action[i]) - kronecker(m.action[i].T, In) for i in range(A.dim)]
    return kernel_basis(vstack(F, blocks, cols=m.dim * n.dim)).cols


def hom_count_exhaustive(m: Module, n: Module) -> int:
    """Number of GF(2) intertwiners by trying every matrix."""
    F = m.field
    count = 0
    for bits in itertools.product((0, 1), repeat=m.dim * n.dim):
        X = Matrix.of(F, np.array(bits).reshape(n.dim, m.dim).tolist(), shape=(n.dim, m.dim))
        if all(n.action[i] @ X == X @ m.action[i] for i in range(m.algebra.dim)):
            count += 1
    return count


def lam_pairs(field):
    mods = corpus.lambda_modules(field)
    return [(a, b, mods[a], mods[b]) for a, b in itertools.product(mods, repeat=2)]


def test_hom_matches_linear_system_oracle(field):
    for _, _, m, n in lam_pairs(field):
        assert hom_dim(m, n) == hom_dim_oracle(m, n)


def test_hom_matches_exhaustive_count():
    mods = corpus.lambda_modules("gf2")
    for a, b in itertools.product(mods, repeat=2):
        m, n = mods[a], mods[b]
        if m.dim * n.dim <= 12:
            assert 2 ** hom_dim(m, n) == hom_count_exhaustive(m, n), (a, b)


def test_hom_basis_are_module_maps(field):
    for _, _, m, n in lam_pairs(field):
        for f in hom_basis(m, n):
            f.check()


def test_hom_from_regular(field):
    for name, A in corpus.all_algebras(field).items():
        R = regular(A)
        for m in corpus.modules(name, field).values():
            assert hom_dim(R, m) == m.dim


def test_nine_modules_indecomposable_and_distinct(field):
    mods = corpus.lambda_modules(field)
    assert len(mods) == 9
    for m in mods.values():
        assert is_indecomposable(m)
    for a, b in itertools.combinations(mods, 2):
        assert not iso_test(mods[a], mods[b])


def test_dimension_vectors():
    mods = corpus.lambda_modules("gf2")
    expected = {"1": (1, 0), "2": (0, 1), "1/1": (2, 0), "2/2": (0, 2), "2/1": (1, 1), "12/1": (2, 1),
                "2/12": (1, 2), "2/12/1": (2, 2), "12/12": (2, 2)}
    assert {k: m.dim_vector for k, m in mods.items()} == expected


def test_top_of_projective_and_socle_of_injective(field):
    for A in corpus.all_algebras(field).values():
        for v in range(A.n_vertices):
            assert iso_test(top(projective(A, v))[0], simple(A, v))
            assert iso_test(socle(injective(A, v))[0], simple(A, v))


def test_projectives_and_injectives_in_lambda(field):
    mods = corpus.lambda_modules(field)
    assert {k for k, m in mods.items() if is_projective(m)} == corpus.LAMBDA_PROJECTIVE
    assert {k for k, m in mods.items() if is_injective(m)} == corpus.LAMBDA_INJECTIVE
    A = corpus.lam(field)
    assert iso_test(projective(A, 0), mods["1/1"])
    assert iso_test(projective(A, 1), mods["2/12/1"])
    assert iso_test(injective(A, 0), mods["2/12/1"])
    assert iso_test(injective(A, 1), mods["2/2"])


def test_dual_is_involution_on_maps(field):
    for _, _, m, n in lam_pairs(field)[:20]:
        for f in hom_basis(m, n):
            assert dual_map(dual_map(f)).matrix == f.matrix
            dual_map(f).check()


def test_dual_module_lands_over_opposite(field):
    A = corpus.lam(field)
    for m in corpus.lambda_modules(field).values():
        d = dual_module(m)
        assert d.algebra == A.opposite()
        assert d.dim == m.dim


def test_direct_sum_additivity(field):
    mods = corpus.lambda_modules(field)
    names = list(mods)
    for a, b, c in [(names[0], names[4], names[7]), (names[2], names[3], names[8])]:
        s, _, _ = direct_sum([mods[a], mods[b]])
        assert hom_dim(s, mods[c]) == hom_dim(mods[a], mods[c]) + hom_dim(mods[b], mods[c])


def test_endomorphism_cross_check(field):
    mods = corpus.lambda_modules(field)
    for a, b in itertools.combinations(mods, 2):
        m, n = mods[a], mods[b]
        s, _, _ = direct_sum([m, n])
        assert hom_dim(s, s) == hom_dim(m, m) + hom_dim(n, n) + hom_dim(m, n) + hom_dim(n, m)


def test_decompose_recovers_summands(field):
    mods = corpus.lambda_modules(field)
    parts = ["1", "12/12", "2/1", "2/1", "2/12/1"]
    s, _, _ = direct_sum([mods[p] for p in parts])
    found = decompose(s)
    assert sorted(x.module.dim for x in found) == sorted(mods[p].dim for p in parts)
    for x in found:
        assert is_indecomposable(x.module)
        assert (x.projection.matrix @ x.inclusion.matrix) == Matrix.identity(s.field, x.module.dim)
    names = sorted(next(k for k, m in mods.items() if iso_test(m, x.module)) for x in found)
    assert names == sorted(parts)


def test_split_projectives(field):
    mods = corpus.lambda_modules(field)
    s, _, _ = direct_sum([mods["12/1"], mods["1/1"], mods["2/12/1"]])
    core = split_projectives(s)[0]
    assert iso_test(core, mods["12/1"])


@st.composite
def base_changes(draw, n, F):
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    while True:
        g = Matrix(F, F.random((n, n), rng))
        if rank(g) == n:
            return g


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_iso_test_detects_base_change(data):
    field = data.draw(st.sampled_from(["gf2", "q"]))
    mods = corpus.lambda_modules(field)
    name = data.draw(st.sampled_from(sorted(mods)))
    extra = data.draw(st.sampled_from(sorted(mods)))
    m, _, _ = direct_sum([mods[name], mods[extra]])
    g = data.draw(base_changes(m.dim, m.field))
    gi = inverse(g)
    moved = Module(m.algebra, [g @ a @ gi for a in m.action])
    phi = find_isomorphism(m, moved)
    assert phi is not None
    phi.check()
    assert rank(phi.matrix) == m.dim


def test_projective_cover_is_onto(field):
    for m in corpus.lambda_modules(field).values():
        P, eps = projective_cover(m)
        eps.check()
        assert eps.is_surjective()
        assert P.dim >= m.dim


def test_bad_generator_data_rejected():
    A = corpus.lam("gf2")
    F = A.field
    # eps1 acting as the identity on a one-dimensional space violates eps1^2 = 0
    one = Matrix.of(F, [[1]])
    zero = Matrix.of(F, [[0]])
    gens = {A.index("e_1"): one, A.index("e_2"): zero, A.index("eps1"): one}
    with pytest.raises(RepresentationError):
        module_from_generators(A, gens, 1)

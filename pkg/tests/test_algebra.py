import itertools
import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gorenstein import corpus
from gorenstein.algebra import (
    InvalidAlgebra,
    NotAdmissible,
    from_structure_constants,
    is_algebra_isomorphism,
    relation_vector,
    tensor,
)
from gorenstein.exactlin import Matrix, PrimeField, Rationals
from gorenstein.serialize import algebra_from_json, algebra_to_json, load_algebra, presentation_from_json

FIXTURES = Path(__file__).parent / "fixtures"


def linear_quiver(n, field="gf2"):
    fj = {"kind": "prime", "p": 2} if field == "gf2" else {"kind": "rationals"}
    return {"field": fj, "vertices": [str(i) for i in range(1, n + 1)],
            "arrows": [{"name": f"a{i}", "from": str(i), "to": str(i + 1)} for i in range(1, n)], "relations": []}


def truncated_loop(n):
    return {"field": {"kind": "prime", "p": 2}, "vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}],
            "relations": [[{"coeff": 1, "path": ["x"] * n}]]}


def count_paths(d):
    """Independent path count for relation-free acyclic quivers by depth-first enumeration."""
    out = {}
    for a in d["arrows"]:
        out.setdefault(a["from"], []).append(a["to"])

    def walk(v):
        return 1 + sum(walk(w) for w in out.get(v, []))
    return sum(walk(v) for v in d["vertices"])


def associative(A) -> bool:
    m = A.mult
    F = A.field
    for i, j, k in itertools.product(range(A.dim), repeat=3):
        left = F.reduce(np.tensordot(m[i, j], m[:, k], axes=(0, 0)))
        right = F.reduce(np.tensordot(m[j, k], m[i, :], axes=(0, 0)))
        if not np.array_equal(left, right):
            return False
    return True


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_linear_quiver_dimension(n):
    d = linear_quiver(n)
    A = algebra_from_json(d)
    assert A.dim == count_paths(d) == n * (n + 1) // 2
    assert A.n_vertices == n


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_truncated_polynomial(n):
    A = algebra_from_json(truncated_loop(n))
    assert A.dim == n
    assert A.loewy_length == n


def test_corpus_dimensions(field):
    assert corpus.keps(field).dim == 2
    assert corpus.gamma(field).dim == 3
    assert corpus.lam(field).dim == 6
    assert corpus.tensor_square(f"keps_{field}").dim == 4
    assert corpus.tensor_square(f"gamma_{field}").dim == 9


def test_corpus_associative(field):
    for A in corpus.all_algebras(field).values():
        assert associative(A)


def test_relations_vanish(field):
    A = corpus.lam(field)
    q = presentation_from_json(json.loads(corpus.data_path(f"lambda_{field}.json").read_text()))
    for rel in q.relations:
        assert not np.any(relation_vector(A, rel))


def test_tensor_associative_structure_constants():
    a, b, c = corpus.keps("gf2"), corpus.gamma("gf2"), corpus.keps("gf2")
    left = tensor(tensor(a, b), c)
    right = tensor(a, tensor(b, c))
    assert np.array_equal(left.mult, right.mult)
    assert np.array_equal(left.unit, right.unit)


def test_opposite_of_tensor(field):
    a, b = corpus.gamma(field), corpus.lam(field)
    x = tensor(a, b).opposite()
    y = tensor(a.opposite(), b.opposite())
    assert np.array_equal(x.mult, y.mult)


def test_opposite_involution(field):
    A = corpus.lam(field)
    assert np.array_equal(A.opposite().opposite().mult, A.mult)


def test_bridge_is_isomorphism(field):
    assert is_algebra_isomorphism(corpus.lam(field), corpus.lambda_as_tensor(field), corpus.lambda_bridge(field))


def test_bridge_rejects_wrong_map(field):
    L = corpus.lam(field)
    T = corpus.lambda_as_tensor(field)
    assert not is_algebra_isomorphism(L, T, Matrix.identity(L.field, L.dim))


def test_not_admissible_rejected():
    d = linear_quiver(2)
    d["relations"] = [[{"coeff": 1, "path": ["a1"]}]]
    with pytest.raises(NotAdmissible):
        algebra_from_json(d)


def test_oriented_cycle_without_relations_rejected():
    d = {"field": {"kind": "prime", "p": 2}, "vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}],
         "relations": []}
    with pytest.raises(ValueError):
        algebra_from_json(d)


def test_structure_constants_roundtrip(field):
    A = corpus.lam(field)
    B = algebra_from_json(algebra_to_json(A))
    assert np.array_equal(A.mult, B.mult)
    assert B.labels == A.labels


def test_idempotent_radical_rejected():
    d = algebra_to_json(corpus.keps("gf2"))
    d["mult"][1][1] = [0, 1]
    with pytest.raises(InvalidAlgebra):
        algebra_from_json(d)


def test_non_associative_table_rejected():
    with pytest.raises(InvalidAlgebra, match="associative"):
        load_algebra(FIXTURES / "nonassociative.json")


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4), st.integers(1, 3))
def test_tensor_of_truncated_loops(n, m):
    A = tensor(algebra_from_json(truncated_loop(n + 1)), algebra_from_json(truncated_loop(m + 1)))
    assert A.dim == (n + 1) * (m + 1)
    assert associative(A)

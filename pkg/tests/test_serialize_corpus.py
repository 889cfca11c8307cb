import json

import pytest

from gorenstein import corpus
from gorenstein.modrep import iso_test
from gorenstein.serialize import (
    FormatError,
    algebra_from_json,
    canonical_dumps,
    module_from_json,
    module_to_json,
    presentation_from_json,
    presentation_to_json,
)


def test_module_roundtrip(field):
    A = corpus.lam(field)
    for name, m in corpus.lambda_modules(field).items():
        back = module_from_json(json.loads(json.dumps(module_to_json(m))), A)
        assert back.equals(m)
        assert back.name == name


def test_presentation_roundtrip(field):
    d = json.loads(corpus.data_path(f"lambda_{field}.json").read_text())
    q = presentation_from_json(d)
    again = presentation_to_json(q)
    assert algebra_from_json(again).labels == corpus.lam(field).labels


def test_generators_only_requires_idempotents():
    A = corpus.lam("gf2")
    with pytest.raises(FormatError):
        module_from_json({"dim": 1, "generators_only": True, "action": {"e_1": [[1]]}}, A)


def test_generators_only_rejects_non_generators():
    A = corpus.lam("gf2")
    d = {"dim": 1, "generators_only": True, "action": {"e_1": [[1]], "e_2": [[0]], "eps1.alpha": [[0]]}}
    with pytest.raises(FormatError):
        module_from_json(d, A)


def test_action_shape_checked():
    A = corpus.keps("gf2")
    with pytest.raises(FormatError):
        module_from_json({"dim": 2, "action": {"e_1": [[1, 0]], "eps": [[0, 0], [1, 0]]}}, A)


def test_canonical_dumps_is_order_independent():
    assert canonical_dumps({"b": 1, "a": [1, 2]}) == canonical_dumps({"a": [1, 2], "b": 1})


def test_modules_agree_across_fields():
    g, q = corpus.lambda_modules("gf2"), corpus.lambda_modules("q")
    assert {k: m.dim_vector for k, m in g.items()} == {k: m.dim_vector for k, m in q.items()}


def test_expected_facts_are_tagged():
    for name in ("keps", "gamma", "lambda"):
        for fact in corpus.expected_facts(name):
            assert fact["origin"] in ("published", "derived")


def test_expected_tau_facts_match_table():
    facts = {f["fact"][4:]: f["value"] for f in corpus.expected_facts("lambda") if f["fact"].startswith("tau:")}
    assert facts == corpus.LAMBDA_TAU


def test_gamma_modules():
    mods = corpus.modules("gamma", "gf2")
    assert {k: m.dim_vector for k, m in mods.items()} == {"1": (1, 0), "2": (0, 1), "2/1": (1, 1)}
    assert not iso_test(mods["1"], mods["2"])

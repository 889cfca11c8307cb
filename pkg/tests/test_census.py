import pytest

from gorenstein import corpus
from gorenstein.census import count_indecomposables


def test_path_algebra_a2():
    # A2 has three indecomposables: two simples and the projective-injective
    assert count_indecomposables(corpus.gamma("gf2"), (1, 1)) == {(1, 0): 1, (0, 1): 1, (1, 1): 1}
    assert count_indecomposables(corpus.gamma("gf2"), (2, 2)) == {(1, 0): 1, (0, 1): 1, (1, 1): 1}


def test_dual_numbers():
    assert count_indecomposables(corpus.keps("gf2"), (3,)) == {(1,): 1, (2,): 1}


def test_lambda_small_caps():
    counts = count_indecomposables(corpus.lam("gf2"), (1, 1))
    assert sum(counts.values()) == 3


def test_rejects_rationals():
    with pytest.raises(ValueError):
        count_indecomposables(corpus.keps("q"), (1,))

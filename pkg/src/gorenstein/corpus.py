"""Bundled algebras and modules used by the tests and the command line."""
from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .algebra import Algebra, tensor
from .modrep import Module
from .serialize import _read_json, algebra_from_json, module_from_json

FIELDS = ("gf2", "q")

#: the nine indecomposables over lambda, named by radical layers
LAMBDA_MODULES = ("1", "2", "1/1", "2/2", "2/1", "12/1", "2/12", "2/12/1", "12/12")
LAMBDA_GP = frozenset({"1", "1/1", "2/12/1", "12/1", "2/1"})
LAMBDA_GINJ = frozenset({"2", "2/2", "2/12/1", "2/12", "2/1"})
LAMBDA_PROJECTIVE = frozenset({"1/1", "2/12/1"})
LAMBDA_INJECTIVE = frozenset({"2/2", "2/12/1"})
#: X -> tau X for every non-projective indecomposable
LAMBDA_TAU = {
    "12/12": "1",
    "2/2": "1/1",
    "1": "2/1",
    "2": "12/12",
    "2/12": "12/1",
    "12/1": "2/12",
    "2/1": "2",
}


def data_path(name: str):
    return resources.files("gorenstein").joinpath("data", name)


def _load(name: str) -> dict:
    with resources.as_file(data_path(name)) as p:
        return _read_json(p)


@lru_cache(maxsize=None)
def algebra(name: str) -> Algebra:
    """``keps``, ``gamma`` or ``lambda`` with a field suffix, e.g. ``lambda_gf2``."""
    return algebra_from_json(_load(f"{name}.json"), name=name)


def keps(field: str = "gf2") -> Algebra:
    return algebra(f"keps_{field}")


def gamma(field: str = "gf2") -> Algebra:
    return algebra(f"gamma_{field}")


def lam(field: str = "gf2") -> Algebra:
    return algebra(f"lambda_{field}")


@lru_cache(maxsize=None)
def lambda_as_tensor(field: str = "gf2") -> Algebra:
    return tensor(keps(field), gamma(field), name=f"keps_x_gamma_{field}")


@lru_cache(maxsize=None)
def tensor_square(name: str) -> Algebra:
    a = algebra(name)
    return tensor(a, a, name=f"{name}_sq")


@lru_cache(maxsize=None)
def lambda_modules(field: str = "gf2") -> dict[str, Module]:
    d = _load(f"lambda_{field}_modules.json")
    A = lam(field)
    out = {}
    for entry in d["modules"]:
        out[entry["name"]] = module_from_json(entry, A)
    return out


def all_algebras(field: str = "gf2") -> dict[str, Algebra]:
    return {"keps": keps(field), "gamma": gamma(field), "lambda": lam(field)}


@lru_cache(maxsize=None)
def modules(name: str, field: str = "gf2") -> dict[str, Module]:
    """Named indecomposables used for the per-algebra suites."""
    from .modrep import projective, regular, simple

    if name == "lambda":
        return lambda_modules(field)
    if name == "keps":
        A = keps(field)
        return {"S": simple(A, 0), "A": regular(A)}
    if name == "gamma":
        A = gamma(field)
        return {"1": simple(A, 0), "2": simple(A, 1), "2/1": projective(A, 1)}
    raise KeyError(f"no module list for {name!r}")


def lambda_bridge(field: str = "gf2"):
    """Matrix of the isomorphism from the presented algebra onto k[eps] (x) Gamma."""
    from .algebra import presentation_map

    L = lam(field)
    T = lambda_as_tensor(field)
    images = {
        "1": T.basis_vector(T.index("(e_1,e_1)")),
        "2": T.basis_vector(T.index("(e_1,e_2)")),
        "eps1": T.basis_vector(T.index("(eps,e_1)")),
        "eps2": T.basis_vector(T.index("(eps,e_2)")),
        "alpha": T.basis_vector(T.index("(e_1,alpha)")),
    }
    return presentation_map(L, T, images)


def _fact(key: str, value, origin: str) -> dict:
    return {"fact": key, "value": value, "origin": origin}


def expected_facts(name: str) -> list[dict]:
    """Stored expectations; ``origin`` is ``published`` for values read off the source
    example and ``derived`` for values produced by an independent oracle here."""
    if name == "lambda":
        out = [_fact("injective_dimension", 1, "published"),
               _fact("projective_injective_count", 1, "published"),
               _fact("gp_count", 5, "derived"),
               _fact("indecomposable_count", 9, "published")]
        out += [_fact(f"gp:{m}", m in LAMBDA_GP, "published") for m in LAMBDA_MODULES]
        out += [_fact(f"ginj:{m}", m in LAMBDA_GINJ, "published") for m in LAMBDA_MODULES]
        out += [_fact(f"tau:{x}", y, "derived") for x, y in sorted(LAMBDA_TAU.items())]
        return out
    if name == "keps":
        return [_fact("injective_dimension", 0, "derived"), _fact("tau:S", "S", "derived")]
    if name == "gamma":
        return [_fact("injective_dimension", 1, "derived"), _fact("tau:2", "1", "derived")]
    raise KeyError(name)

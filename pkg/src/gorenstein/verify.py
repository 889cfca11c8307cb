"""Verification suites over the bundled corpus; each check is a plain dict."""
from __future__ import annotations

import itertools

from . import corpus
from .algebra import is_algebra_isomorphism, tensor
from .homology import (
    AboveBound,
    NotWithinBound,
    ext,
    inj_dimension,
    is_gorenstein,
    min_proj_resolution,
    nakayama,
    proj_dimension,
    tau,
)
from .hochschild import center_dim, hh, kos_swap_check
from .modrep import (
    Module,
    is_injective,
    is_projective,
    iso_test,
    projective,
    regular,
    tensor_module,
)
from .stable import (
    costable_hom,
    gp_approximation,
    happel_check,
    is_gorenstein_injective,
    is_gorenstein_projective,
    serre_duality_check,
    serre_functor,
    serre_functor_via_tau,
    sigma2_dtr_check,
    stable_dim,
    stable_hom,
    tate_hom,
)

EXPECTED_GORENSTEIN = {"keps": 0, "gamma": 1, "lambda": 1}
CORPUS_ALGEBRAS = ("keps", "gamma", "lambda")


def _json_value(v):
    if isinstance(v, AboveBound):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    return v


def check(name: str, lhs, rhs, operation: str, inputs, ok: bool | None = None) -> dict:
    if ok is None:
        ok = lhs == rhs
    return {"name": name, "status": "pass" if ok else "fail", "lhs": _json_value(lhs),
            "rhs": _json_value(rhs), "operation": operation, "inputs": inputs}


def skipped(name: str, operation: str, inputs, reason: str) -> dict:
    return {"name": name, "status": "skipped", "lhs": None, "rhs": None, "operation": operation,
            "inputs": inputs, "reason": reason}


def identify(m: Module, named: dict[str, Module]) -> str:
    if m.dim == 0:
        return "0"
    for n, x in named.items():
        if iso_test(m, x):
            return n
    return f"unlisted(dim={m.dim})"


def gp_names(name: str, field: str) -> list[str]:
    mods = corpus.modules(name, field)
    return [n for n, m in mods.items() if is_gorenstein_projective(m)]


def ginj_names(name: str, field: str) -> list[str]:
    mods = corpus.modules(name, field)
    return [n for n, m in mods.items() if is_gorenstein_injective(m)]


# -- suites ------------------------------------------------------------------------


def suite_gorenstein(field: str, bound: int) -> list[dict]:
    out = []
    for name in CORPUS_ALGEBRAS:
        A = corpus.algebra(f"{name}_{field}")
        try:
            d = is_gorenstein(A, bound)
        except NotWithinBound:
            d = AboveBound(bound)
        out.append(check(f"gorenstein/{name}", d, EXPECTED_GORENSTEIN[name], "is_gorenstein",
                         {"algebra": name, "bound": bound}))
    ok = is_algebra_isomorphism(corpus.lam(field), corpus.lambda_as_tensor(field), corpus.lambda_bridge(field))
    out.append(check("gorenstein/lambda-as-tensor-bridge", ok, True, "is_algebra_isomorphism",
                     {"algebra": "lambda"}))
    d_t = is_gorenstein(corpus.lambda_as_tensor(field), bound)
    out.append(check("gorenstein/lambda-as-tensor", d_t, EXPECTED_GORENSTEIN["lambda"], "is_gorenstein",
                     {"algebra": "keps*gamma"}))
    return out


def suite_zaks(field: str, bound: int) -> list[dict]:
    out = []
    algs = {n: corpus.algebra(f"{n}_{field}") for n in CORPUS_ALGEBRAS}
    algs["keps*keps"] = corpus.tensor_square(f"keps_{field}")
    algs["gamma*gamma"] = corpus.tensor_square(f"gamma_{field}")
    for name, A in algs.items():
        left = inj_dimension(regular(A), bound)
        right = inj_dimension(regular(A.opposite()), bound)
        out.append(check(f"zaks/{name}", left, right, "inj_dimension", {"algebra": name, "bound": bound}))
    for name in CORPUS_ALGEBRAS:
        A = algs[name]
        self_inj = is_injective(regular(A))
        out.append(check(f"zaks/ginj-regular/{name}", is_gorenstein_injective(regular(A)), self_inj,
                         "is_gorenstein_injective", {"algebra": name}))
    return out


def suite_tensor(field: str, bound: int = 6) -> list[dict]:
    out = []
    algs = {n: corpus.algebra(f"{n}_{field}") for n in CORPUS_ALGEBRAS}
    for a, b in itertools.product(CORPUS_ALGEBRAS, repeat=2):
        T = tensor(algs[a], algs[b])
        lhs = is_gorenstein(T, bound)
        rhs = is_gorenstein(algs[a], bound) + is_gorenstein(algs[b], bound)
        out.append(check(f"tensor/{a}*{b}", lhs, rhs, "is_gorenstein", {"pair": [a, b], "bound": bound}))
    return out


def cauchy(p: list[int], q: list[int], upto: int) -> list[int]:
    return [sum(p[i] * q[n - i] for i in range(n + 1) if i < len(p) and n - i < len(q)) for n in range(upto + 1)]


def _padded_dims(m: Module, upto: int) -> list[int]:
    dims = min_proj_resolution(m, upto).term_dims()
    return dims + [0] * (upto + 1 - len(dims))


TENSOR_PAIRS = (("1", "S"), ("2", "S"), ("2/1", "S"), ("2", "A"))


def suite_minimality(field: str, upto: int = 3) -> list[dict]:
    out = []
    G, K = corpus.gamma(field), corpus.keps(field)
    GK = tensor(G, K)
    gm, km = corpus.modules("gamma", field), corpus.modules("keps", field)
    for a, b in TENSOR_PAIRS:
        m, n = gm[a], km[b]
        lhs = _padded_dims(tensor_module(m, n, GK), upto)
        rhs = cauchy(_padded_dims(m, upto), _padded_dims(n, upto), upto)
        out.append(check(f"minimality/{a}x{b}", lhs, rhs, "min_proj_resolution", {"pair": [a, b], "degrees": upto}))
    return out


def suite_classify(field: str, bound: int) -> list[dict]:
    out = []
    mods = corpus.lambda_modules(field)
    rows = classify_rows(mods, bound)
    for name, row in rows.items():
        out.append(check(f"classify/{name}/GP", row["gp"], name in corpus.LAMBDA_GP, "is_gorenstein_projective",
                         {"module": name}))
        out.append(check(f"classify/{name}/GInj", row["ginj"], name in corpus.LAMBDA_GINJ,
                         "is_gorenstein_injective", {"module": name}))
        out.append(check(f"classify/{name}/indecomposable", row["indecomposable"], True, "is_indecomposable",
                         {"module": name}))
    both = sorted(n for n, r in rows.items() if r["projective"] and r["injective"])
    out.append(check("classify/projective-injective-count", len(both), 1, "is_projective", {}))
    out.append(check("classify/gp-count", sum(r["gp"] for r in rows.values()), 5, "is_gorenstein_projective", {}))
    three = sorted(n for n, r in rows.items() if r["gp"] and r["ginj"] and not isinstance(r["pd"], str))
    out.append(check("classify/three-classes-iff-proj-inj", three, both, "is_gorenstein_projective", {}))
    out.append(check("classify/S1-gp-not-ginj", [rows["1"]["gp"], rows["1"]["ginj"]], [True, False],
                     "is_gorenstein_projective", {"module": "1"}))
    out.append(check("classify/S2-ginj-not-gp", [rows["2"]["gp"], rows["2"]["ginj"]], [False, True],
                     "is_gorenstein_injective", {"module": "2"}))
    names = list(mods)
    iso_pairs = [[a, b] for a, b in itertools.combinations(names, 2) if iso_test(mods[a], mods[b])]
    out.append(check("classify/pairwise-non-isomorphic", iso_pairs, [], "iso_test", {}))
    return out


def classify_rows(mods: dict[str, Module], bound: int) -> dict[str, dict]:
    from .modrep import is_indecomposable
    rows = {}
    for name, m in mods.items():
        rows[name] = {
            "dim": m.dim,
            "indecomposable": is_indecomposable(m),
            "gp": is_gorenstein_projective(m, bound),
            "ginj": is_gorenstein_injective(m, bound),
            "pd": _json_value(proj_dimension(m, bound)),
            "id": _json_value(inj_dimension(m, bound)),
            "projective": is_projective(m),
            "injective": is_injective(m),
        }
    return rows


def tau_table(mods: dict[str, Module]) -> dict[str, str]:
    table = {}
    for name, m in mods.items():
        if is_projective(m):
            continue
        table[name] = identify(tau(m), mods)
    return table


def suite_tau(field: str) -> list[dict]:
    out = []
    mods = corpus.lambda_modules(field)
    table = tau_table(mods)
    for name in mods:
        if name in corpus.LAMBDA_PROJECTIVE:
            out.append(check(f"tau/{name}", identify(tau(mods[name]), mods), "0", "tau", {"module": name}))
            continue
        out.append(check(f"tau/{name}", table[name], corpus.LAMBDA_TAU[name], "tau", {"module": name}))
    km = corpus.modules("keps", field)
    out.append(check("tau/keps/S", identify(tau(km["S"]), km), "S", "tau", {"algebra": "keps"}))
    return out


def suite_dtr(field: str) -> list[dict]:
    mods = corpus.lambda_modules(field)
    return [check(f"dtr/{n}", sigma2_dtr_check(mods[n]), True, "sigma2_dtr_check", {"module": n})
            for n in gp_names("lambda", field)]


def suite_serre(field: str) -> list[dict]:
    out = []
    for alg in CORPUS_ALGEBRAS:
        mods = corpus.modules(alg, field)
        gp = gp_names(alg, field)
        for x in gp:
            F1 = serre_functor(mods[x])
            F2 = serre_functor_via_tau(mods[x])
            same = iso_test(F1, F2) if F1.dim or F2.dim else True
            out.append(check(f"serre/{alg}/functor/{x}", same, True, "serre_functor", {"module": x}))
        for x, y in itertools.product(gp, repeat=2):
            rep = serre_duality_check(mods[x], mods[y])
            out.append(check(f"serre/{alg}/{x},{y}", [rep["dim_hom_x_y"], rep["left_nondegenerate"]],
                             [rep["dim_hom_y_Fx"], True], "serre_duality_check", {"pair": [x, y]}))
    return out


def suite_uhom(field: str) -> list[dict]:
    out = []
    for alg in CORPUS_ALGEBRAS:
        mods = corpus.modules(alg, field)
        for x, y in itertools.product(gp_names(alg, field), ginj_names(alg, field)):
            out.append(check(f"uhom/{alg}/{x},{y}", stable_hom(mods[x], mods[y]).stable_dim,
                             costable_hom(mods[x], mods[y]).stable_dim, "stable_hom", {"pair": [x, y]}))
    return out


def suite_approximation(field: str, bound: int) -> list[dict]:
    out = []
    for alg in CORPUS_ALGEBRAS:
        mods = corpus.modules(alg, field)
        gp = gp_names(alg, field)
        for name, m in mods.items():
            try:
                ap = gp_approximation(m, bound)
                ok = True
            except AssertionError as exc:
                out.append(check(f"approx/{alg}/{name}", str(exc), "valid", "gp_approximation",
                                 {"module": name}, ok=False))
                continue
            lhs = [stable_dim(mods[t], ap.x) for t in gp]
            rhs = [stable_dim(mods[t], m) for t in gp]
            out.append(check(f"approx/{alg}/{name}", lhs, rhs, "gp_approximation",
                             {"module": name, "tests": gp}, ok=ok and lhs == rhs))
    return out


def suite_happel(field: str) -> list[dict]:
    out = []
    for alg in CORPUS_ALGEBRAS:
        A = corpus.algebra(f"{alg}_{field}")
        for v, w in itertools.product(range(A.n_vertices), repeat=2):
            rep = happel_check(projective(A, v), projective(A, w))
            out.append(check(f"happel/{alg}/P{v + 1},P{w + 1}", [rep["dim_hom_p_q"], rep["higher_ext_vanish"]],
                             [rep["dim_hom_q_nu_p"], True], "happel_check", {"pair": [v + 1, w + 1]}))
    return out


def suite_tate(field: str, degrees: int = 3) -> list[dict]:
    out = []
    for alg in CORPUS_ALGEBRAS:
        mods = corpus.modules(alg, field)
        gp = gp_names(alg, field)
        for x, y in itertools.product(gp, repeat=2):
            lhs = [tate_hom(mods[x], mods[y], i) for i in range(1, degrees + 1)]
            rhs = [ext(mods[x], mods[y], i) for i in range(1, degrees + 1)]
            out.append(check(f"tate/{alg}/{x},{y}", lhs, rhs, "tate_hom", {"pair": [x, y], "degrees": degrees}))
    return out


def suite_kos(field: str, max_degree: int) -> list[dict]:
    out = []
    for alg in ("keps", "lambda"):
        A = corpus.algebra(f"{alg}_{field}")
        mods = corpus.modules(alg, field)
        gp = gp_names(alg, field)
        _, classes = hh(A, 1, max_degree)
        for k, b in enumerate(classes):
            for x, y in itertools.product(gp, repeat=2):
                rep = kos_swap_check(mods[x], mods[y], b)
                out.append(check(f"kos/{alg}/b{k}/{x},{y}", rep["lhs"], rep["rhs"], "kos_swap_check",
                                 {"pair": [x, y], "class": k}))
    return out


def suite_hochschild(field: str, max_degree: int) -> list[dict]:
    out = []
    for alg in CORPUS_ALGEBRAS:
        A = corpus.algebra(f"{alg}_{field}")
        out.append(check(f"hh/{alg}/0", hh(A, 0, max_degree)[0], center_dim(A), "hh", {"algebra": alg}))
    return out


SUITES = {
    "gorenstein": lambda cfg: suite_gorenstein(cfg["field"], cfg["bound"]),
    "zaks": lambda cfg: suite_zaks(cfg["field"], cfg["bound"]),
    "tensor": lambda cfg: suite_tensor(cfg["field"], min(cfg["bound"], 6)),
    "minimality": lambda cfg: suite_minimality(cfg["field"]),
    "classify": lambda cfg: suite_classify(cfg["field"], cfg["bound"]),
    "tau": lambda cfg: suite_tau(cfg["field"]),
    "dtr": lambda cfg: suite_dtr(cfg["field"]),
    "serre": lambda cfg: suite_serre(cfg["field"]),
    "uhom": lambda cfg: suite_uhom(cfg["field"]),
    "approximation": lambda cfg: suite_approximation(cfg["field"], cfg["bound"]),
    "happel": lambda cfg: suite_happel(cfg["field"]),
    "tate": lambda cfg: suite_tate(cfg["field"]),
    "kos": lambda cfg: suite_kos(cfg["field"], cfg["max_degree"]),
    "hochschild": lambda cfg: suite_hochschild(cfg["field"], cfg["max_degree"]),
}

"""Command line front end: ``gorenstein <command> [options]``."""
from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
import time
from pathlib import Path

from . import cache, corpus, verify
from .algebra import Algebra, InvalidAlgebra, NotAdmissible, NotNilpotent, tensor
from .exactlin import parse_field
from .homology import AboveBound, NotWithinBound, inj_dimension, tau, ZaksViolation
from .modrep import (BudgetExceeded, Module, RepresentationError, is_projective, projective, regular,
                     set_default_seed)
from .serialize import FormatError, _read_json, algebra_from_json, module_from_json

EXIT_OK, EXIT_PARSE, EXIT_INVARIANT, EXIT_BOUND, EXIT_CHECK = 0, 2, 3, 4, 5
INVARIANT_ERRORS = (InvalidAlgebra, NotAdmissible, NotNilpotent, RepresentationError)


class UsageError(Exception):
    pass


def tool_version() -> str:
    from importlib.metadata import PackageNotFoundError, version
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "0+unknown"


def field_suffix(field: str) -> str:
    f = parse_field(field)
    return "gf2" if f.to_json() == {"kind": "prime", "p": 2} else "q"


# -- resolving arguments ----------------------------------------------------------------


def resolve_algebra(ref: str, field: str) -> tuple[str, Algebra]:
    """Corpus name, ``a*b`` tensor of two specs, or a JSON file."""
    if "*" in ref and not os.path.exists(ref):
        left, right = ref.split("*", 1)
        (na, a), (nb, b) = resolve_algebra(left, field), resolve_algebra(right, field)
        return f"{na}*{nb}", tensor(a, b, name=f"{na}*{nb}")
    if ref in verify.CORPUS_ALGEBRAS:
        return ref, corpus.algebra(f"{ref}_{field_suffix(field)}")
    path = Path(ref)
    if not path.exists():
        raise FileNotFoundError(ref)
    d = _read_json(path)
    return d.get("name", path.stem), algebra_from_json(d, name=d.get("name", path.stem))


def resolve_modules(name: str, A: Algebra, field: str, path: str | None) -> dict[str, Module]:
    if path:
        d = _read_json(path)
        entries = d["modules"] if "modules" in d else [d]
        base = os.path.dirname(os.path.abspath(path))
        return {e.get("name", f"M{i}"): module_from_json(e, A, base_dir=base) for i, e in enumerate(entries)}
    if name in verify.CORPUS_ALGEBRAS:
        return corpus.modules(name, field_suffix(field))
    out = {}
    for v in range(A.n_vertices):
        out[f"P{v + 1}"] = projective(A, v)
    return out


# -- output helpers ---------------------------------------------------------------------


def emit(args, payload: dict, table: list[list] | None = None, header: list[str] | None = None) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
        return
    if table is not None:
        print(render_table(header or [], table))
    for k in ("summary", "message"):
        if k in payload:
            print(f"{k}: {payload[k]}")


def render_table(header: list[str], rows: list[list]) -> str:
    cells = [[str(c) for c in header]] + [[_cell(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(cells[0]))] if cells[0] else []
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    if header:
        lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _cell(c) -> str:
    if isinstance(c, bool):
        return "yes" if c else "no"
    return str(c)


def checks_exit(checks: list[dict]) -> int:
    return EXIT_CHECK if any(c["status"] == "fail" for c in checks) else EXIT_OK


def checks_payload(suite: str, checks: list[dict]) -> dict:
    checks = sorted(checks, key=lambda c: c["name"])
    counts = {s: sum(c["status"] == s for c in checks) for s in ("pass", "fail", "skipped")}
    counts["total"] = len(checks)
    return {"suite": suite, "checks": checks, "summary": counts}


def emit_checks(args, suite: str, checks: list[dict]) -> int:
    payload = checks_payload(suite, checks)
    rows = [[c["name"], c["status"], c["lhs"], c["rhs"]] for c in payload["checks"]]
    emit(args, payload, rows, ["check", "status", "lhs", "rhs"])
    return checks_exit(checks)


# -- commands ---------------------------------------------------------------------------


def _validate_one(path: str) -> tuple[int, str]:
    try:
        d = _read_json(path)
        if "modules" in d:
            A = algebra_from_json(_read_json(os.path.join(os.path.dirname(os.path.abspath(path)), d["algebra"]))) \
                if isinstance(d.get("algebra"), str) else algebra_from_json(d["algebra"])
            ms = [module_from_json(e, A) for e in d["modules"]]
            return EXIT_OK, f"{len(ms)} modules over an algebra of dimension {A.dim}"
        if "dim" in d and "action" in d:
            m = module_from_json(d, None, base_dir=os.path.dirname(os.path.abspath(path)))
            return EXIT_OK, f"module of dimension {m.dim}, dimension vector {m.dim_vector}"
        A = algebra_from_json(d)
        return EXIT_OK, f"algebra of dimension {A.dim} with {A.n_vertices} vertices"
    except (OSError, FormatError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, INVARIANT_ERRORS):
            return EXIT_INVARIANT, f"invariant violated: {exc}"
        return EXIT_PARSE, f"parse error: {exc}"
    except INVARIANT_ERRORS as exc:
        return EXIT_INVARIANT, f"invariant violated: {exc}"


def cmd_validate(args) -> int:
    worst = EXIT_OK
    results = []
    for p in args.paths:
        code, msg = _validate_one(p)
        results.append({"path": p, "exit": code, "message": msg})
        if code == EXIT_PARSE or (code == EXIT_INVARIANT and worst == EXIT_OK):
            worst = code
    if args.json:
        print(json.dumps({"files": results}, indent=2, sort_keys=True))
    else:
        for r in results:
            print(f"{r['path']}: {r['message']}")
    return worst


def cmd_gorenstein(args) -> int:
    name, A = resolve_algebra(args.algebra, args.field)
    left = inj_dimension(regular(A), args.bound)
    right = inj_dimension(regular(A.opposite()), args.bound)
    payload = {"algebra": name, "bound": args.bound, "left": str(left) if isinstance(left, AboveBound) else left,
               "right": str(right) if isinstance(right, AboveBound) else right}
    if isinstance(left, AboveBound) or isinstance(right, AboveBound):
        payload["message"] = f"injective dimension not within bound {args.bound}"
        code = EXIT_BOUND
    elif left != right:
        payload["message"] = "left and right injective dimensions differ"
        code = EXIT_CHECK
    else:
        payload["gorenstein_dimension"] = left
        payload["message"] = f"Gorenstein of dimension {left}"
        code = EXIT_OK
    emit(args, payload, [[name, payload["left"], payload["right"]]], ["algebra", "inj.dim left", "inj.dim right"])
    return code


def cmd_classify(args) -> int:
    name, A = resolve_algebra(args.algebra, args.field)
    mods = resolve_modules(name, A, args.field, args.modules)
    rows = {}
    for n, m in mods.items():
        try:
            rows[n] = verify.classify_rows({n: m}, args.bound)[n]
        except BudgetExceeded:
            rows[n] = {"skipped": True}
    checks = []
    good = {n: r for n, r in rows.items() if not r.get("skipped")}
    both = sorted(n for n, r in good.items() if r["projective"] and r["injective"])
    three = sorted(n for n, r in good.items() if r["gp"] and r["ginj"] and not isinstance(r["pd"], str))
    checks.append(verify.check("classify/three-classes-iff-proj-inj", three, both, "is_gorenstein_projective", {}))
    if name == "lambda" and not args.modules:
        checks.extend(c for c in verify.suite_classify(field_suffix(args.field), args.bound)
                      if c["name"] != "classify/three-classes-iff-proj-inj")
    payload = checks_payload(f"classify/{name}", checks)
    payload["rows"] = rows
    cols = ["dim", "indecomposable", "gp", "ginj", "pd", "id", "projective", "injective"]
    table = [[n] + (["skipped"] * len(cols) if r.get("skipped") else [r[c] for c in cols]) for n, r in rows.items()]
    emit(args, payload, table, ["module"] + cols)
    for c in payload["checks"]:
        if c["status"] == "fail":
            print(f"MISMATCH {c['name']}: computed {c['lhs']}, expected {c['rhs']}", file=sys.stderr)
    return checks_exit(checks)


def tau_dot(name: str, mods: dict[str, Module], table: dict[str, str]) -> str:
    lines = [f'digraph "{name}" {{']
    for n in mods:
        lines.append(f'  "{n}";')
    for x, y in table.items():
        if y != "0":
            lines.append(f'  "{x}" -> "{y}" [style=dotted];')
    lines.append("}")
    return "\n".join(lines)


def cmd_tau(args) -> int:
    name, A = resolve_algebra(args.algebra, args.field)
    mods = resolve_modules(name, A, args.field, args.modules)
    table = {}
    for n, m in mods.items():
        table[n] = "0" if is_projective(m) else verify.identify(tau(m), mods)
    if args.dot:
        print(tau_dot(name, mods, table))
        return EXIT_OK
    payload = {"algebra": name, "tau": table}
    emit(args, payload, [[x, y] for x, y in table.items()], ["module", "tau"])
    return EXIT_OK


def cmd_ar_verify(args) -> int:
    name, A = resolve_algebra(args.algebra, args.field)
    if name not in verify.CORPUS_ALGEBRAS:
        raise UsageError("ar-verify needs a corpus algebra")
    mods = corpus.modules(name, field_suffix(args.field))
    checks = []
    for fact in corpus.expected_facts(name):
        if not fact["fact"].startswith("tau:"):
            continue
        x = fact["fact"][4:]
        got = verify.identify(tau(mods[x]), mods)
        checks.append(verify.check(f"ar/{name}/{x}", got, fact["value"], "tau", {"module": x, "origin": fact["origin"]}))
    return emit_checks(args, f"ar-verify/{name}", checks)


def _pairs(ref: str, gp: list[str]) -> list[tuple[str, str]]:
    if ref == "all":
        return list(itertools.product(gp, repeat=2))
    out = []
    for item in ref.split(";"):
        x, y = item.split(",")
        out.append((x.strip(), y.strip()))
    return out


def cmd_serre(args) -> int:
    from .modrep import iso_test
    from .stable import is_gorenstein_projective, serre_duality_check, serre_functor, serre_functor_via_tau
    name, A = resolve_algebra(args.algebra, args.field)
    mods = resolve_modules(name, A, args.field, args.modules)
    gp = [n for n, m in mods.items() if is_gorenstein_projective(m, args.bound)]
    checks = []
    for x in gp:
        F1, F2 = serre_functor(mods[x], args.bound), serre_functor_via_tau(mods[x], args.bound)
        same = iso_test(F1, F2) if (F1.dim or F2.dim) else True
        checks.append(verify.check(f"serre/{name}/functor/{x}", same, True, "serre_functor", {"module": x}))
    for x, y in _pairs(args.pairs, gp):
        if x not in mods or y not in mods:
            raise UsageError(f"unknown module in pair {x},{y}")
        rep = serre_duality_check(mods[x], mods[y], args.bound)
        checks.append(verify.check(f"serre/{name}/{x},{y}", [rep["dim_hom_x_y"], rep["left_nondegenerate"]],
                                   [rep["dim_hom_y_Fx"], True], "serre_duality_check", {"pair": [x, y]}))
    return emit_checks(args, f"serre/{name}", checks)


def cmd_happel(args) -> int:
    from .stable import happel_check
    name, A = resolve_algebra(args.algebra, args.field)
    checks = []
    for v, w in itertools.product(range(A.n_vertices), repeat=2):
        rep = happel_check(projective(A, v), projective(A, w))
        checks.append(verify.check(f"happel/{name}/P{v + 1},P{w + 1}",
                                   [rep["dim_hom_p_q"], rep["higher_ext_vanish"]],
                                   [rep["dim_hom_q_nu_p"], True], "happel_check", {"pair": [v + 1, w + 1]}))
    return emit_checks(args, f"happel/{name}", checks)


def cmd_kos(args) -> int:
    from .hochschild import hh, kos_swap_check
    from .stable import is_gorenstein_projective
    name, A = resolve_algebra(args.algebra, args.field)
    mods = resolve_modules(name, A, args.field, args.modules)
    if args.module not in mods:
        raise UsageError(f"unknown module {args.module!r}; known: {', '.join(mods)}")
    x = mods[args.module]
    if not is_gorenstein_projective(x, args.bound):
        raise UsageError(f"{args.module} is not Gorenstein projective")
    gp = [n for n, m in mods.items() if is_gorenstein_projective(m, args.bound)]
    _, classes = hh(A, args.degree, args.max_degree)
    checks = []
    for k, b in enumerate(classes):
        for y in gp:
            rep = kos_swap_check(x, mods[y], b, args.bound)
            checks.append(verify.check(f"kos/{name}/b{k}/{args.module},{y}", rep["lhs"], rep["rhs"],
                                       "kos_swap_check", {"pair": [args.module, y], "class": k,
                                                          "degree": args.degree}))
    return emit_checks(args, f"kos/{name}", checks)


def cmd_hochschild(args) -> int:
    from .hochschild import center_dim, hh
    name, A = resolve_algebra(args.algebra, args.field)
    dims = [hh(A, n, args.max_degree)[0] for n in range(args.max_degree + 1)]
    payload = {"algebra": name, "dims": dims, "center_dim": center_dim(A)}
    checks = [verify.check(f"hh/{name}/0", dims[0], payload["center_dim"], "hh", {"algebra": name})]
    payload.update(checks_payload(f"hochschild/{name}", checks))
    emit(args, payload, [[n, d] for n, d in enumerate(dims)], ["degree", "dim HH"])
    return checks_exit(checks)


def build_report(field: str, bound: int, seed: int, max_degree: int, suites=None) -> dict:
    cfg = {"field": field_suffix(field), "bound": bound, "max_degree": max_degree}
    names = list(suites or verify.SUITES)
    t0 = time.perf_counter()
    checks = []
    for s in names:
        checks.extend(verify.SUITES[s](cfg))
    payload = checks_payload("all" if suites is None else ",".join(names), checks)
    payload.update({"seed": seed, "tool_version": tool_version(), "config": cfg, "suites": names,
                    "timing": {"wall_seconds": round(time.perf_counter() - t0, 3)}})
    return payload


def report_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, default=str)


def cmd_report(args) -> int:
    suites = args.suites.split(",") if args.suites else None
    if suites:
        unknown = [s for s in suites if s not in verify.SUITES]
        if unknown:
            raise UsageError(f"unknown suites {unknown}; known: {', '.join(verify.SUITES)}")
    payload = build_report(args.field, args.bound, args.seed, args.max_degree, suites)
    text = report_json(payload)
    if args.output:
        Path(args.output).write_text(text + "\n")
    if args.json:
        print(text)
    else:
        per_suite = {}
        for c in payload["checks"]:
            key = c["name"].split("/")[0]
            per_suite.setdefault(key, {"pass": 0, "fail": 0, "skipped": 0})[c["status"]] += 1
        rows = [[k, v["pass"], v["fail"], v["skipped"]] for k, v in sorted(per_suite.items())]
        print(render_table(["suite", "pass", "fail", "skipped"], rows))
        for c in payload["checks"]:
            if c["status"] == "fail":
                print(f"FAIL {c['name']}: lhs={c['lhs']} rhs={c['rhs']}")
        print(f"summary: {payload['summary']}")
    return checks_exit(payload["checks"])


def cmd_enumerate(args) -> int:
    from .census import count_indecomposables
    name, A = resolve_algebra(args.algebra, args.field)
    caps = tuple(int(c) for c in args.caps.split(","))
    if len(caps) != A.n_vertices:
        raise UsageError(f"need {A.n_vertices} caps")
    counts = count_indecomposables(A, caps)
    total = sum(counts.values())
    payload = {"algebra": name, "caps": list(caps), "counts": {",".join(map(str, k)): v for k, v in counts.items()},
               "total": total}
    checks = []
    if args.expect is not None:
        checks.append(verify.check(f"enumerate/{name}", total, args.expect, "count_indecomposables",
                                   {"caps": list(caps)}))
        payload.update(checks_payload(f"enumerate/{name}", checks))
    emit(args, payload, [[k, v] for k, v in payload["counts"].items()] + [["total", total]],
         ["dimension vector", "indecomposables"])
    return checks_exit(checks)


# -- parser -----------------------------------------------------------------------------


def default_cache_dir() -> Path:
    env = os.environ.get("GORENSTEIN_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "gorenstein"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=argparse.SUPPRESS, help="GF(2) (default) or Q, for corpus algebras")
    common.add_argument("--bound", type=int, default=argparse.SUPPRESS, help="resolution length bound (8)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--max-degree", type=int, default=argparse.SUPPRESS, help="Hochschild degree cap (4)")
    common.add_argument("--no-cache", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="gorenstein", parents=[common],
                                description="Exact homological checks for finite-dimensional Gorenstein algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("validate", cmd_validate, "parse and check algebra/module files")
    sp.add_argument("paths", nargs="+")
    for name, func, help_ in (("gorenstein", cmd_gorenstein, "injective dimensions on both sides"),
                              ("happel", cmd_happel, "Hom(P,Q) versus Hom(Q, nu P)"),
                              ("hochschild", cmd_hochschild, "Hochschild cohomology dimensions"),
                              ("ar-verify", cmd_ar_verify, "check stored tau pairs")):
        add(name, func, help_).add_argument("algebra")
    for name, func, help_ in (("classify", cmd_classify, "GP/GInj classification table"),
                              ("tau", cmd_tau, "Auslander-Reiten translates")):
        sp = add(name, func, help_)
        sp.add_argument("algebra")
        sp.add_argument("--modules", help="JSON file with a module list")
        if name == "tau":
            sp.add_argument("--dot", action="store_true", help="emit the tau graph in DOT")
    sp = add("serre", cmd_serre, "Serre duality on GP pairs")
    sp.add_argument("algebra")
    sp.add_argument("--pairs", default="all", help='"all" or "X,Y;X2,Y2"')
    sp.add_argument("--modules")
    sp = add("kos", cmd_kos, "Koszul object swap identity")
    sp.add_argument("algebra")
    sp.add_argument("module")
    sp.add_argument("degree", type=int)
    sp.add_argument("--modules")
    sp = add("report", cmd_report, "run every suite and emit a verification report")
    sp.add_argument("--output", help="also write the JSON report here")
    sp.add_argument("--suites", help="comma separated subset of suites")
    sp = add("enumerate", cmd_enumerate, "brute-force indecomposable count over GF(2); slow")
    sp.add_argument("algebra")
    sp.add_argument("--caps", required=True, help="per-vertex dimension caps, e.g. 2,2")
    sp.add_argument("--expect", type=int)
    return p


DEFAULTS = {"field": "GF(2)", "bound": 8, "seed": 0, "max_degree": 4, "no_cache": False, "json": False}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else EXIT_OK
    for k, v in DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    previous = cache.active()
    if args.no_cache:
        cache.disable()
    else:
        cache.enable(default_cache_dir())
    set_default_seed(args.seed)
    try:
        parse_field(args.field)
        return args.func(args)
    except (FileNotFoundError, FormatError, UsageError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except INVARIANT_ERRORS as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except NotWithinBound as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except ZaksViolation as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    finally:
        if previous is None:
            cache.disable()
        else:
            cache._active = previous


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()

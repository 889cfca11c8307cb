"""JSON formats for algebras, modules and module maps."""
from __future__ import annotations

import json
import os
from pathlib import Path

import numpy as np

from .algebra import Algebra, QuiverPresentation, from_presentation, from_structure_constants
from .exactlin import Matrix, field_from_json
from .modrep import Module, ModuleMap, module_from_generators


class FormatError(ValueError):
    pass


def presentation_from_json(d: dict) -> QuiverPresentation:
    try:
        F = field_from_json(d["field"])
        vertices = tuple(str(v) for v in d["vertices"])
        arrows = tuple((a["name"], str(a["from"]), str(a["to"])) for a in d.get("arrows", []))
        rels = []
        for rel in d.get("relations", []):
            rels.append(tuple((F.element(t.get("coeff", 1)), tuple(t["path"])) for t in rel))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed algebra description: {exc}") from None
    return QuiverPresentation(F, vertices, arrows, tuple(rels))


def presentation_to_json(q: QuiverPresentation) -> dict:
    return {
        "field": q.field.to_json(),
        "vertices": list(q.vertices),
        "arrows": [{"name": n, "from": s, "to": t} for n, s, t in q.arrows],
        "relations": [[{"coeff": q.field.encode(c), "path": list(p)} for c, p in rel] for rel in q.relations],
    }


def algebra_from_json(d: dict, name: str = "") -> Algebra:
    """Quiver presentation, or explicit structure constants when ``"mult"`` is present."""
    name = name or d.get("name", "")
    if "mult" in d:
        try:
            F = field_from_json(d["field"])
            labels = list(d["labels"])
            pos = {lbl: i for i, lbl in enumerate(labels)}
            idem = [pos[x] if isinstance(x, str) else int(x) for x in d["idempotents"]]
            rad = [pos[x] if isinstance(x, str) else int(x) for x in d["radical"]]
            mult = F.array(d["mult"])
            unit = F.array(d["unit"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"malformed structure constants: {exc}") from None
        n = len(labels)
        if mult.shape != (n, n, n) or unit.shape != (n,):
            raise FormatError("structure constant shapes do not match the labels")
        return from_structure_constants(F, labels, mult, unit, idem, rad, d.get("vertex_labels"), name=name)
    return from_presentation(presentation_from_json(d), name=name)


def algebra_to_json(a: Algebra) -> dict:
    """Structure-constant form of any algebra."""
    F = a.field
    return {
        "name": a.name,
        "field": F.to_json(),
        "labels": list(a.labels),
        "vertex_labels": list(a.vertex_labels),
        "idempotents": [a.labels[i] for i in a.idempotents],
        "radical": [a.labels[i] for i in a.radical],
        "unit": [F.encode(x) for x in a.unit],
        "mult": [[[F.encode(x) for x in row] for row in plane] for plane in a.mult],
    }


def _read_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from None


def load_algebra(path) -> Algebra:
    d = _read_json(path)
    return algebra_from_json(d, name=d.get("name", Path(path).stem))


def _matrix(F, rows, dim) -> Matrix:
    m = Matrix.of(F, rows, shape=(dim, dim))
    if m.shape != (dim, dim):
        raise FormatError(f"action matrix has shape {m.shape}, expected {(dim, dim)}")
    return m


def module_from_json(d: dict, algebra: Algebra | None = None, base_dir=".") -> Module:
    if algebra is None:
        ref = d.get("algebra")
        if isinstance(ref, str):
            algebra = load_algebra(os.path.join(base_dir, ref))
        elif isinstance(ref, dict):
            algebra = algebra_from_json(ref)
        else:
            raise FormatError("module description needs an algebra")
    F = algebra.field
    try:
        dim = int(d["dim"])
        given = {algebra.index(lbl): _matrix(F, rows, dim) for lbl, rows in d.get("action", {}).items()}
    except (KeyError, ValueError, TypeError) as exc:
        raise FormatError(f"malformed module description: {exc}") from None
    name = d.get("name", "")
    if d.get("generators_only"):
        missing = [algebra.labels[i] for i in algebra.idempotents if i not in given]
        if missing:
            raise FormatError(f"generators_only needs every idempotent, missing {missing}")
        extra = [algebra.labels[i] for i in given if i not in algebra.generators]
        if extra:
            raise FormatError(f"generators_only data names non-generators {extra}")
        return module_from_generators(algebra, given, dim, name=name)
    missing = [algebra.labels[i] for i in range(algebra.dim) if i not in given]
    if missing:
        raise FormatError(f"action missing for basis elements {missing}")
    return Module(algebra, [given[i] for i in range(algebra.dim)], name=name)


def module_to_json(m: Module, algebra_ref=None) -> dict:
    F = m.field
    out = {
        "dim": m.dim,
        "action": {m.algebra.labels[i]: [[F.encode(x) for x in row] for row in m.action[i].a]
                   for i in range(m.algebra.dim)},
    }
    if m.name:
        out["name"] = m.name
    if algebra_ref is not None:
        out["algebra"] = algebra_ref
    return out


def load_module(path, algebra: Algebra | None = None) -> Module:
    d = _read_json(path)
    return module_from_json(d, algebra, base_dir=os.path.dirname(os.path.abspath(path)))


def matrix_to_json(m: Matrix) -> list:
    return [[m.field.encode(x) for x in row] for row in m.a]


def matrix_from_json(F, rows, shape) -> Matrix:
    return Matrix.of(F, rows, shape=shape)


def map_to_json(f: ModuleMap) -> dict:
    return {"source_dim": f.source.dim, "target_dim": f.target.dim, "matrix": matrix_to_json(f.matrix)}


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=_default)


def _default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    raise TypeError(f"not serialisable: {type(o)}")

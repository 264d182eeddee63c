"""On-disk document format: JSON with named, cross-referencing objects.

A document is a JSON object

    {"format_version": 1,
     "objects": {name: {"type": ..., ...}, ...},
     "main": name}

where entries reference each other by name.  Serialization is deterministic
(sorted keys, fixed list order, two-space indent), so parse(serialize(x))
round-trips and identical inputs produce byte-identical files.  Everything
is validated while loading: group axioms, homomorphism laws, action axioms,
and cocycle conditions where the format declares them (place generators and
gauge 3-cocycles).

Cochain values are stored flattened in lexicographic tuple order, module
coordinates fastest; groups are stored as row-major multiplication tables
whose element order defines every other table in the document.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .cochains import Cochain, differential
from .cstheory import GlobalDatum, PlaceDatum
from .groups import (
    FiniteGroup,
    GModuleAction,
    GroupHom,
    NotAGroupError,
    NotAHomError,
    make_group,
    make_hom,
)
from .zmod import ModuleOverZn

FORMAT_VERSION = 1


class ParseError(ValueError):
    """Syntax-level failure, carrying line and column when known."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ValidationError(ValueError):
    """Semantic failure while resolving a document, carrying a witness text."""


@dataclass
class Document:
    """Raw JSON-level entries plus their resolved, validated counterparts."""

    raw: dict[str, dict] = field(default_factory=dict)
    objects: dict[str, object] = field(default_factory=dict)
    main: str | None = None

    def resolve_main(self):
        if self.main is None:
            if len(self.objects) == 1:
                return next(iter(self.objects.values()))
            raise ValidationError("document has no 'main' and more than one object")
        if self.main not in self.objects:
            raise ValidationError(f"main points at unknown object {self.main!r}")
        return self.objects[self.main]

    def first_of_type(self, cls):
        for name in sorted(self.objects):
            if isinstance(self.objects[name], cls):
                return self.objects[name]
        raise ValidationError(f"document contains no {cls.__name__}")


# ---------------------------------------------------------------------------
# Encoding.


def _encode_obj(obj, names: dict[int, str], out: dict[str, dict], counters: dict[str, int]) -> str:
    key = id(obj)
    if key in names:
        return names[key]

    def fresh(kind: str) -> str:
        counters[kind] = counters.get(kind, 0) + 1
        return f"{kind}{counters[kind]}"

    if isinstance(obj, FiniteGroup):
        name = fresh("group")
        names[key] = name
        out[name] = {"type": "group", "order": obj.order, "mul": obj.mul.reshape(-1).tolist()}
    elif isinstance(obj, ModuleOverZn):
        name = fresh("module")
        names[key] = name
        out[name] = {"type": "module", "modulus": obj.modulus, "orders": list(obj.orders)}
    elif isinstance(obj, GroupHom):
        name = fresh("hom")
        names[key] = name
        out[name] = {
            "type": "hom",
            "dom": _encode_obj(obj.dom, names, out, counters),
            "cod": _encode_obj(obj.cod, names, out, counters),
            "map": obj.map.tolist(),
        }
    elif isinstance(obj, GModuleAction):
        name = fresh("action")
        names[key] = name
        entry = {
            "type": "action",
            "group": _encode_obj(obj.group, names, out, counters),
            "module": _encode_obj(obj.module, names, out, counters),
        }
        if obj.is_trivial():
            entry["trivial"] = True
        else:
            entry["matrices"] = obj.matrices.reshape(obj.group.order, -1).tolist()
        out[name] = entry
    elif isinstance(obj, Cochain):
        name = fresh("cochain")
        names[key] = name
        out[name] = {
            "type": "cochain",
            "action": _encode_obj(obj.coeffs, names, out, counters),
            "degree": obj.degree,
            "values": obj.values.reshape(-1).tolist(),
        }
    elif isinstance(obj, PlaceDatum):
        name = fresh("place")
        names[key] = name
        out[name] = {
            "type": "place",
            "local_group": _encode_obj(obj.local_group, names, out, counters),
            "embedding": _encode_obj(obj.embedding, names, out, counters),
            "inertia": list(obj.inertia),
            "h2_generator": _encode_obj(obj.h2_generator, names, out, counters),
            "inv_normalization": obj.inv_normalization,
        }
    elif isinstance(obj, GlobalDatum):
        name = fresh("datum")
        names[key] = name
        out[name] = {
            "type": "global_datum",
            "modulus": obj.modulus,
            "global_group": _encode_obj(obj.global_group, names, out, counters),
            "places": [_encode_obj(p, names, out, counters) for p in obj.places],
            "gauge_group": _encode_obj(obj.gauge_group, names, out, counters),
            "three_cocycle": _encode_obj(obj.three_cocycle, names, out, counters),
        }
    else:
        raise ValidationError(f"cannot serialize object of type {type(obj).__name__}")
    return names[key]


def document_for(obj) -> Document:
    """Build a self-contained document around one main object."""
    names: dict[int, str] = {}
    raw: dict[str, dict] = {}
    counters: dict[str, int] = {}
    main = _encode_obj(obj, names, raw, counters)
    return Document(raw=raw, objects=_resolve_all(raw), main=main)


def serialize(doc: Document) -> str:
    """Canonical text form: sorted keys, fixed indentation, trailing newline."""
    payload: dict = {"format_version": FORMAT_VERSION, "objects": doc.raw}
    if doc.main is not None:
        payload["main"] = doc.main
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def serialize_object(obj) -> str:
    return serialize(document_for(obj))


# ---------------------------------------------------------------------------
# Decoding.


def _require(entry: dict, key: str, name: str):
    if key not in entry:
        raise ValidationError(f"object {name!r} is missing field {key!r}")
    return entry[key]


def _resolve_all(raw_objects: dict) -> dict[str, object]:
    resolved: dict[str, object] = {}
    resolving: set[str] = set()

    def resolve(name: str):
        if not isinstance(name, str):
            raise ValidationError(f"references must be strings, got {name!r}")
        if name in resolved:
            return resolved[name]
        if name not in raw_objects:
            raise ValidationError(f"reference to unknown object {name!r}")
        if name in resolving:
            raise ValidationError(f"circular reference through {name!r}")
        resolving.add(name)
        entry = raw_objects[name]
        if not isinstance(entry, dict):
            raise ValidationError(f"object {name!r} is not a JSON object")
        kind = _require(entry, "type", name)
        try:
            obj = _build(kind, entry, name, resolve)
        except ValidationError:
            raise
        except (NotAGroupError, NotAHomError, ValueError) as exc:
            raise ValidationError(f"object {name!r}: {exc}") from exc
        resolving.discard(name)
        resolved[name] = obj
        return obj

    for name in sorted(raw_objects):
        resolve(name)
    return resolved


def _build(kind: str, entry: dict, name: str, resolve):
    if kind == "group":
        order = int(_require(entry, "order", name))
        mul = np.array(_require(entry, "mul", name), dtype=np.int64)
        if mul.size != order * order:
            raise ValidationError(f"object {name!r}: mul table must have {order * order} entries")
        return make_group(mul.reshape(order, order))
    if kind == "module":
        return ModuleOverZn(int(_require(entry, "modulus", name)), tuple(_require(entry, "orders", name)))
    if kind == "hom":
        dom = resolve(_require(entry, "dom", name))
        cod = resolve(_require(entry, "cod", name))
        return make_hom(dom, cod, _require(entry, "map", name))
    if kind == "action":
        group = resolve(_require(entry, "group", name))
        module = resolve(_require(entry, "module", name))
        if entry.get("trivial"):
            return GModuleAction.trivial(group, module)
        mats = np.array(_require(entry, "matrices", name), dtype=np.int64)
        r = module.rank
        return GModuleAction(group, module, mats.reshape(group.order, r, r))
    if kind == "cochain":
        action = resolve(_require(entry, "action", name))
        degree = int(_require(entry, "degree", name))
        values = np.array(_require(entry, "values", name), dtype=np.int64)
        expected = action.group.order**degree * action.module.rank
        if values.size != expected:
            raise ValidationError(
                f"object {name!r}: cochain of degree {degree} needs {expected} values, got {values.size}"
            )
        return Cochain(action, degree, values.reshape(-1, action.module.rank))
    if kind == "place":
        gen = resolve(_require(entry, "h2_generator", name))
        place = PlaceDatum(
            local_group=resolve(_require(entry, "local_group", name)),
            embedding=resolve(_require(entry, "embedding", name)),
            inertia=tuple(_require(entry, "inertia", name)),
            h2_generator=gen,
            inv_normalization=int(_require(entry, "inv_normalization", name)),
        )
        if not differential(gen).is_zero():
            raise ValidationError(f"object {name!r}: declared h2_generator is not a cocycle")
        return place
    if kind == "global_datum":
        datum = GlobalDatum(
            modulus=int(_require(entry, "modulus", name)),
            global_group=resolve(_require(entry, "global_group", name)),
            places=tuple(resolve(p) for p in _require(entry, "places", name)),
            gauge_group=resolve(_require(entry, "gauge_group", name)),
            three_cocycle=resolve(_require(entry, "three_cocycle", name)),
        )
        if not differential(datum.three_cocycle).is_zero():
            raise ValidationError(f"object {name!r}: declared three_cocycle is not a cocycle")
        return datum
    raise ValidationError(f"object {name!r} has unknown type {kind!r}")


def parse(text: str) -> Document:
    """Parse and validate a document; every referenced object is resolved."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(payload, dict):
        raise ValidationError("top level must be a JSON object")
    version = payload.get("format_version")
    if version != FORMAT_VERSION:
        raise ValidationError(f"unsupported format_version {version!r}")
    raw = payload.get("objects", {})
    if not isinstance(raw, dict):
        raise ValidationError("'objects' must be a JSON object")
    return Document(raw=raw, objects=_resolve_all(raw), main=payload.get("main"))


def load_path(path) -> Document:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def dump_path(doc: Document, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(doc))

"""JSON structure files.

Every document carries a top-level ``"kind"``: one of ``groupoid``,
``protorootoid``, ``signed``, ``coxeter``, ``arrangement`` or ``morphism``.
Labels are strings throughout and action tables are label -> label maps.
Structural validation is done with JSON Schema; label resolution and the
algebraic checks happen while elaborating.
"""

from __future__ import annotations

import json
from typing import Any

import jsonschema

from .builders.arrangement import ArrangementError, RationalArrangement, build_arrangement
from .builders.coxeter import CoxeterError, CoxeterMatrix, build_coxeter
from .cat import PrdMorphism
from .groupoid import Functor, Groupoid, GroupoidError
from .prd import CocycleError, PowerSetRep, Protorootoid, RepresentationError
from .setalg import IncompatibleRingsError, PartialMap
from .signed import L_functor, SignedGroupoidSet, SignedSetError

KINDS = ("groupoid", "protorootoid", "signed", "coxeter", "arrangement", "morphism")


class SchemaError(ValueError):
    """A structure file that does not describe a valid structure."""


_labels = {"type": "array", "items": {"type": "string"}}
_table = {"type": "object", "additionalProperties": {"type": "string"}}

_GROUPOID = {
    "type": "object",
    "properties": {
        "objects": _labels,
        "morphisms": {"type": "array", "items": {
            "type": "object",
            "properties": {"label": {"type": "string"}, "dom": {"type": "string"},
                           "cod": {"type": "string"}},
            "required": ["label", "dom", "cod"], "additionalProperties": False}},
        "identities": _table,
        "composition": {"type": "array", "items": {
            "type": "array", "items": {"type": "string"}, "minItems": 3, "maxItems": 3}},
        "group": {"type": "object", "properties": {
            "object": {"type": "string"},
            "elements": _labels,
            "table": {"type": "array", "items": _labels}},
            "required": ["elements", "table"], "additionalProperties": False},
        "simply_connected": _labels,
    },
    "oneOf": [
        {"required": ["objects", "morphisms", "identities", "composition"]},
        {"required": ["group"]},
        {"required": ["simply_connected"]},
    ],
}

_SCHEMAS = {
    "groupoid": {"type": "object", "properties": {"kind": {"const": "groupoid"}}},
    "protorootoid": {
        "type": "object",
        "properties": {
            "kind": {"const": "protorootoid"},
            "grounds": {"type": "object", "additionalProperties": _labels},
            "subrings": {"type": "object", "additionalProperties": {"type": "array", "items": _labels}},
            "action": {"type": "object", "additionalProperties": _table},
            "cocycle": {"type": "object", "additionalProperties": _labels},
        },
        "required": ["grounds", "action", "cocycle"],
    },
    "signed": {
        "type": "object",
        "properties": {
            "kind": {"const": "signed"},
            "roots": {"type": "object", "additionalProperties": _table},
            "action": {"type": "object", "additionalProperties": _table},
        },
        "required": ["roots", "action"],
    },
    "coxeter": {
        "type": "object",
        "properties": {
            "kind": {"const": "coxeter"},
            "type": {"type": "string"},
            "generators": _labels,
            "matrix": {"type": "array", "items": {"type": "array", "items": {
                "anyOf": [{"type": "integer"}, {"type": "string"}, {"type": "null"}]}}},
            "cutoff": {"type": "integer", "minimum": 0},
        },
        "oneOf": [{"required": ["type"]}, {"required": ["generators", "matrix"]}],
        "additionalProperties": False,
    },
    "arrangement": {
        "type": "object",
        "properties": {
            "kind": {"const": "arrangement"},
            "dimension": {"type": "integer"},
            "normals": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
            "offsets": {"type": "array", "items": {"type": "number"}},
        },
        "required": ["dimension", "normals"],
        "additionalProperties": False,
    },
    "morphism": {
        "type": "object",
        "properties": {
            "kind": {"const": "morphism"},
            "objects": _table,
            "morphisms": _table,
            "mu": {"type": "object", "additionalProperties": {
                "type": "object", "additionalProperties": {"type": ["string", "null"]}}},
        },
        "required": ["objects", "morphisms", "mu"],
        "additionalProperties": False,
    },
}
for _k in ("groupoid", "protorootoid", "signed"):
    _SCHEMAS[_k] = {"allOf": [_SCHEMAS[_k], _GROUPOID]} if _k == "groupoid" else {
        "allOf": [_SCHEMAS[_k], {"properties": {"groupoid": _GROUPOID}, "required": ["groupoid"]}]}


def _path(err) -> str:
    out = "$"
    for p in err.absolute_path:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def parse(text: str, source: str = "<input>") -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{source}: line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict) or doc.get("kind") not in KINDS:
        raise SchemaError(f"{source}: field $.kind: expected one of {', '.join(KINDS)}")
    err = jsonschema.exceptions.best_match(jsonschema.Draft202012Validator(_SCHEMAS[doc["kind"]]).iter_errors(doc))
    if err is not None:
        raise SchemaError(f"{source}: field {_path(err)}: {err.message}")
    return doc


def load(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), path)


# -- elaboration --------------------------------------------------------------

_ERRORS = (GroupoidError, CocycleError, RepresentationError, SignedSetError, CoxeterError,
           ArrangementError, IncompatibleRingsError)


def groupoid_from(body: dict) -> Groupoid:
    try:
        if "group" in body:
            g = body["group"]
            els = g["elements"]
            pos = {e: i for i, e in enumerate(els)}
            tab = g["table"]
            if len(tab) != len(els) or any(len(r) != len(els) for r in tab):
                raise SchemaError("field $.group.table: must be a square table over the elements")
            for r in tab:
                for x in r:
                    if x not in pos:
                        raise SchemaError(f"field $.group.table: unknown element {x!r}")
            ident = next((i for i in range(len(els))
                          if all(pos[tab[i][j]] == j and pos[tab[j][i]] == j for j in range(len(els)))), None)
            if ident is None:
                raise SchemaError("field $.group.table: no identity element")
            G = Groupoid.from_group(els, lambda u, v: pos[tab[u][v]], ident, g.get("object", "*"))
            bad = G.find_law_violation()
            if bad:
                raise SchemaError(f"field $.group.table: {bad}")
            return G
        if "simply_connected" in body:
            return Groupoid.simply_connected(body["simply_connected"])
        objects = body["objects"]
        known = set(objects)
        labels = set()
        for i, m in enumerate(body["morphisms"]):
            for end in ("dom", "cod"):
                if m[end] not in known:
                    raise SchemaError(f"field $.morphisms[{i}].{end}: unknown object {m[end]!r}")
            labels.add(m["label"])
        for o, e in body["identities"].items():
            if o not in known or e not in labels:
                raise SchemaError(f"field $.identities.{o}: unresolved label")
        if set(body["identities"]) != known:
            raise SchemaError("field $.identities: every object needs an identity")
        table = {}
        for i, (g, h, k) in enumerate(body["composition"]):
            if not {g, h, k} <= labels:
                raise SchemaError(f"field $.composition[{i}]: unknown morphism")
            table[g, h] = k
        ms = [(m["label"], m["dom"], m["cod"]) for m in body["morphisms"]]
        return Groupoid(objects, ms, body["identities"], table)
    except _ERRORS as e:
        raise SchemaError(f"groupoid: {e}") from None


def _check_keys(found, expected, where):
    missing = [x for x in expected if x not in found]
    extra = [x for x in found if x not in expected]
    if missing:
        raise SchemaError(f"field {where}: missing {missing[0]!r}")
    if extra:
        raise SchemaError(f"field {where}: unknown label {extra[0]!r}")


def protorootoid_from(doc: dict) -> Protorootoid:
    G = groupoid_from(doc["groupoid"])
    _check_keys(doc["grounds"], G.objects, "$.grounds")
    _check_keys(doc["action"], G.labels, "$.action")
    _check_keys(doc["cocycle"], G.labels, "$.cocycle")
    for g, lab in enumerate(G.labels):
        src = set(doc["grounds"][G.objects[G.dom[g]]])
        dst = set(doc["grounds"][G.objects[G.cod[g]]])
        table = doc["action"][lab]
        _check_keys(table, sorted(src), f"$.action.{lab}")
        for x, y in table.items():
            if y not in dst:
                raise SchemaError(f"field $.action.{lab}.{x}: {y!r} is not in the ground set at the codomain")
        for x in doc["cocycle"][lab]:
            if x not in dst:
                raise SchemaError(f"field $.cocycle.{lab}: {x!r} is not in the ground set at the codomain")
    subs = doc.get("subrings")
    if subs:
        for o, blocks in subs.items():
            if o not in G.objects:
                raise SchemaError(f"field $.subrings.{o}: unknown object")
            for b in blocks:
                for x in b:
                    if x not in doc["grounds"][o]:
                        raise SchemaError(f"field $.subrings.{o}: unknown element {x!r}")
    try:
        rep = PowerSetRep.from_labels(G, doc["grounds"], doc["action"], subs)
        return Protorootoid(G, rep, {lab: doc["cocycle"][lab] for lab in G.labels})
    except _ERRORS + (ValueError,) as e:
        raise SchemaError(f"protorootoid: {e}") from None


def signed_from(doc: dict) -> SignedGroupoidSet:
    G = groupoid_from(doc["groupoid"])
    _check_keys(doc["roots"], G.objects, "$.roots")
    _check_keys(doc["action"], G.labels, "$.action")
    try:
        return SignedGroupoidSet.from_labels(G, doc["roots"], doc["action"])
    except (KeyError, ValueError) as e:
        raise SchemaError(f"signed: {e}") from None


def coxeter_matrix_from(doc: dict) -> CoxeterMatrix:
    try:
        if "type" in doc:
            return CoxeterMatrix.of_type(doc["type"])
        return CoxeterMatrix(tuple(doc["generators"]), tuple(tuple(r) for r in doc["matrix"]))
    except (CoxeterError, ValueError) as e:
        raise SchemaError(str(e)) from None


def arrangement_from(doc: dict) -> RationalArrangement:
    offs = doc.get("offsets")
    if offs is not None:
        if len(offs) != len(doc["normals"]):
            raise SchemaError("field $.offsets: one offset per normal")
        if any(offs):
            raise SchemaError("arrangement is not central: every hyperplane must pass through 0")
    try:
        return RationalArrangement(doc["dimension"], tuple(tuple(v) for v in doc["normals"]))
    except ArrangementError as e:
        raise SchemaError(str(e)) from None


def elaborate(doc: dict) -> Protorootoid:
    """Any structure document except a morphism, as a protorootoid."""
    kind = doc["kind"]
    if kind == "protorootoid":
        return protorootoid_from(doc)
    if kind == "signed":
        return L_functor(signed_from(doc))
    if kind == "coxeter":
        if doc.get("cutoff") is not None:
            raise SchemaError("a cutoff ball is not a protorootoid; use the coxeter subcommand to inspect it")
        try:
            return build_coxeter(coxeter_matrix_from(doc)).protorootoid
        except CoxeterError as e:
            raise SchemaError(str(e)) from None
    if kind == "arrangement":
        return build_arrangement(arrangement_from(doc)).protorootoid
    if kind == "groupoid":
        raise SchemaError("a bare groupoid carries no cocycle; expected a protorootoid-like kind")
    raise SchemaError(f"cannot elaborate a {kind!r} document into a protorootoid")


def morphism_from(doc: dict, source: Protorootoid, target: Protorootoid) -> PrdMorphism:
    G, H = source.G, target.G
    _check_keys(doc["objects"], G.objects, "$.objects")
    _check_keys(doc["morphisms"], G.labels, "$.morphisms")
    _check_keys(doc["mu"], G.objects, "$.mu")
    try:
        obj_map = [H.o(doc["objects"][o]) for o in G.objects]
        mor_map = [H.m(doc["morphisms"][g]) for g in G.labels]
    except GroupoidError as e:
        raise SchemaError(f"morphism: {e}") from None
    mus = []
    for a, o in enumerate(G.objects):
        src = target.rep.grounds[obj_map[a]]
        dst = source.rep.grounds[a]
        table = doc["mu"][o]
        _check_keys(table, src.elements, f"$.mu.{o}")
        for y, x in table.items():
            if x is not None and x not in dst.elements:
                raise SchemaError(f"field $.mu.{o}.{y}: {x!r} is not in the source ground set")
        mus.append(PartialMap(src, dst, dict(table)))
    return PrdMorphism(source, target, Functor(G, H, obj_map, mor_map), mus)


# -- canonical output ------------------------------------------------------------

def groupoid_doc(G: Groupoid) -> dict:
    return {
        "objects": list(G.objects),
        "morphisms": [{"label": G.labels[g], "dom": G.objects[G.dom[g]], "cod": G.objects[G.cod[g]]}
                      for g in range(G.n_morphisms)],
        "identities": {G.objects[a]: G.labels[G.ident[a]] for a in range(G.n_objects)},
        "composition": [[G.labels[g], G.labels[h], G.labels[G.comp(g, h)]] for g, h in G.composable_pairs()],
    }


def protorootoid_doc(P: Protorootoid) -> dict:
    G = P.G
    doc: dict[str, Any] = {"kind": "protorootoid", "groupoid": groupoid_doc(G)}
    doc["grounds"] = {G.objects[a]: list(P.rep.grounds[a].elements) for a in range(G.n_objects)}
    if any(s is not None for s in P.rep.subrings):
        doc["subrings"] = {G.objects[a]: [list(P.rep.grounds[a].labels(b)) for b in s.blocks]
                           for a, s in enumerate(P.rep.subrings) if s is not None}
    act = {}
    for g in range(G.n_morphisms):
        src, dst = P.rep.grounds[G.dom[g]], P.rep.grounds[G.cod[g]]
        act[G.labels[g]] = {x: dst.elements[j] for x, j in zip(src.elements, P.rep.act[g])}
    doc["action"] = act
    doc["cocycle"] = {G.labels[g]: list(P.rep.grounds[G.cod[g]].labels(P.values[g]))
                      for g in range(G.n_morphisms)}
    return doc


def morphism_doc(f: PrdMorphism) -> dict:
    G, H = f.source.G, f.target.G
    return {
        "kind": "morphism",
        "objects": {G.objects[a]: H.objects[f.alpha.obj_map[a]] for a in range(G.n_objects)},
        "morphisms": {G.labels[g]: H.labels[f.alpha.mor_map[g]] for g in range(G.n_morphisms)},
        "mu": {G.objects[a]: {y: (None if i is None else m.target.elements[i])
                              for y, i in zip(m.source.elements, m.table)}
               for a, m in enumerate(f.mu)},
    }


def dumps(doc: dict) -> str:
    """Byte-stable rendering: insertion order for lists, sorted mapping keys."""
    return json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def loads_protorootoid(text: str, source: str = "<input>") -> Protorootoid:
    return elaborate(parse(text, source))


def read_any(path: str) -> tuple:
    doc = load(path)
    return doc, (None if doc["kind"] in ("morphism",) else elaborate(doc))

"""Command line front end.

Exit codes: 0 on success (or a positive verdict), 1 on a negative verdict,
2 on unreadable input or any other error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import io
from .builders.arrangement import ArrangementError, RationalArrangement, build_arrangement
from .builders.coxeter import CoxeterError, CoxeterMatrix, build_coxeter, exchange_violation
from .cat import check_prd_morphism, cover, grade_morphism
from .classify import FLAGS, PreconditionError, abridge, classify, simple_morphisms, slc_check
from .groupoid import GroupoidError, generated_subgroupoid
from .prd import Protorootoid

OK, NO, ERROR = 0, 1, 2


class CliError(Exception):
    pass


def _out(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> Protorootoid:
    doc = io.load(path)
    if doc["kind"] == "morphism":
        raise io.SchemaError(f"{path}: a morphism file is not a structure")
    return io.elaborate(doc)


def _labels(P: Protorootoid, gs) -> list:
    return [P.G.labels[g] for g in sorted(gs)]


def _jsonable(x):
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


# -- subcommands -----------------------------------------------------------------

def cmd_build(args) -> int:
    P = _load(args.input)
    _out(io.dumps(io.protorootoid_doc(P)), args.output)
    return OK


def verdict_line(P: Protorootoid, r) -> str:
    if not r.rootoid:
        return f"not a rootoid: {r.witnesses.get('rootoid', 'unknown reason')}"
    parts = [("principal rootoid" if r.principal else "rootoid")]
    if r.complete:
        parts.append("complete")
    if r.simply_generated:
        parts.append("simple generators: " + ",".join(_labels(P, r.simple_morphisms)))
    return "; ".join(parts)


def cmd_classify(args) -> int:
    P = _load(args.input)
    if args.abridge_first:
        P = abridge(P)
    r = classify(P, exhaustive_jop=args.exhaustive_jop)
    if args.json:
        doc = {k: getattr(r, k) for k in FLAGS}
        doc["atomic_morphisms"] = _labels(P, r.atomic_morphisms)
        doc["simple_morphisms"] = _labels(P, r.simple_morphisms)
        doc["witnesses"] = _jsonable(r.witnesses)
        doc["notes"] = _jsonable(r.notes)
        sys.stdout.write(json.dumps(doc, indent=1, sort_keys=True) + "\n")
        return OK if r.rootoid else NO
    G = P.G
    lines = [f"{G.n_objects} objects, {G.n_morphisms} morphisms",
             f"verdict: {verdict_line(P, r)}"]
    if r.faithful:
        s = slc_check(P)
        lines.append("semilocal criterion: " + ("holds" if s else f"fails ({s.reason})"))
    lines.append("flags:")
    for k in FLAGS:
        lines.append(f"  {k:22}{'yes' if getattr(r, k) else 'no'}")
    lines.append("atomic morphisms: " + (",".join(_labels(P, r.atomic_morphisms)) or "-"))
    if r.witnesses:
        lines.append("witnesses:")
        for k in sorted(r.witnesses):
            lines.append(f"  {k}: {r.witnesses[k]}")
    sys.stdout.write("\n".join(lines) + "\n")
    return OK if r.rootoid else NO


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def cmd_export(args) -> int:
    P = _load(args.input)
    G = P.G
    if args.object is None:
        if not G.n_objects:
            raise CliError("structure has no objects")
        a = 0
    else:
        try:
            a = G.o(args.object)
        except GroupoidError as e:
            raise CliError(str(e)) from None
    ground = P.rep.grounds[a]
    if args.what == "root-table":
        S = simple_morphisms(P)
        gen = generated_subgroupoid(G, S)
        rows = ["morphism\tdom\tcod\tN\t|N|\tl_S"]
        morphs = G.star(a) if args.object is not None else range(G.n_morphisms)
        for g in morphs:
            v = P.values[g]
            l = gen.length.get(g) if gen.generates else None
            rows.append("\t".join([G.labels[g], G.objects[G.dom[g]], G.objects[G.cod[g]],
                                   "{" + ",".join(P.rep.grounds[G.cod[g]].labels(v)) + "}",
                                   str(P.length(g)), "-" if l is None else str(l)]))
        _out("\n".join(rows) + "\n", args.output)
        return OK
    W = P.weak_order(a)
    poset = W.poset
    if args.what == "hasse":
        rows = ["lower\tupper"]
        for i, j in sorted(poset.covers()):
            rows.append(f"{G.labels[W.morphism(i)]}\t{G.labels[W.morphism(j)]}")
        _out("\n".join(rows) + "\n", args.output)
        return OK
    lines = [f'digraph "{_dot_escape("weak order at " + G.objects[a])}" {{', "  rankdir=BT;"]
    for i in range(len(poset)):
        words = ",".join(G.labels[g] for g in W.witnesses[i])
        val = "{" + ",".join(ground.labels(poset.values[i])) + "}"
        lines.append(f'  n{i} [label="{_dot_escape(words)}\\n{_dot_escape(val)}"];')
    for i, j in sorted(poset.covers()):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    _out("\n".join(lines) + "\n", args.output)
    return OK


def cmd_check_morphism(args) -> int:
    P, Q = _load(args.source), _load(args.target)
    doc = io.load(args.morphism)
    if doc["kind"] != "morphism":
        raise io.SchemaError(f"{args.morphism}: expected a morphism file")
    f = io.morphism_from(doc, P, Q)
    try:
        g = grade_morphism(f)
    except PreconditionError as e:
        v = check_prd_morphism(f)
        sys.stdout.write(f"in_prd: {'true' if v else 'false'}\n")
        if not v:
            sys.stdout.write(f"  witness: {v.reason}\n")
        sys.stdout.write(f"in_rd: n/a ({e})\nin_Rd: n/a\nin_RdE: n/a\n")
        return NO
    for k in ("in_prd", "in_rd", "in_Rd", "in_RdE"):
        sys.stdout.write(f"{k}: {'true' if getattr(g, k) else 'false'}\n")
        if k in g.witnesses:
            sys.stdout.write(f"  witness: {g.witnesses[k]}\n")
    if "aop_automatic_direction" in g.witnesses:
        sys.stdout.write(f"note: {g.witnesses['aop_automatic_direction']}\n")
    return OK if g.in_Rd else NO


def cmd_cover(args) -> int:
    P = _load(args.input)
    Q, f = cover(P)
    _out(io.dumps(io.protorootoid_doc(Q)), args.output)
    if args.morphism_output:
        _out(io.dumps(io.morphism_doc(f)), args.morphism_output)
    return OK


def cmd_abridge(args) -> int:
    P = _load(args.input)
    _out(io.dumps(io.protorootoid_doc(abridge(P))), args.output)
    return OK


def _coxeter_matrix(args) -> tuple:
    if args.input:
        doc = io.load(args.input)
        if doc["kind"] != "coxeter":
            raise io.SchemaError(f"{args.input}: expected a coxeter file")
        return io.coxeter_matrix_from(doc), doc.get("cutoff")
    if not args.type:
        raise CliError("give a coxeter file or --type")
    try:
        return CoxeterMatrix.of_type(args.type), None
    except (CoxeterError, ValueError) as e:
        raise CliError(str(e)) from None


def cmd_coxeter(args) -> int:
    M, cutoff = _coxeter_matrix(args)
    if args.cutoff is not None:
        cutoff = args.cutoff
    C = build_coxeter(M, cutoff=cutoff)
    lines = []
    if C.partial:
        lines.append(f"partial ball: {C.order} elements of length <= {cutoff}; not a protorootoid")
    else:
        lines.append(f"order: {C.order}")
    lines.append(f"reflections ({len(C.reflections)}): " + ",".join(C.reflection_labels()))
    if not C.partial:
        lines.append(f"longest length: {max(C.length)}")
        lines.append("exchange condition: " + ("holds" if exchange_violation(C, False) is None else "fails"))
        lines.append("strong exchange condition: " + ("holds" if exchange_violation(C, True) is None else "fails"))
    lines.append("w\tl(w)\tN(w)")
    for w in range(C.order):
        n = C.N[w]
        val = "?" if n is None else "{" + ",".join(
            C.labels[C.reflections[i]] for i in range(len(C.reflections)) if n >> i & 1) + "}"
        lines.append(f"{C.labels[w]}\t{C.length[w]}\t{val}")
    sys.stdout.write("\n".join(lines) + "\n")
    if args.output:
        if C.partial:
            raise CliError("a cutoff ball cannot be written as a protorootoid")
        _out(io.dumps(io.protorootoid_doc(C.protorootoid)), args.output)
    return OK


def cmd_arrangement(args) -> int:
    if args.input:
        doc = io.load(args.input)
        if doc["kind"] != "arrangement":
            raise io.SchemaError(f"{args.input}: expected an arrangement file")
        A = io.arrangement_from(doc)
    else:
        if args.dim is None or not args.normal:
            raise CliError("give an arrangement file or --dim with --normal vectors")
        try:
            normals = tuple(tuple(int(c) for c in v.split(",")) for v in args.normal)
            A = RationalArrangement(args.dim, normals)
        except ValueError as e:
            raise CliError(f"bad arrangement: {e}") from None
    X = build_arrangement(A)
    r = classify(X.protorootoid)
    lines = [f"chambers: {len(X.chambers)}"]
    for c in X.chambers:
        walls = ",".join(A.labels[i] for i in X.walls[c])
        lines.append(f"  {c}\twalls {walls}")
    lines.append("simplicial: " + ("yes" if X.simplicial else f"no ({X.witness[0]}: {X.witness[1]})"))
    lines.append(f"verdict: {verdict_line(X.protorootoid, r)}")
    sys.stdout.write("\n".join(lines) + "\n")
    if args.output:
        _out(io.dumps(io.protorootoid_doc(X.protorootoid)), args.output)
    return OK if r.rootoid else NO


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rootoidlab", description="Protorootoids, weak orders and rootoids.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="elaborate a structure file into a canonical protorootoid file")
    b.add_argument("input")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("classify", help="property report and rootoid verdict")
    c.add_argument("input")
    c.add_argument("--json", action="store_true", help="print the report as JSON")
    c.add_argument("--exhaustive-jop", action="store_true", help="check the JOP on all families of small stars")
    c.add_argument("--abridge-first", action="store_true")
    c.set_defaults(func=cmd_classify)

    e = sub.add_parser("export", help="weak order as DOT, its Hasse edges or the cocycle table as TSV")
    e.add_argument("input")
    e.add_argument("--what", choices=("weak-order", "hasse", "root-table"), default="weak-order")
    e.add_argument("--object")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_export)

    m = sub.add_parser("check-morphism", help="grade a morphism between two structures")
    m.add_argument("source")
    m.add_argument("target")
    m.add_argument("morphism")
    m.set_defaults(func=cmd_check_morphism)

    v = sub.add_parser("cover", help="universal cover")
    v.add_argument("input")
    v.add_argument("-o", "--output")
    v.add_argument("--morphism-output", help="also write the covering morphism file here")
    v.set_defaults(func=cmd_cover)

    a = sub.add_parser("abridge", help="restrict each ring to the one generated by the weak order")
    a.add_argument("input")
    a.add_argument("-o", "--output")
    a.set_defaults(func=cmd_abridge)

    x = sub.add_parser("coxeter", help="enumerate a Coxeter system and its reflection cocycle")
    x.add_argument("input", nargs="?")
    x.add_argument("--type", help="named type such as A2, B3, G2, I2(5)")
    x.add_argument("--cutoff", type=int, help="stop at this length (raw inspection only)")
    x.add_argument("-o", "--output", help="write the protorootoid file here")
    x.set_defaults(func=cmd_coxeter)

    r = sub.add_parser("arrangement", help="chambers, walls and verdict of a central arrangement")
    r.add_argument("input", nargs="?")
    r.add_argument("--dim", type=int)
    r.add_argument("--normal", action="append", help="comma separated integer normal; repeatable")
    r.add_argument("-o", "--output", help="write the protorootoid file here")
    r.set_defaults(func=cmd_arrangement)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, io.SchemaError, CoxeterError, ArrangementError, GroupoidError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return ERROR


if __name__ == "__main__":
    sys.exit(main())

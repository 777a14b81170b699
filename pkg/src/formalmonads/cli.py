"""Command-line access to the checkers, constructions, lifts and oracles.

Exit codes: 0 pass, 1 law violation, 2 input error, 3 construction absent,
4 size cap reached.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import algobj, distributive, finspan, fincat, kan, monads, morphisms, oracles, serialize, suite
from .fincat import BoundaryError, SizeCapExceeded, UnlawfulError, size_cap

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_ABSENT, EXIT_CAP = 0, 1, 2, 3, 4

# every subcommand with the library operations it exercises
COMMAND_TABLE = {
    "check category": ("fincat.validate_category",),
    "check functor": ("fincat.validate_functor",),
    "check nattrans": ("fincat.validate_nat",),
    "check monad": ("monads.check_monad", "oracles.paste_monad_failures", "monads.nary_mult"),
    "check monad-map": ("monads.check_monad_map",),
    "check module": ("monads.check_module",),
    "check bimodule": ("monads.check_bimodule", "monads.bimodule_action_convert"),
    "check bimodule-map": ("monads.check_bimodule_map",),
    "check lax": ("morphisms.check_lax",),
    "check colax": ("morphisms.check_lax",),
    "check square": ("morphisms.check_square",),
    "check specialization": ("morphisms.check_square",),
    "check distributive-law": ("distributive.check_distributive", "distributive.distlaw_mnd_roundtrip"),
    "check span": ("finspan.check_span",),
    "check span-monad": ("finspan.check_span_monad",),
    "check retrofunctor": ("finspan.check_retrofunctor", "finspan.retrofunctor_lax_correspondence"),
    "check extension": ("kan.certify",),
    "check adjunction": ("fincat.check_adjunction",),
    "construct em": ("algobj.construct_em",),
    "construct kleisli": ("algobj.construct_kleisli",),
    "construct free": ("algobj.free_resolution", "algobj.comparison_functor"),
    "construct composite": ("distributive.composite_monad", "distributive.injection_monad_maps"),
    "construct codensity": ("kan.codensity", "kan.monad_structure"),
    "construct pushforward": ("kan.pushforward", "kan.monad_structure"),
    "construct from-adjunction": ("kan.from_adjunction",),
    "construct compose": ("fincat.compose_1cells",),
    "construct nary": ("monads.nary_mult",),
    "construct lax-view": ("monads.as_lax_view",),
    "construct joint-action": ("monads.bimodule_action_convert",),
    "construct lax-composite": ("morphisms.compose_lax",),
    "construct square-composite": ("morphisms.compose_squares",),
    "construct specialization": ("morphisms.spec_from_2cell",),
    "construct transpose": ("morphisms.adjoint_transpose",),
    "construct split": ("distributive.module_split_merge",),
    "construct comparison-cell": ("distributive.comparison_cell",),
    "construct span-monad": ("finspan.category_span_roundtrip",),
    "construct category": ("finspan.category_span_roundtrip",),
    "construct span-composite": ("finspan.compose_spans",),
    "construct lax-of-retrofunctor": ("finspan.retrofunctor_lax_correspondence",),
    "lift em": ("algobj.emlift",),
    "lift module": ("algobj.lift_module",),
    "lift module-map": ("algobj.lift_module_map",),
    "lift bimodule": ("algobj.lift_bimodule",),
    "lift ext": ("kan.extlift",),
    "oracle right-extension": ("kan.right_extension", "kan.certify"),
    "oracle universal-monad": ("kan.universal_monad_map", "kan.count_universal_maps"),
    "oracle preserves": ("kan.preserves_right_extension",),
    "oracle interchange": ("morphisms.check_interchange",),
    "oracle cells": ("fincat.enumerate_cells",),
    "oracle limit": ("fincat.limit",),
    "oracle isomorphism": ("fincat.find_isomorphism",),
    "oracle distem": ("distributive.verify_distem",),
    "oracle paste": ("fincat.paste", "oracles.paste_monad_failures", "oracles.paste_module_failures",
                     "oracles.paste_lax_failures"),
    "export dot": (),
    "suite": ("suite.run_suite",),
}

# every command reads and writes documents
SHARED = ("serialize.load_save",)

CHECK_TYPES = {
    "category": fincat.FinCategory, "functor": fincat.FinFunctor, "nattrans": fincat.NatTrans,
    "monad": monads.Monad, "monad-map": monads.MonadMap, "module": monads.ModuleStr,
    "bimodule": monads.Bimodule, "bimodule-map": monads.BimoduleMapNAry,
    "lax": morphisms.LaxMorphism, "colax": morphisms.ColaxMorphism,
    "square": morphisms.SquareCell, "specialization": morphisms.SquareCell,
    "distributive-law": distributive.DistributiveLaw, "span": finspan.Span,
    "span-monad": finspan.SpanMonad, "retrofunctor": finspan.Retrofunctor,
    "extension": kan.RightExtension, "adjunction": fincat.Adjunction,
}


class Absent(Exception):
    pass


class InputError(Exception):
    pass


@dataclass
class Outcome:
    code: int = EXIT_OK
    lines: list = field(default_factory=list)
    documents: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def report(self, rep, label: str = "") -> None:
        prefix = f"{label}: " if label else ""
        if rep.ok:
            self.lines.append(f"{prefix}ok")
            return
        self.code = max(self.code, EXIT_VIOLATION)
        for v in rep:
            self.lines.append(f"{prefix}violation: {v}")


def _load(path, kind: str | None = None):
    obj = serialize.load_save(path)
    if kind is not None and not isinstance(obj, CHECK_TYPES[kind]):
        raise InputError(f"{path} holds a {type(obj).__name__}, not a {kind}")
    if kind in ("square", "specialization"):
        want = morphisms.TWO_CELL if kind == "square" else morphisms.SPECIALIZATION
        if obj.kind != want:
            raise InputError(f"{path} holds a {obj.kind} square, not a {kind}")
    return obj


# -- check ----------------------------------------------------------------------

def _check(args, out: Outcome) -> None:
    kind = args.kind
    obj = _load(args.file, kind)
    if kind == "category":
        out.report(fincat.validate_category(obj))
    elif kind == "functor":
        out.report(fincat.validate_functor(obj))
    elif kind == "nattrans":
        out.report(fincat.validate_nat(obj))
    elif kind == "monad":
        rep = monads.check_monad(obj)
        if {v.law for v in rep} != oracles.paste_monad_failures(obj):
            raise RuntimeError("pointwise and pasted law checks disagree")
        out.report(rep)
        if rep.ok:
            monads.nary_mult(obj, 3)
    elif kind == "monad-map":
        out.report(monads.check_monad_map(obj))
    elif kind == "module":
        out.report(monads.check_module(obj))
    elif kind == "bimodule":
        rep = monads.check_bimodule(obj)
        out.report(rep)
        if rep.ok:
            joint = monads.bimodule_action_convert(obj)
            assert monads.bimodule_action_convert(joint, obj.left_monad, obj.right_monad,
                                                  obj.carrier) == obj
    elif kind == "bimodule-map":
        out.report(monads.check_bimodule_map(obj))
    elif kind in ("lax", "colax"):
        out.report(morphisms.check_lax(obj))
    elif kind in ("square", "specialization"):
        out.report(morphisms.check_square(obj))
    elif kind == "distributive-law":
        rep = distributive.check_distributive(obj)
        out.report(rep)
        if rep.ok:
            distributive.distlaw_mnd_roundtrip(obj)
    elif kind == "span":
        out.report(finspan.check_span(obj))
    elif kind == "span-monad":
        out.report(finspan.check_span_monad(obj, "left"), "left bracketing")
        out.report(finspan.check_span_monad(obj, "right"), "right bracketing")
    elif kind == "retrofunctor":
        rep = finspan.check_retrofunctor(obj)
        out.report(rep)
        if rep.ok:
            finspan.retrofunctor_lax_correspondence(obj)
    elif kind == "extension":
        cert = kan.certify(obj)
        if cert.ok:
            out.lines.append(f"ok ({cert.checked} candidate cells)")
        else:
            Y, psi, n = cert.counterexample
            out.code = EXIT_VIOLATION
            out.lines.append(f"violation: {n} factorizations of {psi.components} through {Y.on_objects}")
            out.documents.append(serialize.to_document(psi, "counterexample"))
    elif kind == "adjunction":
        out.report(fincat.check_adjunction(obj))


# -- construct ------------------------------------------------------------------

def _construct(args, out: Outcome) -> None:
    what, files = args.what, args.files

    def need(n):
        if len(files) != n:
            raise InputError(f"construct {what} takes {n} file argument(s)")

    if what == "em":
        need(1)
        out.documents.append(serialize.to_document(algobj.construct_em(_load(files[0], "monad")).module()))
    elif what == "kleisli":
        need(1)
        o = algobj.construct_kleisli(_load(files[0], "monad"))
        out.documents.append(serialize.to_document(o.module()))
    elif what == "free":
        need(1)
        m = _load(files[0], "monad")
        r = algobj.free_resolution(m)
        out.report(algobj.check_resolution(r), "resolution")
        cmp = algobj.comparison_functor(algobj.construct_em(m), r)
        out.lines.append(f"comparison unique: {cmp.unique}")
        out.documents.append(serialize.to_document(r.left))
    elif what == "composite":
        need(1)
        d = _load(files[0], "distributive-law")
        c = distributive.composite_monad(d)
        distributive.injection_monad_maps(d)
        out.documents.append(serialize.to_document(c))
    elif what == "codensity":
        need(1)
        e = kan.codensity(_load(files[0], "functor"))
        if e is None:
            raise Absent("codensity monad is absent (pointwise)")
        out.documents.append(serialize.to_document(kan.monad_structure(e)))
    elif what == "pushforward":
        need(2)
        e = kan.pushforward(_load(files[0], "monad"), _load(files[1], "functor"))
        if e is None:
            raise Absent("pushforward monad is absent (pointwise)")
        out.documents.append(serialize.to_document(kan.monad_structure(e)))
    elif what == "from-adjunction":
        if len(files) not in (2, 3):
            raise InputError("construct from-adjunction takes KIND ADJUNCTION [MONAD]")
        t = _load(files[2], "monad") if len(files) == 3 else None
        e = kan.from_adjunction(files[0], _load(files[1], "adjunction"), t)
        out.documents.append(serialize.to_document(e))
    elif what == "compose":
        need(2)
        out.documents.append(serialize.to_document(
            fincat.compose_1cells(_load(files[0], "functor"), _load(files[1], "functor"))))
    elif what == "nary":
        need(2)
        out.documents.append(serialize.to_document(monads.nary_mult(_load(files[0], "monad"), int(files[1]))))
    elif what == "lax-view":
        need(1)
        out.documents.append(serialize.to_document(monads.as_lax_view(_load(files[0]))))
    elif what == "joint-action":
        need(1)
        out.documents.append(serialize.to_document(
            monads.bimodule_action_convert(_load(files[0], "bimodule"))))
    elif what == "lax-composite":
        need(2)
        out.documents.append(serialize.to_document(morphisms.compose_lax(_load(files[0]), _load(files[1]))))
    elif what == "square-composite":
        need(3)
        q = morphisms.compose_squares(_load(files[1]), _load(files[2]), files[0])
        out.report(morphisms.check_square(q), "composite")
        out.documents.append(serialize.to_document(q))
    elif what == "specialization":
        need(1)
        out.documents.append(serialize.to_document(morphisms.spec_from_2cell(_load(files[0], "square"))))
    elif what == "transpose":
        need(2)
        out.documents.append(serialize.to_document(
            morphisms.adjoint_transpose(_load(files[0]), _load(files[1], "adjunction"))))
    elif what == "split":
        need(2)
        d = _load(files[0], "distributive-law")
        for s in distributive.module_split_merge(d, _load(files[1], "module")):
            out.documents.append(serialize.to_document(s))
    elif what == "comparison-cell":
        need(1)
        out.documents.append(serialize.to_document(
            distributive.comparison_cell(_load(files[0], "distributive-law"))))
    elif what == "span-monad":
        need(1)
        m, iso = finspan.category_span_roundtrip(_load(files[0], "category"))
        out.lines.append(f"round trip isomorphic: {iso is not None}")
        out.documents.append(serialize.to_document(m))
    elif what == "category":
        need(1)
        c, iso = finspan.category_span_roundtrip(_load(files[0], "span-monad"))
        out.lines.append(f"round trip isomorphic: {iso is not None}")
        out.documents.append(serialize.to_document(c))
    elif what == "span-composite":
        need(2)
        out.documents.append(serialize.to_document(
            finspan.compose_spans(_load(files[0], "span"), _load(files[1], "span"))))
    elif what == "lax-of-retrofunctor":
        need(1)
        l, rep = finspan.retrofunctor_lax_correspondence(_load(files[0], "retrofunctor"))
        out.report(rep, "lax cell")
        out.data["structure"] = {repr(k): repr(v) for k, v in l.structure.mapping.items()}
    else:
        raise InputError(f"unknown construction {what!r}")


# -- lift -----------------------------------------------------------------------

def _square_monads(data):
    if isinstance(data, morphisms.SquareCell):
        return data.top.source_monad, data.top.target_monad
    return data.source_monad, data.target_monad


def _lift(args, out: Outcome) -> None:
    what, files = args.what, args.files
    if what == "em":
        data = _load(files[0])
        kind = "lax" if isinstance(data, morphisms.LaxMorphism) else getattr(data, "kind", None)
        if kind is None:
            raise InputError("lift em needs a lax cell, square or specialization")
        t1, t2 = _square_monads(data)
        res = algobj.emlift(kind, data, algobj.construct_em(t1), algobj.construct_em(t2))
    elif what == "module":
        s = _load(files[0], "module")
        res = algobj.lift_module(algobj.construct_em(s.monad), s)
    elif what == "module-map":
        s1, s2, phi = _load(files[0], "module"), _load(files[1], "module"), _load(files[2], "nattrans")
        res = algobj.lift_module_map(algobj.construct_em(s1.monad), s1, s2, phi)
    elif what == "bimodule":
        b = _load(files[0], "bimodule")
        res = algobj.lift_bimodule(b, algobj.construct_kleisli(b.left_monad),
                                   algobj.construct_em(b.right_monad))
    elif what == "ext":
        if len(files) != 3:
            raise InputError("lift ext takes codensity|pushforward EXTENSION DATA")
        e, data = _load(files[1], "extension"), _load(files[2])
        kind = "lax" if isinstance(data, morphisms.LaxMorphism) else getattr(data, "kind", None)
        t2 = _square_monads(data)[1]
        res = kan.extlift(files[0], kind, data, e, t2)
    else:
        raise InputError(f"unknown lift {what!r}")
    out.documents.append(serialize.to_document(res))


# -- oracle ---------------------------------------------------------------------

def _oracle(args, out: Outcome) -> None:
    what, files = args.what, args.files
    if what == "right-extension":
        e = kan.right_extension(_load(files[0], "functor"), _load(files[1], "functor"))
        if e is None:
            raise Absent("right extension is absent (pointwise)")
        cert = kan.certify(e)
        out.lines.append(f"certified: {cert.ok} ({cert.checked} candidate cells)")
        if not cert.ok:
            out.code = EXIT_VIOLATION
        out.documents.append(serialize.to_document(e))
    elif what == "universal-monad":
        s = _load(files[0])
        if isinstance(s, monads.ModuleStr):
            e, t, cell = kan.codensity(s.carrier), s.monad, s.action
        elif isinstance(s, morphisms.LaxMorphism):
            e, t, cell = kan.pushforward(s.source_monad, s.carrier), s.target_monad, s.structure
        else:
            raise InputError("universal-monad needs a right module or a lax cell")
        if e is None:
            raise Absent("the extension monad is absent (pointwise)")
        h = kan.universal_monad_map(e, t, cell)
        n = kan.count_universal_maps(e, t, cell)
        out.lines.append(f"universal maps found: {n}")
        if n != 1:
            out.code = EXIT_VIOLATION
        out.documents.append(serialize.to_document(h))
    elif what == "preserves":
        ok, cert = kan.preserves_right_extension(_load(files[0], "functor"), _load(files[1], "extension"))
        out.lines.append(f"preserves: {ok}")
        if not ok:
            out.code = EXIT_VIOLATION
            Y, psi, n = cert.counterexample
            out.lines.append(f"counterexample: {psi.components} factors {n} times")
    elif what == "interchange":
        kind = {"square": morphisms.TWO_CELL, "specialization": morphisms.SPECIALIZATION}[files[0]]
        a, b, c, d = (_load(f, files[0]) for f in files[1:5])
        out.report(morphisms.check_interchange(((a, b), (c, d)), kind))
    elif what == "cells":
        x, y = _load(files[0]), _load(files[1])
        kind = "functors" if isinstance(x, fincat.FinCategory) else "nat_trans"
        found = fincat.enumerate_cells(kind, x, y)
        out.lines.append(f"{kind}: {len(found)}")
        out.data["count"] = len(found)
    elif what == "limit":
        L = fincat.limit(_load(files[0], "functor"))
        if L is None:
            raise Absent("the diagram has no limit")
        out.lines.append(f"apex: {L.apex}")
        out.data["limit"] = {"apex": L.apex, "legs": L.legs}
    elif what == "isomorphism":
        iso = fincat.find_isomorphism(_load(files[0], "category"), _load(files[1], "category"))
        if iso is None:
            raise Absent("the categories are not isomorphic")
        out.documents.append(serialize.to_document(iso[0]))
    elif what == "distem":
        rep = distributive.verify_distem(_load(files[0], "distributive-law"))
        out.data["distem"] = {"em_iso": rep.em_iso is not None,
                              "comparison_is_iso": rep.comparison_is_iso,
                              "universal_module": rep.universal_module,
                              "kleisli_iso": rep.kleisli_iso is not None,
                              "universal_opmodule": rep.universal_opmodule}
        out.lines += [f"{k}: {v}" for k, v in out.data["distem"].items()]
        if not rep.ok:
            out.code = EXIT_VIOLATION
    elif what == "paste":
        obj = _load(files[0])
        if isinstance(obj, monads.Monad):
            bad = oracles.paste_monad_failures(obj)
        elif isinstance(obj, monads.ModuleStr):
            bad = oracles.paste_module_failures(obj)
        elif isinstance(obj, (morphisms.LaxMorphism, morphisms.ColaxMorphism)):
            bad = oracles.paste_lax_failures(obj)
        else:
            raise InputError("paste evaluates monads, modules and lax/colax cells")
        out.lines += [f"violation: {law}" for law in sorted(bad)] or ["ok"]
        if bad:
            out.code = EXIT_VIOLATION
    else:
        raise InputError(f"unknown oracle {what!r}")


# -- export and suite -------------------------------------------------------------

def to_dot(c: fincat.FinCategory) -> str:
    """One node per object, one edge per non-identity morphism."""
    lines = [f"digraph {json.dumps(c.name or 'C')} {{"]
    lines += [f"  {json.dumps(o)};" for o in c.objects]
    lines += [f"  {json.dumps(m.src)} -> {json.dumps(m.dst)} [label={json.dumps(m.id)}];"
              for m in c.morphisms if not c.is_identity(m.id)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def _export(args, out: Outcome) -> None:
    if args.what != "dot":
        raise InputError(f"unknown export format {args.what!r}")
    out.data["dot"] = to_dot(_load(args.file, "category"))


def _suite(args, out: Outcome) -> None:
    rep = suite.run_suite(args.fixtures, seed=args.seed, cap=args.cap, only=args.only or None)
    out.data["suite"] = rep.to_json()
    for r in rep.results:
        out.lines.append(f"{r.status:12} {r.name} ({r.seconds:.2f}s){': ' + r.message if r.message else ''}")
    statuses = {r.status for r in rep.results}
    if suite.FAIL in statuses:
        out.code = EXIT_VIOLATION
    elif suite.SKIPPED in statuses:
        out.code = EXIT_CAP


# -- entry points -------------------------------------------------------------------

def _default_fixtures() -> Path:
    here = Path.cwd() / "fixtures"
    if here.is_dir():
        return here
    return Path(__file__).resolve().parents[2] / "fixtures"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=argparse.SUPPRESS,
                        help="enumeration size cap (default 1000000)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--fixtures", type=Path, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="formalmonads", parents=[common], description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="run the law checker for a document")
    c.add_argument("kind", choices=sorted(CHECK_TYPES))
    c.add_argument("file")
    c.set_defaults(run=_check)

    for name, fn, text in (
            ("construct", _construct, "build a derived object from input documents"),
            ("lift", _lift, "lift cells or modules into EM categories"),
            ("oracle", _oracle, "run a brute-force oracle")):
        choices = sorted({k.split()[1] for k in COMMAND_TABLE if k.startswith(name + " ")})
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("what", choices=choices)
        s.add_argument("files", nargs="*")
        s.set_defaults(run=fn)

    e = sub.add_parser("export", parents=[common], help="export a category")
    e.add_argument("what", choices=("dot",))
    e.add_argument("file")
    e.set_defaults(run=_export)

    s = sub.add_parser("suite", parents=[common], help="run every theorem check")
    s.add_argument("--only", nargs="*", default=None)
    s.set_defaults(run=_suite)
    return p


def _emit(out: Outcome, fmt: str, stream) -> None:
    if fmt == "json":
        payload = {"exit": out.code, "lines": out.lines, "documents": out.documents, **out.data}
        stream.write(serialize.canonical(payload))
        return
    for line in out.lines:
        stream.write(line + "\n")
    for doc in out.documents:
        stream.write(serialize.canonical(doc))
    if "dot" in out.data:
        stream.write(out.data["dot"])


def run_command(argv=None, stream=None) -> int:
    stream = stream or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    for key, default in (("cap", fincat.DEFAULT_CAP), ("seed", 0), ("format", "text"),
                         ("fixtures", None)):
        if not hasattr(args, key):
            setattr(args, key, default)
    if args.fixtures is None:
        args.fixtures = _default_fixtures()
    out = Outcome()
    try:
        with size_cap(args.cap):
            args.run(args, out)
    except SizeCapExceeded as e:
        out.code, out.lines = EXIT_CAP, out.lines + [f"size cap: {e}"]
    except Absent as e:
        out.code, out.lines = EXIT_ABSENT, out.lines + [f"absent: {e}"]
    except (UnlawfulError, kan.FactorizationError) as e:
        out.code, out.lines = EXIT_VIOLATION, out.lines + [f"violation: {e}"]
    except (InputError, serialize.SchemaError, BoundaryError, FileNotFoundError, ValueError,
            TypeError, KeyError, IndexError) as e:
        out.code, out.lines = EXIT_INPUT, out.lines + [f"input error: {e}"]
    _emit(out, args.format, stream)
    return out.code


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()

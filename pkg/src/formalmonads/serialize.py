"""JSON documents for every kind of object in the package.

A document is one JSON object with a ``kind`` tag.  Categories are written
once into a top-level ``categories`` table and referenced by name elsewhere;
a bare string naming a bundled fixture is accepted anywhere a category,
functor or monad is expected.
"""
from __future__ import annotations

import json
from pathlib import Path

from . import fixtures
from .fincat import Adjunction, FinCategory, FinFunctor, NatTrans, make_category
from .distributive import DistributiveLaw
from .finspan import Retrofunctor, Span, SpanMonad
from .kan import RightExtension
from .monads import Bimodule, BimoduleMapNAry, ModuleStr, Monad, MonadMap
from .morphisms import SPECIALIZATION, TWO_CELL, ColaxMorphism, LaxMorphism, SquareCell

KINDS = ("category", "functor", "nattrans", "monad", "monad-map", "module", "bimodule",
         "bimodule-map", "lax", "colax", "square", "specialization", "distributive-law",
         "span", "span-monad", "retrofunctor", "extension", "adjunction")


class SchemaError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def canonical(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- encoding ---------------------------------------------------------------------

class _Encoder:
    def __init__(self):
        self.categories: dict = {}

    def category(self, c: FinCategory) -> str:
        for name, known in self.categories.items():
            if known == c:
                return name
        base = c.name or "c"
        name, i = base, 1
        while name in self.categories:
            name, i = f"{base}{i}", i + 1
        self.categories[name] = c
        return name

    def functor(self, F: FinFunctor) -> dict:
        return {"source": self.category(F.source), "target": self.category(F.target),
                "on_objects": dict(F.on_objects), "on_morphisms": dict(F.on_morphisms)}

    def nattrans(self, a: NatTrans) -> dict:
        return {"source": self.functor(a.source), "target": self.functor(a.target),
                "components": dict(a.components)}

    def monad(self, m: Monad) -> dict:
        out = {"base": self.category(m.base), "endo": self.functor(m.endo),
               "unit": self.nattrans(m.unit), "mult": self.nattrans(m.mult)}
        if m.name:
            out["name"] = m.name
        return out

    def bimodule(self, b: Bimodule) -> dict:
        return {"left_monad": self.monad(b.left_monad), "right_monad": self.monad(b.right_monad),
                "carrier": self.functor(b.carrier), "left_action": self.nattrans(b.left_action),
                "right_action": self.nattrans(b.right_action)}

    def cross(self, l) -> dict:
        return {"source_monad": self.monad(l.source_monad), "target_monad": self.monad(l.target_monad),
                "carrier": self.functor(l.carrier), "structure": self.nattrans(l.structure)}

    def span(self, s: Span) -> dict:
        return {"left_foot": _elem(list(s.left_foot)), "right_foot": _elem(list(s.right_foot)),
                "legs": [[_elem(x), _elem(s.left[x]), _elem(s.right[x])] for x in s.apex]}


def _elem(x):
    if isinstance(x, (tuple, list)):
        return [_elem(y) for y in x]
    return x


def _payload(obj, enc: _Encoder) -> tuple:
    if isinstance(obj, FinCategory):
        return "category", {"ref": enc.category(obj)}
    if isinstance(obj, FinFunctor):
        return "functor", enc.functor(obj)
    if isinstance(obj, NatTrans):
        return "nattrans", enc.nattrans(obj)
    if isinstance(obj, Monad):
        return "monad", enc.monad(obj)
    if isinstance(obj, MonadMap):
        return "monad-map", {"source": enc.monad(obj.source), "target": enc.monad(obj.target),
                             "cell": enc.nattrans(obj.cell)}
    if isinstance(obj, ModuleStr):
        return "module", {"side": obj.side, "monad": enc.monad(obj.monad),
                          "carrier": enc.functor(obj.carrier), "action": enc.nattrans(obj.action)}
    if isinstance(obj, Bimodule):
        return "bimodule", enc.bimodule(obj)
    if isinstance(obj, BimoduleMapNAry):
        out = {"inputs": [enc.bimodule(b) for b in obj.inputs], "output": enc.bimodule(obj.output),
               "cell": enc.nattrans(obj.cell)}
        if obj.base is not None:
            out["base"] = enc.monad(obj.base)
        if obj.colax is not None:
            out["colax"] = [enc.cross(g) for g in obj.colax]
        return "bimodule-map", out
    if isinstance(obj, LaxMorphism):
        return "lax", enc.cross(obj)
    if isinstance(obj, ColaxMorphism):
        return "colax", enc.cross(obj)
    if isinstance(obj, SquareCell):
        kind = "square" if obj.kind == TWO_CELL else "specialization"
        return kind, {"top": enc.cross(obj.top), "right": enc.cross(obj.right),
                      "left": enc.cross(obj.left), "bottom": enc.cross(obj.bottom),
                      "cell": enc.nattrans(obj.cell)}
    if isinstance(obj, DistributiveLaw):
        return "distributive-law", {"t1": enc.monad(obj.t1), "t2": enc.monad(obj.t2),
                                    "cell": enc.nattrans(obj.cell)}
    if isinstance(obj, Span):
        return "span", enc.span(obj)
    if isinstance(obj, SpanMonad):
        return "span-monad", {"foot": _elem(list(obj.foot)), "span": enc.span(obj.span),
                              "unit": [[_elem(s), _elem(x)] for s, x in obj.unit.items()],
                              "mult": [[_elem(x), _elem(y), _elem(z)]
                                       for (x, y), z in obj.mult.items()]}
    if isinstance(obj, Retrofunctor):
        return "retrofunctor", {"source": enc.category(obj.source), "target": enc.category(obj.target),
                                "on_objects": dict(obj.on_objects),
                                "lift": sorted([c, u, g] for (c, u), g in obj.lift.items())}
    if isinstance(obj, RightExtension):
        out = {"along": enc.functor(obj.along), "of": enc.functor(obj.of),
               "ext": enc.functor(obj.ext), "universal": enc.nattrans(obj.universal)}
        if obj.monad is not None:
            out["monad"] = enc.monad(obj.monad)
        return "extension", out
    if isinstance(obj, Adjunction):
        return "adjunction", {"left": enc.functor(obj.left), "right": enc.functor(obj.right),
                              "unit": enc.nattrans(obj.unit), "counit": enc.nattrans(obj.counit)}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _category_payload(c: FinCategory) -> dict:
    out = {"objects": list(c.objects),
           "morphisms": [{"id": m.id, "src": m.src, "dst": m.dst} for m in c.morphisms],
           "identity": dict(c.identity),
           "compose": sorted([f, g, h] for (f, g), h in c.compose.items())}
    if c.name:
        out["name"] = c.name
    return out


def to_document(obj, name: str | None = None) -> dict:
    enc = _Encoder()
    kind, payload = _payload(obj, enc)
    if kind == "category":
        doc = {"kind": "category", **_category_payload(obj)}
    else:
        doc = {"kind": kind, **payload,
               "categories": {n: _category_payload(c) for n, c in enc.categories.items()}}
    if name:
        doc["name"] = name
    return doc


def dumps(obj, name: str | None = None) -> str:
    return canonical(to_document(obj, name))


def save(path, obj, name: str | None = None) -> None:
    Path(path).write_text(dumps(obj, name), encoding="utf-8")


# -- decoding ---------------------------------------------------------------------

def _tuple(x):
    if isinstance(x, list):
        return tuple(_tuple(y) for y in x)
    return x


_TYPE_NAMES = {str: "a string", list: "an array", dict: "an object"}


def _need(d, key, path, types=None):
    if not isinstance(d, dict):
        raise SchemaError(path, "expected an object")
    if key not in d:
        raise SchemaError(f"{path}.{key}", "missing field")
    v = d[key]
    if types is not None and not isinstance(v, types):
        raise SchemaError(f"{path}.{key}", f"expected {_TYPE_NAMES.get(types, 'another type')}")
    return v


def _str_map(d, key, path) -> dict:
    m = _need(d, key, path, dict)
    for k, v in m.items():
        if not isinstance(v, str):
            raise SchemaError(f"{path}.{key}.{k}", "expected a string")
    return dict(m)


def category_from_payload(d: dict, path: str = "$") -> FinCategory:
    objects = _need(d, "objects", path, list)
    if not all(isinstance(o, str) for o in objects):
        raise SchemaError(f"{path}.objects", "objects must be strings")
    mors = []
    for i, m in enumerate(_need(d, "morphisms", path, list)):
        p = f"{path}.morphisms[{i}]"
        rec = tuple(_need(m, k, p, str) for k in ("id", "src", "dst"))
        for k, o in zip(("src", "dst"), rec[1:]):
            if o not in objects:
                raise SchemaError(f"{p}.{k}", f"unknown object {o!r}")
        mors.append(rec)
    ids = {m[0] for m in mors}
    if len(ids) != len(mors):
        raise SchemaError(f"{path}.morphisms", "duplicate morphism id")
    identity = _str_map(d, "identity", path)
    for o, f in identity.items():
        if o not in objects or f not in ids:
            raise SchemaError(f"{path}.identity.{o}", f"bad identity entry {o!r}: {f!r}")
    comp = {}
    for i, t in enumerate(_need(d, "compose", path, list)):
        if not (isinstance(t, list) and len(t) == 3 and all(isinstance(x, str) and x in ids for x in t)):
            raise SchemaError(f"{path}.compose[{i}]", f"malformed compose triple {t!r}")
        comp[t[0], t[1]] = t[2]
    return make_category(objects, mors, identity, comp, d.get("name", ""))


class _Decoder:
    def __init__(self, doc: dict, defs: dict | None = None):
        self.raw = doc.get("categories", {}) if isinstance(doc, dict) else {}
        self.cache: dict = {}
        self.defs = defs or {}

    def category(self, x, path) -> FinCategory:
        if isinstance(x, dict):
            return category_from_payload(x, path)
        if not isinstance(x, str):
            raise SchemaError(path, "expected a category name or object")
        if x not in self.cache:
            if x in self.raw:
                self.cache[x] = category_from_payload(self.raw[x], f"$.categories.{x}")
            elif isinstance(self.defs.get(x), FinCategory):
                self.cache[x] = self.defs[x]
            else:
                try:
                    self.cache[x] = fixtures.category(x)
                except KeyError:
                    raise SchemaError(path, f"unresolved category reference {x!r}") from None
        return self.cache[x]

    def functor(self, d, path) -> FinFunctor:
        if isinstance(d, str):
            if isinstance(self.defs.get(d), FinFunctor):
                return self.defs[d]
            try:
                return fixtures.functor(d)
            except KeyError:
                raise SchemaError(path, f"unresolved functor reference {d!r}") from None
        src = self.category(_need(d, "source", path), f"{path}.source")
        dst = self.category(_need(d, "target", path), f"{path}.target")
        ob, mor = _str_map(d, "on_objects", path), _str_map(d, "on_morphisms", path)
        if set(ob) != set(src.objects):
            raise SchemaError(f"{path}.on_objects", "must cover exactly the source objects")
        if set(mor) != set(src.morphism_ids):
            raise SchemaError(f"{path}.on_morphisms", "must cover exactly the source morphisms")
        for k, v in ob.items():
            if v not in dst.objects:
                raise SchemaError(f"{path}.on_objects.{k}", f"unknown target object {v!r}")
        for k, v in mor.items():
            if v not in dst.morphism_ids:
                raise SchemaError(f"{path}.on_morphisms.{k}", f"unknown target morphism {v!r}")
        return FinFunctor(src, dst, ob, mor)

    def nattrans(self, d, path) -> NatTrans:
        F = self.functor(_need(d, "source", path), f"{path}.source")
        G = self.functor(_need(d, "target", path), f"{path}.target")
        comps = _str_map(d, "components", path)
        if set(comps) != set(F.source.objects):
            raise SchemaError(f"{path}.components", "must cover exactly the domain objects")
        for k, v in comps.items():
            if v not in F.target.morphism_ids:
                raise SchemaError(f"{path}.components.{k}", f"unknown morphism {v!r}")
        return NatTrans(F, G, comps)

    def monad(self, d, path) -> Monad:
        if isinstance(d, str):
            if isinstance(self.defs.get(d), Monad):
                return self.defs[d]
            try:
                return fixtures.monad(d)
            except KeyError:
                raise SchemaError(path, f"unresolved monad reference {d!r}") from None
        return Monad(self.category(_need(d, "base", path), f"{path}.base"),
                     self.functor(_need(d, "endo", path), f"{path}.endo"),
                     self.nattrans(_need(d, "unit", path), f"{path}.unit"),
                     self.nattrans(_need(d, "mult", path), f"{path}.mult"),
                     d.get("name", ""))

    def bimodule(self, d, path) -> Bimodule:
        return Bimodule(self.monad(_need(d, "left_monad", path), f"{path}.left_monad"),
                        self.monad(_need(d, "right_monad", path), f"{path}.right_monad"),
                        self.functor(_need(d, "carrier", path), f"{path}.carrier"),
                        self.nattrans(_need(d, "left_action", path), f"{path}.left_action"),
                        self.nattrans(_need(d, "right_action", path), f"{path}.right_action"))

    def cross(self, d, path, cls):
        return cls(self.monad(_need(d, "source_monad", path), f"{path}.source_monad"),
                   self.monad(_need(d, "target_monad", path), f"{path}.target_monad"),
                   self.functor(_need(d, "carrier", path), f"{path}.carrier"),
                   self.nattrans(_need(d, "structure", path), f"{path}.structure"))

    def span(self, d, path) -> Span:
        lf = _tuple(_need(d, "left_foot", path, list))
        rf = _tuple(_need(d, "right_foot", path, list))
        apex, left, right = [], {}, {}
        for i, leg in enumerate(_need(d, "legs", path, list)):
            if not (isinstance(leg, list) and len(leg) == 3):
                raise SchemaError(f"{path}.legs[{i}]", f"malformed leg triple {leg!r}")
            x, l, r = (_tuple(v) for v in leg)
            apex.append(x)
            left[x], right[x] = l, r
        return Span(lf, rf, tuple(apex), left, right)


def from_document(doc: dict, defs: dict | None = None):
    """Rebuild the object a document describes; ``defs`` supplies extra named references."""
    kind = _need(doc, "kind", "$", str)
    if kind not in KINDS:
        raise SchemaError("$.kind", f"unknown kind {kind!r}")
    dec = _Decoder(doc, defs)
    p = "$"
    if kind == "category":
        if "ref" in doc:
            return dec.category(doc["ref"], "$.ref")
        return category_from_payload(doc)
    if kind == "functor":
        return dec.functor(doc, p)
    if kind == "nattrans":
        return dec.nattrans(doc, p)
    if kind == "monad":
        return dec.monad(doc, p)
    if kind == "monad-map":
        return MonadMap(dec.monad(_need(doc, "source", p), "$.source"),
                        dec.monad(_need(doc, "target", p), "$.target"),
                        dec.nattrans(_need(doc, "cell", p), "$.cell"))
    if kind == "module":
        side = _need(doc, "side", p, str)
        if side not in ("left", "right"):
            raise SchemaError("$.side", "side must be left or right")
        return ModuleStr(side, dec.monad(_need(doc, "monad", p), "$.monad"),
                         dec.functor(_need(doc, "carrier", p), "$.carrier"),
                         dec.nattrans(_need(doc, "action", p), "$.action"))
    if kind == "bimodule":
        return dec.bimodule(doc, p)
    if kind == "bimodule-map":
        ins = tuple(dec.bimodule(b, f"$.inputs[{i}]")
                    for i, b in enumerate(_need(doc, "inputs", p, list)))
        base = dec.monad(doc["base"], "$.base") if "base" in doc else None
        colax = None
        if "colax" in doc:
            colax = tuple(dec.cross(g, f"$.colax[{i}]", ColaxMorphism)
                          for i, g in enumerate(doc["colax"]))
        return BimoduleMapNAry(ins, dec.bimodule(_need(doc, "output", p), "$.output"),
                               dec.nattrans(_need(doc, "cell", p), "$.cell"), base, colax)
    if kind in ("lax", "colax"):
        return dec.cross(doc, p, LaxMorphism if kind == "lax" else ColaxMorphism)
    if kind in ("square", "specialization"):
        sq_kind = TWO_CELL if kind == "square" else SPECIALIZATION
        return SquareCell(sq_kind, dec.cross(_need(doc, "top", p), "$.top", LaxMorphism),
                          dec.cross(_need(doc, "right", p), "$.right", ColaxMorphism),
                          dec.cross(_need(doc, "left", p), "$.left", ColaxMorphism),
                          dec.cross(_need(doc, "bottom", p), "$.bottom", LaxMorphism),
                          dec.nattrans(_need(doc, "cell", p), "$.cell"))
    if kind == "distributive-law":
        return DistributiveLaw(dec.monad(_need(doc, "t1", p), "$.t1"),
                               dec.monad(_need(doc, "t2", p), "$.t2"),
                               dec.nattrans(_need(doc, "cell", p), "$.cell"))
    if kind == "span":
        return dec.span(doc, p)
    if kind == "span-monad":
        foot = _tuple(_need(doc, "foot", p, list))
        unit = {}
        for i, e in enumerate(_need(doc, "unit", p, list)):
            if not (isinstance(e, list) and len(e) == 2):
                raise SchemaError(f"$.unit[{i}]", f"malformed unit pair {e!r}")
            unit[_tuple(e[0])] = _tuple(e[1])
        mult = {}
        for i, e in enumerate(_need(doc, "mult", p, list)):
            if not (isinstance(e, list) and len(e) == 3):
                raise SchemaError(f"$.mult[{i}]", f"malformed multiplication triple {e!r}")
            mult[_tuple(e[0]), _tuple(e[1])] = _tuple(e[2])
        return SpanMonad(foot, dec.span(_need(doc, "span", p), "$.span"), unit, mult)
    if kind == "retrofunctor":
        lift = {}
        for i, e in enumerate(_need(doc, "lift", p, list)):
            if not (isinstance(e, list) and len(e) == 3 and all(isinstance(x, str) for x in e)):
                raise SchemaError(f"$.lift[{i}]", f"malformed lift triple {e!r}")
            lift[e[0], e[1]] = e[2]
        return Retrofunctor(dec.category(_need(doc, "source", p), "$.source"),
                            dec.category(_need(doc, "target", p), "$.target"),
                            _str_map(doc, "on_objects", p), lift)
    if kind == "adjunction":
        return Adjunction(dec.functor(_need(doc, "left", p), "$.left"),
                          dec.functor(_need(doc, "right", p), "$.right"),
                          dec.nattrans(_need(doc, "unit", p), "$.unit"),
                          dec.nattrans(_need(doc, "counit", p), "$.counit"))
    monad = dec.monad(doc["monad"], "$.monad") if "monad" in doc else None
    return RightExtension(dec.functor(_need(doc, "along", p), "$.along"),
                          dec.functor(_need(doc, "of", p), "$.of"),
                          dec.functor(_need(doc, "ext", p), "$.ext"),
                          dec.nattrans(_need(doc, "universal", p), "$.universal"), monad)


def loads(text: str, defs: dict | None = None):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError("$", f"not valid JSON ({e.msg} at line {e.lineno})") from None
    return from_document(doc, defs)


def load(path, defs: dict | None = None):
    return loads(Path(path).read_text(encoding="utf-8"), defs)


def load_save(path, doc=None):
    """Load the document at ``path``, or save ``doc`` there in canonical form."""
    if doc is None:
        return load(path)
    save(path, doc)
    return doc


def document_kind(path) -> str:
    return json.loads(Path(path).read_text(encoding="utf-8")).get("kind", "")


def canonicalize(text: str) -> str:
    return canonical(json.loads(text))

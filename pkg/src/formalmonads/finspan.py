"""Spans of finite sets, categories as monads in spans, and retrofunctors.

Span composition uses chosen pullbacks with pair identifiers, so composition is
only associative and unital up to the explicit bijections built here.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fincat import (Budget, FinCategory, LawReport, UnlawfulError, Violation, find_isomorphism,
                     make_category)


@dataclass(frozen=True)
class Span:
    left_foot: tuple
    right_foot: tuple
    apex: tuple
    left: dict
    right: dict

    def __hash__(self):
        return hash((self.left_foot, self.right_foot, self.apex))


def check_span(s: Span) -> LawReport:
    rep = LawReport()
    for x in s.apex:
        if s.left.get(x) not in s.left_foot:
            rep.add(Violation("left leg", x, detail="not total into the left foot"))
        if s.right.get(x) not in s.right_foot:
            rep.add(Violation("right leg", x, detail="not total into the right foot"))
    return rep


def identity_span(foot) -> Span:
    foot = tuple(foot)
    return Span(foot, foot, foot, {s: s for s in foot}, {s: s for s in foot})


def compose_spans(a: Span, b: Span) -> Span:
    """Chosen pullback: apex is the pairs (x, y) with a.right(x) == b.left(y)."""
    if a.right_foot != b.left_foot:
        raise ValueError("right foot of the first span must be the left foot of the second")
    apex = tuple((x, y) for x in a.apex for y in b.apex if a.right[x] == b.left[y])
    return Span(a.left_foot, b.right_foot, apex,
                {p: a.left[p[0]] for p in apex}, {p: b.right[p[1]] for p in apex})


@dataclass(frozen=True)
class SpanMap:
    """A map of apexes commuting with both legs."""
    source: Span
    target: Span
    mapping: dict

    def __call__(self, x):
        return self.mapping[x]

    def __hash__(self):
        return hash((self.source, self.target))


def check_span_map(m: SpanMap, law: str = "span map") -> LawReport:
    rep = LawReport()
    s, t = m.source, m.target
    if (s.left_foot, s.right_foot) != (t.left_foot, t.right_foot):
        rep.add(Violation(law, detail="feet differ"))
        return rep
    for x in s.apex:
        y = m.mapping.get(x)
        if y not in t.left:
            rep.add(Violation(law, x, detail="image is not in the target apex"))
        elif t.left[y] != s.left[x] or t.right[y] != s.right[x]:
            rep.add(Violation(law, x, (s.left[x], s.right[x]), (t.left[y], t.right[y]),
                              "legs do not commute"))
    return rep


def identity_span_map(s: Span) -> SpanMap:
    return SpanMap(s, s, {x: x for x in s.apex})


def then_maps(*ms: SpanMap) -> SpanMap:
    out = ms[0]
    for m in ms[1:]:
        if out.target != m.source:
            raise ValueError("span maps are not composable")
        out = SpanMap(out.source, m.target, {x: m.mapping[y] for x, y in out.mapping.items()})
    return out


def hcomp_maps(a: SpanMap, b: SpanMap) -> SpanMap:
    src, dst = compose_spans(a.source, b.source), compose_spans(a.target, b.target)
    return SpanMap(src, dst, {(x, y): (a.mapping[x], b.mapping[y]) for x, y in src.apex})


def associator(a: Span, b: Span, c: Span) -> SpanMap:
    """(a⨟b)⨟c → a⨟(b⨟c)."""
    src = compose_spans(compose_spans(a, b), c)
    dst = compose_spans(a, compose_spans(b, c))
    return SpanMap(src, dst, {((x, y), z): (x, (y, z)) for (x, y), z in src.apex})


def associator_inverse(a: Span, b: Span, c: Span) -> SpanMap:
    src = compose_spans(a, compose_spans(b, c))
    dst = compose_spans(compose_spans(a, b), c)
    return SpanMap(src, dst, {(x, (y, z)): ((x, y), z) for x, (y, z) in src.apex})


def left_unitor(a: Span) -> SpanMap:
    """id⨟a → a."""
    src = compose_spans(identity_span(a.left_foot), a)
    return SpanMap(src, a, {p: p[1] for p in src.apex})


def right_unitor(a: Span) -> SpanMap:
    """a⨟id → a."""
    src = compose_spans(a, identity_span(a.right_foot))
    return SpanMap(src, a, {p: p[0] for p in src.apex})


def _differences(law: str, f: SpanMap, g: SpanMap) -> LawReport:
    rep = LawReport()
    for x in f.source.apex:
        if f.mapping[x] != g.mapping[x]:
            rep.add(Violation(law, x, f.mapping[x], g.mapping[x]))
            break
    return rep


# -- monads in spans -------------------------------------------------------------

@dataclass(frozen=True)
class SpanMonad:
    foot: tuple
    span: Span
    unit: dict
    mult: dict

    @property
    def unit_map(self) -> SpanMap:
        return SpanMap(identity_span(self.foot), self.span, dict(self.unit))

    @property
    def mult_map(self) -> SpanMap:
        return SpanMap(compose_spans(self.span, self.span), self.span, dict(self.mult))

    def __hash__(self):
        return hash((self.foot, self.span))


def check_span_monad(m: SpanMonad, bracketing: str = "left") -> LawReport:
    """Unit and associativity laws with the coherence bijections inserted.

    ``bracketing`` picks which triple composite the associativity law is
    evaluated on; the verdict does not depend on it.
    """
    rep = LawReport()
    M = m.span
    if M.left_foot != m.foot or M.right_foot != m.foot:
        rep.add(Violation("feet", detail="span feet must be the monad's foot"))
        return rep
    rep.extend(check_span(M))
    missing = [s for s in m.foot if s not in m.unit]
    missing += [p for p in compose_spans(M, M).apex if p not in m.mult]
    if missing:
        rep.add(Violation("totality", missing[0], detail="unit or multiplication undefined"))
        return rep
    rep.extend(check_span_map(m.unit_map, "unit legs"))
    rep.extend(check_span_map(m.mult_map, "multiplication legs"))
    if not rep.ok:
        return rep
    eta, mu, one = m.unit_map, m.mult_map, identity_span_map(M)
    rep.extend(_differences("left unit", then_maps(hcomp_maps(eta, one), mu), left_unitor(M)))
    rep.extend(_differences("right unit", then_maps(hcomp_maps(one, eta), mu), right_unitor(M)))
    mm_left = then_maps(hcomp_maps(mu, one), mu)
    mm_right = then_maps(associator(M, M, M), hcomp_maps(one, mu), mu)
    if bracketing == "right":
        inv = associator_inverse(M, M, M)
        mm_left, mm_right = then_maps(inv, mm_left), then_maps(inv, mm_right)
    elif bracketing != "left":
        raise ValueError("bracketing must be left or right")
    rep.extend(_differences("associativity", mm_left, mm_right))
    return rep


def category_to_span_monad(c: FinCategory) -> SpanMonad:
    objs = tuple(c.objects)
    apex = tuple(m.id for m in c.morphisms)
    span = Span(objs, objs, apex, {m.id: m.src for m in c.morphisms},
                {m.id: m.dst for m in c.morphisms})
    mult = {(f, g): c.compose[f, g] for f, g in compose_spans(span, span).apex}
    return SpanMonad(objs, span, dict(c.identity), mult)


def span_monad_to_category(m: SpanMonad, name: str = "") -> FinCategory:
    rep = check_span_monad(m)
    if not rep.ok:
        raise UnlawfulError(f"span monad is not lawful: {rep}")
    ids = {x: x if isinstance(x, str) else repr(x) for x in m.span.apex}
    mors = [(ids[x], m.span.left[x], m.span.right[x]) for x in m.span.apex]
    comp = {(ids[x], ids[y]): ids[z] for (x, y), z in m.mult.items()}
    return make_category(list(m.foot), mors, {s: ids[x] for s, x in m.unit.items()}, comp, name)


def category_span_roundtrip(x):
    """FinCategory -> (SpanMonad, iso) or SpanMonad -> (FinCategory, iso).

    ``iso`` is the (F, G) pair certifying the round trip returns an isomorphic category.
    """
    if isinstance(x, FinCategory):
        m = category_to_span_monad(x)
        assert check_span_monad(m).ok
        iso = find_isomorphism(x, span_monad_to_category(m))
        return m, iso
    if isinstance(x, SpanMonad):
        c = span_monad_to_category(x)
        iso = find_isomorphism(c, span_monad_to_category(category_to_span_monad(c)))
        return c, iso
    raise TypeError("expected a FinCategory or a SpanMonad")


# -- retrofunctors ------------------------------------------------------------------

@dataclass(frozen=True)
class Retrofunctor:
    """Objects go forward; morphisms out of an image lift back to morphisms out of the source."""
    source: FinCategory
    target: FinCategory
    on_objects: dict
    lift: dict        # (c, target morphism out of on_objects[c]) -> source morphism out of c

    def __hash__(self):
        return hash((self.source, self.target, tuple(sorted(self.on_objects.items()))))


def check_retrofunctor(r: Retrofunctor) -> LawReport:
    C, D, F = r.source, r.target, r.on_objects
    rep = LawReport()
    for c in C.objects:
        if F.get(c) not in D.objects:
            rep.add(Violation("object map", c, detail="not total"))
    if not rep.ok:
        return rep
    for c in C.objects:
        for u in D.out_of(F[c]):
            g = r.lift.get((c, u))
            if g is None or g not in C.morphism_ids:
                rep.add(Violation("lifting", (c, u), detail="no lift chosen"))
                continue
            if C.src(g) != c:
                rep.add(Violation("lift source", (c, u), C.src(g), c))
            if F[C.dst(g)] != D.dst(u):
                rep.add(Violation("codomain", (c, u), F[C.dst(g)], D.dst(u)))
        if r.lift.get((c, D.id(F[c]))) != C.id(c):
            rep.add(Violation("identity", c, r.lift.get((c, D.id(F[c]))), C.id(c)))
    for c in C.objects:
        for u in D.out_of(F[c]):
            g = r.lift.get((c, u))
            if g not in C.morphism_ids:
                continue
            for v in D.out_of(D.dst(u)):
                lhs = r.lift.get((c, D.then(u, v)))
                h = r.lift.get((C.dst(g), v))
                if h is None or h not in C.morphism_ids or C.src(h) != C.dst(g):
                    rep.add(Violation("composite", (c, u, v), lhs, None,
                                      "second factor has no lift at the first lift's codomain"))
                    continue
                rhs = C.then(g, h)
                if lhs != rhs:
                    rep.add(Violation("composite", (c, u, v), lhs, rhs))
    return rep


def identity_retrofunctor(c: FinCategory) -> Retrofunctor:
    return Retrofunctor(c, c, {o: o for o in c.objects},
                        {(o, u): u for o in c.objects for u in c.out_of(o)})


def iter_retrofunctors(c: FinCategory, d: FinCategory, budget: Budget | None = None):
    budget = budget or Budget("retrofunctor enumeration")
    for images in itertools.product(d.objects, repeat=len(c.objects)):
        F = dict(zip(c.objects, images))
        slots = [(o, u) for o in c.objects for u in d.out_of(F[o])]
        cands = [[g for g in c.out_of(o) if F[c.dst(g)] == d.dst(u)] for o, u in slots]
        for choice in itertools.product(*cands):
            budget.tick()
            r = Retrofunctor(c, d, F, dict(zip(slots, choice)))
            if check_retrofunctor(r).ok:
                yield r


# -- lax 1-cells between span monads ------------------------------------------------

@dataclass(frozen=True)
class SpanLax:
    """structure: carrier⨟T₂ → T₁⨟carrier."""
    source_monad: SpanMonad
    target_monad: SpanMonad
    carrier: Span
    structure: SpanMap


def check_span_lax(l: SpanLax) -> LawReport:
    t1, t2, F, chi = l.source_monad, l.target_monad, l.carrier, l.structure
    rep = LawReport()
    if chi.source != compose_spans(F, t2.span) or chi.target != compose_spans(t1.span, F):
        rep.add(Violation("boundary", detail="structure has the wrong source or target span"))
        return rep
    rep.extend(check_span_map(chi, "structure legs"))
    if not rep.ok:
        return rep
    oneF = identity_span_map(F)
    one1, one2 = identity_span_map(t1.span), identity_span_map(t2.span)
    # unit: F⨟id → F⨟T₂ → T₁⨟F  equals  F⨟id → F → id⨟F → T₁⨟F
    lhs = then_maps(hcomp_maps(oneF, t2.unit_map), chi)
    to_left = SpanMap(F, compose_spans(identity_span(F.left_foot), F),
                      {x: (F.left[x], x) for x in F.apex})
    rhs = then_maps(right_unitor(F), to_left, hcomp_maps(t1.unit_map, oneF))
    rep.extend(_differences("unit", lhs, rhs))
    # multiplication, starting from (F⨟T₂)⨟T₂
    lhs = then_maps(associator(F, t2.span, t2.span), hcomp_maps(oneF, t2.mult_map), chi)
    rhs = then_maps(hcomp_maps(chi, one2), associator(t1.span, F, t2.span),
                    hcomp_maps(one1, chi), associator_inverse(t1.span, t1.span, F),
                    hcomp_maps(t1.mult_map, oneF))
    rep.extend(_differences("multiplication", lhs, rhs))
    return rep


def graph_span(c: FinCategory, d: FinCategory, on_objects: dict) -> Span:
    objs = tuple(c.objects)
    return Span(objs, tuple(d.objects), objs, {o: o for o in objs},
                {o: on_objects[o] for o in objs})


def retrofunctor_to_lax(r: Retrofunctor) -> SpanLax:
    C, D = r.source, r.target
    tc, td = category_to_span_monad(C), category_to_span_monad(D)
    G = graph_span(C, D, r.on_objects)
    src, dst = compose_spans(G, td.span), compose_spans(tc.span, G)
    chi = {}
    for c, u in src.apex:
        g = r.lift[c, u]
        chi[c, u] = (g, C.dst(g))
    return SpanLax(tc, td, G, SpanMap(src, dst, chi))


def lax_to_retrofunctor(l: SpanLax, source: FinCategory, target: FinCategory) -> Retrofunctor:
    G = l.carrier
    if sorted(G.left.values()) != sorted(source.objects) or len(G.apex) != len(source.objects):
        raise UnlawfulError("carrier span is not the graph of an object function")
    at = {G.left[x]: x for x in G.apex}
    F = {c: G.right[at[c]] for c in source.objects}
    lift = {(G.left[x], u): l.structure.mapping[x, u][0] for x, u in l.structure.source.apex}
    return Retrofunctor(source, target, F, lift)


def retrofunctor_lax_correspondence(x, source: FinCategory | None = None,
                                    target: FinCategory | None = None):
    """Retrofunctor -> (SpanLax, report) or SpanLax -> (Retrofunctor, report)."""
    if isinstance(x, Retrofunctor):
        rep = check_retrofunctor(x)
        if not rep.ok:
            raise UnlawfulError(f"retrofunctor is not lawful: {rep}")
        l = retrofunctor_to_lax(x)
        lrep = check_span_lax(l)
        assert lrep.ok, str(lrep)
        assert lax_to_retrofunctor(l, x.source, x.target) == x
        return l, lrep
    if isinstance(x, SpanLax):
        if source is None or target is None:
            source = span_monad_to_category(x.source_monad)
            target = span_monad_to_category(x.target_monad)
        lrep = check_span_lax(x)
        if not lrep.ok:
            raise UnlawfulError(f"lax cell is not lawful: {lrep}")
        r = lax_to_retrofunctor(x, source, target)
        rep = check_retrofunctor(r)
        assert rep.ok, str(rep)
        assert retrofunctor_to_lax(r) == x
        return r, rep
    raise TypeError("expected a Retrofunctor or a SpanLax")


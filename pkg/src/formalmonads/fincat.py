"""Finite categories, functors and natural transformations.

Composition is diagrammatic throughout: ``then(f, g)`` is f followed by g,
and for functors ``compose(F, G)(x) == G(F(x))``.
"""
from __future__ import annotations

import contextvars
import itertools
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, NamedTuple


DEFAULT_CAP = 10**6
_CAP = contextvars.ContextVar("formalmonads_cap", default=DEFAULT_CAP)


class SizeCapExceeded(RuntimeError):
    pass


class BoundaryError(ValueError):
    pass


class UnlawfulError(ValueError):
    pass


def current_cap() -> int:
    return _CAP.get()


@contextmanager
def size_cap(n: int):
    """Temporarily change the enumeration cap for the current context."""
    token = _CAP.set(int(n))
    try:
        yield
    finally:
        _CAP.reset(token)


class Budget:
    """Counts candidate cells visited by one enumeration."""

    def __init__(self, what: str = "enumeration"):
        self.what = what
        self.cap = current_cap()
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.cap:
            raise SizeCapExceeded(f"{self.what}: more than {self.cap} candidates")


# -- law reports --------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    law: str
    where: Any = None
    lhs: Any = None
    rhs: Any = None
    detail: str = ""

    def __str__(self):
        s = self.law
        if self.where is not None:
            s += f" at {self.where}"
        if self.lhs is not None or self.rhs is not None:
            s += f": {self.lhs} != {self.rhs}"
        if self.detail:
            s += f" ({self.detail})"
        return s


@dataclass
class LawReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, v: Violation | None) -> None:
        if v is not None:
            self.violations.append(v)

    def extend(self, other: "LawReport", prefix: str = "") -> None:
        for v in other.violations:
            if prefix:
                v = Violation(f"{prefix}: {v.law}", v.where, v.lhs, v.rhs, v.detail)
            self.violations.append(v)

    def laws(self) -> list[str]:
        return [v.law for v in self.violations]

    def __iter__(self):
        return iter(self.violations)

    def __len__(self):
        return len(self.violations)

    def __str__(self):
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


# -- categories ---------------------------------------------------------------

class Morphism(NamedTuple):
    id: str
    src: str
    dst: str


@dataclass(frozen=True, eq=False)
class FinCategory:
    objects: tuple
    morphisms: tuple
    identity: dict
    compose: dict
    name: str = ""
    _by_id: dict = field(init=False, repr=False)
    _hom: dict = field(init=False, repr=False)
    _index: dict = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "morphisms", tuple(Morphism(*m) for m in self.morphisms))
        by_id = {m.id: m for m in self.morphisms}
        hom: dict = {}
        for m in self.morphisms:
            hom.setdefault((m.src, m.dst), []).append(m.id)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_hom", {k: tuple(v) for k, v in hom.items()})
        object.__setattr__(self, "_index", {m.id: i for i, m in enumerate(self.morphisms)})

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (self.objects == other.objects and self.morphisms == other.morphisms
                and self.identity == other.identity and self.compose == other.compose)

    def __hash__(self):
        return hash((self.objects, len(self.morphisms)))

    def __repr__(self):
        label = self.name or "FinCategory"
        return f"<{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    def src(self, f: str) -> str:
        return self._by_id[f].src

    def dst(self, f: str) -> str:
        return self._by_id[f].dst

    def hom(self, a: str, b: str) -> tuple:
        return self._hom.get((a, b), ())

    def id(self, o: str) -> str:
        return self.identity[o]

    def then(self, *fs: str) -> str:
        out = fs[0]
        for g in fs[1:]:
            out = self.compose[out, g]
        return out

    def is_identity(self, f: str) -> bool:
        m = self._by_id[f]
        return self.identity.get(m.src) == f

    def out_of(self, a: str) -> list:
        return [m.id for m in self.morphisms if m.src == a]

    @property
    def morphism_ids(self) -> tuple:
        return tuple(m.id for m in self.morphisms)

    def renamed(self, name: str) -> "FinCategory":
        return FinCategory(self.objects, self.morphisms, self.identity, self.compose, name)


def make_category(objects, morphisms, identity, compose, name="") -> FinCategory:
    return FinCategory(tuple(objects), tuple(morphisms), dict(identity), dict(compose), name)


def poset(elements, leq: Callable[[Any, Any], bool], name: str = "") -> FinCategory:
    """Category of a finite preorder; morphism ids read ``x<=y``."""
    elements = [str(e) for e in elements]
    mor = [(f"{x}<={y}", x, y) for x in elements for y in elements if leq(x, y)]
    ids = {x: f"{x}<={x}" for x in elements}
    comp = {}
    for f, a, b in mor:
        for g, b2, c in mor:
            if b == b2:
                comp[f, g] = f"{a}<={c}"
    return make_category(elements, mor, ids, comp, name)


def monoid(elements, product: Callable[[str, str], str], unit: str, name: str = "",
           obj: str = "*") -> FinCategory:
    """One-object category; ``product(f, g)`` is f followed by g."""
    elements = list(elements)
    mor = [(e, obj, obj) for e in elements]
    comp = {(f, g): product(f, g) for f in elements for g in elements}
    return make_category([obj], mor, {obj: unit}, comp, name)


def discrete(objects, name: str = "") -> FinCategory:
    objects = [str(o) for o in objects]
    return make_category(objects, [(f"1_{o}", o, o) for o in objects],
                         {o: f"1_{o}" for o in objects},
                         {(f"1_{o}", f"1_{o}"): f"1_{o}" for o in objects}, name)


def full_subcategory(c: FinCategory, objects, name: str = "") -> FinCategory:
    keep = [o for o in c.objects if o in set(objects)]
    ks = set(keep)
    mor = [m for m in c.morphisms if m.src in ks and m.dst in ks]
    ids = {m.id for m in mor}
    comp = {k: v for k, v in c.compose.items() if k[0] in ids and k[1] in ids}
    return make_category(keep, mor, {o: c.identity[o] for o in keep}, comp, name)


def validate_category(c: FinCategory) -> LawReport:
    rep = LawReport()
    objs = set(c.objects)
    if len(objs) != len(c.objects):
        rep.add(Violation("duplicate object"))
    seen = set()
    for m in c.morphisms:
        if m.id in seen:
            rep.add(Violation("duplicate morphism", m.id))
        seen.add(m.id)
        if m.src not in objs or m.dst not in objs:
            rep.add(Violation("unknown endpoint", m.id))
    for o in c.objects:
        i = c.identity.get(o)
        if i is None:
            rep.add(Violation("missing identity", o))
        elif i not in c._by_id or c.src(i) != o or c.dst(i) != o:
            rep.add(Violation("identity endpoints", o, i))
    byid = c._by_id
    for (f, g), h in c.compose.items():
        if f not in byid or g not in byid or h not in byid:
            rep.add(Violation("unknown morphism in compose", (f, g, h)))
            continue
        if byid[f].dst != byid[g].src:
            rep.add(Violation("not composable", (f, g, h)))
        if byid[h].src != byid[f].src:
            rep.add(Violation("src mismatch", (f, g, h), byid[h].src, byid[f].src))
        if byid[h].dst != byid[g].dst:
            rep.add(Violation("dst mismatch", (f, g, h), byid[h].dst, byid[g].dst))
    for f in byid.values():
        for g in byid.values():
            if f.dst == g.src and (f.id, g.id) not in c.compose:
                rep.add(Violation("missing composite", (f.id, g.id)))
    if not rep.ok:
        return rep
    for m in c.morphisms:
        if c.then(c.identity[m.src], m.id) != m.id:
            rep.add(Violation("left unit", m.id, c.then(c.identity[m.src], m.id), m.id))
        if c.then(m.id, c.identity[m.dst]) != m.id:
            rep.add(Violation("right unit", m.id, c.then(m.id, c.identity[m.dst]), m.id))
    for (f, g), fg in c.compose.items():
        for h in c.out_of(byid[g].dst):
            l, r = c.then(fg, h), c.then(f, c.then(g, h))
            if l != r:
                rep.add(Violation("associativity", (f, g, h), l, r))
    return rep


# -- functors -----------------------------------------------------------------

@dataclass(frozen=True)
class FinFunctor:
    source: FinCategory
    target: FinCategory
    on_objects: dict
    on_morphisms: dict
    # composites and identity cell, computed on first use
    _memo: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def ob(self, x):
        return self.on_objects[x]

    def mor(self, f):
        return self.on_morphisms[f]

    def __hash__(self):
        return hash(tuple(self.on_objects.items()))

    def __repr__(self):
        return f"FinFunctor({self.on_objects})"


def identity_functor(c: FinCategory) -> FinFunctor:
    return FinFunctor(c, c, {o: o for o in c.objects}, {m.id: m.id for m in c.morphisms})


def compose_1cells(f: FinFunctor, g: FinFunctor) -> FinFunctor:
    hit = f._memo.get(id(g))
    if hit is not None and hit[0] is g:
        return hit[1]
    if f.target != g.source:
        raise BoundaryError(f"cannot compose functors: {f.target!r} vs {g.source!r}")
    out = FinFunctor(f.source, g.target,
                     {x: g.on_objects[y] for x, y in f.on_objects.items()},
                     {m: g.on_morphisms[n] for m, n in f.on_morphisms.items()})
    f._memo[id(g)] = (g, out)
    return out


def compose(*fs: FinFunctor) -> FinFunctor:
    out = fs[0]
    for g in fs[1:]:
        out = compose_1cells(out, g)
    return out


def validate_functor(F: FinFunctor) -> LawReport:
    rep = LawReport()
    a, b = F.source, F.target
    for o in a.objects:
        if F.on_objects.get(o) not in set(b.objects):
            rep.add(Violation("object image", o, F.on_objects.get(o)))
    if not rep.ok:
        return rep
    for m in a.morphisms:
        n = F.on_morphisms.get(m.id)
        if n is None or n not in b._by_id:
            rep.add(Violation("morphism image", m.id, n))
            continue
        if b.src(n) != F.ob(m.src) or b.dst(n) != F.ob(m.dst):
            rep.add(Violation("endpoints", m.id, (b.src(n), b.dst(n)), (F.ob(m.src), F.ob(m.dst))))
    if not rep.ok:
        return rep
    for o in a.objects:
        if F.mor(a.id(o)) != b.id(F.ob(o)):
            rep.add(Violation("identity", o, F.mor(a.id(o)), b.id(F.ob(o))))
    for (f, g), h in a.compose.items():
        l, r = F.mor(h), b.then(F.mor(f), F.mor(g))
        if l != r:
            rep.add(Violation("composition", (f, g), l, r))
    return rep


def is_faithful(F: FinFunctor) -> bool:
    a = F.source
    for x in a.objects:
        for y in a.objects:
            imgs = [F.mor(m) for m in a.hom(x, y)]
            if len(set(imgs)) != len(imgs):
                return False
    return True


def constant_functor(a: FinCategory, b: FinCategory, obj: str) -> FinFunctor:
    i = b.id(obj)
    return FinFunctor(a, b, {o: obj for o in a.objects}, {m.id: i for m in a.morphisms})


# -- natural transformations --------------------------------------------------

@dataclass(frozen=True)
class NatTrans:
    source: FinFunctor
    target: FinFunctor
    components: dict

    def __getitem__(self, x):
        return self.components[x]

    def __hash__(self):
        return hash(tuple(self.components.items()))

    def __repr__(self):
        return f"NatTrans({self.components})"

    @property
    def domain(self) -> FinCategory:
        return self.source.source

    @property
    def codomain(self) -> FinCategory:
        return self.source.target


def identity_cell(F: FinFunctor) -> NatTrans:
    hit = F._memo.get("identity")
    if hit is None:
        b = F.target
        hit = F._memo["identity"] = NatTrans(F, F, {x: b.id(y) for x, y in F.on_objects.items()})
    return hit


def validate_nat(a: NatTrans) -> LawReport:
    rep = LawReport()
    F, G = a.source, a.target
    if F.source != G.source or F.target != G.target:
        rep.add(Violation("parallel functors", detail="source/target categories differ"))
        return rep
    c = F.target
    for x in F.source.objects:
        k = a.components.get(x)
        if k is None or k not in c._by_id or c.src(k) != F.ob(x) or c.dst(k) != G.ob(x):
            rep.add(Violation("component type", x, k))
    if not rep.ok:
        return rep
    for m in F.source.morphisms:
        l = c.then(F.mor(m.id), a[m.dst])
        r = c.then(a[m.src], G.mor(m.id))
        if l != r:
            rep.add(Violation("naturality", m.id, l, r))
    return rep


def _trail_text(trail) -> str:
    parts = []
    while isinstance(trail, tuple):
        trail, tag, i = trail
        parts.append(f".{tag}[{i}]")
    return trail + "".join(reversed(parts))


def _vcomp2(a: NatTrans, b: NatTrans, trail) -> NatTrans:
    if a.target != b.source:
        raise BoundaryError(f"vertical boundary mismatch at {_trail_text(trail)}")
    c = a.codomain
    comp, bc = c.compose, b.components
    return NatTrans(a.source, b.target, {x: comp[k, bc[x]] for x, k in a.components.items()})


def _hcomp2(a: NatTrans, b: NatTrans, trail) -> NatTrans:
    if a.codomain != b.domain:
        raise BoundaryError(f"horizontal boundary mismatch at {_trail_text(trail)}")
    G = b.source
    Fp = a.target
    comp, gm, bc, fo = b.codomain.compose, G.on_morphisms, b.components, Fp.on_objects
    comps = {x: comp[gm[k], bc[fo[x]]] for x, k in a.components.items()}
    return NatTrans(compose_1cells(a.source, b.source), compose_1cells(a.target, b.target), comps)


@dataclass(frozen=True)
class Vertical:
    parts: tuple


@dataclass(frozen=True)
class Horizontal:
    parts: tuple


def paste(expr, path: str = "expr") -> NatTrans:
    """Evaluate a pasting expression built from Vertical/Horizontal nodes.

    Leaves are NatTrans values or FinFunctors (read as identity cells).
    Boundary errors name the offending sub-expression, e.g. ``expr.v[1].h[0]``.
    """
    return _paste(expr, path)


def _paste(expr, trail) -> NatTrans:
    if isinstance(expr, NatTrans):
        return expr
    if isinstance(expr, FinFunctor):
        return identity_cell(expr)
    if isinstance(expr, (Vertical, Horizontal)):
        tag = "v" if isinstance(expr, Vertical) else "h"
        parts = expr.parts
        if not parts:
            raise BoundaryError(f"empty composite at {_trail_text(trail)}")
        step = _vcomp2 if tag == "v" else _hcomp2
        out = _paste(parts[0], (trail, tag, 0))
        for i in range(1, len(parts)):
            sub = (trail, tag, i)
            out = step(out, _paste(parts[i], sub), sub)
        return out
    raise TypeError(f"bad pasting expression at {_trail_text(trail)}: {expr!r}")


def vcomp(*cells) -> NatTrans:
    return paste(Vertical(tuple(cells)))


def hcomp(*items) -> NatTrans:
    return paste(Horizontal(tuple(items)))


def whisker_left(F: FinFunctor, a: NatTrans) -> NatTrans:
    """F ⨟ a: component at x is a at F(x)."""
    return hcomp(F, a)


def whisker_right(a: NatTrans, G: FinFunctor) -> NatTrans:
    """a ⨟ G: component at x is G applied to a at x."""
    return hcomp(a, G)


def first_difference(law: str, lhs: NatTrans, rhs: NatTrans) -> Violation | None:
    if lhs.source != rhs.source or lhs.target != rhs.target:
        return Violation(law, detail="boundary mismatch between the two sides")
    for x, k in lhs.components.items():
        if rhs.components[x] != k:
            return Violation(law, x, k, rhs.components[x])
    return None


# -- enumeration --------------------------------------------------------------

def _search(slots: int, candidates, check, budget: Budget) -> Iterator[list]:
    """Depth-first assignment of ``slots`` values in lexicographic order."""
    partial: list = []

    def go(i):
        if i == slots:
            yield list(partial)
            return
        for v in candidates(i, partial):
            budget.tick()
            partial.append(v)
            if check(i, partial):
                yield from go(i + 1)
            partial.pop()

    return go(0)


def _checks_by_step(a: FinCategory):
    cache = a.__dict__.get("_steps")
    if cache is None:
        idx = a._index
        cache = [[] for _ in a.morphisms]
        for (f, g), h in a.compose.items():
            cache[max(idx[f], idx[g], idx[h])].append((idx[f], idx[g], idx[h]))
        object.__setattr__(a, "_steps", cache)
    return cache


def iter_functors(a: FinCategory, b: FinCategory, injective: bool = False,
                  budget: Budget | None = None, objects=None) -> Iterator[FinFunctor]:
    """All functors a -> b, lexicographic in (object images, morphism images).

    ``objects`` optionally restricts each object's image to a list of candidates.
    """
    budget = budget or Budget("functors")
    steps = _checks_by_step(a)
    mors = a.morphisms
    ident = {a.identity[o] for o in a.objects}
    if objects is not None:
        assignments = itertools.product(*(objects[o] for o in a.objects))
        if injective:
            assignments = (t for t in assignments if len(set(t)) == len(t))
    elif injective:
        assignments = itertools.permutations(b.objects, len(a.objects))
    else:
        assignments = itertools.product(b.objects, repeat=len(a.objects))
    for images in assignments:
        budget.tick()
        ob = dict(zip(a.objects, images))

        def cands(i, partial, ob=ob):
            m = mors[i]
            if m.id in ident:
                return (b.identity[ob[m.src]],)
            hs = b.hom(ob[m.src], ob[m.dst])
            if injective:
                used = set(partial)
                return [h for h in hs if h not in used]
            return hs

        def check(i, partial):
            for f, g, h in steps[i]:
                if b.compose[partial[f], partial[g]] != partial[h]:
                    return False
            return True

        for images_m in _search(len(mors), cands, check, budget):
            yield FinFunctor(a, b, ob, {m.id: h for m, h in zip(mors, images_m)})


def iter_nat_trans(F: FinFunctor, G: FinFunctor, budget: Budget | None = None) -> Iterator[NatTrans]:
    if F.source != G.source or F.target != G.target:
        raise BoundaryError("natural transformations need parallel functors")
    budget = budget or Budget("natural transformations")
    a, c = F.source, F.target
    objs = a.objects
    pos = {o: i for i, o in enumerate(objs)}
    at_step = [[] for _ in objs]
    for m in a.morphisms:
        at_step[max(pos[m.src], pos[m.dst])].append(m)

    def cands(i, partial):
        return c.hom(F.ob(objs[i]), G.ob(objs[i]))

    def check(i, partial):
        for m in at_step[i]:
            if c.then(F.mor(m.id), partial[pos[m.dst]]) != c.then(partial[pos[m.src]], G.mor(m.id)):
                return False
        return True

    for comps in _search(len(objs), cands, check, budget):
        yield NatTrans(F, G, dict(zip(objs, comps)))


def enumerate_cells(kind: str, a, b) -> list:
    """``functors`` between categories or ``nat_trans`` between functors."""
    if kind == "functors":
        return list(iter_functors(a, b))
    if kind == "nat_trans":
        return list(iter_nat_trans(a, b))
    raise ValueError(f"unknown cell kind {kind!r}")


# -- limits -------------------------------------------------------------------

@dataclass(frozen=True)
class Cone:
    apex: str
    legs: dict
    diagram: FinFunctor


def iter_cones(D: FinFunctor, apex=None, budget: Budget | None = None) -> Iterator[Cone]:
    budget = budget or Budget("cones")
    J, c = D.source, D.target
    objs = J.objects
    pos = {o: i for i, o in enumerate(objs)}
    at_step = [[] for _ in objs]
    for u in J.morphisms:
        at_step[max(pos[u.src], pos[u.dst])].append(u)
    apexes = c.objects if apex is None else (apex,)
    for x in apexes:
        def cands(i, partial, x=x):
            return c.hom(x, D.ob(objs[i]))

        def check(i, partial):
            for u in at_step[i]:
                if c.then(partial[pos[u.src]], D.mor(u.id)) != partial[pos[u.dst]]:
                    return False
            return True

        for legs in _search(len(objs), cands, check, budget):
            yield Cone(x, dict(zip(objs, legs)), D)


def factorizations(cone: Cone, through: Cone) -> list:
    """Morphisms m: cone.apex -> through.apex with m ⨟ through.legs == cone.legs."""
    c = cone.diagram.target
    return [m for m in c.hom(cone.apex, through.apex)
            if all(c.then(m, through.legs[j]) == k for j, k in cone.legs.items())]


def limit(D: FinFunctor) -> Cone | None:
    """First cone (in enumeration order) through which every cone factors uniquely."""
    budget = Budget("limit")
    cones = list(iter_cones(D, budget=budget))
    budget.tick(len(cones) * len(cones))
    for cand in cones:
        if all(len(factorizations(k, cand)) == 1 for k in cones):
            return cand
    return None


# -- isomorphism search -------------------------------------------------------

def find_isomorphism(c: FinCategory, d: FinCategory):
    """Return (F, G) with F⨟G and G⨟F identities, or None."""
    if len(c.objects) != len(d.objects) or len(c.morphisms) != len(d.morphisms):
        return None
    sig_c = sorted(len(c.hom(x, y)) for x in c.objects for y in c.objects)
    sig_d = sorted(len(d.hom(x, y)) for x in d.objects for y in d.objects)
    if sig_c != sig_d:
        return None
    for F in iter_functors(c, d, injective=True):
        G = FinFunctor(d, c, {v: k for k, v in F.on_objects.items()},
                       {v: k for k, v in F.on_morphisms.items()})
        if validate_functor(G).ok:
            return F, G
    return None


# -- adjunctions --------------------------------------------------------------

@dataclass(frozen=True)
class Adjunction:
    """left ⊣ right with unit id ⇒ left⨟right and counit right⨟left ⇒ id."""
    left: FinFunctor
    right: FinFunctor
    unit: NatTrans
    counit: NatTrans


def check_adjunction(adj: Adjunction) -> LawReport:
    rep = LawReport()
    L, R = adj.left, adj.right
    rep.add(first_difference("snake (left)",
                             vcomp(hcomp(adj.unit, L), hcomp(L, adj.counit)), identity_cell(L)))
    rep.add(first_difference("snake (right)",
                             vcomp(hcomp(R, adj.unit), hcomp(adj.counit, R)), identity_cell(R)))
    return rep


def identity_adjunction(c: FinCategory) -> Adjunction:
    I = identity_functor(c)
    return Adjunction(I, I, identity_cell(I), identity_cell(I))


def retype(a: NatTrans, source: FinFunctor, target: FinFunctor) -> NatTrans:
    """Same components, boundary given by functors equal to the current ones."""
    if a.source != source or a.target != target:
        raise BoundaryError("retyped boundary differs from the cell's boundary")
    return NatTrans(source, target, a.components)

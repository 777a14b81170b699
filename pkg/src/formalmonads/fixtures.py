"""Small categories, monads and functors used as the standard test universe."""
from __future__ import annotations

from functools import lru_cache

from .fincat import (FinCategory, FinFunctor, NatTrans, full_subcategory, identity_functor,
                     make_category, monoid, poset)


def _subset_leq(x, y):
    return set(x.replace("0", "")) <= set(y.replace("0", ""))


@lru_cache(maxsize=None)
def category(name: str) -> FinCategory:
    if name == "term":
        return make_category(["*"], [("1", "*", "*")], {"*": "1"}, {("1", "1"): "1"}, "term")
    if name == "arrow2":
        return make_category(
            ["0", "1"], [("id0", "0", "0"), ("id1", "1", "1"), ("f", "0", "1")],
            {"0": "id0", "1": "id1"},
            {("id0", "id0"): "id0", ("id1", "id1"): "id1", ("id0", "f"): "f", ("f", "id1"): "f"},
            "arrow2")
    if name == "pair":
        comp = {("id0", "id0"): "id0", ("id1", "id1"): "id1"}
        for f in ("f", "g"):
            comp["id0", f] = f
            comp[f, "id1"] = f
        return make_category(
            ["0", "1"], [("id0", "0", "0"), ("id1", "1", "1"), ("f", "0", "1"), ("g", "0", "1")],
            {"0": "id0", "1": "id1"}, comp, "pair")
    if name == "chain3":
        return poset(["0", "1", "2"], lambda x, y: x <= y, "chain3")
    if name == "sub12":
        return full_subcategory(category("chain3"), ["1", "2"], "sub12")
    if name == "sq":
        return poset(["0", "a", "b", "ab"], _subset_leq, "sq")
    if name == "bz2":
        return monoid(["1", "s"], lambda f, g: "1" if f == g else "s", "1", "bz2")
    raise KeyError(name)


CATEGORIES = ("term", "arrow2", "pair", "chain3", "sq", "bz2")


def monotone_map(c: FinCategory, table: dict) -> FinFunctor:
    """Endofunctor of a poset category from its object map."""
    return FinFunctor(c, c, dict(table),
                      {m.id: f"{table[m.src]}<={table[m.dst]}" for m in c.morphisms})


def poset_cell(F: FinFunctor, G: FinFunctor) -> NatTrans:
    """The unique cell F ⇒ G between functors into a poset."""
    return NatTrans(F, G, {x: f"{F.ob(x)}<={G.ob(x)}" for x in F.source.objects})


def closure_monad(c: FinCategory, table: dict):
    from .monads import Monad
    T = monotone_map(c, table)
    I = identity_functor(c)
    from .fincat import compose
    return Monad(c, T, poset_cell(I, T), poset_cell(compose(T, T), T))


@lru_cache(maxsize=None)
def monad(name: str):
    from .monads import Monad, identity_monad
    if name == "clos_c":
        return closure_monad(category("chain3"), {"0": "1", "1": "1", "2": "2"})
    if name == "clos_top":
        return closure_monad(category("chain3"), {"0": "2", "1": "2", "2": "2"})
    if name == "cA":
        return closure_monad(category("sq"), {"0": "a", "a": "a", "b": "ab", "ab": "ab"})
    if name == "cB":
        return closure_monad(category("sq"), {"0": "b", "a": "ab", "b": "b", "ab": "ab"})
    if name == "sgn":
        c = category("bz2")
        I = identity_functor(c)
        return Monad(c, I, NatTrans(I, I, {"*": "s"}), NatTrans(I, I, {"*": "s"}))
    if name.startswith("id_"):
        return identity_monad(category(name[3:]))
    if name == "id":
        return identity_monad(category("chain3"))
    raise KeyError(name)


MONADS = ("id", "clos_c", "clos_top", "cA", "cB", "sgn")


@lru_cache(maxsize=None)
def functor(name: str) -> FinFunctor:
    if name == "fix_incl":
        s, c = category("sub12"), category("chain3")
        return FinFunctor(s, c, {"1": "1", "2": "2"}, {m.id: m.id for m in s.morphisms})
    if name == "fix_reflect":
        # left adjoint of fix_incl
        c, s = category("chain3"), category("sub12")
        table = {"0": "1", "1": "1", "2": "2"}
        return FinFunctor(c, s, table, {m.id: f"{table[m.src]}<={table[m.dst]}"
                                        for m in c.morphisms})
    raise KeyError(name)


def fix_adjunction():
    """c ⊣ incl between chain3 and its fixed points {1, 2}."""
    from .fincat import Adjunction, compose
    L, R = functor("fix_reflect"), functor("fix_incl")
    return Adjunction(L, R,
                      poset_cell(identity_functor(L.source), compose(L, R)),
                      poset_cell(compose(R, L), identity_functor(R.source)))

import itertools

import pytest
from hypothesis import given, strategies as st

from formalmonads import fixtures as fx
from formalmonads.fincat import (BoundaryError, FinFunctor, Horizontal, NatTrans, SizeCapExceeded,
                                 Vertical, compose, compose_1cells, constant_functor, discrete,
                                 enumerate_cells, find_isomorphism, full_subcategory, hcomp,
                                 identity_cell, identity_functor, iter_functors, iter_nat_trans,
                                 limit, make_category, paste, size_cap, validate_category,
                                 validate_functor, validate_nat, vcomp, whisker_left)
from formalmonads.algobj import construct_em
from zmod2 import mul

CATS = fx.CATEGORIES


def _brute_functors(a, b):
    """Every assignment of objects and morphisms, filtered by the functor laws."""
    out = []
    for objs in itertools.product(b.objects, repeat=len(a.objects)):
        F0 = dict(zip(a.objects, objs))
        choices = [b.hom(F0[m.src], F0[m.dst]) for m in a.morphisms]
        for mors in itertools.product(*choices):
            F = FinFunctor(a, b, F0, dict(zip(a.morphism_ids, mors)))
            if validate_functor(F).ok:
                out.append(F)
    return out


@pytest.mark.parametrize("name", CATS + ("sub12",))
def test_fixture_categories_are_valid(name):
    assert validate_category(fx.category(name)).ok


def test_rebound_composite_is_a_src_or_dst_mismatch():
    c = fx.category("chain3")
    comp = {(f.id, g.id): c.then(f.id, g.id) for f in c.morphisms for g in c.morphisms
            if f.dst == g.src}
    comp["0<=1", "1<=2"] = "0<=0"
    bad = make_category(c.objects, [tuple(m) for m in c.morphisms], c.identity, comp)
    laws = {v.law for v in validate_category(bad)}
    assert laws & {"src mismatch", "dst mismatch"}


def test_missing_composite_is_reported():
    c = fx.category("arrow2")
    comp = {(f.id, g.id): c.then(f.id, g.id) for f in c.morphisms for g in c.morphisms
            if f.dst == g.src}
    del comp["id0", "f"]
    bad = make_category(c.objects, [tuple(m) for m in c.morphisms], c.identity, comp)
    assert not validate_category(bad).ok


def test_compose_examples():
    incl = fx.functor("fix_incl")
    assert compose_1cells(incl, identity_functor(fx.category("chain3"))) == incl
    T = fx.monad("clos_c").endo
    assert compose(T, T).on_objects == {"0": "1", "1": "1", "2": "2"}
    pair = fx.category("pair")
    c0, c1 = constant_functor(pair, pair, "0"), constant_functor(pair, pair, "1")
    assert compose(c0, c1) == c1


def test_compose_rejects_mismatched_boundaries():
    with pytest.raises(BoundaryError):
        compose(fx.functor("fix_incl"), fx.functor("fix_incl"))


def test_paste_examples():
    sgn = fx.monad("sgn")
    F = sgn.endo
    assert paste(Vertical((identity_cell(F), identity_cell(F)))) == identity_cell(F)
    eta = sgn.unit
    assert hcomp(eta, eta)["*"] == mul("s", "s") == "1"
    c = fx.monad("clos_c")
    assert whisker_left(c.endo, c.unit)["0"] == "1<=1"


def test_paste_error_names_the_subexpression():
    sgn, clos = fx.monad("sgn"), fx.monad("clos_c")
    with pytest.raises(BoundaryError, match=r"expr\.v\[1\]"):
        paste(Vertical((sgn.unit, clos.unit)))
    with pytest.raises(BoundaryError, match=r"expr\.v\[0\]\.h\[1\]"):
        paste(Vertical((Horizontal((sgn.unit, clos.unit)), sgn.unit)))


@pytest.mark.parametrize("a,b,n", [("pair", "pair", 6), ("chain3", "chain3", 10)])
def test_functor_counts(a, b, n):
    A, B = fx.category(a), fx.category(b)
    found = enumerate_cells("functors", A, B)
    assert len(found) == n == len(_brute_functors(A, B))
    assert len(set(found)) == n


def test_monotone_count_is_binomial():
    c = fx.category("chain3")
    monotone = [t for t in itertools.product(range(3), repeat=3) if t[0] <= t[1] <= t[2]]
    assert len(monotone) == 10 == len(enumerate_cells("functors", c, c))


def test_nat_trans_on_term():
    I = identity_functor(fx.category("term"))
    assert len(enumerate_cells("nat_trans", I, I)) == 1


@pytest.mark.parametrize("a", CATS)
@pytest.mark.parametrize("b", ("term", "arrow2", "bz2", "chain3"))
def test_functor_enumeration_matches_brute_force(a, b):
    A, B = fx.category(a), fx.category(b)
    assert set(iter_functors(A, B)) == set(_brute_functors(A, B))


def _points(c, objs):
    d = discrete(list(objs.keys()))
    return FinFunctor(d, c, dict(objs), {d.id(x): c.id(o) for x, o in objs.items()})


def test_limit_examples():
    c = fx.category("chain3")
    assert limit(_points(c, {"x": "1", "y": "2"})).apex == "1"
    assert limit(_points(c, {})).apex == "2"
    pair = fx.category("pair")
    arrows = make_category(["s", "t"], [("is", "s", "s"), ("it", "t", "t"), ("u", "s", "t"),
                                        ("v", "s", "t")],
                           {"s": "is", "t": "it"},
                           {("is", "is"): "is", ("it", "it"): "it", ("is", "u"): "u",
                            ("u", "it"): "u", ("is", "v"): "v", ("v", "it"): "v"})
    fg = FinFunctor(arrows, pair, {"s": "0", "t": "1"},
                    {"is": "id0", "it": "id1", "u": "f", "v": "g"})
    assert limit(fg) is None


@given(st.lists(st.sampled_from(["0", "1", "2"]), max_size=3))
def test_limits_in_chain_are_minima(objs):
    c = fx.category("chain3")
    L = limit(_points(c, {f"x{i}": o for i, o in enumerate(objs)}))
    assert L.apex == min(objs, default="2")


def test_isomorphism_examples():
    c = fx.category("chain3")
    F, G = find_isomorphism(c, c)
    assert compose(F, G) == identity_functor(c)
    em = construct_em(fx.monad("clos_c")).em_category
    assert find_isomorphism(em, full_subcategory(c, ["1", "2"])) is not None
    assert find_isomorphism(c, fx.category("pair")) is None


def test_validate_nat_flags_unnatural_components():
    a = fx.category("arrow2")
    up = FinFunctor(a, a, {"0": "1", "1": "1"}, {"id0": "id1", "id1": "id1", "f": "id1"})
    assert validate_nat(NatTrans(identity_functor(a), up, {"0": "f", "1": "id1"})).ok
    assert not validate_nat(NatTrans(identity_functor(a), up, {"0": "f", "1": "id0"})).ok


def test_size_cap_is_enforced():
    c = fx.category("sq")
    with size_cap(5), pytest.raises(SizeCapExceeded):
        list(iter_functors(c, c))


# -- pasting is a strict 2-category ---------------------------------------------------

def _cells(c):
    fs = list(iter_functors(c, c))
    return [a for F in fs for G in fs for a in iter_nat_trans(F, G)]


SMALL = {n: _cells(fx.category(n)) for n in ("bz2", "arrow2", "chain3")}
cells = st.sampled_from(sorted(SMALL)).flatmap(lambda n: st.tuples(*[st.sampled_from(SMALL[n])] * 4))


def _after(pool, a):
    return [b for b in pool if b.source == a.target]


@st.composite
def interchange_grids(draw):
    pool = SMALL[draw(st.sampled_from(sorted(SMALL)))]
    a, c = draw(st.sampled_from(pool)), draw(st.sampled_from(pool))
    # identities are always available, so the follow-up lists are never empty
    b, d = draw(st.sampled_from(_after(pool, a))), draw(st.sampled_from(_after(pool, c)))
    return a, b, c, d


@given(interchange_grids())
def test_interchange_of_pasting(q):
    a, b, c, d = q
    assert vcomp(hcomp(a, c), hcomp(b, d)) == hcomp(vcomp(a, b), vcomp(c, d))


@given(cells)
def test_horizontal_and_vertical_associativity(q):
    a, b, c, _ = q
    assert hcomp(hcomp(a, b), c) == hcomp(a, hcomp(b, c))
    try:
        left = vcomp(vcomp(a, b), c)
    except BoundaryError:
        return
    assert left == vcomp(a, vcomp(b, c))


@given(cells)
def test_pasted_cells_are_natural(q):
    a, b, c, d = q
    assert validate_nat(hcomp(a, b, c)).ok
    assert hcomp(identity_cell(a.source), d).components == hcomp(a.source, d).components

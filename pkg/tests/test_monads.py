import itertools

import pytest
from hypothesis import given, strategies as st

from formalmonads import fixtures as fx
from formalmonads import oracles
from formalmonads.fincat import (BoundaryError, NatTrans, UnlawfulError, compose, hcomp,
                                 identity_cell, identity_functor, vcomp)
from formalmonads.monads import (Bimodule, BimoduleMapNAry, ModuleStr, Monad, MonadMap,
                                 as_lax_view, bimodule_action_convert, bracketings, check_bimodule,
                                 check_bimodule_map, check_module, check_monad, check_monad_map,
                                 from_lax_view, identity_monad, iter_monads, joint_action,
                                 monad_as_bimodule, monad_as_module, nary_mult)
from formalmonads.morphisms import check_lax
from zmod2 import mul

SGN = fx.monad("sgn")
BZ2 = fx.category("bz2")
I = identity_functor(BZ2)


def z(comp):
    return NatTrans(I, I, {"*": comp})


def laws(rep):
    return {v.law for v in rep}


@pytest.mark.parametrize("name", fx.MONADS)
def test_fixture_monads_are_lawful(name):
    assert check_monad(fx.monad(name)).ok


def test_sgn_unit_laws_by_hand():
    # μ·η must be the identity: s·s = 1 in Z/2
    assert mul(SGN.mult["*"], SGN.unit["*"]) == "1"
    assert check_monad(SGN).ok


def test_unit_violation_on_bz2():
    m = Monad(BZ2, I, z("s"), z("1"))
    assert mul("1", "s") != "1"
    assert laws(check_monad(m)) == {"left unit", "right unit"}


def test_boundary_errors_are_not_law_violations():
    c = fx.monad("clos_c")
    with pytest.raises(BoundaryError):
        check_monad(Monad(c.base, c.endo, c.mult, c.unit))


def _closure_operators(n):
    return [f for f in itertools.product(range(n), repeat=n)
            if all(f[x] >= x for x in range(n)) and all(f[f[x]] == f[x] for x in range(n))
            and all(f[x] <= f[y] for x in range(n) for y in range(x, n))]


def _moore_families():
    # closure systems on the Boolean lattice of {a, b}: meet-closed sets containing the top
    elems = [frozenset(), frozenset("a"), frozenset("b"), frozenset("ab")]
    out = 0
    for k in range(4):
        for fam in itertools.combinations(elems[:3], k):
            fam = set(fam) | {elems[3]}
            if all(x & y in fam for x in fam for y in fam):
                out += 1
    return out


def test_monad_counts_match_closure_operator_counts():
    assert len(list(iter_monads(fx.category("chain3")))) == len(_closure_operators(3)) == 4
    assert len(list(iter_monads(fx.category("sq")))) == _moore_families() == 7


def test_nary_mult_examples():
    # three factors need two multiplications
    assert nary_mult(SGN, 3)["*"] == mul("s", "s") == "1"
    assert nary_mult(SGN, 1) == identity_cell(SGN.endo)
    c = fx.monad("clos_c")
    assert nary_mult(c, 0) == c.unit
    assert nary_mult(SGN, 2) == SGN.mult


@pytest.mark.parametrize("name", fx.MONADS)
@pytest.mark.parametrize("n", [2, 3, 4])
def test_all_bracketings_agree(name, n):
    m = fx.monad(name)
    assert len(set(bracketings(m, n))) == 1


def test_monad_map_examples():
    c, top = fx.monad("clos_c"), fx.monad("clos_top")
    forced = NatTrans(c.endo, top.endo, {x: f"{c.endo.ob(x)}<={top.endo.ob(x)}"
                                         for x in c.base.objects})
    assert check_monad_map(MonadMap(c, top, forced)).ok
    assert check_monad_map(MonadMap(SGN, SGN, z("1"))).ok
    # η⨟φ = s·s = 1 differs from η = s
    assert mul("s", "s") != "s"
    assert "unit" in laws(check_monad_map(MonadMap(SGN, SGN, z("s"))))


def test_module_examples():
    c = fx.monad("clos_c")
    X = fx.functor("fix_incl")
    rho = NatTrans(compose(X, c.endo), X, {x: f"{x}<={x}" for x in X.source.objects})
    assert check_module(ModuleStr("right", c, X, rho)).ok
    assert laws(check_module(ModuleStr("right", SGN, I, z("1")))) >= {"unit"}
    assert check_module(ModuleStr("right", SGN, I, z("s"))).ok


def test_bimodule_examples():
    c = fx.monad("clos_c")
    assert check_bimodule(monad_as_bimodule(c)).ok
    b = monad_as_bimodule(SGN)
    assert check_bimodule(b).ok
    flipped = Bimodule(SGN, SGN, I, z("s"), z("1"))
    # the flipped right action breaks the right module laws; compatibility
    # holds since λ⨟ρ and ρ⨟λ are both products of the same elements of Z/2
    assert {"right: unit", "right: associativity"} <= laws(check_bimodule(flipped))
    assert "compatibility" not in laws(check_bimodule(flipped))


def test_bimodule_action_convert_examples():
    b = monad_as_bimodule(SGN)
    alpha = bimodule_action_convert(b)
    assert alpha["*"] == mul("s", "s") == "1"
    assert bimodule_action_convert(alpha, SGN, SGN, I) == b
    idm = identity_monad(fx.category("chain3"))
    bi = monad_as_bimodule(idm)
    alpha = bimodule_action_convert(bi)
    assert alpha.components == identity_cell(idm.endo).components
    assert bimodule_action_convert(alpha, idm, idm, idm.endo) == bi
    bc = monad_as_bimodule(fx.monad("clos_c"))
    assert bimodule_action_convert(bimodule_action_convert(bc), bc.left_monad, bc.right_monad,
                                   bc.carrier) == bc


def test_bimodule_action_convert_rejects_unlawful():
    with pytest.raises(UnlawfulError):
        bimodule_action_convert(Bimodule(SGN, SGN, I, z("s"), z("1")))


def test_bimodule_map_examples():
    b = monad_as_bimodule(SGN)
    assert check_bimodule_map(BimoduleMapNAry((b,), b, identity_cell(b.carrier))).ok
    c = fx.monad("clos_c")
    bc = monad_as_bimodule(c)
    assert check_bimodule_map(BimoduleMapNAry((), bc, c.unit, base=c)).ok
    two = BimoduleMapNAry((bc, bc), bc, c.mult)
    assert check_bimodule_map(two).ok


@pytest.mark.parametrize("name", ["clos_c", "sgn", "id"])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_nary_multiplication_is_a_bimodule_map(name, n):
    m = fx.monad(name)
    b = monad_as_bimodule(m)
    assert check_bimodule_map(BimoduleMapNAry((b,) * n, b, nary_mult(m, n), base=m)).ok


def test_bimodule_map_detects_a_broken_target():
    bad = Bimodule(SGN, SGN, I, z("s"), z("1"))
    assert "unit absorption" in laws(check_bimodule_map(BimoduleMapNAry((), bad, SGN.unit, base=SGN)))


def test_lax_views():
    c, top = fx.monad("clos_c"), fx.monad("clos_top")
    forced = NatTrans(c.endo, top.endo, {x: f"{c.endo.ob(x)}<={top.endo.ob(x)}"
                                         for x in c.base.objects})
    h = MonadMap(c, top, forced)
    l = as_lax_view(h)
    assert (l.source_monad, l.target_monad) == (top, c) and check_lax(l).ok
    assert from_lax_view(l, "monad_map") == h
    X = fx.functor("fix_incl")
    s = ModuleStr("right", c, X, NatTrans(compose(X, c.endo), X,
                                          {x: f"{x}<={x}" for x in X.source.objects}))
    l = as_lax_view(s)
    assert l.source_monad.endo == identity_functor(X.source) and check_lax(l).ok
    assert from_lax_view(l, "module") == s
    l = as_lax_view(X)
    assert l.target_monad == identity_monad(X.target) and check_lax(l).ok
    assert from_lax_view(l, "functor") == X


# -- the pointwise checkers agree with whole-cell pasting ----------------------------

CATS = [fx.category(n) for n in fx.CATEGORIES]
MONADS = [fx.monad(n) for n in fx.MONADS]
TESTS = [fx.category("term"), fx.category("arrow2")]


@given(st.randoms(use_true_random=False), st.sampled_from(CATS))
def test_check_monad_matches_pasting(rng, c):
    m = oracles.random_candidate_monad(rng, c)
    assert laws(check_monad(m)) == oracles.paste_monad_failures(m)


@given(st.randoms(use_true_random=False), st.sampled_from(MONADS), st.sampled_from(TESTS),
       st.sampled_from(["left", "right"]))
def test_check_module_matches_pasting(rng, m, test, side):
    s = oracles.random_candidate_module(rng, m, test, side)
    if s is not None:
        assert laws(check_module(s)) == oracles.paste_module_failures(s)


@given(st.sampled_from(MONADS))
def test_monad_is_a_module_over_itself(m):
    assert check_module(monad_as_module(m, "right")).ok
    assert check_module(monad_as_module(m, "left")).ok
    assert joint_action(monad_as_bimodule(m)) == vcomp(hcomp(m.mult, m.endo), m.mult)

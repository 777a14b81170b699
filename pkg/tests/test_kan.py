import pytest
from hypothesis import given, strategies as st

from formalmonads import fixtures as fx
from formalmonads.algobj import construct_em
from formalmonads.fincat import (FinFunctor, NatTrans, UnlawfulError, compose, constant_functor,
                                 discrete, identity_adjunction, identity_functor, iter_functors,
                                 iter_nat_trans, limit)
from formalmonads.kan import (certify, codensity, count_universal_maps, extlift, from_adjunction,
                              monad_structure, preserves_right_extension, pushforward,
                              right_extension, universal_monad_map)
from formalmonads.monads import (ModuleStr, check_module, check_monad, check_monad_map,
                                 identity_monad, iter_monads)
from formalmonads.morphisms import (SPECIALIZATION, TWO_CELL, LaxMorphism, check_square,
                                    identity_lax, identity_square, parallel_square)

X = fx.functor("fix_incl")
CHAIN = fx.category("chain3")
CLOS = fx.monad("clos_c")
SQ = fx.category("sq")


def _upper_meets():
    """Pointwise value at s: the least fixed point above s."""
    fixed = sorted(X.on_objects.values())
    return {s: min(f for f in fixed if f >= s) for s in CHAIN.objects}


def test_codensity_of_the_inclusion():
    e = codensity(X)
    assert e.ext.on_objects == _upper_meets() == {"0": "1", "1": "1", "2": "2"}
    assert e.ext == CLOS.endo
    cert = certify(e)
    assert cert.ok and cert.functors == len(list(iter_functors(CHAIN, CHAIN))) == 10


def test_codensity_of_identities():
    e = codensity(identity_functor(CHAIN))
    assert e.ext == identity_functor(CHAIN)
    term = fx.category("term")
    e = codensity(constant_functor(fx.category("bz2"), term, "*"))
    assert e.ext == identity_functor(term)


def test_extension_along_identity_is_the_functor():
    e = right_extension(identity_functor(CHAIN), CLOS.endo)
    assert e.ext == CLOS.endo


def test_absent_extension():
    d2, pair = discrete(["x", "y"]), fx.category("pair")
    of = FinFunctor(d2, pair, {"x": "1", "y": "1"}, {m.id: "id1" for m in d2.morphisms})
    # the cone (f, g) from 0 does not factor through (id1, id1)
    assert limit(of) is None
    assert right_extension(constant_functor(d2, fx.category("term"), "*"), of) is None


def test_codensity_monad_is_the_closure():
    m = monad_structure(codensity(X))
    assert check_monad(m).ok
    assert (m.endo, m.unit.components, m.mult.components) == \
        (CLOS.endo, CLOS.unit.components, CLOS.mult.components)
    m = monad_structure(codensity(identity_functor(CHAIN)))
    assert m == identity_monad(CHAIN) or (m.endo == identity_functor(CHAIN) and check_monad(m).ok)


def test_pushforward_examples():
    idm = identity_monad(X.source)
    p, c = pushforward(idm, X), codensity(X)
    assert p.ext == c.ext and p.universal.components == c.universal.components
    assert monad_structure(p) == monad_structure(c)
    assert pushforward(CLOS, identity_functor(CHAIN)).ext == CLOS.endo
    # clos_c restricted to its fixed points is the identity there
    ident = [t for t in iter_monads(X.source) if t.endo == identity_functor(X.source)]
    assert len(ident) == 1 and pushforward(ident[0], X).ext == CLOS.endo
    # the monad 1 ↦ 2 on the fixed points pushes forward to the constant 2
    other = [t for t in iter_monads(X.source) if t.endo.ob("1") == "2"]
    assert pushforward(other[0], X).ext.on_objects == {"0": "2", "1": "2", "2": "2"}


def test_extensions_from_adjunctions():
    adj = fx.fix_adjunction()
    e = from_adjunction("codensity", adj)
    assert e.ext == CLOS.endo and certify(e).ok
    idadj = identity_adjunction(CHAIN)
    assert from_adjunction("pushforward", idadj, CLOS).ext == CLOS.endo
    assert from_adjunction("codensity", idadj).ext == identity_functor(CHAIN)
    for t in iter_monads(X.source):
        via = from_adjunction("pushforward", adj, t)
        direct = pushforward(t, X)
        assert via.ext == direct.ext and via.universal == direct.universal


def test_from_adjunction_rejects_broken_snakes():
    adj = fx.fix_adjunction()
    bz2 = fx.category("bz2")
    I = identity_functor(bz2)
    bad = adj.__class__(I, I, NatTrans(I, I, {"*": "s"}), NatTrans(I, I, {"*": "1"}))
    with pytest.raises(UnlawfulError):
        from_adjunction("codensity", bad)


def _actions_on_inclusion():
    for t in iter_monads(CHAIN):
        for rho in iter_nat_trans(compose(X, t.endo), X):
            if check_module(ModuleStr("right", t, X, rho)).ok:
                yield t, rho


def test_universal_monad_maps():
    e = codensity(X)
    found = list(_actions_on_inclusion())
    # only the monads fixing 1 and 2 act: the identity and the closure itself
    assert sorted(t.endo.ob("0") for t, _ in found) == ["0", "1"]
    for t, rho in found:
        h = universal_monad_map(e, t, rho)
        assert check_monad_map(h).ok
        assert count_universal_maps(e, t, rho) == 1
    own = ModuleStr("right", CLOS, X, NatTrans(compose(X, CLOS.endo), X,
                                               {x: f"{x}<={x}" for x in X.source.objects}))
    h = universal_monad_map(e, CLOS, own.action)
    assert h.cell.components == {x: f"{CLOS.endo.ob(x)}<={CLOS.endo.ob(x)}" for x in CHAIN.objects}


def test_universal_monad_map_rejects_unlawful_structure():
    I = identity_functor(fx.category("bz2"))
    e = codensity(I)
    # acting by 1 breaks the unit law since the sign monad's unit is s
    with pytest.raises(UnlawfulError):
        universal_monad_map(e, fx.monad("sgn"), NatTrans(I, I, {"*": "1"}))
    assert universal_monad_map(e, fx.monad("sgn"), NatTrans(I, I, {"*": "s"})).cell["*"] == "s"


def test_preservation():
    e = codensity(X)
    assert preserves_right_extension(identity_functor(CHAIN), e)[0]
    adj = fx.fix_adjunction()
    # incl is the right adjoint of the reflection onto {1, 2}
    assert preserves_right_extension(adj.right, codensity(identity_functor(X.source)))[0]


def test_non_preserving_functor_has_a_counterexample():
    d = discrete(["a", "b"])
    pts = FinFunctor(d, SQ, {"a": "a", "b": "b"}, {m.id: SQ.id(m.src) for m in d.morphisms})
    e = codensity(pts)
    # the meet of {a} and {b} is ∅
    assert e.ext.ob("0") == "0" and certify(e).ok
    a2 = fx.category("arrow2")
    lvl = {x: "0" if x == "0" else "1" for x in SQ.objects}
    F = FinFunctor(SQ, a2, lvl, {m.id: a2.hom(lvl[m.src], lvl[m.dst])[0] for m in SQ.morphisms})
    ok, cert = preserves_right_extension(F, e)
    assert not ok
    Y, psi, count = cert.counterexample
    assert count != 1


def test_codensity_lifting_lands_on_the_inclusion():
    e = codensity(X)
    idm = identity_monad(CHAIN)
    Id = identity_functor(CHAIN)
    chi = NatTrans(Id, CLOS.endo, {x: f"{x}<={CLOS.endo.ob(x)}" for x in CHAIN.objects})
    l = LaxMorphism(CLOS, idm, Id, chi)
    a2 = construct_em(idm)
    K = extlift("codensity", "lax", l, e, idm, a2)
    assert compose(K, a2.forgetful) == X
    assert extlift("codensity", "lax", (Id, K), e, idm, a2, "inverse") == l


def test_codensity_lifting_of_squares_round_trips():
    e = codensity(X)
    idm = identity_monad(CHAIN)
    Id = identity_functor(CHAIN)
    chi = NatTrans(Id, CLOS.endo, {x: f"{x}<={CLOS.endo.ob(x)}" for x in CHAIN.objects})
    l = LaxMorphism(CLOS, idm, Id, chi)
    for kind in (TWO_CELL, SPECIALIZATION):
        cells = list(iter_nat_trans(Id, Id)) if kind == TWO_CELL else \
            list(iter_nat_trans(Id, compose(CLOS.endo, Id)))
        for cell in cells:
            q = parallel_square(l, l, cell, kind)
            if not check_square(q).ok:
                continue
            out = extlift("codensity", kind, q, e, idm)
            assert extlift("codensity", kind, (l, l, out), e, idm, direction="inverse") == q


def test_pushforward_lifting_along_identity():
    e = pushforward(CLOS, identity_functor(CHAIN))
    w = monad_structure(e)
    l = identity_lax(w)
    out = extlift("pushforward", "lax", l, e, w)
    assert out.carrier == l.carrier and out.structure.components == l.structure.components
    q = identity_square(l)
    assert extlift("pushforward", TWO_CELL, q, e, w).cell.components == q.cell.components


def test_extlift_rejects_unknown_propositions():
    e = codensity(X)
    with pytest.raises(ValueError):
        extlift("nope", "lax", identity_lax(CLOS), e, CLOS)


FUNCTORS_INTO_CHAIN = [F for n in ("term", "arrow2", "pair", "chain3")
                       for F in iter_functors(fx.category(n), CHAIN)]


@given(st.sampled_from(FUNCTORS_INTO_CHAIN))
def test_codensity_into_a_complete_poset_exists_and_is_certified(F):
    e = codensity(F)
    assert e is not None and certify(e).ok
    p = pushforward(identity_monad(F.source), F)
    assert p.ext == e.ext and monad_structure(p) == monad_structure(e)
    # each value is the least image point above s, or the top when none is
    for s in CHAIN.objects:
        above = [F.ob(x) for x in F.source.objects if F.ob(x) >= s]
        assert e.ext.ob(s) == min(above, default="2")

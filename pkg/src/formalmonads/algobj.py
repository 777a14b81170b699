"""Eilenberg–Moore and Kleisli objects, resolutions, and the liftings they induce."""
from __future__ import annotations

from dataclasses import dataclass, field

from .fincat import (Adjunction, BoundaryError, FinCategory, FinFunctor, LawReport, NatTrans,
                     SizeCapExceeded, UnlawfulError, Violation, check_adjunction, compose, first_difference,
                     hcomp, identity_functor, is_faithful, iter_functors, iter_nat_trans,
                     make_category, vcomp)
from .monads import (Bimodule, BimoduleMapNAry, ModuleStr, Monad, check_bimodule,
                     check_bimodule_map, check_module, check_module_map, check_monad)
from .morphisms import (SPECIALIZATION, TWO_CELL, LaxMorphism, check_lax,
                        check_square, parallel_square)


def em_object_id(s: str, a: str) -> str:
    return f"({s}|{a})"


def em_morphism_id(f: str, src: str, dst: str) -> str:
    return f"{f}:{src}->{dst}"


def kl_morphism_id(f: str, b: str) -> str:
    return f"({f}@{b})"


@dataclass(frozen=True)
class AlgebraObject:
    monad: Monad
    em_category: FinCategory
    forgetful: FinFunctor
    forgetful_action: NatTrans

    def structure(self, obj: str) -> tuple:
        """(underlying object, structure map) of an EM object."""
        return self.forgetful.ob(obj), self.forgetful_action[obj]

    def morphism(self, f: str, src: str, dst: str) -> str:
        mid = em_morphism_id(f, src, dst)
        if mid not in self.em_category._by_id:
            raise UnlawfulError(f"{f} is not an algebra morphism {src} -> {dst}")
        return mid

    def module(self) -> ModuleStr:
        return ModuleStr("right", self.monad, self.forgetful, self.forgetful_action)


@dataclass(frozen=True)
class OpalgebraObject:
    monad: Monad
    kl_category: FinCategory
    insertion: FinFunctor
    insertion_action: NatTrans
    underlying: dict = field(default_factory=dict, compare=False, repr=False)

    def module(self) -> ModuleStr:
        return ModuleStr("left", self.monad, self.insertion, self.insertion_action)


def _require_lawful(m: Monad) -> None:
    rep = check_monad(m)
    if not rep.ok:
        raise UnlawfulError(f"monad is not lawful: {rep}")


def construct_em(m: Monad) -> AlgebraObject:
    _require_lawful(m)
    c, T = m.base, m.endo
    eta, mu = m.unit.components, m.mult.components
    algebras = []
    for s in c.objects:
        for a in c.hom(T.ob(s), s):
            if c.then(eta[s], a) == c.id(s) and c.then(T.mor(a), a) == c.then(mu[s], a):
                algebras.append((s, a))
    objs = [em_object_id(s, a) for s, a in algebras]
    mors, under, comp = [], {}, {}
    for (s, a), A in zip(algebras, objs):
        for (t, b), B in zip(algebras, objs):
            for f in c.hom(s, t):
                if c.then(a, f) == c.then(T.mor(f), b):
                    mid = em_morphism_id(f, A, B)
                    mors.append((mid, A, B))
                    under[mid] = f
    by_src: dict = {}
    for mid, A, B in mors:
        by_src.setdefault(A, []).append((mid, B))
    for mid, A, B in mors:
        for nid, C in by_src.get(B, []):
            comp[mid, nid] = em_morphism_id(c.then(under[mid], under[nid]), A, C)
    ident = {A: em_morphism_id(c.id(s), A, A) for (s, _), A in zip(algebras, objs)}
    em = make_category(objs, mors, ident, comp, f"EM({m.name})" if m.name else "EM")
    u = FinFunctor(em, c, {A: s for (s, _), A in zip(algebras, objs)}, under)
    action = NatTrans(compose(u, T), u, {A: a for (_, a), A in zip(algebras, objs)})
    return AlgebraObject(m, em, u, action)


def construct_kleisli(m: Monad) -> OpalgebraObject:
    _require_lawful(m)
    c, T = m.base, m.endo
    eta, mu = m.unit.components, m.mult.components
    mors, under, comp = [], {}, {}
    for a in c.objects:
        for b in c.objects:
            for f in c.hom(a, T.ob(b)):
                mid = kl_morphism_id(f, b)
                mors.append((mid, a, b))
                under[mid] = (f, b)
    by_src: dict = {}
    for mid, a, b in mors:
        by_src.setdefault(a, []).append(mid)
    for mid, a, b in mors:
        f, _ = under[mid]
        for nid in by_src.get(b, []):
            g, d = under[nid]
            comp[mid, nid] = kl_morphism_id(c.then(f, T.mor(g), mu[d]), d)
    ident = {a: kl_morphism_id(eta[a], a) for a in c.objects}
    kl = make_category(c.objects, mors, ident, comp, f"Kl({m.name})" if m.name else "Kl")
    k = FinFunctor(c, kl, {a: a for a in c.objects},
                   {g.id: kl_morphism_id(c.then(g.id, eta[g.dst]), g.dst) for g in c.morphisms})
    action = NatTrans(compose(T, k), k,
                      {a: kl_morphism_id(c.id(T.ob(a)), a) for a in c.objects})
    return OpalgebraObject(m, kl, k, action, under)


# -- lifting modules ----------------------------------------------------------

def _lift_with(a: AlgebraObject, M: FinFunctor, rho: NatTrans) -> FinFunctor:
    em = a.em_category
    ob = {x: em_object_id(M.ob(x), rho[x]) for x in M.source.objects}
    known = set(em.objects)
    for o in ob.values():
        if o not in known:
            raise UnlawfulError(f"{o} is not an algebra")
    mor = {g.id: a.morphism(M.mor(g.id), ob[g.src], ob[g.dst]) for g in M.source.morphisms}
    return FinFunctor(M.source, em, ob, mor)


def lift_module(a: AlgebraObject, s: ModuleStr) -> FinFunctor:
    """The functor into EM through which a right module factors."""
    if s.side != "right" or s.monad != a.monad:
        raise BoundaryError("expected a right module over the algebra object's monad")
    rep = check_module(s)
    if not rep.ok:
        raise UnlawfulError(f"module is not lawful: {rep}")
    return _lift_with(a, s.carrier, s.action)


def module_factorizations(a: AlgebraObject, s: ModuleStr) -> list:
    """Every functor K into EM with K⨟u = carrier and K⨟action = module action."""
    M, rho = s.carrier, s.action
    em = a.em_category
    choices = {x: [o for o in em.objects if a.forgetful.ob(o) == M.ob(x)] for x in M.source.objects}
    out = []
    for K in iter_functors(M.source, em, objects=choices):
        if compose(K, a.forgetful) == M and hcomp(K, a.forgetful_action) == rho:
            out.append(K)
    return out


def lift_module_map(a: AlgebraObject, s1: ModuleStr, s2: ModuleStr, phi: NatTrans) -> NatTrans:
    rep = check_module_map(s1, s2, phi)
    if not rep.ok:
        raise UnlawfulError(f"not a module map: {rep}")
    K1, K2 = lift_module(a, s1), lift_module(a, s2)
    assert is_faithful(a.forgetful)
    return NatTrans(K1, K2, {x: a.morphism(phi[x], K1.ob(x), K2.ob(x)) for x in K1.source.objects})


def kleisli_lift(o: OpalgebraObject, N: FinFunctor, lam: NatTrans) -> FinFunctor:
    """The functor out of Kl through which a left module factors."""
    kl, X = o.kl_category, N.target
    mor = {}
    for mid in kl.morphism_ids:
        f, b = o.underlying[mid]
        mor[mid] = X.then(N.mor(f), lam[b])
    return FinFunctor(kl, X, {x: N.ob(x) for x in kl.objects}, mor)


def lift_opmodule(o: OpalgebraObject, s: ModuleStr) -> FinFunctor:
    if s.side != "left" or s.monad != o.monad:
        raise BoundaryError("expected a left module over the opalgebra object's monad")
    rep = check_module(s)
    if not rep.ok:
        raise UnlawfulError(f"left module is not lawful: {rep}")
    return kleisli_lift(o, s.carrier, s.action)


def opmodule_factorizations(o: OpalgebraObject, s: ModuleStr) -> list:
    N, lam = s.carrier, s.action
    out = []
    choices = {x: [N.ob(x)] for x in o.kl_category.objects}
    for K in iter_functors(o.kl_category, N.target, objects=choices):
        if compose(o.insertion, K) == N and hcomp(o.insertion_action, K) == lam:
            out.append(K)
    return out


# -- resolutions --------------------------------------------------------------

@dataclass(frozen=True)
class Resolution:
    """left ⊣ right with left: S → X and right: X → S."""
    right: FinFunctor
    left: FinFunctor
    adj_unit: NatTrans
    adj_counit: NatTrans
    monad: Monad

    def adjunction(self) -> Adjunction:
        return Adjunction(self.left, self.right, self.adj_unit, self.adj_counit)


def check_resolution(r: Resolution) -> LawReport:
    rep = check_adjunction(r.adjunction())
    m = r.monad
    if compose(r.left, r.right) != m.endo:
        rep.add(Violation("left⨟right = T", detail="functors differ"))
        return rep
    rep.add(first_difference("unit = η", r.adj_unit, m.unit))
    rep.add(first_difference("whiskered counit = μ", hcomp(r.left, r.adj_counit, r.right), m.mult))
    return rep


def free_resolution(m: Monad) -> Resolution:
    a = construct_em(m)
    return free_resolution_of(a)


def free_resolution_of(a: AlgebraObject) -> Resolution:
    m = a.monad
    c, T, mu = m.base, m.endo, m.mult.components
    ob = {s: em_object_id(T.ob(s), mu[s]) for s in c.objects}
    L = FinFunctor(c, a.em_category, ob,
                   {g.id: a.morphism(T.mor(g.id), ob[g.src], ob[g.dst]) for g in c.morphisms})
    u = a.forgetful
    unit = NatTrans(identity_functor(c), compose(L, u), dict(m.unit.components))
    counit = NatTrans(compose(u, L), identity_functor(a.em_category),
                      {A: a.morphism(a.forgetful_action[A], L.ob(u.ob(A)), A)
                       for A in a.em_category.objects})
    return Resolution(u, L, unit, counit, m)


@dataclass(frozen=True)
class Comparison:
    functor: FinFunctor
    unique: bool | None     # None: uniqueness not verified under the cap


def comparison_functor(a: AlgebraObject, r: Resolution) -> Comparison:
    rep = check_resolution(r)
    if not rep.ok:
        raise UnlawfulError(f"not a resolution: {rep}")
    rho = hcomp(r.adj_counit, r.right)
    K = lift_module(a, ModuleStr("right", a.monad, r.right, rho))
    free = free_resolution_of(a).left
    assert compose(K, a.forgetful) == r.right
    assert compose(r.left, K) == free
    try:
        count = sum(1 for J in iter_functors(r.right.source, a.em_category)
                    if compose(J, a.forgetful) == r.right and compose(r.left, J) == free)
    except SizeCapExceeded:
        return Comparison(K, None)
    return Comparison(K, count == 1)


# -- formal lifting of lax cells ----------------------------------------------

def _lax_module(l: LaxMorphism, a1: AlgebraObject) -> ModuleStr:
    u1 = a1.forgetful
    rho = vcomp(hcomp(u1, l.structure), hcomp(a1.forgetful_action, l.carrier))
    return ModuleStr("right", l.target_monad, compose(u1, l.carrier), rho)


def _check_pair(l: LaxMorphism, a1: AlgebraObject, a2: AlgebraObject) -> None:
    if l.source_monad != a1.monad or l.target_monad != a2.monad:
        raise BoundaryError("lax cell monads must match the algebra objects")


def emlift(kind: str, data, a1: AlgebraObject, a2: AlgebraObject, direction: str = "forward"):
    """Translate between base-level cells and cells between EM objects.

    forward data: lax -> LaxMorphism; two_cell/specialization -> SquareCell with
    identity colax sides.  inverse data: lax -> (carrier, EM functor);
    two_cell/specialization -> (top lax, bottom lax, EM-level NatTrans).
    """
    if direction == "forward":
        out = _emlift_forward(kind, data, a1, a2)
        back = _emlift_inverse(kind, _inverse_input(kind, data, out), a1, a2)
        assert back == data, "lifting is not inverse to restriction"
        return out
    if direction == "inverse":
        out = _emlift_inverse(kind, data, a1, a2)
        again = _emlift_forward(kind, out, a1, a2)
        assert again == data[-1], "restriction is not inverse to lifting"
        return out
    raise ValueError(f"direction must be forward or inverse, not {direction!r}")


def _inverse_input(kind, data, out):
    if kind == "lax":
        return (data.carrier, out)
    return (data.top, data.bottom, out)


def _emlift_forward(kind, data, a1, a2):
    if kind == "lax":
        _check_pair(data, a1, a2)
        rep = check_lax(data)
        if not rep.ok:
            raise UnlawfulError(f"lax cell is not lawful: {rep}")
        return lift_module(a2, _lax_module(data, a1))
    if kind not in (TWO_CELL, SPECIALIZATION) or data.kind != kind:
        raise ValueError(f"unknown or mismatched kind {kind!r}")
    rep = check_square(data)
    if not rep.ok:
        raise UnlawfulError(f"square is not lawful: {rep}")
    K1 = _emlift_forward("lax", data.top, a1, a2)
    K2 = _emlift_forward("lax", data.bottom, a1, a2)
    u1 = a1.forgetful
    if kind == TWO_CELL:
        phi = hcomp(u1, data.cell)
    else:
        phi = vcomp(hcomp(u1, data.cell), hcomp(a1.forgetful_action, data.bottom.carrier))
    return NatTrans(K1, K2, {A: a2.morphism(phi[A], K1.ob(A), K2.ob(A))
                             for A in a1.em_category.objects})


def _emlift_inverse(kind, data, a1, a2):
    free = free_resolution_of(a1)
    if kind == "lax":
        F, K = data
        u1, u2 = a1.forgetful, a2.forgetful
        if compose(K, u2) != compose(u1, F):
            raise BoundaryError("EM functor does not lie over the carrier")
        rho = hcomp(K, a2.forgetful_action)
        chi = vcomp(hcomp(free.adj_unit, F, a2.monad.endo), hcomp(free.left, rho))
        chi = NatTrans(compose(F, a2.monad.endo), compose(a1.monad.endo, F), chi.components)
        return LaxMorphism(a1.monad, a2.monad, F, chi)
    top, bottom, cell = data
    u1, u2 = a1.forgetful, a2.forgetful
    if kind == TWO_CELL:
        target = hcomp(cell, u2)
        found = [g for g in iter_nat_trans(top.carrier, bottom.carrier)
                 if hcomp(u1, g) == target]
        if len(found) != 1:
            raise UnlawfulError(f"EM cell restricts to {len(found)} base cells, expected 1")
        return parallel_square(top, bottom, found[0], TWO_CELL)
    if kind == SPECIALIZATION:
        phi = hcomp(cell, u2)
        sigma = vcomp(hcomp(free.adj_unit, top.carrier), hcomp(free.left, phi))
        sigma = NatTrans(top.carrier, compose(a1.monad.endo, bottom.carrier), sigma.components)
        return parallel_square(top, bottom, sigma, SPECIALIZATION)
    raise ValueError(f"unknown kind {kind!r}")


# -- bimodules ----------------------------------------------------------------

def _check_bimodule_inputs(b: Bimodule, o: OpalgebraObject, a: AlgebraObject) -> None:
    if o.monad != b.left_monad or a.monad != b.right_monad:
        raise BoundaryError("opalgebra/algebra objects must match the bimodule's monads")
    rep = check_bimodule(b)
    if not rep.ok:
        raise UnlawfulError(f"bimodule is not lawful: {rep}")


def _lift_right_first(b: Bimodule, o: OpalgebraObject, a: AlgebraObject) -> FinFunctor:
    K = lift_module(a, b.right_module())
    lam_bar = NatTrans(compose(b.left_monad.endo, K), K,
                       {s: a.morphism(b.left_action[s], K.ob(b.left_monad.endo.ob(s)), K.ob(s))
                        for s in b.left_monad.base.objects})
    return kleisli_lift(o, K, lam_bar)


def _lift_left_first(b: Bimodule, o: OpalgebraObject, a: AlgebraObject) -> FinFunctor:
    K = kleisli_lift(o, b.carrier, b.left_action)
    rho_bar = NatTrans(compose(K, b.right_monad.endo), K, dict(b.right_action.components))
    return _lift_with(a, K, rho_bar)


def lift_bimodule(b, o: OpalgebraObject, a: AlgebraObject):
    """Kl(T_L) → EM(T_R) for a bimodule, or the lifted cell for a unary bimodule map."""
    if isinstance(b, BimoduleMapNAry):
        if len(b.inputs) != 1 or b.colax is not None:
            raise ValueError("only unary bimodule maps without colax boundaries lift")
        rep = check_bimodule_map(b)
        if not rep.ok:
            raise UnlawfulError(f"bimodule map is not lawful: {rep}")
        K1 = lift_bimodule(b.inputs[0], o, a)
        K2 = lift_bimodule(b.output, o, a)
        return NatTrans(K1, K2, {s: a.morphism(b.cell[s], K1.ob(s), K2.ob(s))
                                 for s in o.kl_category.objects})
    _check_bimodule_inputs(b, o, a)
    one = _lift_right_first(b, o, a)
    two = _lift_left_first(b, o, a)
    assert one == two, "the two lifting orders disagree"
    return one


def restrict_bimodule(K: FinFunctor, o: OpalgebraObject, a: AlgebraObject) -> Bimodule:
    M = compose(o.insertion, K, a.forgetful)
    lam = hcomp(o.insertion_action, K, a.forgetful)
    rho = hcomp(o.insertion, K, a.forgetful_action)
    return Bimodule(o.monad, a.monad, M, lam, rho)

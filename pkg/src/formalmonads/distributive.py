"""Distributive laws, composite monads and lifted monads."""
from __future__ import annotations

from dataclasses import dataclass

from .algobj import (AlgebraObject, OpalgebraObject, construct_em, construct_kleisli, emlift,
                     kl_morphism_id, lift_bimodule, lift_module)
from .fincat import (BoundaryError, FinCategory, FinFunctor, LawReport, NatTrans, UnlawfulError,
                     compose, find_isomorphism, first_difference, hcomp, identity_functor,
                     iter_functors, iter_nat_trans, retype, validate_functor, vcomp)
from .monads import (Bimodule, ModuleStr, Monad, MonadMap, check_bimodule, check_module,
                     check_monad, check_monad_map)
from .morphisms import (ColaxMorphism, LaxMorphism, check_lax, compose_lax, check_square,
                        identity_lax, parallel_square)


@dataclass(frozen=True)
class DistributiveLaw:
    """cell: T₂⨟T₁ ⇒ T₁⨟T₂."""
    t1: Monad
    t2: Monad
    cell: NatTrans

    def as_lax(self) -> LaxMorphism:
        return LaxMorphism(self.t1, self.t1, self.t2.endo, self.cell)

    def as_colax(self) -> ColaxMorphism:
        return ColaxMorphism(self.t2, self.t2, self.t1.endo, self.cell)


def check_distributive(d: DistributiveLaw) -> LawReport:
    if d.t1.base != d.t2.base:
        raise BoundaryError("distributive law needs monads on the same base")
    rep = LawReport()
    for v in check_lax(d.as_lax()):
        rep.add(v.__class__(f"{v.law} (T₁ side)", v.where, v.lhs, v.rhs, v.detail))
    for v in check_lax(d.as_colax()):
        rep.add(v.__class__(f"{v.law} (T₂ side)", v.where, v.lhs, v.rhs, v.detail))
    return rep


def _require(d: DistributiveLaw) -> None:
    rep = check_distributive(d)
    if not rep.ok:
        raise UnlawfulError(f"distributive law is not lawful: {rep}")


def iter_distributive_laws(t1: Monad, t2: Monad):
    for cell in iter_nat_trans(compose(t2.endo, t1.endo), compose(t1.endo, t2.endo)):
        d = DistributiveLaw(t1, t2, cell)
        if check_distributive(d).ok:
            yield d


@dataclass(frozen=True)
class MndPackage:
    """T₂ as a lax endo-1-cell on T₁ with μ₂, η₂ as monad 2-cells."""
    lax: LaxMorphism
    mult_square: object
    unit_square: object


def distlaw_mnd_roundtrip(d: DistributiveLaw):
    """Package d as a monad among lax 1-cells, check it, and rebuild d."""
    _require(d)
    lax = d.as_lax()
    mult_sq = parallel_square(compose_lax(lax, lax), lax, d.t2.mult)
    unit_sq = parallel_square(identity_lax(d.t1), lax, d.t2.unit)
    for q in (mult_sq, unit_sq):
        rep = check_square(q)
        if not rep.ok:
            raise UnlawfulError(f"monad-in-Mnd square fails: {rep}")
    pkg = MndPackage(lax, mult_sq, unit_sq)
    t2 = Monad(lax.carrier.source, lax.carrier, unit_sq.cell, mult_sq.cell, d.t2.name)
    back = DistributiveLaw(lax.source_monad, t2, lax.structure)
    assert back == d
    return pkg, back


def composite_monad(d: DistributiveLaw) -> Monad:
    _require(d)
    t1, t2 = d.t1, d.t2
    T = compose(t1.endo, t2.endo)
    mult = vcomp(hcomp(t1.endo, d.cell, t2.endo), hcomp(t1.mult, t2.mult))
    unit = hcomp(t1.unit, t2.unit)
    I = identity_functor(t1.base)
    m = Monad(t1.base, T, retype(unit, I, T), retype(mult, compose(T, T), T),
              f"{t1.name}{t2.name}" if t1.name and t2.name else "")
    assert check_monad(m).ok
    return m


def injection_monad_maps(d: DistributiveLaw) -> tuple:
    c = composite_monad(d)
    t1, t2 = d.t1, d.t2
    i1 = MonadMap(t1, c, retype(hcomp(t1.endo, t2.unit), t1.endo, c.endo))
    i2 = MonadMap(t2, c, retype(hcomp(t1.unit, t2.endo), t2.endo, c.endo))
    for h in (i1, i2):
        assert check_monad_map(h).ok
    return i1, i2


def recover_law(d: DistributiveLaw, composite: Monad | None = None) -> NatTrans:
    """Rebuild the law from the composite multiplication with units on both sides."""
    c = composite or composite_monad(d)
    t1, t2 = d.t1, d.t2
    out = vcomp(hcomp(t1.unit, t2.endo, t1.endo, t2.unit), c.mult)
    return retype(out, compose(t2.endo, t1.endo), c.endo)


# -- modules over the composite ------------------------------------------------

def split_module(d: DistributiveLaw, s: ModuleStr) -> tuple:
    t1, t2 = d.t1, d.t2
    M = s.carrier
    r1 = vcomp(hcomp(M, t1.endo, t2.unit), s.action)
    r2 = vcomp(hcomp(M, t1.unit, t2.endo), s.action)
    return (ModuleStr("right", t1, M, retype(r1, compose(M, t1.endo), M)),
            ModuleStr("right", t2, M, retype(r2, compose(M, t2.endo), M)))


def check_module_pair(d: DistributiveLaw, s1: ModuleStr, s2: ModuleStr) -> LawReport:
    rep = LawReport()
    rep.extend(check_module(s1), "T₁")
    rep.extend(check_module(s2), "T₂")
    M = s1.carrier
    lhs = vcomp(hcomp(s2.action, d.t1.endo), s1.action)
    rhs = vcomp(hcomp(M, d.cell), hcomp(s1.action, d.t2.endo), s2.action)
    rep.add(first_difference("distributivity", lhs, rhs))
    return rep


def merge_modules(d: DistributiveLaw, s1: ModuleStr, s2: ModuleStr, composite: Monad) -> ModuleStr:
    M = s1.carrier
    rho = vcomp(hcomp(s1.action, d.t2.endo), s2.action)
    return ModuleStr("right", composite, M, retype(rho, compose(M, composite.endo), M))


def module_split_merge(d: DistributiveLaw, x):
    """Composite-monad module -> (T₁-module, T₂-module), or a compatible pair -> module."""
    c = composite_monad(d)
    if isinstance(x, ModuleStr):
        if x.monad != c or x.side != "right":
            raise BoundaryError("expected a right module over the composite monad")
        rep = check_module(x)
        if not rep.ok:
            raise UnlawfulError(f"module is not lawful: {rep}")
        pair = split_module(d, x)
        assert check_module_pair(d, *pair).ok
        assert merge_modules(d, *pair, c) == x
        return pair
    s1, s2 = x
    if s1.carrier != s2.carrier:
        raise BoundaryError("the two actions must share a carrier")
    rep = check_module_pair(d, s1, s2)
    if not rep.ok:
        raise UnlawfulError(f"pair is not compatible: {rep}")
    merged = merge_modules(d, s1, s2, c)
    assert check_module(merged).ok
    assert split_module(d, merged) == (s1, s2)
    return merged


# -- lifted monads -------------------------------------------------------------

def lifted_monad_em(d: DistributiveLaw, a1: AlgebraObject | None = None) -> Monad:
    """T₂ lifted to an endofunctor of EM(T₁), with lifted unit and multiplication."""
    _require(d)
    a1 = a1 or construct_em(d.t1)
    lax = d.as_lax()
    pkg, _ = distlaw_mnd_roundtrip(d)
    T = emlift("lax", lax, a1, a1)
    mult = emlift("two_cell", pkg.mult_square, a1, a1)
    unit = emlift("two_cell", pkg.unit_square, a1, a1)
    em = a1.em_category
    m = Monad(em, T, retype(unit, identity_functor(em), T), retype(mult, compose(T, T), T),
              f"lift({d.t2.name})" if d.t2.name else "")
    assert check_monad(m).ok
    return m


def kleisli_lift_colax(g: ColaxMorphism, o1: OpalgebraObject, o2: OpalgebraObject) -> FinFunctor:
    """Kl(T₁) → Kl(T₂) induced by a colax cell T₁ → T₂."""
    G, xi = g.carrier, g.structure
    c2 = o2.monad.base
    mor = {}
    for mid in o1.kl_category.morphism_ids:
        f, b = o1.underlying[mid]
        mor[mid] = kl_morphism_id(c2.then(G.mor(f), xi[b]), G.ob(b))
    return FinFunctor(o1.kl_category, o2.kl_category,
                      {a: G.ob(a) for a in o1.kl_category.objects}, mor)


def _kleisli_cell(o: OpalgebraObject, F: FinFunctor, G: FinFunctor, alpha: NatTrans) -> NatTrans:
    c, eta = o.monad.base, o.monad.unit.components
    return NatTrans(F, G, {a: kl_morphism_id(c.then(alpha[a], eta[G.ob(a)]), G.ob(a))
                           for a in F.source.objects})


def lifted_monad_kleisli(d: DistributiveLaw, o2: OpalgebraObject | None = None) -> Monad:
    """T₁ lifted to an endofunctor of Kl(T₂)."""
    _require(d)
    o2 = o2 or construct_kleisli(d.t2)
    T = kleisli_lift_colax(d.as_colax(), o2, o2)
    assert validate_functor(T).ok
    kl = o2.kl_category
    I = identity_functor(kl)
    t1 = d.t1
    unit = _kleisli_cell(o2, I, T, t1.unit)
    mult = _kleisli_cell(o2, compose(T, T), T, t1.mult)
    m = Monad(kl, T, unit, mult, f"klift({t1.name})" if t1.name else "")
    assert check_monad(m).ok
    return m


# -- EM composites ---------------------------------------------------------------

@dataclass
class DistemReport:
    em_iso: tuple | None
    comparison_is_iso: bool
    universal_module: bool
    kleisli_iso: tuple | None
    universal_opmodule: bool

    @property
    def ok(self) -> bool:
        return (self.em_iso is not None and self.comparison_is_iso and self.universal_module
                and self.kleisli_iso is not None and self.universal_opmodule)


def _is_isomorphism(K: FinFunctor) -> bool:
    if len(set(K.on_objects.values())) != len(K.target.objects):
        return False
    if len(set(K.on_morphisms.values())) != len(K.target.morphisms):
        return False
    inv = FinFunctor(K.target, K.source, {v: k for k, v in K.on_objects.items()},
                     {v: k for k, v in K.on_morphisms.items()})
    return validate_functor(inv).ok


def composite_em_module(d: DistributiveLaw, a1: AlgebraObject, a2: AlgebraObject,
                        composite: Monad) -> ModuleStr:
    """u₂⨟u₁ with its action by the composite monad."""
    u1, u2 = a1.forgetful, a2.forgetful
    U = compose(u2, u1)
    rho = vcomp(hcomp(u2, a1.forgetful_action, d.t2.endo), hcomp(a2.forgetful_action, u1))
    return ModuleStr("right", composite, U, retype(rho, compose(U, composite.endo), U))


def composite_kleisli_module(d: DistributiveLaw, o2: OpalgebraObject, o12: OpalgebraObject,
                             composite: Monad) -> ModuleStr:
    """k₂⨟k' with its left action by the composite monad."""
    k2, k = o2.insertion, o12.insertion
    N = compose(k2, k)
    lam = vcomp(hcomp(d.t1.endo, o2.insertion_action, k), hcomp(k2, o12.insertion_action))
    return ModuleStr("left", composite, N, retype(lam, compose(composite.endo, N), N))


def _test_categories():
    from .fixtures import category
    return [category("term"), category("arrow2")]


def universal_module_oracle(s: ModuleStr, a_cat: FinCategory, tests=None) -> bool:
    """Every right module from a test category factors uniquely through s."""
    T = s.monad
    for X in tests or _test_categories():
        for M in iter_functors(X, T.base):
            for rho in iter_nat_trans(compose(M, T.endo), M):
                if not check_module(ModuleStr("right", T, M, rho)).ok:
                    continue
                count = 0
                for J in iter_functors(X, a_cat):
                    if compose(J, s.carrier) == M and hcomp(J, s.action) == rho:
                        count += 1
                if count != 1:
                    return False
    return True


def universal_opmodule_oracle(s: ModuleStr, k_cat: FinCategory, tests=None) -> bool:
    """Every left module into a test category factors uniquely through s."""
    T = s.monad
    for X in tests or _test_categories():
        for N in iter_functors(T.base, X):
            for lam in iter_nat_trans(compose(T.endo, N), N):
                if not check_module(ModuleStr("left", T, N, lam)).ok:
                    continue
                count = 0
                for J in iter_functors(k_cat, X):
                    if compose(s.carrier, J) == N and hcomp(s.action, J) == lam:
                        count += 1
                if count != 1:
                    return False
    return True


def verify_distem(d: DistributiveLaw) -> DistemReport:
    c = composite_monad(d)
    a1 = construct_em(d.t1)
    lifted = lifted_monad_em(d, a1)
    a2 = construct_em(lifted)
    ac = construct_em(c)
    iso = find_isomorphism(a2.em_category, ac.em_category)
    s = composite_em_module(d, a1, a2, c)
    K = lift_module(ac, s)
    universal = universal_module_oracle(s, a2.em_category)

    o2 = construct_kleisli(d.t2)
    klifted = lifted_monad_kleisli(d, o2)
    o12 = construct_kleisli(klifted)
    oc = construct_kleisli(c)
    kiso = find_isomorphism(o12.kl_category, oc.kl_category)
    sk = composite_kleisli_module(d, o2, o12, c)
    assert check_module(sk).ok
    couniversal = universal_opmodule_oracle(sk, o12.kl_category)
    return DistemReport(iso, _is_isomorphism(K), universal, kiso, couniversal)


def comparison_bimodule(d: DistributiveLaw, a1: AlgebraObject, o2: OpalgebraObject,
                        lifted: Monad, klifted: Monad) -> Bimodule:
    u1, k2 = a1.forgetful, o2.insertion
    M = compose(u1, k2)
    lam = retype(hcomp(u1, o2.insertion_action), compose(lifted.endo, M), M)
    rho = retype(hcomp(a1.forgetful_action, k2), compose(M, klifted.endo), M)
    return Bimodule(lifted, klifted, M, lam, rho)


def comparison_cell(d: DistributiveLaw) -> FinFunctor:
    """Kl(lifted T₂) → EM(lifted T₁), lifted from the comparison bimodule."""
    _require(d)
    a1, o2 = construct_em(d.t1), construct_kleisli(d.t2)
    lifted, klifted = lifted_monad_em(d, a1), lifted_monad_kleisli(d, o2)
    b = comparison_bimodule(d, a1, o2, lifted, klifted)
    rep = check_bimodule(b)
    if not rep.ok:
        raise UnlawfulError(f"comparison bimodule is not lawful: {rep}")
    return lift_bimodule(b, construct_kleisli(lifted), construct_em(klifted))

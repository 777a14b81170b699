"""Pointwise right extensions, codensity and pushforward monads."""
from __future__ import annotations

from dataclasses import dataclass, field

from .algobj import AlgebraObject, construct_em, lift_module
from .fincat import (Adjunction, BoundaryError, Cone, FinCategory, FinFunctor, NatTrans,
                     UnlawfulError, check_adjunction, compose, hcomp, identity_functor,
                     iter_functors, iter_nat_trans, limit, make_category, retype, vcomp)
from .monads import (ModuleStr, Monad, MonadMap, check_module, check_monad, check_monad_map,
                     identity_monad)
from .morphisms import (SPECIALIZATION, TWO_CELL, LaxMorphism, check_lax,
                        check_square, parallel_square)


class FactorizationError(ValueError):
    pass


@dataclass(frozen=True)
class RightExtension:
    """ext with universal: along⨟ext ⇒ of.

    ``monad`` is the monad T with of = T⨟along (identity monad for codensity).
    """
    along: FinFunctor
    of: FinFunctor
    ext: FinFunctor
    universal: NatTrans
    monad: Monad | None = None
    cones: dict | None = field(default=None, compare=False, repr=False)


def comma_category(s: str, X: FinFunctor) -> FinCategory:
    """(s ↓ X): objects (a, f: s → X a)."""
    S, A = X.target, X.source
    objs, under = [], {}
    for a in A.objects:
        for f in S.hom(s, X.ob(a)):
            o = f"{a},{f}"
            objs.append(o)
            under[o] = (a, f)
    mors, comp, ident, mor_under = [], {}, {}, {}
    for o in objs:
        a, f = under[o]
        for p in objs:
            b, g = under[p]
            for h in A.hom(a, b):
                if S.then(f, X.mor(h)) == g:
                    mid = f"{h}:{o}->{p}"
                    mors.append((mid, o, p))
                    mor_under[mid] = h
                    if h == A.id(a) and o == p:
                        ident[o] = mid
    by_src: dict = {}
    for mid, o, p in mors:
        by_src.setdefault(o, []).append((mid, p))
    for mid, o, p in mors:
        for nid, q in by_src.get(p, []):
            comp[mid, nid] = f"{A.then(mor_under[mid], mor_under[nid])}:{o}->{q}"
    c = make_category(objs, mors, ident, comp, f"({s}↓X)")
    object.__setattr__(c, "under", under)
    object.__setattr__(c, "mor_under", mor_under)
    return c


def _comma_diagram(comma: FinCategory, F: FinFunctor) -> FinFunctor:
    return FinFunctor(comma, F.target, {o: F.ob(a) for o, (a, _) in comma.under.items()},
                      {m: F.mor(h) for m, h in comma.mor_under.items()})


def _factor_cone(legs: dict, target: Cone, post: FinFunctor | None, src_obj: str) -> str:
    """The unique m: src_obj → post(target.apex) with m ⨟ post(legs') = legs."""
    C = target.diagram.target if post is None else post.target
    apex = target.apex if post is None else post.ob(target.apex)
    tl = target.legs if post is None else {j: post.mor(k) for j, k in target.legs.items()}
    found = [m for m in C.hom(src_obj, apex)
             if all(C.then(m, tl[j]) == k for j, k in legs.items())]
    if len(found) != 1:
        raise FactorizationError(f"{len(found)} factorizations through the cone at {target.apex}")
    return found[0]


def right_extension(along: FinFunctor, of: FinFunctor, monad: Monad | None = None):
    """Pointwise right extension of ``of`` along ``along``, or None if a limit is missing."""
    if along.source != of.source:
        raise BoundaryError("extension data must share a source")
    X, F = along, of
    S, C = X.target, F.target
    cones = {}
    for s in S.objects:
        comma = comma_category(s, X)
        L = limit(_comma_diagram(comma, F))
        if L is None:
            return None
        cones[s] = L
    ob = {s: cones[s].apex for s in S.objects}
    mor = {}
    for h in S.morphisms:
        src, dst = cones[h.src], cones[h.dst]
        legs = {}
        for j in dst.legs:
            a, f = dst.diagram.source.under[j]
            legs[j] = src.legs[f"{a},{S.then(h.id, f)}"]
        mor[h.id] = _factor_cone(legs, dst, None, ob[h.src])
    ext = FinFunctor(S, C, ob, mor)
    universal = NatTrans(compose(X, ext), F,
                         {a: cones[X.ob(a)].legs[f"{a},{S.id(X.ob(a))}"] for a in X.source.objects})
    return RightExtension(X, F, ext, universal, monad, cones)


def codensity(x: FinFunctor):
    return right_extension(x, x, identity_monad(x.source))


def pushforward(t: Monad, x: FinFunctor):
    if t.base != x.source:
        raise BoundaryError("monad must live on the functor's source")
    return right_extension(x, compose(t.endo, x), t)


def _post(e: RightExtension, post: FinFunctor | None):
    if post is None:
        return e.ext, e.of, e.universal
    return compose(e.ext, post), compose(e.of, post), hcomp(e.universal, post)


def factor(e: RightExtension, Y: FinFunctor, psi: NatTrans, post: FinFunctor | None = None) -> NatTrans:
    """The unique ψ̄: Y ⇒ ext(⨟post) with (along⨟ψ̄)·universal(⨟post) = ψ."""
    X = e.along
    ext, of, eps = _post(e, post)
    if psi.source != compose(X, Y) or psi.target != of:
        raise BoundaryError("cell to factor has the wrong boundary")
    if e.cones is not None:
        S = X.target
        comps = {}
        for s in S.objects:
            cone = e.cones[s]
            legs = {}
            for j in cone.legs:
                a, f = cone.diagram.source.under[j]
                legs[j] = Y.target.then(Y.mor(f), psi[a])
            comps[s] = _factor_cone(legs, cone, post, Y.ob(s))
        out = NatTrans(Y, ext, comps)
        if vcomp(hcomp(X, out), eps) != psi:
            raise FactorizationError("pointwise factor does not reproduce the cell")
        return out
    found = [b for b in iter_nat_trans(Y, ext) if vcomp(hcomp(X, b), eps) == psi]
    if len(found) != 1:
        raise FactorizationError(f"{len(found)} factorizations, expected exactly one")
    return found[0]


@dataclass
class Certificate:
    ok: bool
    checked: int = 0
    counterexample: tuple | None = None    # (Y, ψ, number of factorizations)
    functors: int = 0                      # test functors Y visited


def certify(e: RightExtension, post: FinFunctor | None = None) -> Certificate:
    """Exhaustively check the universal property over every (Y, ψ)."""
    X = e.along
    ext, of, eps = _post(e, post)
    S, C = X.target, ext.target
    checked = seen = 0
    for Y in iter_functors(S, C):
        seen += 1
        counts: dict = {}
        for b in iter_nat_trans(Y, ext):
            key = vcomp(hcomp(X, b), eps)
            counts[key] = counts.get(key, 0) + 1
        for psi in iter_nat_trans(compose(X, Y), of):
            checked += 1
            n = counts.get(psi, 0)
            if n != 1:
                return Certificate(False, checked, (Y, psi, n), seen)
    return Certificate(True, checked, None, seen)


def monad_structure(e: RightExtension) -> Monad:
    t = e.monad or identity_monad(e.along.source)
    X, W, kappa = e.along, e.ext, e.universal
    if e.of != compose(t.endo, X):
        raise BoundaryError("extension is not of T⨟X along X")
    psi_mult = vcomp(hcomp(kappa, W), hcomp(t.endo, kappa), hcomp(t.mult, X))
    mult = factor(e, compose(W, W), psi_mult)
    I = identity_functor(X.target)
    unit = factor(e, I, retype(hcomp(t.unit, X), compose(X, I), e.of))
    m = Monad(X.target, W, unit, mult)
    rep = check_monad(m)
    if not rep.ok:
        raise FactorizationError(f"induced structure is not a monad: {rep}")
    assert check_lax(LaxMorphism(t, m, X, kappa)).ok
    if e.monad is None or e.monad.endo == identity_functor(X.source):
        assert check_module(ModuleStr("right", m, X, retype(kappa, compose(X, W), X))).ok
    return m


def universal_monad_map(e: RightExtension, t: Monad, structure: NatTrans) -> MonadMap:
    """The unique monad map from t into the extension's monad compatible with ``structure``.

    ``structure`` is a module action along⨟T ⇒ along (codensity) or a lax
    structure along⨟T ⇒ T_A⨟along (pushforward).
    """
    src = e.monad or identity_monad(e.along.source)
    X = e.along
    st = retype(structure, compose(X, t.endo), compose(src.endo, X))
    rep = check_lax(LaxMorphism(src, t, X, st))
    if not rep.ok:
        raise UnlawfulError(f"structure is not lawful: {rep}")
    target = monad_structure(e)
    bar = factor(e, t.endo, retype(st, st.source, e.of))
    h = MonadMap(t, target, bar)
    assert check_monad_map(h).ok
    return h


def count_universal_maps(e: RightExtension, t: Monad, structure: NatTrans) -> int:
    """Brute-force count of cells T ⇒ ext factoring ``structure``."""
    X = e.along
    return sum(1 for b in iter_nat_trans(t.endo, e.ext)
               if vcomp(hcomp(X, b), e.universal).components == structure.components)


def from_adjunction(kind: str, adj: Adjunction, t: Monad | None = None) -> RightExtension:
    """Extension along a right adjoint R, read off from L ⊣ R."""
    rep = check_adjunction(adj)
    if not rep.ok:
        raise UnlawfulError(f"snake equations fail: {rep}")
    L, R = adj.left, adj.right
    if kind == "codensity":
        t = identity_monad(R.source)
    elif kind != "pushforward" or t is None:
        raise ValueError("kind must be codensity, or pushforward with a monad")
    ext = compose(L, t.endo, R)
    universal = retype(hcomp(adj.counit, t.endo, R), compose(R, ext), compose(t.endo, R))
    return RightExtension(R, compose(t.endo, R), ext, universal, t)


def preserves_right_extension(f: FinFunctor, e: RightExtension) -> tuple:
    """(bool, certificate) that post-composing with f keeps the universal property."""
    if f.source != e.ext.target:
        raise BoundaryError("functor must start where the extension lands")
    cert = certify(e, post=f)
    return cert.ok, cert


# -- lifting through extensions ------------------------------------------------

def _codensity_module(l: LaxMorphism, e: RightExtension) -> ModuleStr:
    X = e.along
    rho = vcomp(hcomp(X, l.structure), hcomp(e.universal, l.carrier))
    M = compose(X, l.carrier)
    return ModuleStr("right", l.target_monad, M, retype(rho, compose(M, l.target_monad.endo), M))


def _pf_structure(l: LaxMorphism, e: RightExtension) -> LaxMorphism:
    X = e.along
    chi = vcomp(hcomp(X, l.structure), hcomp(e.universal, l.carrier))
    F = compose(X, l.carrier)
    return LaxMorphism(e.monad, l.target_monad, F,
                       retype(chi, compose(F, l.target_monad.endo), compose(e.monad.endo, F)))


def _require_preserved(F: FinFunctor, e: RightExtension) -> None:
    ok, _ = preserves_right_extension(F, e)
    if not ok:
        raise UnlawfulError("carrier does not preserve the right extension")


def extlift(prop: str, kind: str, data, e: RightExtension, t2: Monad,
            a2: AlgebraObject | None = None, direction: str = "forward"):
    """Translate cells out of an extension's monad into cells on along⨟(-).

    prop 'codensity' lands in EM(t2); prop 'pushforward' lands in lax
    1-cells out of the pushforward's source monad.  Inverse data mirrors emlift.
    """
    if prop == "codensity":
        a2 = a2 or construct_em(t2)
    elif prop != "pushforward":
        raise ValueError(f"prop must be codensity or pushforward, not {prop!r}")
    if prop == "pushforward" and e.monad is None:
        raise ValueError("pushforward lifting needs the extension's monad")
    w = monad_structure(e)
    if direction == "forward":
        out = _extlift_forward(prop, kind, data, e, w, t2, a2)
        back = _extlift_inverse(prop, kind, _ext_inverse_input(kind, data, out), e, w, t2, a2)
        assert back == data, "lifting is not inverse to restriction"
        return out
    if direction == "inverse":
        out = _extlift_inverse(prop, kind, data, e, w, t2, a2)
        again = _extlift_forward(prop, kind, out, e, w, t2, a2)
        assert again == data[-1], "restriction is not inverse to lifting"
        return out
    raise ValueError(f"direction must be forward or inverse, not {direction!r}")


def _ext_inverse_input(kind, data, out):
    if kind == "lax":
        return (data.carrier, out)
    return (data.top, data.bottom, out)


def _extlift_forward(prop, kind, data, e, w, t2, a2):
    if kind == "lax":
        l = data
        if l.source_monad != w or l.target_monad != t2:
            raise BoundaryError("lax cell must go from the extension's monad to t2")
        rep = check_lax(l)
        if not rep.ok:
            raise UnlawfulError(f"lax cell is not lawful: {rep}")
        _require_preserved(l.carrier, e)
        if prop == "codensity":
            return lift_module(a2, _codensity_module(l, e))
        return _pf_structure(l, e)
    q = data
    if q.kind != kind or kind not in (TWO_CELL, SPECIALIZATION):
        raise ValueError(f"unknown or mismatched kind {kind!r}")
    rep = check_square(q)
    if not rep.ok:
        raise UnlawfulError(f"square is not lawful: {rep}")
    X = e.along
    top = _extlift_forward(prop, "lax", q.top, e, w, t2, a2)
    bottom = _extlift_forward(prop, "lax", q.bottom, e, w, t2, a2)
    if kind == TWO_CELL:
        cell = hcomp(X, q.cell)
    else:
        cell = vcomp(hcomp(X, q.cell), hcomp(e.universal, q.bottom.carrier))
    if prop == "codensity":
        m1, m2 = _codensity_module(q.top, e), _codensity_module(q.bottom, e)
        cell = retype(cell, m1.carrier, m2.carrier)
        return NatTrans(top, bottom, {x: a2.morphism(cell[x], top.ob(x), bottom.ob(x))
                                      for x in X.source.objects})
    if kind == TWO_CELL:
        out = parallel_square(top, bottom, retype(cell, top.carrier, bottom.carrier), TWO_CELL)
    else:
        out = parallel_square(top, bottom, retype(cell, top.carrier,
                                                  compose(e.monad.endo, bottom.carrier)),
                              SPECIALIZATION)
    assert check_square(out).ok
    return out


def _extlift_inverse(prop, kind, data, e, w, t2, a2):
    X = e.along
    if kind == "lax":
        F, lifted = data
        if prop == "codensity":
            if compose(lifted, a2.forgetful) != compose(X, F):
                raise BoundaryError("EM functor does not lie over along⨟F")
            psi = hcomp(lifted, a2.forgetful_action)
        else:
            psi = lifted.structure
        psi = retype(psi, compose(X, F, t2.endo), compose(e.of, F))
        chi = factor(e, compose(F, t2.endo), psi, post=F)
        chi = retype(chi, compose(F, t2.endo), compose(w.endo, F))
        return LaxMorphism(w, t2, F, chi)
    top, bottom, cell = data
    if kind == TWO_CELL:
        got = hcomp(cell, a2.forgetful) if prop == "codensity" else cell.cell
        found = [g for g in iter_nat_trans(top.carrier, bottom.carrier)
                 if hcomp(X, g).components == got.components]
        if len(found) != 1:
            raise UnlawfulError(f"lifted cell restricts to {len(found)} cells, expected 1")
        return parallel_square(top, bottom, found[0], TWO_CELL)
    if kind == SPECIALIZATION:
        got = hcomp(cell, a2.forgetful) if prop == "codensity" else cell.cell
        psi = NatTrans(compose(X, top.carrier), compose(e.of, bottom.carrier), got.components)
        sigma = factor(e, top.carrier, psi, post=bottom.carrier)
        sigma = retype(sigma, top.carrier, compose(w.endo, bottom.carrier))
        return parallel_square(top, bottom, sigma, SPECIALIZATION)
    raise ValueError(f"unknown kind {kind!r}")

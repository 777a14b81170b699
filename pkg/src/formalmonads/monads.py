"""Monads, monad maps, modules and bimodules with their law checkers."""
from __future__ import annotations

from dataclasses import dataclass, field

from .fincat import (BoundaryError, FinCategory, FinFunctor, LawReport, NatTrans, UnlawfulError,
                     Violation, compose, first_difference, hcomp, identity_cell,
                     identity_functor, vcomp)


@dataclass(frozen=True)
class Monad:
    base: FinCategory
    endo: FinFunctor
    unit: NatTrans
    mult: NatTrans
    name: str = field(default="", compare=False)

    def __repr__(self):
        return f"Monad({self.name or self.endo.on_objects})"


def identity_monad(c: FinCategory) -> Monad:
    I = identity_functor(c)
    return Monad(c, I, identity_cell(I), identity_cell(I), f"id_{c.name}")


def _check_boundaries(m: Monad) -> None:
    T, c = m.endo, m.base
    I = identity_functor(c)
    if T.source != c or T.target != c:
        raise BoundaryError("monad endofunctor must be an endofunctor of the base")
    if m.unit.source != I or m.unit.target != T:
        raise BoundaryError("unit must be id ⇒ T")
    if m.mult.source != compose(T, T) or m.mult.target != T:
        raise BoundaryError("multiplication must be T⨟T ⇒ T")


def check_monad(m: Monad) -> LawReport:
    """Associativity and both unit laws, evaluated component by component."""
    _check_boundaries(m)
    c, T, eta, mu = m.base, m.endo, m.unit.components, m.mult.components
    rep = LawReport()
    for x in c.objects:
        tx = T.ob(x)
        lhs, rhs = c.then(T.mor(mu[x]), mu[x]), c.then(mu[tx], mu[x])
        if lhs != rhs:
            rep.add(Violation("associativity", x, lhs, rhs))
    for x in c.objects:
        tx = T.ob(x)
        got = c.then(T.mor(eta[x]), mu[x])
        if got != c.id(tx):
            rep.add(Violation("left unit", x, got, c.id(tx)))
    for x in c.objects:
        tx = T.ob(x)
        got = c.then(eta[tx], mu[x])
        if got != c.id(tx):
            rep.add(Violation("right unit", x, got, c.id(tx)))
    return rep


def nary_mult(m: Monad, n: int) -> NatTrans:
    """Tⁿ ⇒ T, folded from the left; the right fold is asserted equal."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return m.unit
    if n == 1:
        return identity_cell(m.endo)
    left = right = m.mult
    for k in range(3, n + 1):
        pad = [m.endo] * (k - 2)
        left = vcomp(hcomp(m.mult, *pad), left)
        right = vcomp(hcomp(*pad, m.mult), right)
    assert left == right, "bracketings of the n-ary multiplication disagree"
    return left


def bracketings(m: Monad, n: int) -> list:
    """Evaluate every binary bracketing of an n-fold product."""
    if n == 0:
        return [m.unit]
    if n == 1:
        return [identity_cell(m.endo)]
    out = []
    for k in range(1, n):
        for l in bracketings(m, k):
            for r in bracketings(m, n - k):
                out.append(vcomp(hcomp(l, r), m.mult))
    return out


# -- monad maps ---------------------------------------------------------------

@dataclass(frozen=True)
class MonadMap:
    source: Monad
    target: Monad
    cell: NatTrans


def check_monad_map(h: MonadMap) -> LawReport:
    m1, m2, phi = h.source, h.target, h.cell
    if m1.base != m2.base:
        raise BoundaryError("monad map between monads on different bases")
    if phi.source != m1.endo or phi.target != m2.endo:
        raise BoundaryError("monad map cell must be T₁ ⇒ T₂")
    rep = LawReport()
    rep.add(first_difference("multiplication", vcomp(hcomp(phi, phi), m2.mult), vcomp(m1.mult, phi)))
    rep.add(first_difference("unit", vcomp(m1.unit, phi), m2.unit))
    return rep


def identity_monad_map(m: Monad) -> MonadMap:
    return MonadMap(m, m, identity_cell(m.endo))


# -- modules ------------------------------------------------------------------

@dataclass(frozen=True)
class ModuleStr:
    side: str
    monad: Monad
    carrier: FinFunctor
    action: NatTrans

    def __post_init__(self):
        if self.side not in ("right", "left"):
            raise ValueError(f"side must be right or left, not {self.side!r}")


def _module_boundaries(s: ModuleStr) -> None:
    T, M = s.monad.endo, s.carrier
    if s.side == "right":
        if M.target != s.monad.base:
            raise BoundaryError("right module carrier must land in the monad's base")
        want = compose(M, T)
    else:
        if M.source != s.monad.base:
            raise BoundaryError("left module carrier must start at the monad's base")
        want = compose(T, M)
    if s.action.source != want or s.action.target != M:
        raise BoundaryError("module action has the wrong boundary")


def check_module(s: ModuleStr) -> LawReport:
    _module_boundaries(s)
    m, M, a = s.monad, s.carrier, s.action.components
    T, eta, mu = m.endo, m.unit.components, m.mult.components
    rep = LawReport()
    if s.side == "right":
        c = m.base
        for x in M.source.objects:
            mx = M.ob(x)
            lhs, rhs = c.then(T.mor(a[x]), a[x]), c.then(mu[mx], a[x])
            if lhs != rhs:
                rep.add(Violation("associativity", x, lhs, rhs))
        for x in M.source.objects:
            mx = M.ob(x)
            got = c.then(eta[mx], a[x])
            if got != c.id(mx):
                rep.add(Violation("unit", x, got, c.id(mx)))
    else:
        c = M.target
        for x in m.base.objects:
            lhs, rhs = c.then(a[T.ob(x)], a[x]), c.then(M.mor(mu[x]), a[x])
            if lhs != rhs:
                rep.add(Violation("associativity", x, lhs, rhs))
        for x in m.base.objects:
            got = c.then(M.mor(eta[x]), a[x])
            if got != c.id(M.ob(x)):
                rep.add(Violation("unit", x, got, c.id(M.ob(x))))
    return rep


def check_module_map(s1: ModuleStr, s2: ModuleStr, phi: NatTrans) -> LawReport:
    """phi: M₁ ⇒ M₂ commuting with the actions."""
    if s1.side != s2.side or s1.monad != s2.monad:
        raise BoundaryError("module map between modules of different kinds")
    if phi.source != s1.carrier or phi.target != s2.carrier:
        raise BoundaryError("module map cell must go between the carriers")
    T = s1.monad.endo
    rep = LawReport()
    if s1.side == "right":
        rep.add(first_difference("module map", vcomp(hcomp(phi, T), s2.action), vcomp(s1.action, phi)))
    else:
        rep.add(first_difference("module map", vcomp(hcomp(T, phi), s2.action), vcomp(s1.action, phi)))
    return rep


def monad_as_module(m: Monad, side: str = "right") -> ModuleStr:
    return ModuleStr(side, m, m.endo, m.mult)


# -- bimodules ----------------------------------------------------------------

@dataclass(frozen=True)
class Bimodule:
    left_monad: Monad
    right_monad: Monad
    carrier: FinFunctor
    left_action: NatTrans
    right_action: NatTrans

    def left_module(self) -> ModuleStr:
        return ModuleStr("left", self.left_monad, self.carrier, self.left_action)

    def right_module(self) -> ModuleStr:
        return ModuleStr("right", self.right_monad, self.carrier, self.right_action)


def monad_as_bimodule(m: Monad) -> Bimodule:
    return Bimodule(m, m, m.endo, m.mult, m.mult)


def check_bimodule(b: Bimodule) -> LawReport:
    rep = LawReport()
    rep.extend(check_module(b.left_module()), "left")
    rep.extend(check_module(b.right_module()), "right")
    lhs = vcomp(hcomp(b.left_action, b.right_monad.endo), b.right_action)
    rhs = vcomp(hcomp(b.left_monad.endo, b.right_action), b.left_action)
    rep.add(first_difference("compatibility", lhs, rhs))
    return rep


def joint_action(b: Bimodule) -> NatTrans:
    """T_L⨟M⨟T_R ⇒ M, acting on both sides at once."""
    return vcomp(hcomp(b.left_action, b.right_monad.endo), b.right_action)


def bimodule_action_convert(x, left_monad: Monad | None = None, right_monad: Monad | None = None,
                            carrier: FinFunctor | None = None):
    """Bimodule -> joint action, or joint action (with monads and carrier) -> Bimodule."""
    if isinstance(x, Bimodule):
        rep = check_bimodule(x)
        if not rep.ok:
            raise UnlawfulError(f"bimodule is not lawful: {rep}")
        return joint_action(x)
    if left_monad is None or right_monad is None or carrier is None:
        raise ValueError("converting a joint action needs both monads and the carrier")
    tl, tr, M = left_monad, right_monad, carrier
    lam = vcomp(hcomp(tl.endo, M, tr.unit), x)
    rho = vcomp(hcomp(tl.unit, M, tr.endo), x)
    b = Bimodule(tl, tr, M, lam, rho)
    rep = check_bimodule(b)
    if not rep.ok or joint_action(b) != x:
        raise UnlawfulError(f"joint action does not come from a bimodule: {rep}")
    return b


@dataclass(frozen=True)
class BimoduleMapNAry:
    """cell: M₁⨟…⨟Mₙ ⇒ M, or M₁⨟…⨟Mₙ⨟G_R ⇒ G_L⨟M with colax boundaries.

    ``base`` is the monad T₀ and is required when there are no inputs.
    ``colax`` is an optional pair (left, right) of colax monad 1-cells.
    """
    inputs: tuple
    output: Bimodule
    cell: NatTrans
    base: Monad | None = None
    colax: tuple | None = None

    @property
    def first_monad(self) -> Monad:
        if self.inputs:
            return self.inputs[0].left_monad
        if self.base is None:
            raise BoundaryError("nullary bimodule map needs its base monad")
        return self.base

    @property
    def last_monad(self) -> Monad:
        return self.inputs[-1].right_monad if self.inputs else self.first_monad


def _path(inputs, t0: Monad) -> FinFunctor:
    if not inputs:
        return identity_functor(t0.base)
    for a, b in zip(inputs, inputs[1:]):
        if a.right_monad != b.left_monad:
            raise BoundaryError("bimodule path is not composable")
    return compose(*(b.carrier for b in inputs))


def check_bimodule_map(m: BimoduleMapNAry) -> LawReport:
    ins, out, phi = m.inputs, m.output, m.cell
    t0, tn = m.first_monad, m.last_monad
    P = _path(ins, t0)
    M = out.carrier
    if m.colax is None:
        if out.left_monad != t0 or out.right_monad != tn:
            raise BoundaryError("output bimodule must be over the path's end monads")
        GL, GR = identity_functor(t0.base), identity_functor(tn.base)
        xiL, xiR = identity_cell(t0.endo), identity_cell(tn.endo)
    else:
        cl, cr = m.colax
        if cl.source_monad != t0 or cr.source_monad != tn:
            raise BoundaryError("colax boundaries must start at the path's end monads")
        if cl.target_monad != out.left_monad or cr.target_monad != out.right_monad:
            raise BoundaryError("colax boundaries must end at the output's monads")
        GL, GR, xiL, xiR = cl.carrier, cr.carrier, cl.structure, cr.structure
    if phi.source != compose(P, GR) or phi.target != compose(GL, M):
        raise BoundaryError("bimodule map cell has the wrong boundary")
    lam, rho = out.left_action, out.right_action
    acting_left = vcomp(hcomp(t0.endo, phi), hcomp(xiL, M), hcomp(GL, lam))
    acting_right = vcomp(hcomp(P, xiR), hcomp(phi, out.right_monad.endo), hcomp(GL, rho))
    rep = LawReport()
    n = len(ins)
    if n == 0:
        rep.add(first_difference("unit absorption", acting_left, acting_right))
        return rep
    carriers = [b.carrier for b in ins]
    first = vcomp(hcomp(ins[0].left_action, *carriers[1:], GR), phi)
    rep.add(first_difference("left action", acting_left, first))
    for i in range(n - 1):
        via_right = hcomp(*carriers[:i], ins[i].right_action, *carriers[i + 1:], GR)
        via_left = hcomp(*carriers[:i + 1], ins[i + 1].left_action, *carriers[i + 2:], GR)
        rep.add(first_difference(f"interior {i + 1}", vcomp(via_right, phi), vcomp(via_left, phi)))
    last = vcomp(hcomp(*carriers[:-1], ins[-1].right_action, GR), phi)
    rep.add(first_difference("right action", acting_right, last))
    return rep


# -- lax views ----------------------------------------------------------------

def as_lax_view(x, monad: Monad | None = None):
    """Read a monad map, right module or bare functor as a lax monad 1-cell."""
    from .morphisms import LaxMorphism, check_lax
    if isinstance(x, MonadMap):
        if not check_monad_map(x).ok:
            raise UnlawfulError("monad map is not lawful")
        out = LaxMorphism(x.target, x.source, identity_functor(x.source.base), x.cell)
    elif isinstance(x, ModuleStr):
        if x.side != "right" or not check_module(x).ok:
            raise UnlawfulError("expected a lawful right module")
        out = LaxMorphism(identity_monad(x.carrier.source), x.monad, x.carrier, x.action)
    elif isinstance(x, FinFunctor):
        t = monad or identity_monad(x.source)
        if t.base != x.source:
            raise BoundaryError("monad must live on the functor's source")
        out = LaxMorphism(t, identity_monad(x.target), x, hcomp(t.unit, x))
    else:
        raise TypeError(f"no lax view for {type(x).__name__}")
    assert check_lax(out).ok
    return out


def from_lax_view(l, kind: str):
    """Inverse of as_lax_view for kind in monad_map|module|functor."""
    if kind == "monad_map":
        return MonadMap(l.target_monad, l.source_monad, l.structure)
    if kind == "module":
        return ModuleStr("right", l.target_monad, l.carrier, l.structure)
    if kind == "functor":
        return l.carrier
    raise ValueError(f"unknown view {kind!r}")


def iter_monads(c: FinCategory):
    """Every lawful monad on c, in enumeration order."""
    from .fincat import iter_functors, iter_nat_trans
    I = identity_functor(c)
    for T in iter_functors(c, c):
        TT = compose(T, T)
        for eta in iter_nat_trans(I, T):
            for mu in iter_nat_trans(TT, T):
                m = Monad(c, T, eta, mu)
                if check_monad(m).ok:
                    yield m

"""Lax and colax monad 1-cells, square-shaped monad 2-cells and specializations."""
from __future__ import annotations

from dataclasses import dataclass, field

from .fincat import (Adjunction, BoundaryError, FinFunctor, LawReport, NatTrans, UnlawfulError,
                     Violation, check_adjunction, compose, first_difference, hcomp, identity_cell,
                     identity_functor, vcomp)
from .monads import Monad


@dataclass(frozen=True)
class LaxMorphism:
    """Carrier F: S₁→S₂ with χ: F⨟T₂ ⇒ T₁⨟F."""
    source_monad: Monad
    target_monad: Monad
    carrier: FinFunctor
    structure: NatTrans
    _memo: dict = field(default_factory=dict, init=False, repr=False, compare=False)


@dataclass(frozen=True)
class ColaxMorphism:
    """Carrier G: S₁→S₂ with ξ: T₁⨟G ⇒ G⨟T₂."""
    source_monad: Monad
    target_monad: Monad
    carrier: FinFunctor
    structure: NatTrans
    _memo: dict = field(default_factory=dict, init=False, repr=False, compare=False)


def _one_cell_boundaries(l) -> None:
    t1, t2, F, s = l.source_monad, l.target_monad, l.carrier, l.structure
    if F.source != t1.base or F.target != t2.base:
        raise BoundaryError("carrier must go between the monads' bases")
    if isinstance(l, LaxMorphism):
        want = (compose(F, t2.endo), compose(t1.endo, F))
    else:
        want = (compose(t1.endo, F), compose(F, t2.endo))
    if (s.source, s.target) != want:
        raise BoundaryError("structure cell has the wrong boundary")


def check_lax(l) -> LawReport:
    """Multiplication and unit laws of a lax or colax monad 1-cell."""
    _one_cell_boundaries(l)
    t1, t2, F = l.source_monad, l.target_monad, l.carrier
    c = t2.base
    T1, T2 = t1.endo, t2.endo
    mu1, eta1, mu2, eta2 = (t1.mult.components, t1.unit.components,
                            t2.mult.components, t2.unit.components)
    s = l.structure.components
    rep = LawReport()
    lax = isinstance(l, LaxMorphism)
    for x in t1.base.objects:
        fx = F.ob(x)
        if lax:
            lhs = c.then(T2.mor(s[x]), s[T1.ob(x)], F.mor(mu1[x]))
            rhs = c.then(mu2[fx], s[x])
        else:
            lhs = c.then(s[T1.ob(x)], T2.mor(s[x]), mu2[fx])
            rhs = c.then(F.mor(mu1[x]), s[x])
        if lhs != rhs:
            rep.add(Violation("multiplication", x, lhs, rhs))
    for x in t1.base.objects:
        fx = F.ob(x)
        if lax:
            lhs, rhs = c.then(eta2[fx], s[x]), F.mor(eta1[x])
        else:
            lhs, rhs = c.then(F.mor(eta1[x]), s[x]), eta2[fx]
        if lhs != rhs:
            rep.add(Violation("unit", x, lhs, rhs))
    return rep


def identity_lax(t: Monad) -> LaxMorphism:
    return LaxMorphism(t, t, identity_functor(t.base), identity_cell(t.endo))


def identity_colax(t: Monad) -> ColaxMorphism:
    return ColaxMorphism(t, t, identity_functor(t.base), identity_cell(t.endo))


def compose_lax(a, b):
    hit = a._memo.get(id(b))
    if hit is not None and hit[0] is b:
        return hit[1]
    if type(a) is not type(b):
        raise BoundaryError("cannot compose a lax with a colax 1-cell")
    if a.target_monad != b.source_monad:
        raise BoundaryError("1-cells are not composable")
    F, G = a.carrier, b.carrier
    if isinstance(a, LaxMorphism):
        s = vcomp(hcomp(F, b.structure), hcomp(a.structure, G))
    else:
        s = vcomp(hcomp(a.structure, G), hcomp(F, b.structure))
    out = type(a)(a.source_monad, b.target_monad, compose(F, G), s)
    a._memo[id(b)] = (b, out)
    return out


# -- squares ------------------------------------------------------------------

TWO_CELL = "two_cell"
SPECIALIZATION = "specialization"


@dataclass(frozen=True)
class SquareCell:
    """top F₁: T_W→T_N, right G₁: T_N→T_E, left G₂: T_W→T_S, bottom F₂: T_S→T_E.

    A two_cell is γ: F₁⨟G₁ ⇒ G₂⨟F₂; a specialization is σ: F₁⨟G₁ ⇒ G₂⨟T_S⨟F₂.
    """
    kind: str
    top: LaxMorphism
    right: ColaxMorphism
    left: ColaxMorphism
    bottom: LaxMorphism
    cell: NatTrans

    @property
    def monads(self):
        return (self.top.source_monad, self.top.target_monad,
                self.bottom.target_monad, self.bottom.source_monad)


def _square_boundaries(q: SquareCell) -> None:
    if q.kind not in (TWO_CELL, SPECIALIZATION):
        raise ValueError(f"unknown square kind {q.kind!r}")
    if not isinstance(q.top, LaxMorphism) or not isinstance(q.bottom, LaxMorphism):
        raise BoundaryError("top and bottom must be lax 1-cells")
    if not isinstance(q.left, ColaxMorphism) or not isinstance(q.right, ColaxMorphism):
        raise BoundaryError("left and right must be colax 1-cells")
    if (q.top.source_monad != q.left.source_monad or q.top.target_monad != q.right.source_monad
            or q.left.target_monad != q.bottom.source_monad
            or q.right.target_monad != q.bottom.target_monad):
        raise BoundaryError("monads do not agree around the square")
    F1, G1, G2, F2 = q.top.carrier, q.right.carrier, q.left.carrier, q.bottom.carrier
    src = compose(F1, G1)
    tgt = compose(G2, F2) if q.kind == TWO_CELL else compose(G2, q.left.target_monad.endo, F2)
    if q.cell.source != src or q.cell.target != tgt:
        raise BoundaryError("square cell has the wrong boundary")


def check_square(q: SquareCell) -> LawReport:
    _square_boundaries(q)
    F1, G1, G2, F2 = q.top.carrier, q.right.carrier, q.left.carrier, q.bottom.carrier
    chi1, xi1, xi2, chi2 = q.top.structure, q.right.structure, q.left.structure, q.bottom.structure
    tw, te, ts = q.top.source_monad, q.right.target_monad, q.left.target_monad
    c = q.cell
    rep = LawReport()
    if q.kind == TWO_CELL:
        lhs = vcomp(hcomp(F1, xi1), hcomp(c, te.endo), hcomp(G2, chi2))
        rhs = vcomp(hcomp(chi1, G1), hcomp(tw.endo, c), hcomp(xi2, F2))
    else:
        merge = hcomp(G2, ts.mult, F2)
        lhs = vcomp(hcomp(F1, xi1), hcomp(c, te.endo), hcomp(G2, ts.endo, chi2), merge)
        rhs = vcomp(hcomp(chi1, G1), hcomp(tw.endo, c), hcomp(xi2, ts.endo, F2), merge)
    rep.add(first_difference("square compatibility", lhs, rhs))
    return rep


def parallel_square(top: LaxMorphism, bottom: LaxMorphism, cell: NatTrans,
                    kind: str = TWO_CELL) -> SquareCell:
    """Square with identity colax sides between two parallel lax 1-cells."""
    return SquareCell(kind, top, identity_colax(top.target_monad),
                      identity_colax(top.source_monad), bottom, cell)


def identity_square(x, kind: str = TWO_CELL) -> SquareCell:
    """Identity square on a colax 1-cell (lax-direction unit) or a lax one (colax-direction)."""
    if isinstance(x, ColaxMorphism):
        q = SquareCell(TWO_CELL, identity_lax(x.source_monad), x, x,
                       identity_lax(x.target_monad), identity_cell(x.carrier))
    elif isinstance(x, LaxMorphism):
        q = SquareCell(TWO_CELL, x, identity_colax(x.target_monad),
                       identity_colax(x.source_monad), x, identity_cell(x.carrier))
    else:
        raise TypeError("identity squares exist on lax or colax 1-cells")
    return spec_from_2cell(q, check=False) if kind == SPECIALIZATION else q


def compose_squares(a: SquareCell, b: SquareCell, direction: str) -> SquareCell:
    """direction 'lax': b to the right of a; 'colax': b below a."""
    if a.kind != b.kind:
        raise BoundaryError("cannot compose squares of different kinds")
    if direction == "lax":
        if a.right != b.left:
            raise BoundaryError("squares do not share a colax side")
        top, bottom = compose_lax(a.top, b.top), compose_lax(a.bottom, b.bottom)
        F1a, F2a, F2b, G2a = a.top.carrier, a.bottom.carrier, b.bottom.carrier, a.left.carrier
        if a.kind == TWO_CELL:
            cell = vcomp(hcomp(F1a, b.cell), hcomp(a.cell, F2b))
        else:
            ts, te = a.left.target_monad, a.right.target_monad
            cell = vcomp(hcomp(F1a, b.cell), hcomp(a.cell, te.endo, F2b),
                         hcomp(G2a, ts.endo, a.bottom.structure, F2b),
                         hcomp(G2a, ts.mult, F2a, F2b))
        return SquareCell(a.kind, top, b.right, a.left, bottom, cell)
    if direction == "colax":
        if a.bottom != b.top:
            raise BoundaryError("squares do not share a lax side")
        right, left = compose_lax(a.right, b.right), compose_lax(a.left, b.left)
        G1b, G2a, G2b, F2b = b.right.carrier, a.left.carrier, b.left.carrier, b.bottom.carrier
        if a.kind == TWO_CELL:
            cell = vcomp(hcomp(a.cell, G1b), hcomp(G2a, b.cell))
        else:
            ts, ts2 = a.left.target_monad, b.left.target_monad
            cell = vcomp(hcomp(a.cell, G1b), hcomp(G2a, ts.endo, b.cell),
                         hcomp(G2a, b.left.structure, ts2.endo, F2b),
                         hcomp(G2a, G2b, ts2.mult, F2b))
        return SquareCell(a.kind, a.top, right, left, b.bottom, cell)
    raise ValueError(f"direction must be lax or colax, not {direction!r}")


def spec_from_2cell(q: SquareCell, check: bool = True) -> SquareCell:
    """Compose γ with the unit of the bottom-left monad."""
    if q.kind != TWO_CELL:
        raise ValueError("expected a two_cell square")
    if check and not check_square(q).ok:
        raise UnlawfulError("square is not a monad 2-cell")
    ts = q.left.target_monad
    sigma = vcomp(q.cell, hcomp(q.left.carrier, ts.unit, q.bottom.carrier))
    return SquareCell(SPECIALIZATION, q.top, q.right, q.left, q.bottom, sigma)


def check_interchange(grid, kind: str = TWO_CELL) -> LawReport:
    """grid = ((top-left, top-right), (bottom-left, bottom-right))."""
    (a, b), (c, d) = grid
    for q in (a, b, c, d):
        if q.kind != kind:
            raise BoundaryError("grid squares must all have the requested kind")
    rows = compose_squares(compose_squares(a, b, "lax"), compose_squares(c, d, "lax"), "colax")
    cols = compose_squares(compose_squares(a, c, "colax"), compose_squares(b, d, "colax"), "lax")
    rep = LawReport()
    if (rows.top, rows.right, rows.left, rows.bottom) != (cols.top, cols.right, cols.left, cols.bottom):
        rep.add(Violation("interchange", detail="composite boundaries differ"))
        return rep
    rep.add(first_difference("interchange", rows.cell, cols.cell))
    return rep


def check_composition_laws(squares, direction: str) -> LawReport:
    """Associativity and unit laws for three squares composable in ``direction``.

    Every composite formed along the way must itself pass check_square.
    """
    a, b, c = squares
    kind = a.kind
    rep = LawReport()

    def composite(x, y):
        q = compose_squares(x, y, direction)
        for v in check_square(q):
            rep.add(Violation(f"composite: {v.law}", v.where, v.lhs, v.rhs, v.detail))
        return q

    left, right = composite(composite(a, b), c), composite(a, composite(b, c))
    if left != right:
        rep.add(first_difference("associativity", left.cell, right.cell)
                or Violation("associativity", detail="composite boundaries differ"))
    if direction == "lax":
        before, after = identity_square(a.left, kind), identity_square(a.right, kind)
    else:
        before, after = identity_square(a.top, kind), identity_square(a.bottom, kind)
    for law, q in (("left unit", composite(before, a)), ("right unit", composite(a, after))):
        if q != a:
            rep.add(first_difference(law, q.cell, a.cell)
                    or Violation(law, detail="composite boundaries differ"))
    return rep


# -- adjunctions and mates ----------------------------------------------------

def adjoint_transpose(l, adj: Adjunction):
    """Lax cell on a right adjoint -> colax on its left adjoint, and the mirror."""
    rep = check_adjunction(adj)
    if not rep.ok:
        raise UnlawfulError(f"snake equations fail: {rep}")
    L, R, eta, eps = adj.left, adj.right, adj.unit, adj.counit
    if isinstance(l, LaxMorphism):
        if l.carrier != R:
            raise BoundaryError("lax carrier must be the right adjoint")
        t1, t2 = l.source_monad, l.target_monad
        xi = vcomp(hcomp(eta, t2.endo, L), hcomp(L, l.structure, L), hcomp(L, t1.endo, eps))
        return ColaxMorphism(t2, t1, L, xi)
    if isinstance(l, ColaxMorphism):
        if l.carrier != L:
            raise BoundaryError("colax carrier must be the left adjoint")
        t1, t2 = l.source_monad, l.target_monad
        chi = vcomp(hcomp(R, t1.endo, eta), hcomp(R, l.structure, R), hcomp(eps, t2.endo, R))
        return LaxMorphism(t2, t1, R, chi)
    raise TypeError("expected a lax or colax 1-cell")


def reduce_mixed_square(q: SquareCell, right_adj: Adjunction, left_adj: Adjunction) -> SquareCell:
    """Turn a two_cell square whose colax sides are left adjoints into a lax-only square.

    ``right_adj`` is G₁ ⊣ R₁ for the right side, ``left_adj`` is G₂ ⊣ R₂ for the left.
    """
    if q.kind != TWO_CELL:
        raise ValueError("mixed-square reduction applies to monad 2-cells")
    R1 = adjoint_transpose(q.right, right_adj)
    R2 = adjoint_transpose(q.left, left_adj)
    top, bottom = compose_lax(R2, q.top), compose_lax(q.bottom, R1)
    cell = vcomp(hcomp(R2.carrier, q.top.carrier, right_adj.unit),
                 hcomp(R2.carrier, q.cell, R1.carrier),
                 hcomp(left_adj.counit, q.bottom.carrier, R1.carrier))
    return parallel_square(top, bottom, cell)


def expand_mixed_square(r: SquareCell, top: LaxMorphism, bottom: LaxMorphism,
                        right: ColaxMorphism, left: ColaxMorphism,
                        right_adj: Adjunction, left_adj: Adjunction) -> SquareCell:
    """Inverse of reduce_mixed_square for the given original boundary."""
    G1, G2 = right.carrier, left.carrier
    cell = vcomp(hcomp(left_adj.unit, top.carrier, G1),
                 hcomp(G2, r.cell, G1),
                 hcomp(G2, bottom.carrier, right_adj.counit))
    return SquareCell(TWO_CELL, top, right, left, bottom, cell)

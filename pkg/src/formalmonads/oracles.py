"""Law evaluation by whole-cell pasting, and seeded candidate generators.

The checkers in ``monads`` and ``morphisms`` work component by component.
The functions here evaluate the same equations as pasted composites, so
the two routes can be compared on arbitrary candidates.
"""
from __future__ import annotations

import random

from .fincat import (FinCategory, Horizontal, NatTrans, Vertical, compose, identity_cell,
                     identity_functor, iter_functors, iter_nat_trans, paste)
from .monads import ModuleStr, Monad


def _same(lhs: NatTrans, rhs: NatTrans) -> bool:
    return lhs.components == rhs.components


def paste_monad_failures(m: Monad) -> set:
    T, eta, mu = m.endo, m.unit, m.mult
    out = set()
    assoc_l = paste(Vertical((Horizontal((mu, T)), mu)))
    assoc_r = paste(Vertical((Horizontal((T, mu)), mu)))
    if not _same(assoc_l, assoc_r):
        out.add("associativity")
    if not _same(paste(Vertical((Horizontal((eta, T)), mu))), identity_cell(T)):
        out.add("left unit")
    if not _same(paste(Vertical((Horizontal((T, eta)), mu))), identity_cell(T)):
        out.add("right unit")
    return out


def paste_module_failures(s: ModuleStr) -> set:
    m, M, a = s.monad, s.carrier, s.action
    out = set()
    if s.side == "right":
        lhs = paste(Vertical((Horizontal((a, m.endo)), a)))
        rhs = paste(Vertical((Horizontal((M, m.mult)), a)))
        unit = paste(Vertical((Horizontal((M, m.unit)), a)))
    else:
        lhs = paste(Vertical((Horizontal((m.endo, a)), a)))
        rhs = paste(Vertical((Horizontal((m.mult, M)), a)))
        unit = paste(Vertical((Horizontal((m.unit, M)), a)))
    if not _same(lhs, rhs):
        out.add("associativity")
    if not _same(unit, identity_cell(M)):
        out.add("unit")
    return out


def paste_lax_failures(l) -> set:
    """Works for lax (F⨟T₂ ⇒ T₁⨟F) and colax (T₁⨟G ⇒ G⨟T₂) cells alike."""
    from .morphisms import LaxMorphism
    t1, t2, F, c = l.source_monad, l.target_monad, l.carrier, l.structure
    out = set()
    if isinstance(l, LaxMorphism):
        lhs = paste(Vertical((Horizontal((c, t2.endo)), Horizontal((t1.endo, c)),
                              Horizontal((t1.mult, F)))))
        rhs = paste(Vertical((Horizontal((F, t2.mult)), c)))
        ul = paste(Vertical((Horizontal((F, t2.unit)), c)))
        ur = paste(Horizontal((t1.unit, F)))
    else:
        lhs = paste(Vertical((Horizontal((t1.endo, c)), Horizontal((c, t2.endo)),
                              Horizontal((F, t2.mult)))))
        rhs = paste(Vertical((Horizontal((t1.mult, F)), c)))
        ul = paste(Vertical((Horizontal((t1.unit, F)), c)))
        ur = paste(Horizontal((F, t2.unit)))
    if not _same(lhs, rhs):
        out.add("multiplication")
    if not _same(ul, ur):
        out.add("unit")
    return out


# -- candidates -------------------------------------------------------------------

def random_candidate_monad(rng: random.Random, c: FinCategory) -> Monad:
    """A random (T, η, μ) with correct boundaries; usually unlawful."""
    I = identity_functor(c)
    options = []
    for T in iter_functors(c, c):
        units = list(iter_nat_trans(I, T))
        mults = list(iter_nat_trans(compose(T, T), T))
        if units and mults:
            options.append((T, units, mults))
    T, units, mults = rng.choice(options)
    return Monad(c, T, rng.choice(units), rng.choice(mults))


def random_candidate_module(rng: random.Random, m: Monad, test: FinCategory,
                            side: str = "right") -> ModuleStr | None:
    if side == "right":
        M = rng.choice(list(iter_functors(test, m.base)))
        acts = list(iter_nat_trans(compose(M, m.endo), M))
    else:
        M = rng.choice(list(iter_functors(m.base, test)))
        acts = list(iter_nat_trans(compose(m.endo, M), M))
    if not acts:
        return None
    return ModuleStr(side, m, M, rng.choice(acts))


def random_candidate_lax(rng: random.Random, t1: Monad, t2: Monad, colax: bool = False):
    from .morphisms import ColaxMorphism, LaxMorphism
    F = rng.choice(list(iter_functors(t1.base, t2.base)))
    if colax:
        cells = list(iter_nat_trans(compose(t1.endo, F), compose(F, t2.endo)))
        return ColaxMorphism(t1, t2, F, rng.choice(cells)) if cells else None
    cells = list(iter_nat_trans(compose(F, t2.endo), compose(t1.endo, F)))
    return LaxMorphism(t1, t2, F, rng.choice(cells)) if cells else None


# -- lawful cells and grids -----------------------------------------------------

def iter_lawful_cells(t1: Monad, t2: Monad, colax: bool = False):
    """Every lawful lax (or colax) monad 1-cell from t1 to t2."""
    from .morphisms import ColaxMorphism, LaxMorphism, check_lax
    for F in iter_functors(t1.base, t2.base):
        if colax:
            for c in iter_nat_trans(compose(t1.endo, F), compose(F, t2.endo)):
                l = ColaxMorphism(t1, t2, F, c)
                if check_lax(l).ok:
                    yield l
        else:
            for c in iter_nat_trans(compose(F, t2.endo), compose(t1.endo, F)):
                l = LaxMorphism(t1, t2, F, c)
                if check_lax(l).ok:
                    yield l


def iter_lawful_squares(top, right, left, bottom, kind: str):
    from .morphisms import TWO_CELL, SquareCell, check_square
    src = compose(top.carrier, right.carrier)
    if kind == TWO_CELL:
        tgt = compose(left.carrier, bottom.carrier)
    else:
        tgt = compose(left.carrier, left.target_monad.endo, bottom.carrier)
    for cell in iter_nat_trans(src, tgt):
        q = SquareCell(kind, top, right, left, bottom, cell)
        if check_square(q).ok:
            yield q


class CellPool:
    """Lawful lax/colax cells among a fixed family of monads, enumerated once."""

    def __init__(self, monads):
        self.monads = list(monads)
        self.lax, self.colax = {}, {}
        for i, a in enumerate(self.monads):
            for j, b in enumerate(self.monads):
                if a.base == b.base:
                    self.lax[i, j] = list(iter_lawful_cells(a, b))
                    self.colax[i, j] = list(iter_lawful_cells(a, b, colax=True))

    def _at(self, m: Monad) -> int:
        return next(i for i, x in enumerate(self.monads) if x == m)

    def square(self, rng: random.Random, kind: str, top=None, left=None, tries: int = 100):
        """A random lawful square, keeping ``top``/``left`` when given (they must share a corner)."""
        n = len(self.monads)
        for _ in range(tries):
            if top is not None:
                w, ne = self._at(top.source_monad), self._at(top.target_monad)
            else:
                w = self._at(left.source_monad) if left is not None else rng.randrange(n)
                ne = rng.randrange(n)
            s = self._at(left.target_monad) if left is not None else rng.randrange(n)
            e = rng.randrange(n)
            pools = [[top] if top is not None else self.lax.get((w, ne), []),
                     self.colax.get((ne, e), []),
                     [left] if left is not None else self.colax.get((w, s), []),
                     self.lax.get((s, e), [])]
            if not all(pools):
                continue
            found = list(iter_lawful_squares(*(rng.choice(p) for p in pools), kind))
            if found:
                return rng.choice(found)
        return None

    def grid(self, rng: random.Random, kind: str, tries: int = 100):
        """((a, b), (c, d)) with matching shared sides, or None."""
        for _ in range(tries):
            a = self.square(rng, kind)
            b = a and self.square(rng, kind, left=a.right)
            c = b and self.square(rng, kind, top=a.bottom)
            d = c and self.square(rng, kind, top=b.bottom, left=c.right)
            if d:
                return (a, b), (c, d)
        return None

    def row(self, rng: random.Random, kind: str, length: int = 3, tries: int = 100):
        for _ in range(tries):
            out = [self.square(rng, kind)]
            while out[-1] is not None and len(out) < length:
                out.append(self.square(rng, kind, left=out[-1].right))
            if out[-1] is not None:
                return out
        return None

    def column(self, rng: random.Random, kind: str, length: int = 3, tries: int = 100):
        for _ in range(tries):
            out = [self.square(rng, kind)]
            while out[-1] is not None and len(out) < length:
                out.append(self.square(rng, kind, top=out[-1].bottom))
            if out[-1] is not None:
                return out
        return None


class CompositionTable:
    """Squares interned by value, with each distinct composite computed once.

    Every composite is re-checked with ``check_square`` when first formed; a
    failure is recorded in ``violations``. Exhaustive sweeps over a finite
    family of squares then reduce to index lookups.
    """

    def __init__(self, kind: str):
        self.kind = kind
        self.squares: list = []
        self._index: dict = {}
        self._composites: dict = {}
        self.violations: list = []

    def intern(self, q) -> int:
        i = self._index.get(q)
        if i is None:
            i = self._index[q] = len(self.squares)
            self.squares.append(q)
        return i

    def compose(self, i: int, j: int, direction: str) -> int:
        key = (i, j, direction)
        k = self._composites.get(key)
        if k is None:
            from .morphisms import check_square, compose_squares
            q = compose_squares(self.squares[i], self.squares[j], direction)
            rep = check_square(q)
            if not rep.ok:
                self.violations.append((key, rep))
            k = self._composites[key] = self.intern(q)
        return k

    def identity(self, side) -> int:
        from .morphisms import identity_square
        return self.intern(identity_square(side, self.kind))

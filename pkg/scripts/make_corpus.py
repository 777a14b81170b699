"""Write one lawful and one broken document per kind into tests/corpus/.

Broken documents are well formed but fail the kind's law checker, so
`formalmonads check <kind> <file>` exits 1 on them and 0 on the lawful ones.
"""
import argparse
from pathlib import Path

from formalmonads import fixtures as fx
from formalmonads import serialize
from formalmonads.distributive import DistributiveLaw, iter_distributive_laws
from formalmonads.fincat import (Adjunction, FinFunctor, NatTrans, identity_cell, identity_functor,
                                 make_category)
from formalmonads.finspan import (Retrofunctor, Span, SpanMonad, category_to_span_monad,
                                  identity_retrofunctor)
from formalmonads.kan import RightExtension, codensity
from formalmonads.monads import (Bimodule, BimoduleMapNAry, ModuleStr, Monad, MonadMap,
                                 identity_monad_map, monad_as_bimodule, monad_as_module)
from formalmonads.morphisms import (SPECIALIZATION, TWO_CELL, ColaxMorphism, LaxMorphism,
                                    SquareCell, identity_colax, identity_lax, identity_square)


def _bz2_cell(F, G, comp):
    return NatTrans(F, G, {"*": comp})


def pairs():
    sgn, clos_c = fx.monad("sgn"), fx.monad("clos_c")
    bz2, chain3, arrow2 = fx.category("bz2"), fx.category("chain3"), fx.category("arrow2")
    I = identity_functor(bz2)
    out = {}

    bad_compose = {(a.id, b.id): chain3.then(a.id, b.id)
                   for a in chain3.morphisms for b in chain3.morphisms if a.dst == b.src}
    bad_compose["0<=1", "1<=2"] = "0<=1"
    out["category"] = (chain3, make_category(chain3.objects, [tuple(m) for m in chain3.morphisms],
                                             chain3.identity, bad_compose, "chain3_bad"))

    out["functor"] = (fx.functor("fix_incl"), FinFunctor(bz2, bz2, {"*": "*"}, {"1": "s", "s": "s"}))

    up = FinFunctor(arrow2, arrow2, {"0": "1", "1": "1"}, {"id0": "id1", "id1": "id1", "f": "id1"})
    out["nattrans"] = (identity_cell(up), NatTrans(identity_functor(arrow2), up, {"0": "f", "1": "id0"}))

    out["monad"] = (clos_c, Monad(bz2, I, _bz2_cell(I, I, "1"), _bz2_cell(I, I, "s")))

    out["monad-map"] = (identity_monad_map(sgn), MonadMap(sgn, sgn, _bz2_cell(I, I, "s")))

    out["module"] = (monad_as_module(clos_c), ModuleStr("right", sgn, I, _bz2_cell(I, I, "1")))

    good_b = monad_as_bimodule(sgn)
    bad_b = Bimodule(sgn, sgn, I, _bz2_cell(I, I, "s"), _bz2_cell(I, I, "1"))
    out["bimodule"] = (good_b, bad_b)

    # every nullary map into a lawful sgn bimodule is lawful; the broken
    # target makes the two unit-absorption composites differ
    out["bimodule-map"] = (BimoduleMapNAry((), good_b, sgn.unit, base=sgn),
                           BimoduleMapNAry((), bad_b, sgn.unit, base=sgn))

    out["lax"] = (identity_lax(sgn), LaxMorphism(sgn, sgn, I, _bz2_cell(I, I, "s")))
    out["colax"] = (identity_colax(sgn), ColaxMorphism(sgn, sgn, I, _bz2_cell(I, I, "s")))

    # squares over sgn with lawful sides always commute; an unlawful top breaks compatibility
    l, c = identity_lax(sgn), identity_colax(sgn)
    bad_top = LaxMorphism(sgn, sgn, I, _bz2_cell(I, I, "s"))
    out["square"] = (identity_square(l, TWO_CELL),
                     SquareCell(TWO_CELL, bad_top, c, c, l, _bz2_cell(I, I, "1")))
    out["specialization"] = (identity_square(l, SPECIALIZATION),
                             SquareCell(SPECIALIZATION, bad_top, c, c, l, _bz2_cell(I, I, "s")))

    good_d = next(iter_distributive_laws(fx.monad("cA"), fx.monad("cB")))
    out["distributive-law"] = (good_d, DistributiveLaw(sgn, sgn, _bz2_cell(I, I, "s")))

    good_s = Span(("x", "y"), ("u",), ("p", "q"), {"p": "x", "q": "y"}, {"p": "u", "q": "u"})
    bad_s = Span(("x", "y"), ("u",), ("p", "q"), {"p": "x", "q": "z"}, {"p": "u", "q": "u"})
    out["span"] = (good_s, bad_s)

    good_m = category_to_span_monad(arrow2)
    mult = dict(good_m.mult)
    mult["f", "id1"] = "id0"
    out["span-monad"] = (good_m, SpanMonad(good_m.foot, good_m.span, good_m.unit, mult))

    good_r = identity_retrofunctor(arrow2)
    lift = dict(good_r.lift)
    lift["0", "f"] = "id0"
    out["retrofunctor"] = (good_r, Retrofunctor(arrow2, arrow2, good_r.on_objects, lift))

    e = codensity(fx.functor("fix_incl"))
    X = e.along
    out["extension"] = (e, RightExtension(X, e.of, identity_functor(chain3), identity_cell(X), e.monad))

    flip = NatTrans(I, I, {"*": "s"})
    one = identity_cell(I)
    out["adjunction"] = (fx.fix_adjunction(), Adjunction(I, I, flip, one))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path,
                    default=Path(__file__).resolve().parent.parent / "tests" / "corpus")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    docs = pairs()
    for kind, (good, bad) in docs.items():
        serialize.save(args.out / f"{kind}.lawful.json", good)
        serialize.save(args.out / f"{kind}.broken.json", bad)
    print(f"wrote {2 * len(docs)} documents to {args.out}")


if __name__ == "__main__":
    main()

"""Runs one reproducible check per theorem family over a fixtures directory."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import oracles, serialize
from .algobj import (Resolution, check_resolution, comparison_functor, construct_em, emlift,
                     free_resolution, module_factorizations)
from .distributive import (composite_monad, injection_monad_maps, iter_distributive_laws,
                           module_split_merge, verify_distem)
from .finspan import (category_span_roundtrip, check_span_monad, iter_retrofunctors,
                      identity_retrofunctor, retrofunctor_lax_correspondence)
from .fincat import (FinFunctor, SizeCapExceeded, compose, constant_functor, discrete, hcomp,
                     is_faithful, iter_functors, iter_nat_trans, size_cap)
from .fixtures import CATEGORIES, MONADS, fix_adjunction
from .kan import (certify, codensity, count_universal_maps, from_adjunction, monad_structure,
                  preserves_right_extension, pushforward, right_extension, universal_monad_map)
from .monads import ModuleStr, check_module, check_monad, identity_monad, iter_monads
from .morphisms import (SPECIALIZATION, TWO_CELL, check_composition_laws, check_interchange,
                        check_lax, check_square, parallel_square)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped-cap"


class Counterexample(Exception):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass
class CheckResult:
    name: str
    status: str
    seconds: float
    message: str = ""
    counterexample: dict | str | None = None


@dataclass
class SuiteReport:
    results: list = field(default_factory=list)
    seed: int = 0

    @property
    def ok(self) -> bool:
        return all(r.status == PASS for r in self.results)

    def verdicts(self) -> dict:
        return {r.name: r.status for r in self.results}

    def to_json(self) -> dict:
        return {"seed": self.seed,
                "results": [{"name": r.name, "status": r.status, "seconds": round(r.seconds, 4),
                             "message": r.message, "counterexample": r.counterexample}
                            for r in self.results]}


class Fixtures:
    """Bundled objects read from a directory of documents."""

    def __init__(self, root):
        self.root = Path(root)
        if not self.root.is_dir():
            raise FileNotFoundError(f"fixtures directory {self.root} does not exist")

    def load(self, name: str):
        path = self.root / f"{name}.json"
        if not path.exists():
            raise FileNotFoundError(f"missing fixture {path}")
        return serialize.load(path)


def _expect(cond: bool, message: str, witness=None) -> None:
    if not cond:
        raise Counterexample(message, witness)


# -- checks -------------------------------------------------------------------------

def check_law_oracles(fx: Fixtures, rng: random.Random) -> None:
    cats = [fx.load(n) for n in CATEGORIES]
    monads = [fx.load(n) for n in MONADS]
    tests = [fx.load("term"), fx.load("arrow2")]
    for _ in range(60):
        m = oracles.random_candidate_monad(rng, rng.choice(cats))
        _expect({v.law for v in check_monad(m)} == oracles.paste_monad_failures(m),
                "monad checker disagrees with pasting", m)
    for _ in range(40):
        s = oracles.random_candidate_module(rng, rng.choice(monads), rng.choice(tests),
                                            rng.choice(("left", "right")))
        if s is not None:
            _expect({v.law for v in check_module(s)} == oracles.paste_module_failures(s),
                    "module checker disagrees with pasting", s)
    for _ in range(40):
        t1 = rng.choice(monads)
        t2 = rng.choice([m for m in monads if m.base == t1.base] + monads)
        l = oracles.random_candidate_lax(rng, t1, t2, colax=rng.random() < 0.5)
        if l is not None:
            _expect({v.law for v in check_lax(l)} == oracles.paste_lax_failures(l),
                    "lax checker disagrees with pasting", l)


def check_em_universal(fx: Fixtures, rng: random.Random) -> None:
    for name in ("clos_c", "sgn", "id"):
        m = fx.load(name)
        a = construct_em(m)
        _expect(is_faithful(a.forgetful), f"forgetful functor of {name} is not faithful")
        for test in (fx.load("term"), fx.load("arrow2")):
            for M in iter_functors(test, m.base):
                for rho in iter_nat_trans(compose(M, m.endo), M):
                    s = ModuleStr("right", m, M, rho)
                    if check_module(s).ok:
                        n = len(module_factorizations(a, s))
                        _expect(n == 1, f"module over {name} factors {n} times", s)


def check_resolutions(fx: Fixtures, rng: random.Random) -> None:
    for name in MONADS:
        m = fx.load(name)
        r = free_resolution(m)
        rep = check_resolution(r)
        _expect(rep.ok, f"free resolution of {name}: {rep}", m)
        _expect(_unique(comparison_functor(construct_em(m), r)),
                f"comparison for {name} is not unique", m)
    adj = fix_adjunction()
    r = Resolution(adj.right, adj.left, adj.unit, adj.counit, fx.load("clos_c"))
    _expect(check_resolution(r).ok, "c ⊣ incl is not a resolution of clos_c")
    _expect(_unique(comparison_functor(construct_em(r.monad), r)),
            "comparison from c ⊣ incl is not unique")


def _unique(cmp) -> bool:
    if cmp.unique is None:
        raise SizeCapExceeded("comparison uniqueness was not verified under the cap")
    return cmp.unique


def _emlift_counts(t1, t2) -> None:
    a1, a2 = construct_em(t1), construct_em(t2)
    laxes = list(oracles.iter_lawful_cells(t1, t2))
    lifted = {}
    for l in laxes:
        K = emlift("lax", l, a1, a2)
        lifted[l] = K
        _expect(emlift("lax", (l.carrier, K), a1, a2, "inverse") == l, "lax round trip", l)
    pairs = [(F, K) for F in iter_functors(t1.base, t2.base)
             for K in iter_functors(a1.em_category, a2.em_category)
             if compose(K, a2.forgetful) == compose(a1.forgetful, F)]
    _expect(len(pairs) == len(laxes),
            f"{len(laxes)} lax cells but {len(pairs)} functors over the carriers")
    for l1 in laxes:
        for l2 in laxes:
            K1, K2 = lifted[l1], lifted[l2]
            ems = list(iter_nat_trans(K1, K2))
            base = list(iter_nat_trans(l1.carrier, l2.carrier))
            cells = [q for g in base for q in [parallel_square(l1, l2, g, TWO_CELL)] if _lawful(q)]
            restricting = [e for e in ems if any(_restricts(a1, a2, e, g) for g in base)]
            _expect(len(restricting) == len(cells), "monad 2-cells and EM cells differ in number")
            for q in cells:
                out = emlift(TWO_CELL, q, a1, a2)
                _expect(emlift(TWO_CELL, (l1, l2, out), a1, a2, "inverse") == q, "2-cell round trip")
            specs = [q for s in iter_nat_trans(l1.carrier, compose(t1.endo, l2.carrier))
                     for q in [parallel_square(l1, l2, s, SPECIALIZATION)] if _lawful(q)]
            _expect(len(specs) == len(ems), "specializations and EM cells differ in number")
            for q in specs:
                out = emlift(SPECIALIZATION, q, a1, a2)
                _expect(emlift(SPECIALIZATION, (l1, l2, out), a1, a2, "inverse") == q,
                        "specialization round trip")


def _lawful(q) -> bool:
    return check_square(q).ok


def _restricts(a1, a2, em_cell, base_cell) -> bool:
    """em_cell⨟u₂ == u₁⨟base_cell."""
    return hcomp(em_cell, a2.forgetful).components == hcomp(a1.forgetful, base_cell).components


def check_em_lifting(fx: Fixtures, rng: random.Random) -> None:
    c, top, sgn = fx.load("clos_c"), fx.load("clos_top"), fx.load("sgn")
    for t1, t2 in ((c, top), (top, c), (c, c), (sgn, sgn)):
        _emlift_counts(t1, t2)


def check_double_categories(fx: Fixtures, rng: random.Random) -> None:
    pools = [oracles.CellPool(list(iter_monads(fx.load("chain3")))),
             oracles.CellPool([fx.load("sgn")])]
    for _ in range(20):
        pool = rng.choice(pools)
        for kind in (TWO_CELL, SPECIALIZATION):
            g = pool.grid(rng, kind)
            if g is not None:
                rep = check_interchange(g, kind)
                _expect(rep.ok, f"interchange: {rep}", g[0][0])
            for direction, seq in (("lax", pool.row(rng, kind)), ("colax", pool.column(rng, kind))):
                if seq is not None:
                    rep = check_composition_laws(seq, direction)
                    _expect(rep.ok, f"{direction} composition: {rep}", seq[0])


def check_distributive_laws(fx: Fixtures, rng: random.Random) -> None:
    ms = list(iter_monads(fx.load("sq")))
    named = [fx.load("cA"), fx.load("cB")]
    _expect(all(m in ms for m in named), "cA or cB is not among the enumerated monads")
    tests = [fx.load("term"), fx.load("arrow2")]
    for t1 in ms:
        for t2 in ms:
            for d in iter_distributive_laws(t1, t2):
                comp = composite_monad(d)
                _expect(check_monad(comp).ok, "composite is not a monad", d)
                injection_monad_maps(d)
                for test in tests:
                    for M in iter_functors(test, comp.base):
                        for rho in iter_nat_trans(compose(M, comp.endo), M):
                            s = ModuleStr("right", comp, M, rho)
                            if check_module(s).ok:
                                pair = module_split_merge(d, s)
                                _expect(module_split_merge(d, pair) == s, "split/merge", d)
                rep = verify_distem(d)
                _expect(rep.ok, f"EM comparison fails: {rep}", d)


def check_codensity(fx: Fixtures, rng: random.Random) -> None:
    X = fx.load("fix_incl")
    e = codensity(X)
    _expect(e is not None, "codensity of fix_incl is absent")
    _expect(e.ext.on_objects == {"0": "1", "1": "1", "2": "2"}, "wrong object map", e)
    w = monad_structure(e)
    _expect(check_monad(w).ok, "codensity structure is not a monad", w)
    cert = certify(e)
    _expect(cert.ok, "universal property fails", e)
    for t in iter_monads(fx.load("chain3")):
        for rho in iter_nat_trans(compose(X, t.endo), X):
            if check_module(ModuleStr("right", t, X, rho)).ok:
                universal_monad_map(e, t, rho)
                _expect(count_universal_maps(e, t, rho) == 1, "universal map not unique", t)


def check_pushforward(fx: Fixtures, rng: random.Random) -> None:
    X = fx.load("fix_incl")
    p = pushforward(identity_monad(X.source), X)
    c = codensity(X)
    _expect(p.ext == c.ext and p.universal.components == c.universal.components,
            "pushforward of the identity differs from the codensity")
    _expect(monad_structure(p) == monad_structure(c), "structures differ")
    adj = fix_adjunction()
    for t in iter_monads(X.source):
        via_adj = from_adjunction("pushforward", adj, t)
        direct = pushforward(t, X)
        _expect(via_adj.ext == direct.ext and via_adj.universal == direct.universal,
                "from_adjunction disagrees with the pointwise pushforward", t)
        _expect(certify(via_adj).ok, "adjunction extension is not certified", t)
    # pushing along X then along a preserving G equals pushing along X⨟G
    chain = fx.load("chain3")
    for t in iter_monads(X.source):
        first = pushforward(t, X)
        tx = monad_structure(first)
        for G in iter_functors(chain, chain):
            ok, _ = preserves_right_extension(G, first)
            if not ok:
                continue
            two_step = pushforward(tx, G)
            one_step = pushforward(t, compose(X, G))
            if two_step is None or one_step is None:
                _expect(two_step is None and one_step is None, "existence differs", G)
                continue
            _expect(monad_structure(two_step) == monad_structure(one_step),
                    "composite pushforward differs", G)


def check_spans(fx: Fixtures, rng: random.Random) -> None:
    for name in CATEGORIES:
        c = fx.load(name)
        m, iso = category_span_roundtrip(c)
        _expect(iso is not None, f"round trip of {name} is not an isomorphism", c)
        for b in ("left", "right"):
            _expect(check_span_monad(m, b).ok, f"span monad of {name} fails ({b})", m)
        back, iso2 = category_span_roundtrip(m)
        _expect(iso2 is not None, f"span monad of {name} does not return", m)
        retrofunctor_lax_correspondence(identity_retrofunctor(c))
    for k, expected in ((1, 1), (2, 4), (3, 27)):
        d = discrete([str(i) for i in range(k)])
        found = list(iter_retrofunctors(d, d))
        _expect(len(found) == expected, f"{len(found)} retrofunctors on {k} points")
        for r in found:
            retrofunctor_lax_correspondence(r)


def check_right_extension_absent(fx: Fixtures, rng: random.Random) -> None:
    d2, pair = discrete(["x", "y"]), fx.load("pair")
    term = fx.load("term")
    along = constant_functor(d2, term, "*")
    of = FinFunctor(d2, pair, {"x": "1", "y": "1"}, {m.id: "id1" for m in d2.morphisms})
    _expect(right_extension(along, of) is None, "product of 1 with itself in pair should not exist")


CHECKS = (
    ("law-checkers", check_law_oracles),
    ("em-universal", check_em_universal),
    ("resolutions", check_resolutions),
    ("em-lifting", check_em_lifting),
    ("double-categories", check_double_categories),
    ("distributive-laws", check_distributive_laws),
    ("codensity", check_codensity),
    ("pushforward", check_pushforward),
    ("right-extension-absent", check_right_extension_absent),
    ("spans", check_spans),
)


def _witness_doc(w):
    if w is None:
        return None
    try:
        return serialize.to_document(w)
    except TypeError:
        return repr(w)


def run_suite(fixtures_dir, seed: int = 0, cap: int = 10**6, only=None) -> SuiteReport:
    """Run every check in a fixed order; a check that hits the cap is skipped, never passed."""
    fx = Fixtures(fixtures_dir)
    report = SuiteReport(seed=seed)
    for name, fn in CHECKS:
        if only is not None and name not in only:
            continue
        rng = random.Random(f"{seed}:{name}")
        start = time.perf_counter()
        with size_cap(cap):
            try:
                fn(fx, rng)
                res = CheckResult(name, PASS, 0.0)
            except SizeCapExceeded as e:
                res = CheckResult(name, SKIPPED, 0.0, str(e))
            except Counterexample as e:
                res = CheckResult(name, FAIL, 0.0, str(e), _witness_doc(e.witness))
            except FileNotFoundError:
                raise
            except Exception as e:      # a crash is a failed check, not a crashed suite
                res = CheckResult(name, FAIL, 0.0, f"{type(e).__name__}: {e}")
        res.seconds = time.perf_counter() - start
        report.results.append(res)
    return report

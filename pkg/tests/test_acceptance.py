"""Acceptance criteria, one test and one printed pass/fail line each.

Every criterion runs against the bundled fixtures with the default size cap
and must finish inside its pinned time limit.  Run with ``pytest -s`` or
``python3 tests/test_acceptance.py`` to see the ten verdict lines; under a
plain ``pytest`` run the lines are written straight to the terminal.
"""
import io
import itertools
import json
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from conftest import CORPUS, FIXTURES  # noqa: E402
from formalmonads import cli, oracles, serialize  # noqa: E402
from formalmonads import fixtures as fx  # noqa: E402
from formalmonads.algobj import (Resolution, check_resolution, comparison_functor,  # noqa: E402
                                 construct_em, emlift, free_resolution, module_factorizations)
from formalmonads.distributive import (composite_monad, injection_monad_maps,  # noqa: E402
                                       iter_distributive_laws, module_split_merge,
                                       verify_distem)
from formalmonads.fincat import (compose, discrete, hcomp, is_faithful,  # noqa: E402
                                 iter_functors, iter_nat_trans)
from formalmonads.finspan import (category_span_roundtrip, check_span_monad,  # noqa: E402
                                  iter_retrofunctors, retrofunctor_lax_correspondence)
from formalmonads.kan import (certify, codensity, count_universal_maps,  # noqa: E402
                              from_adjunction, monad_structure, preserves_right_extension,
                              pushforward, universal_monad_map)
from formalmonads.monads import (ModuleStr, check_module, check_monad,  # noqa: E402
                                 check_monad_map, identity_monad, iter_monads)
from formalmonads.morphisms import (SPECIALIZATION, TWO_CELL, check_composition_laws,  # noqa: E402
                                    check_interchange, check_lax, check_square, compose_squares,
                                    parallel_square)
from formalmonads.suite import run_suite  # noqa: E402

TESTS = ("term", "arrow2")


def _laws(rep):
    return {v.law for v in rep}


# -- 1 -------------------------------------------------------------------------------

def law_checkers_match_pasting():
    rng = random.Random(1)
    cats = [fx.category(n) for n in fx.CATEGORIES]
    assert all(len(c.objects) <= 4 and len(c.morphisms) <= 12 for c in cats)
    monads = [fx.monad(n) for n in fx.MONADS]
    tests = [fx.category(n) for n in TESTS]
    counts = {"monad": 0, "module": 0, "lax": 0}
    while counts["monad"] < 200:
        m = oracles.random_candidate_monad(rng, rng.choice(cats))
        assert _laws(check_monad(m)) == oracles.paste_monad_failures(m)
        counts["monad"] += 1
    while counts["module"] < 200:
        s = oracles.random_candidate_module(rng, rng.choice(monads), rng.choice(tests),
                                            rng.choice(("left", "right")))
        if s is not None:
            assert _laws(check_module(s)) == oracles.paste_module_failures(s)
            counts["module"] += 1
    while counts["lax"] < 200:
        t1 = rng.choice(monads)
        t2 = rng.choice([m for m in monads if m.base == t1.base])
        l = oracles.random_candidate_lax(rng, t1, t2, colax=rng.random() < 0.5)
        if l is not None:
            assert _laws(check_lax(l)) == oracles.paste_lax_failures(l)
            counts["lax"] += 1
    return f"{counts['monad']} monads, {counts['module']} modules, {counts['lax']} lax cells"


# -- 2 -------------------------------------------------------------------------------

def em_universal_property():
    modules = 0
    for m in (fx.monad("clos_c"), fx.monad("sgn"), fx.monad("id"),
              identity_monad(fx.category("bz2"))):
        a = construct_em(m)
        assert is_faithful(a.forgetful)
        for test in TESTS:
            for M in iter_functors(fx.category(test), m.base):
                for rho in iter_nat_trans(compose(M, m.endo), M):
                    s = ModuleStr("right", m, M, rho)
                    if check_module(s).ok:
                        assert len(module_factorizations(a, s)) == 1
                        modules += 1
    return f"{modules} modules factor uniquely"


# -- 3 -------------------------------------------------------------------------------

def resolutions():
    rs = [free_resolution(fx.monad(n)) for n in fx.MONADS]
    adj = fx.fix_adjunction()
    rs.append(Resolution(adj.right, adj.left, adj.unit, adj.counit, fx.monad("clos_c")))
    for r in rs:
        assert check_resolution(r).ok
        cmp = comparison_functor(construct_em(r.monad), r)
        assert cmp.unique is True
    return f"{len(rs)} resolutions, comparisons unique"


# -- 4 -------------------------------------------------------------------------------

def _restricts(a1, a2, em_cell, base_cell):
    return hcomp(em_cell, a2.forgetful).components == hcomp(a1.forgetful, base_cell).components


def em_lifting_bijections():
    c, top, sgn = fx.monad("clos_c"), fx.monad("clos_top"), fx.monad("sgn")
    totals = [0, 0, 0]
    for t1, t2 in ((c, top), (top, c), (sgn, sgn)):
        a1, a2 = construct_em(t1), construct_em(t2)
        laxes = list(oracles.iter_lawful_cells(t1, t2))
        over = {(F, K) for F in iter_functors(t1.base, t2.base)
                for K in iter_functors(a1.em_category, a2.em_category)
                if compose(K, a2.forgetful) == compose(a1.forgetful, F)}
        lifted = {}
        for l in laxes:
            K = lifted[l] = emlift("lax", l, a1, a2)
            assert emlift("lax", (l.carrier, K), a1, a2, "inverse") == l
        assert {(l.carrier, K) for l, K in lifted.items()} == over and len(laxes) == len(over)
        totals[0] += len(laxes)
        for l1, l2 in itertools.product(laxes, repeat=2):
            K1, K2 = lifted[l1], lifted[l2]
            ems = list(iter_nat_trans(K1, K2))
            base = list(iter_nat_trans(l1.carrier, l2.carrier))
            cells = [q for g in base for q in [parallel_square(l1, l2, g, TWO_CELL)]
                     if check_square(q).ok]
            over_cells = [e for e in ems if any(_restricts(a1, a2, e, g) for g in base)]
            assert len(cells) == len(over_cells)
            for q in cells:
                out = emlift(TWO_CELL, q, a1, a2)
                assert out in over_cells
                assert emlift(TWO_CELL, (l1, l2, out), a1, a2, "inverse") == q
            specs = [q for s in iter_nat_trans(l1.carrier, compose(t1.endo, l2.carrier))
                     for q in [parallel_square(l1, l2, s, SPECIALIZATION)] if check_square(q).ok]
            assert len(specs) == len(ems)
            assert {emlift(SPECIALIZATION, q, a1, a2) for q in specs} == set(ems)
            for q in specs:
                out = emlift(SPECIALIZATION, q, a1, a2)
                assert emlift(SPECIALIZATION, (l1, l2, out), a1, a2, "inverse") == q
            totals[1] += len(cells)
            totals[2] += len(specs)
    return f"{totals[0]} lax cells, {totals[1]} monad 2-cells, {totals[2]} specializations"


# -- 5 -------------------------------------------------------------------------------

def _sign_sweep(kind):
    sgn = fx.monad("sgn")
    lax = list(oracles.iter_lawful_cells(sgn, sgn))
    colax = list(oracles.iter_lawful_cells(sgn, sgn, colax=True))
    tab = oracles.CompositionTable(kind)
    idx = [tab.intern(q) for t, r, l, b in itertools.product(lax, colax, colax, lax)
           for q in oracles.iter_lawful_squares(t, r, l, b, kind)]
    S = tab.squares
    n = {"squares": len(idx), "rows": 0, "columns": 0, "grids": 0}
    for a in idx:
        q = S[a]
        for side, direction, first in ((q.left, "lax", True), (q.right, "lax", False),
                                       (q.top, "colax", True), (q.bottom, "colax", False)):
            e = tab.identity(side)
            pair = (e, a) if first else (a, e)
            assert tab.compose(*pair, direction) == a
    for a, b, c in itertools.product(idx, repeat=3):
        if S[a].right == S[b].left and S[b].right == S[c].left:
            assert tab.compose(tab.compose(a, b, "lax"), c, "lax") == \
                tab.compose(a, tab.compose(b, c, "lax"), "lax")
            n["rows"] += 1
        if S[a].bottom == S[b].top and S[b].bottom == S[c].top:
            assert tab.compose(tab.compose(a, b, "colax"), c, "colax") == \
                tab.compose(a, tab.compose(b, c, "colax"), "colax")
            n["columns"] += 1
    for a, b, c, d in itertools.product(idx, repeat=4):
        if (S[a].right == S[b].left and S[a].bottom == S[c].top
                and S[b].bottom == S[d].top and S[c].right == S[d].left):
            rows = tab.compose(tab.compose(a, b, "lax"), tab.compose(c, d, "lax"), "colax")
            cols = tab.compose(tab.compose(a, c, "colax"), tab.compose(b, d, "colax"), "lax")
            assert rows == cols
            n["grids"] += 1
    assert tab.violations == []
    return n


def _grid_composites_are_lawful(grid, kind):
    (a, b), (c, d) = grid
    for x, y, direction in ((a, b, "lax"), (c, d, "lax"), (a, c, "colax"), (b, d, "colax")):
        assert check_square(compose_squares(x, y, direction)).ok
    assert check_interchange(grid, kind).ok


def double_category_laws():
    sweeps = {kind: _sign_sweep(kind) for kind in (TWO_CELL, SPECIALIZATION)}
    rng = random.Random(5)
    pool = oracles.CellPool(list(iter_monads(fx.category("chain3"))))
    configs = 0
    while configs < 500:
        kind = rng.choice((TWO_CELL, SPECIALIZATION))
        shape = rng.choice(("grid", "row", "column"))
        if shape == "grid":
            g = pool.grid(rng, kind)
            if g is None:
                continue
            _grid_composites_are_lawful(g, kind)
        else:
            seq = pool.row(rng, kind) if shape == "row" else pool.column(rng, kind)
            if seq is None:
                continue
            assert check_composition_laws(seq, "lax" if shape == "row" else "colax").ok
        configs += 1
    s = sweeps[TWO_CELL]
    return (f"sign: {s['squares']} squares, {s['grids']} grids per kind; "
            f"{configs} poset configurations")


# -- 6 -------------------------------------------------------------------------------

def distributive_laws():
    ms = list(iter_monads(fx.category("sq")))
    assert fx.monad("cA") in ms and fx.monad("cB") in ms
    laws = modules = 0
    for t1, t2 in itertools.product(ms, repeat=2):
        for d in iter_distributive_laws(t1, t2):
            comp = composite_monad(d)
            assert check_monad(comp).ok
            assert all(check_monad_map(h).ok for h in injection_monad_maps(d))
            for test in TESTS:
                for M in iter_functors(fx.category(test), comp.base):
                    for rho in iter_nat_trans(compose(M, comp.endo), M):
                        s = ModuleStr("right", comp, M, rho)
                        if check_module(s).ok:
                            pair = module_split_merge(d, s)
                            assert module_split_merge(d, pair) == s
                            modules += 1
            rep = verify_distem(d)
            assert rep.em_iso is not None and rep.comparison_is_iso and rep.universal_module
            assert rep.ok
            laws += 1
    return f"{laws} laws, {modules} composite modules round-tripped"


# -- 7 -------------------------------------------------------------------------------

def codensity_monad():
    X = fx.functor("fix_incl")
    e = codensity(X)
    assert e.ext.on_objects == {"0": "1", "1": "1", "2": "2"}
    assert check_monad(monad_structure(e)).ok
    chain = fx.category("chain3")
    cert = certify(e)
    assert cert.ok and cert.functors == len(list(iter_functors(chain, chain))) == 10
    acting = 0
    for t in iter_monads(chain):
        for rho in iter_nat_trans(compose(X, t.endo), X):
            if check_module(ModuleStr("right", t, X, rho)).ok:
                assert check_monad_map(universal_monad_map(e, t, rho)).ok
                assert count_universal_maps(e, t, rho) == 1
                acting += 1
    return f"certified against {cert.functors} endomaps, {acting} acting closure operators"


# -- 8 -------------------------------------------------------------------------------

def pushforward_monads():
    X = fx.functor("fix_incl")
    p, c = pushforward(identity_monad(X.source), X), codensity(X)
    assert p.ext == c.ext and p.universal.components == c.universal.components
    assert monad_structure(p) == monad_structure(c)
    adj = fx.fix_adjunction()
    agreed = composed = 0
    for t in iter_monads(X.source):
        via, direct = from_adjunction("pushforward", adj, t), pushforward(t, X)
        assert via.ext == direct.ext and via.universal == direct.universal
        agreed += 1
    chain = fx.category("chain3")
    for t in iter_monads(X.source):
        first = pushforward(t, X)
        tx = monad_structure(first)
        for G in iter_functors(chain, chain):
            if not preserves_right_extension(G, first)[0]:
                continue
            two, one = pushforward(tx, G), pushforward(t, compose(X, G))
            assert (two is None) == (one is None)
            if two is not None:
                assert monad_structure(two) == monad_structure(one)
                composed += 1
    return f"{agreed} adjunction agreements, {composed} composite pushforwards"


# -- 9 -------------------------------------------------------------------------------

def spans_and_retrofunctors():
    for name in fx.CATEGORIES:
        m, iso = category_span_roundtrip(fx.category(name))
        assert iso is not None
        assert check_span_monad(m, "left").ok and check_span_monad(m, "right").ok
        assert category_span_roundtrip(m)[1] is not None
    counts = []
    for k in (1, 2, 3):
        d = discrete([str(i) for i in range(k)])
        found = list(iter_retrofunctors(d, d))
        functions = {tuple(zip(d.objects, f)) for f in itertools.product(d.objects, repeat=k)}
        assert {tuple(sorted(r.on_objects.items())) for r in found} == functions
        for r in found:
            l, _ = retrofunctor_lax_correspondence(r)
            assert retrofunctor_lax_correspondence(l, d, d)[0] == r
        counts.append(len(found))
    assert counts == [1, 4, 27]
    return f"{len(fx.CATEGORIES)} round trips, retrofunctor counts {counts}"


# -- 10 ------------------------------------------------------------------------------

def cli_contract():
    for path in sorted(FIXTURES.glob("*.json")) + sorted(CORPUS.glob("*.json")):
        text = path.read_text(encoding="utf-8")
        name = json.loads(text).get("name")
        once = serialize.dumps(serialize.loads(text), name)
        assert once == serialize.canonicalize(text)
        assert serialize.dumps(serialize.loads(once), name) == once
    kinds = sorted(cli.CHECK_TYPES)
    for kind in kinds:
        for suffix, code in (("lawful", cli.EXIT_OK), ("broken", cli.EXIT_VIOLATION)):
            got = cli.run_command(["check", kind, str(CORPUS / f"{kind}.{suffix}.json")],
                                  stream=io.StringIO())
            assert got == code, (kind, suffix, got)
    verdicts = [run_suite(FIXTURES, seed=s).verdicts() for s in (0, 1)]
    assert verdicts[0] == verdicts[1]
    assert set(verdicts[0].values()) == {"pass"}
    return f"{2 * len(kinds)} corpus documents, suite verdicts equal across seeds"


CRITERIA = (
    (1, "law checkers match pasting", 5, law_checkers_match_pasting),
    (2, "EM universal property", 5, em_universal_property),
    (3, "resolutions and comparison", 2, resolutions),
    (4, "EM lifting bijections", 5, em_lifting_bijections),
    (5, "double category laws", 10, double_category_laws),
    (6, "distributive laws and composites", 10, distributive_laws),
    (7, "codensity monad", 2, codensity_monad),
    (8, "pushforward monads", 2, pushforward_monads),
    (9, "spans and retrofunctors", 3, spans_and_retrofunctors),
    (10, "serialization and CLI contract", 5, cli_contract),
)


def evaluate(fn, limit):
    start = time.perf_counter()
    try:
        detail = fn()
        error = None
    except AssertionError as e:
        detail, error = None, f"assertion failed {e}".strip()
    elapsed = time.perf_counter() - start
    if error is None and elapsed >= limit:
        error = f"took {elapsed:.2f}s, limit {limit}s"
    return error is None, elapsed, error or detail


def verdict_line(n, title, limit, ok, elapsed, detail):
    return f"criterion {n:2d} {'PASS' if ok else 'FAIL'} {title} ({elapsed:.2f}s < {limit}s): {detail}"


@pytest.mark.parametrize("n,title,limit,fn", CRITERIA, ids=[f"c{c[0]:02d}" for c in CRITERIA])
def test_criterion(n, title, limit, fn, capsys):
    ok, elapsed, detail = evaluate(fn, limit)
    with capsys.disabled():
        print("\n" + verdict_line(n, title, limit, ok, elapsed, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n, title, limit, fn in CRITERIA:
        ok, elapsed, detail = evaluate(fn, limit)
        failed += not ok
        print(verdict_line(n, title, limit, ok, elapsed, detail))
    sys.exit(1 if failed else 0)

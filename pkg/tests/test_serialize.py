import json

import pytest
from hypothesis import given, strategies as st

from formalmonads import fixtures as fx
from formalmonads import serialize
from formalmonads.fincat import (FinCategory, iter_functors, iter_nat_trans, validate_category)
from formalmonads.monads import iter_monads
from conftest import CORPUS, FIXTURES

DOCUMENTS = sorted(FIXTURES.glob("*.json")) + sorted(CORPUS.glob("*.json"))


def test_load_chain3():
    c = serialize.load(FIXTURES / "chain3.json")
    assert isinstance(c, FinCategory) and validate_category(c).ok
    assert c == fx.category("chain3")


@pytest.mark.parametrize("path", DOCUMENTS, ids=lambda p: f"{p.parent.name}/{p.name}")
def test_save_load_is_canonical(path):
    text = path.read_text(encoding="utf-8")
    obj = serialize.loads(text)
    assert serialize.dumps(obj, json.loads(text).get("name")) == serialize.canonicalize(text)
    assert serialize.loads(serialize.dumps(obj)) == obj


def test_fixture_files_match_the_built_in_fixtures():
    for name in fx.CATEGORIES:
        assert serialize.load(FIXTURES / f"{name}.json") == fx.category(name)
    for name in fx.MONADS:
        assert serialize.load(FIXTURES / f"{name}.json") == fx.monad(name)


def test_malformed_compose_triple_names_the_triple():
    doc = json.loads((FIXTURES / "chain3.json").read_text(encoding="utf-8"))
    doc["compose"][4] = ["0<=1", "1<=2"]
    with pytest.raises(serialize.SchemaError, match=r"\$\.compose\[4\]"):
        serialize.from_document(doc)


def test_schema_errors_carry_a_path():
    doc = json.loads((FIXTURES / "fix_incl.json").read_text(encoding="utf-8"))
    doc["on_objects"]["1"] = "7"
    with pytest.raises(serialize.SchemaError) as err:
        serialize.from_document(doc)
    assert err.value.path.startswith("$.on_objects")
    with pytest.raises(serialize.SchemaError):
        serialize.loads("{not json")
    with pytest.raises(serialize.SchemaError):
        serialize.from_document({"kind": "nonsense"})


CHAIN = fx.category("chain3")
OBJECTS = ([fx.category(n) for n in fx.CATEGORIES]
           + list(iter_functors(CHAIN, CHAIN))
           + [a for F in iter_functors(CHAIN, CHAIN) for G in iter_functors(CHAIN, CHAIN)
              for a in iter_nat_trans(F, G)][:40]
           + list(iter_monads(fx.category("sq"))))


@given(st.sampled_from(OBJECTS))
def test_round_trip_is_exact_and_byte_stable(obj):
    text = serialize.dumps(obj)
    back = serialize.loads(text)
    assert back == obj
    assert serialize.dumps(back) == text

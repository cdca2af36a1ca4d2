"""Document parsing, serialization, and round-trip identities."""
from __future__ import annotations

import json
import random

import pytest

from canrel import documents, symplin, paths
from canrel.documents import (
    build_canrel,
    build_finrel,
    build_path,
    build_space,
    canrel_body,
    dumps,
    factorization_body,
    finrel_body,
    parse_document,
    parse_text,
    path_body,
    space_body,
)
from canrel.errors import DocumentError, InvariantViolation
from canrel.sampling import random_canrel, random_finrel, random_finset, random_space, random_word
from canrel.symplin import SymplecticSpace


class TestParseDocument:
    def test_space(self):
        kind, value = parse_document('{"space": {"blocks": [[1, 1]]}}')
        assert kind == "space" and value.dim == 2

    def test_exactly_one_kind(self):
        with pytest.raises(DocumentError):
            parse_document('{"space": {"blocks": []}, "finset": {"name": "X", "elements": []}}')
        with pytest.raises(DocumentError):
            parse_document('{"nonsense": {}}')

    def test_malformed_json_reports_position(self):
        with pytest.raises(DocumentError) as err:
            parse_document("{bad")
        assert "line 1" in str(err.value)

    def test_non_lagrangian_basis_is_domain_error(self):
        doc = {
            "canrel": {
                "target": {"blocks": [[1, 1]]},
                "source": {"blocks": []},
                "basis": [["1", "0"], ["0", "1"]],
            }
        }
        with pytest.raises(InvariantViolation):
            parse_document(json.dumps(doc))

    def test_rational_strings_validated(self):
        doc = {
            "canrel": {
                "target": {"blocks": [[1, 1]]},
                "source": {"blocks": [[1, 1]]},
                "basis": [["1", "0", "1", "0.5"], ["0", "1", "0", "1"]],
            }
        }
        with pytest.raises(DocumentError):
            parse_document(json.dumps(doc))

    def test_rational_fraction_round_trip(self):
        rel = {
            "canrel": {
                "target": {"blocks": []},
                "source": {"blocks": [[1, 1]]},
                "basis": [["1", "1/3"]],
            }
        }
        _, value = parse_document(json.dumps(rel))
        assert canrel_body(value)["basis"] == [["1", "1/3"]]


class TestReferences:
    def test_names_resolve_in_store(self):
        text = json.dumps({
            "documents": [
                {"space": {"name": "Y", "blocks": [[1, 1]]}},
                {"canrel": {"name": "f", "target": "Y", "source": "Y",
                            "basis": [["1", "0", "1", "0"], ["0", "1", "0", "1"]]}},
                {"path": {"name": "p", "engine": "symplin", "word": ["f", "f"]}},
            ]
        })
        store = parse_text(text)
        assert store.spaces["Y"].dim == 2
        assert store.morphisms["f"][0] == "symplin"
        assert len(store.paths["p"].word) == 2

    def test_unknown_reference(self):
        with pytest.raises(DocumentError):
            parse_text(json.dumps({"canrel": {"target": "missing", "source": "missing", "basis": []}}))

    def test_finset_references(self):
        text = json.dumps({
            "documents": [
                {"finset": {"name": "X", "elements": ["a", "b"]}},
                {"finrel": {"name": "r", "target": "X", "source": "X",
                            "pairs": [["a", "a"]]}},
            ]
        })
        store = parse_text(text)
        assert store.morphisms["r"][1].pairs == frozenset({("a", "a")})

    def test_wrapped_word_entries(self):
        inner = {"finrel": {"target": {"name": "X", "elements": ["a"]},
                            "source": {"name": "X", "elements": ["a"]},
                            "pairs": [["a", "a"]]}}
        text = json.dumps({"path": {"engine": "finrel", "word": [inner]}})
        store = parse_text(text)
        assert len(store.path_order) == 1


class TestRoundTrips:
    def test_finrel_round_trip(self):
        rng = random.Random(70)
        for _ in range(20):
            t, s = random_finset(rng, "T"), random_finset(rng, "S")
            f = random_finrel(rng, t, s)
            body = finrel_body(f)
            assert build_finrel(body) == f

    def test_canrel_round_trip(self):
        rng = random.Random(71)
        for _ in range(20):
            f = random_canrel(rng, random_space(rng), random_space(rng), shears=rng.randint(0, 2))
            assert build_canrel(canrel_body(f)) == f

    def test_space_round_trip(self):
        rng = random.Random(72)
        for _ in range(10):
            s = random_space(rng, max_half_dim=3)
            assert build_space(space_body(s)) == s

    def test_path_round_trip(self):
        rng = random.Random(73)
        word = random_word(rng, 3)
        p = paths.make_path(paths.SYMPLIN, word)
        assert build_path({"path": path_body(p)}["path"]) == p

    def test_empty_path_round_trip(self):
        p = paths.make_path(paths.SYMPLIN, [], obj=SymplecticSpace(((1, -1),)))
        assert build_path(path_body(p)) == p

    def test_factorization_round_trip(self):
        rng = random.Random(74)
        word = random_word(rng, 2)
        fact = paths.factorize_word(word)
        rebuilt = documents.build_factorization(factorization_body(fact))
        assert rebuilt == fact
        assert paths.verify_two_term(word, rebuilt).passed

    def test_serialized_fixture_is_byte_stable(self):
        rng = random.Random(75)
        f = random_canrel(rng, random_space(rng), random_space(rng))
        once = dumps({"canrel": canrel_body(f)})
        twice = dumps({"canrel": canrel_body(build_canrel(canrel_body(f)))})
        assert once == twice
        # canonical fixtures reparse to the same bytes
        _, reparsed = parse_document(once)
        assert dumps({"canrel": canrel_body(reparsed)}) == once


class TestDumps:
    def test_sorted_keys(self):
        assert dumps({"b": 1, "a": 2}) == '{"a":2,"b":1}'

    def test_pretty(self):
        assert dumps({"a": 1}, pretty=True) == '{\n  "a": 1\n}'

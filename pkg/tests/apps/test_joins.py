"""Tests for the join-size front-end."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from tncsketch.apps import (
    build_schema,
    frequency_tensor,
    load_join_query,
    read_relation,
    relations_to_network,
    schema_network,
    stream_relations,
)
from tncsketch.data import Relation
from tncsketch.estimators import GeneralSketchState, estimate_from_state
from tncsketch.exceptions import TncIOError, ValidationError
from tncsketch.network import normalize_wlog
from tncsketch.oracle import contract_exact, join_size_nested_loop

pytestmark = pytest.mark.unit


def test_joined_attributes_share_one_dictionary(
    query_relations: list[Relation], query_joins: list[tuple[str, str]]
) -> None:
    schema = build_schema(query_relations, query_joins)

    assert schema.dictionaries["R1.a"] == {"1": 1, "2": 2, "3": 3, "4": 4, "5": 5}
    assert schema.dictionaries["R2.b"] is schema.dictionaries["R3.d"]
    assert schema.dictionaries["R2.c"] == {"u": 1, "v": 2, "w": 3}
    assert schema.modes == {"R1": ("a",), "R2": ("b", "c"), "R3": ("d",), "R4": ("e",)}
    assert schema.shape("R2") == (5, 3)
    assert schema.global_mode("R4.e") == 5


def test_frequency_tensor_counts_tuples(
    query_relations: list[Relation], query_joins: list[tuple[str, str]]
) -> None:
    schema = build_schema(query_relations, query_joins)

    assert frequency_tensor(query_relations[0], schema).entries == {(1,): 1.0, (2,): 2.0, (3,): 1.0}
    assert frequency_tensor(query_relations[1], schema).entries == {(1, 1): 1.0, (2, 1): 1.0, (2, 2): 1.0, (4, 3): 1.0}


def test_query_network(query_relations: list[Relation], query_joins: list[tuple[str, str]]) -> None:
    net, schema = relations_to_network(query_relations, query_joins)

    assert [x.shape for x in net.tensors] == [(5,), (5, 3), (5,), (3,)]
    assert net.contractions == ((1, 2), (2, 4), (3, 5))
    assert schema_network(schema).contractions == net.contractions
    assert contract_exact(net).value() == join_size_nested_loop(query_relations, query_joins) == 13


def test_relation_without_join_attributes_is_its_size(query_relations: list[Relation]) -> None:
    r1, _, r3, r4 = query_relations
    joins = [("R1.a", "R3.d")]

    net, _schema = relations_to_network([r1, r3, r4], joins)

    assert net.tensors[2].order == 0
    assert net.tensors[2].value() == 3
    assert contract_exact(net).value() == join_size_nested_loop([r1, r3, r4], joins) == 15


def test_query_errors(query_relations: list[Relation]) -> None:
    with pytest.raises(ValidationError) as err:
        relations_to_network(query_relations, [("R1.a", "R9.b")])
    assert err.value.code == "unknown_attribute"

    with pytest.raises(ValidationError) as err:
        relations_to_network([query_relations[0], query_relations[0]], [])
    assert err.value.code == "duplicate_relation"


def test_streaming_matches_the_batch_sketch(
    query_relations: list[Relation], query_joins: list[tuple[str, str]]
) -> None:
    net, _schema = relations_to_network(query_relations, query_joins)
    normalized = normalize_wlog(net).network

    streamed = stream_relations(query_relations, query_joins, 16, 41)
    batch = GeneralSketchState.from_network(normalized, 16, 41)

    assert streamed.matches(normalized)
    for k in range(1, normalized.num_tensors + 1):
        np.testing.assert_array_equal(streamed.buckets(k), batch.buckets(k))
    assert estimate_from_state(streamed) == estimate_from_state(batch)


def test_load_join_query(
    query_files: Path, query_relations: list[Relation], query_joins: list[tuple[str, str]]
) -> None:
    relations, joins = load_join_query(query_files)

    assert relations == query_relations
    assert joins == query_joins


def test_read_relation_errors(tmp_path: Path, query_files: Path) -> None:
    with pytest.raises(TncIOError):
        read_relation("R9", tmp_path / "missing.csv", ["a"])

    with pytest.raises(ValidationError) as err:
        read_relation("R1", query_files.parent / "R1.csv", ["a", "zz"])
    assert err.value.code == "unknown_attribute"
    assert err.value.details["missing"] == ["zz"]


def test_join_spec_is_validated(tmp_path: Path) -> None:
    spec = tmp_path / "bad.json"
    spec.write_text('{"relations": [{"name": "R1", "file": "R1.csv", "attrs": ["a"]}], "joins": [["R1a", "R2.b"]]}')

    with pytest.raises(ValidationError):
        load_join_query(spec)

"""
Join-size estimation front-end.

Every relation becomes a frequency tensor X_k(i) = number of tuples whose
join attributes equal i. Attributes in no join predicate are summed out, so
a relation with no join attribute becomes the order-0 tensor |R|. Joined
attributes share one dictionary encoding (sorted union of their values,
1-based), and every predicate R.a = S.b is a contraction of the two modes.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

from networkx.utils import UnionFind
import pandas as pd

from tncsketch.const import LOGGER
from tncsketch.data import Relation
from tncsketch.estimators import GeneralSketchState, turnstile_update
from tncsketch.exceptions import TncIOError, ValidationError
from tncsketch.network import TensorNetwork, normalize_wlog, read_document
from tncsketch.tensor import SparseTensor, SparseTensorBuilder
from tncsketch.validators.schemas import JOIN_SPEC_SCHEMA, ensure_document

type Predicate = tuple[str, str]


@dataclass(frozen=True)
class RelationSchema:
    """
    Mode layout and encodings of a join query.

    Attributes:
        relations: Relation names in tensor order.
        modes: Join attributes of every relation, in attribute order; these
            are the modes of its frequency tensor.
        joins: Predicates as ("R.a", "S.b") pairs.
        dictionaries: Per join attribute ("R.a") the value -> index map,
            shared by all attributes joined with it.
    """

    relations: tuple[str, ...]
    modes: Mapping[str, tuple[str, ...]]
    joins: tuple[Predicate, ...]
    dictionaries: Mapping[str, Mapping[str, int]]

    def global_mode(self, ref: str) -> int:
        """Return the global mode number of a join attribute "R.a"."""
        name, _, attr = ref.partition(".")
        offset = 0
        for relation in self.relations:
            if relation == name:
                return offset + self.modes[relation].index(attr) + 1
            offset += len(self.modes[relation])
        raise ValidationError(f"Unknown relation {name}", code="unknown_attribute")

    def shape(self, name: str) -> tuple[int, ...]:
        """Shape of the frequency tensor of a relation."""
        return tuple(max(1, len(self.dictionaries[f"{name}.{attr}"])) for attr in self.modes[name])

    def encode(self, relation: Relation, row: Sequence[str]) -> tuple[int, ...]:
        """Map a tuple to the multi-index of its frequency tensor entry."""
        index = []
        for attr in self.modes[relation.name]:
            value = row[relation.attrs.index(attr)]
            dictionary = self.dictionaries[f"{relation.name}.{attr}"]
            if value not in dictionary:
                raise ValidationError(
                    f"Value {value!r} of {relation.name}.{attr} is not in the dictionary",
                    code="unknown_value",
                )
            index.append(dictionary[value])
        return tuple(index)


def _check_predicates(relations: Sequence[Relation], joins: Sequence[Sequence[str]]) -> tuple[Predicate, ...]:
    by_name = {r.name: r for r in relations}
    if len(by_name) != len(relations):
        raise ValidationError("Relation names must be unique", code="duplicate_relation")
    predicates = []
    for left, right in joins:
        for ref in (left, right):
            name, _, attr = ref.partition(".")
            if name not in by_name or attr not in by_name[name].attrs:
                raise ValidationError(
                    f"Join predicate references unknown attribute {ref}",
                    code="unknown_attribute",
                    details={"attribute": ref},
                )
        predicates.append((str(left), str(right)))
    return tuple(predicates)


def build_schema(relations: Sequence[Relation], joins: Sequence[Sequence[str]]) -> RelationSchema:
    """Derive the mode layout and the shared dictionaries of a query."""
    predicates = _check_predicates(relations, joins)
    joined = {ref for pair in predicates for ref in pair}
    groups = UnionFind(sorted(joined))
    for left, right in predicates:
        groups.union(left, right)

    by_ref = {f"{r.name}.{a}": r for r in relations for a in r.attrs}
    dictionaries: dict[str, dict[str, int]] = {}
    for group in groups.to_sets():
        values = sorted({v for ref in group for v in by_ref[ref].column(ref.partition(".")[2])})
        dictionary = {value: i for i, value in enumerate(values, start=1)}
        for ref in group:
            dictionaries[ref] = dictionary

    modes = {r.name: tuple(a for a in r.attrs if f"{r.name}.{a}" in joined) for r in relations}
    return RelationSchema(tuple(r.name for r in relations), modes, predicates, dictionaries)


def schema_network(schema: RelationSchema) -> TensorNetwork:
    """All-zero network with the query's shapes and contractions."""
    return TensorNetwork.of(
        (SparseTensor.zeros(schema.shape(name)) for name in schema.relations),
        ((schema.global_mode(left), schema.global_mode(right)) for left, right in schema.joins),
    )


def frequency_tensor(relation: Relation, schema: RelationSchema) -> SparseTensor:
    """Count the tuples of a relation per join attribute combination."""
    builder = SparseTensorBuilder(schema.shape(relation.name))
    for row in relation.rows:
        builder.add(schema.encode(relation, row), 1.0)
    return builder.build()


def relations_to_network(
    relations: Sequence[Relation], joins: Sequence[Sequence[str]]
) -> tuple[TensorNetwork, RelationSchema]:
    """
    Build the join network of a query.

    Returns:
        The network (one frequency tensor per relation, one contraction per
        predicate) and the schema holding the dictionaries.
    """
    schema = build_schema(relations, joins)
    tensors = [frequency_tensor(r, schema) for r in relations]
    pairs = [(schema.global_mode(left), schema.global_mode(right)) for left, right in schema.joins]
    net = TensorNetwork.of(tensors, pairs)
    LOGGER.info("Join network: %d relations, %d predicates", len(relations), len(pairs))
    return net, schema


def stream_relations(
    relations: Sequence[Relation], joins: Sequence[Sequence[str]], m: int, seed: int
) -> GeneralSketchState:
    """
    Sketch a join query with one turnstile update per tuple.

    The state is built for the normalized schema; each tuple's multi-index
    is carried through the normalization entry map.
    """
    schema = build_schema(relations, joins)
    normalized = normalize_wlog(schema_network(schema))
    state = GeneralSketchState(normalized.network, m, seed)
    for k, relation in enumerate(relations, start=1):
        for row in relation.rows:
            index = normalized.entry_map(k, schema.encode(relation, row))
            if index is not None:
                turnstile_update(state, k, index, 1.0)
    return state


def read_relation(name: str, path: str | Path, attrs: Sequence[str]) -> Relation:
    """Read a CSV file with a header row; all values are kept as text."""
    path = Path(path)
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    except OSError as err:
        raise TncIOError(f"Cannot read {path}: {err.strerror}", details={"path": str(path)}) from err
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as err:
        raise TncIOError(f"Cannot parse {path}: {err}", code="parse_error", details={"path": str(path)}) from err
    missing = [a for a in attrs if a not in frame.columns]
    if missing:
        raise ValidationError(
            f"{path} lacks attributes {missing} of relation {name}",
            code="unknown_attribute",
            details={"relation": name, "missing": missing, "columns": list(frame.columns)},
        )
    rows = tuple(frame[list(attrs)].itertuples(index=False, name=None))
    LOGGER.debug("Read relation %s from %s: %d tuples", name, path, len(rows))
    return Relation(name, tuple(attrs), rows)


def load_join_query(path: str | Path) -> tuple[list[Relation], list[Predicate]]:
    """
    Read a join spec file and its relations.

    Relation files are resolved against the directory of the spec file.
    """
    path = Path(path)
    document = ensure_document(JOIN_SPEC_SCHEMA, read_document(path), source=str(path))
    relations = [
        read_relation(spec["name"], path.parent / spec["file"], spec["attrs"]) for spec in document["relations"]
    ]
    return relations, [(left, right) for left, right in document["joins"]]

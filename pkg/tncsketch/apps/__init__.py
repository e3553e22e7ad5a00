"""Application front-ends: join sizes and triangle counts as tensor networks."""

from __future__ import annotations

from .joins import (
    RelationSchema,
    build_schema,
    frequency_tensor,
    load_join_query,
    read_relation,
    relations_to_network,
    schema_network,
    stream_relations,
)
from .triangles import (
    TRIANGLE_CONTRACTIONS,
    adjacency_tensor,
    load_edge_list,
    parse_edge_list,
    stream_triangles,
    triangles_to_network,
)

__all__ = [
    "TRIANGLE_CONTRACTIONS",
    "RelationSchema",
    "adjacency_tensor",
    "build_schema",
    "frequency_tensor",
    "load_edge_list",
    "load_join_query",
    "parse_edge_list",
    "read_relation",
    "relations_to_network",
    "schema_network",
    "stream_relations",
    "stream_triangles",
    "triangles_to_network",
]

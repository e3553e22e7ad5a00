"""
Triangle counting front-end.

The number of directed triangles of a graph is tr(A^3): three copies of the
adjacency matrix with contractions {(1, 6), (2, 3), (4, 5)}.
"""

from __future__ import annotations

from pathlib import Path

from tncsketch.const import LOGGER
from tncsketch.data import EdgeList
from tncsketch.estimators import GeneralSketchState, turnstile_update
from tncsketch.exceptions import TncIOError, ValidationError
from tncsketch.network import TensorNetwork
from tncsketch.tensor import SparseTensor
from tncsketch.validators.schemas import EDGE_LIST_SCHEMA, ensure_document

TRIANGLE_CONTRACTIONS = ((1, 6), (2, 3), (4, 5))


def parse_edge_list(text: str, *, source: str = "<string>") -> EdgeList:
    """
    Parse edge-list text.

    The first line holds the node count n, each further line one edge "u v".
    Blank lines and lines starting with '#' are ignored.
    """
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line and not line.startswith("#")]
    if not lines:
        raise ValidationError(f"{source}: missing node count", code="edge_list_missing_header")
    try:
        n = int(lines[0])
        edges = []
        for number, line in enumerate(lines[1:], start=2):
            tokens = line.split()
            if len(tokens) != 2:
                raise ValidationError(
                    f"{source}: line {number} has {len(tokens)} fields, expected 2",
                    code="edge_list_arity",
                    details={"line": number},
                )
            edges.append([int(tokens[0]), int(tokens[1])])
    except ValueError as err:
        raise ValidationError(f"{source}: {err}", code="edge_list_parse_error") from err
    document = ensure_document(EDGE_LIST_SCHEMA, {"n": n, "edges": edges}, source=source)
    return EdgeList.of(document["n"], document["edges"])


def load_edge_list(path: str | Path) -> EdgeList:
    """Read an edge-list file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise TncIOError(f"Cannot read {path}: {err.strerror}", details={"path": str(path)}) from err
    graph = parse_edge_list(text, source=str(path))
    LOGGER.debug("Read %s: %d nodes, %d edges", path, graph.n, len(graph.edges))
    return graph


def adjacency_tensor(edges: EdgeList) -> SparseTensor:
    """Sparse 0/1 adjacency matrix; an empty graph gets a 1 x 1 zero matrix."""
    n = max(1, edges.n)
    return SparseTensor.from_entries((n, n), [(edge, 1.0) for edge in edges.edges])


def triangles_to_network(edges: EdgeList) -> TensorNetwork:
    """Return the tr(A^3) network of a graph."""
    a = adjacency_tensor(edges)
    return TensorNetwork.of((a, a, a), TRIANGLE_CONTRACTIONS)


def stream_triangles(edges: EdgeList, m: int, seed: int) -> GeneralSketchState:
    """Sketch the triangle network in one pass, one update per edge and copy."""
    n = max(1, edges.n)
    schema = TensorNetwork.of((SparseTensor.zeros((n, n)),) * 3, TRIANGLE_CONTRACTIONS)
    state = GeneralSketchState(schema, m, seed)
    for edge in edges.edges:
        for k in (1, 2, 3):
            turnstile_update(state, k, edge, 1.0)
    return state

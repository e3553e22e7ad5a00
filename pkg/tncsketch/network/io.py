"""Network files in JSON or YAML form."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import yaml

from tncsketch.const import LOGGER
from tncsketch.exceptions import TncIOError
from tncsketch.tensor import SparseTensor
from tncsketch.validators.schemas import NETWORK_SCHEMA, ensure_document

from .model import TensorNetwork

YAML_SUFFIXES = (".yaml", ".yml")


def read_document(path: str | Path) -> Any:
    """Read a JSON or YAML document (chosen by suffix)."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise TncIOError(f"Cannot read {path}: {err.strerror}", details={"path": str(path)}) from err
    try:
        if path.suffix.lower() in YAML_SUFFIXES:
            return yaml.safe_load(text)
        return json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as err:
        raise TncIOError(f"Cannot parse {path}: {err}", code="parse_error", details={"path": str(path)}) from err


def network_from_document(data: Any, *, source: str = "network") -> TensorNetwork:
    """Build a network from a parsed document checked against NETWORK_SCHEMA."""
    document = ensure_document(NETWORK_SCHEMA, data, source=source)
    tensors = [
        SparseTensor.from_entries(spec["shape"], [(tuple(index), value) for index, value in spec["entries"]])
        for spec in document["tensors"]
    ]
    return TensorNetwork.of(tensors, document["contractions"])


def load_network(path: str | Path) -> TensorNetwork:
    """Read a network file."""
    net = network_from_document(read_document(path), source=str(path))
    LOGGER.debug("Loaded %s: %d tensors, %d contractions", path, net.num_tensors, len(net.contractions))
    return net


def dump_network(net: TensorNetwork, path: str | Path) -> None:
    """Write a network file (YAML for .yaml/.yml, JSON otherwise)."""
    path = Path(path)
    document = net.as_document()
    text = (
        yaml.safe_dump(document, sort_keys=False)
        if path.suffix.lower() in YAML_SUFFIXES
        else json.dumps(document, indent=2)
    )
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as err:
        raise TncIOError(f"Cannot write {path}: {err.strerror}", details={"path": str(path)}) from err

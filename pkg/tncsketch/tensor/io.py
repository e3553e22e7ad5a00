"""
COO text format for single tensors.

    shape n1 n2 ... nq
    i1 i2 ... iq v
    ...

Whitespace separated, 1-based indices, decimal values. Blank lines and
lines starting with '#' are ignored. An order-0 tensor has a bare
``shape`` header followed by one value line.
"""

from __future__ import annotations

from pathlib import Path

from tncsketch.const import LOGGER
from tncsketch.exceptions import TncIOError, ValidationError
from tncsketch.validators.schemas import TENSOR_SCHEMA, ensure_document

from .sparse import SparseTensor


def parse_coo(text: str, *, source: str = "<string>") -> SparseTensor:
    """Parse COO text into a tensor."""
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line and not line.startswith("#")]
    if not lines or lines[0].split()[0] != "shape":
        raise ValidationError(f"{source}: missing 'shape' header", code="coo_missing_header")

    try:
        shape = [int(token) for token in lines[0].split()[1:]]
        entries = []
        for number, line in enumerate(lines[1:], start=2):
            tokens = line.split()
            if len(tokens) != len(shape) + 1:
                raise ValidationError(
                    f"{source}: line {number} has {len(tokens)} fields, expected {len(shape) + 1}",
                    code="coo_arity",
                    details={"line": number},
                )
            entries.append([[int(t) for t in tokens[:-1]], float(tokens[-1])])
    except ValueError as err:
        raise ValidationError(f"{source}: {err}", code="coo_parse_error") from err

    document = ensure_document(TENSOR_SCHEMA, {"shape": shape, "entries": entries}, source=source)
    tensor = SparseTensor.from_entries(document["shape"], [(tuple(i), v) for i, v in document["entries"]])
    LOGGER.debug("Parsed %s: shape %s, %d nonzeros", source, tensor.shape, tensor.nnz)
    return tensor


def load_coo(path: str | Path) -> SparseTensor:
    """Read a tensor from a COO text file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise TncIOError(f"Cannot read {path}: {err.strerror}", details={"path": str(path)}) from err
    return parse_coo(text, source=str(path))


def format_coo(x: SparseTensor) -> str:
    """Render a tensor as COO text (canonical entry order)."""
    lines = [" ".join(["shape", *(str(n) for n in x.shape)])]
    lines.extend(
        " ".join([*(str(int(i)) for i in row), repr(float(v))]) for row, v in zip(x.coords, x.values, strict=True)
    )
    return "\n".join(lines) + "\n"


def dump_coo(x: SparseTensor, path: str | Path) -> None:
    """Write a tensor as a COO text file."""
    path = Path(path)
    try:
        path.write_text(format_coo(x), encoding="utf-8")
    except OSError as err:
        raise TncIOError(f"Cannot write {path}: {err.strerror}", details={"path": str(path)}) from err


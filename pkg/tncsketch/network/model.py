"""
Tensor network data model.

Modes are numbered globally: tensor 1 owns modes 1..q_1, tensor 2 owns
q_1 + 1..q_1 + q_2 and so on. A contraction is an unordered pair (u, v) of
global modes; modes in no contraction are free and form the output.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
import math
from typing import Any

from tncsketch.exceptions import NetworkValidationError, ValidationError
from tncsketch.tensor import SparseTensor, frobenius_norm, slice_tensor

type Contraction = tuple[int, int]


@dataclass(frozen=True, eq=False)
class TensorNetwork:
    """
    Tensors plus a contraction set over globally numbered modes.

    Attributes:
        tensors: The tensors X_1..X_p in order.
        contractions: Sorted pairs (u, v) with u <= v; duplicates are dropped.
    """

    tensors: tuple[SparseTensor, ...]
    contractions: tuple[Contraction, ...] = field(default=())

    def __post_init__(self) -> None:
        """Store tensors and pairs as canonical tuples."""
        pairs = {(min(int(u), int(v)), max(int(u), int(v))) for u, v in self.contractions}
        object.__setattr__(self, "tensors", tuple(self.tensors))
        object.__setattr__(self, "contractions", tuple(sorted(pairs)))

    @classmethod
    def of(cls, tensors: Iterable[SparseTensor], contractions: Iterable[Sequence[int]] = ()) -> TensorNetwork:
        """Build a network from any iterables."""
        return cls(tuple(tensors), tuple((int(u), int(v)) for u, v in contractions))

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        """Global mode number preceding the first mode of each tensor."""
        result = [0]
        for tensor in self.tensors:
            result.append(result[-1] + tensor.order)
        return tuple(result)

    @property
    def num_tensors(self) -> int:
        """Number of tensors p."""
        return len(self.tensors)

    @property
    def num_modes(self) -> int:
        """Total number of modes q."""
        return self.offsets[-1]

    @cached_property
    def owners(self) -> tuple[tuple[int, int], ...]:
        """owners[u - 1] = (tensor index, local mode), both 1-based."""
        return tuple((k + 1, local + 1) for k, tensor in enumerate(self.tensors) for local in range(tensor.order))

    def mode_owner(self, u: int) -> tuple[int, int]:
        """Return (tensor index, local mode) of global mode u."""
        if not 1 <= u <= self.num_modes:
            raise ValidationError(f"Mode {u} outside 1..{self.num_modes}", code="mode_out_of_range")
        return self.owners[u - 1]

    def global_mode(self, k: int, local: int) -> int:
        """Return the global number of local mode `local` of tensor k."""
        return self.offsets[k - 1] + local

    def mode_size(self, u: int) -> int:
        """Return n_u."""
        k, local = self.mode_owner(u)
        return self.tensors[k - 1].shape[local - 1]

    def modes_of(self, k: int) -> range:
        """Global modes of tensor k."""
        return range(self.offsets[k - 1] + 1, self.offsets[k] + 1)

    @cached_property
    def partner(self) -> dict[int, list[int]]:
        """Contraction partners of every contracted mode."""
        result: dict[int, list[int]] = {}
        for u, v in self.contractions:
            result.setdefault(u, []).append(v)
            result.setdefault(v, []).append(u)
        return result

    @cached_property
    def free_modes(self) -> tuple[int, ...]:
        """Modes that appear in no contraction, in increasing order."""
        return tuple(u for u in range(1, self.num_modes + 1) if u not in self.partner)

    @property
    def is_full(self) -> bool:
        """True when every mode is contracted (the result is a scalar)."""
        return not self.free_modes

    @cached_property
    def output_shape(self) -> tuple[int, ...]:
        """Shape of the contraction result (free mode sizes in order)."""
        return tuple(self.mode_size(u) for u in self.free_modes)

    def norm_product(self) -> float:
        """Return the product of the tensors' Frobenius norms."""
        return math.prod(frobenius_norm(x) for x in self.tensors)

    def total_nnz(self) -> int:
        """Return the summed nonzero count of all tensors."""
        return sum(x.nnz for x in self.tensors)

    def as_document(self) -> dict[str, Any]:
        """Return the network in its JSON document form."""
        return {
            "tensors": [
                {"shape": list(x.shape), "entries": [[list(index), value] for index, value in x.entries.items()]}
                for x in self.tensors
            ],
            "contractions": [list(pair) for pair in self.contractions],
        }

    def __repr__(self) -> str:
        """Short representation."""
        shapes = ", ".join(str(x.shape) for x in self.tensors)
        return f"TensorNetwork([{shapes}], E={list(self.contractions)})"


@dataclass(frozen=True)
class Diagnostic:
    """One violated network constraint."""

    code: str
    message: str
    modes: tuple[int, ...] = ()

    def as_dict(self) -> dict[str, Any]:
        """Return the diagnostic as a JSON serializable mapping."""
        return {"code": self.code, "message": self.message, "modes": list(self.modes)}


def validate(net: TensorNetwork) -> list[Diagnostic]:
    """
    Check a network against the contraction model.

    Returns:
        An empty list when the network is valid, otherwise one diagnostic
        per violated constraint naming the offending modes.
    """
    diagnostics: list[Diagnostic] = []
    if not net.tensors:
        diagnostics.append(Diagnostic("no_tensors", "Network has no tensors"))
    q = net.num_modes
    for u, v in net.contractions:
        bad = tuple(w for w in (u, v) if not 1 <= w <= q)
        if bad:
            diagnostics.append(
                Diagnostic("mode_out_of_range", f"Contraction ({u}, {v}) references modes outside 1..{q}", bad)
            )
            continue
        if u == v:
            diagnostics.append(Diagnostic("self_pair", f"Contraction ({u}, {v}) pairs a mode with itself", (u,)))
            continue
        if net.mode_size(u) != net.mode_size(v):
            diagnostics.append(
                Diagnostic(
                    "dimension_mismatch",
                    f"Contraction ({u}, {v}) joins modes of sizes {net.mode_size(u)} and {net.mode_size(v)}",
                    (u, v),
                )
            )
    return diagnostics


def ensure_valid(net: TensorNetwork) -> TensorNetwork:
    """Return the network or raise NetworkValidationError with its diagnostics."""
    diagnostics = validate(net)
    if diagnostics:
        raise NetworkValidationError(
            f"Invalid network: {'; '.join(d.message for d in diagnostics)}", diagnostics=diagnostics
        )
    return net


def normalization_violations(net: TensorNetwork) -> list[Diagnostic]:
    """
    Return the ways a valid network is not in normalized form.

    Normalized means every mode is in at most one contraction, no contraction
    joins two modes of one tensor, and no two tensors share more than one
    contraction.
    """
    diagnostics: list[Diagnostic] = []
    for u, partners in net.partner.items():
        if len(partners) > 1:
            diagnostics.append(Diagnostic("shared_mode", f"Mode {u} is in {len(partners)} contractions", (u,)))
    seen: dict[tuple[int, int], Contraction] = {}
    for u, v in net.contractions:
        ku, kv = net.mode_owner(u)[0], net.mode_owner(v)[0]
        if ku == kv:
            diagnostics.append(
                Diagnostic("self_contraction", f"Contraction ({u}, {v}) lies within tensor {ku}", (u, v))
            )
            continue
        key = (min(ku, kv), max(ku, kv))
        if key in seen:
            diagnostics.append(
                Diagnostic("parallel_contraction", f"Tensors {key[0]} and {key[1]} share several contractions", (u, v))
            )
        seen[key] = (u, v)
    return diagnostics


def ensure_normalized(net: TensorNetwork) -> TensorNetwork:
    """Return the network or raise when it is not normalized."""
    ensure_valid(net)
    diagnostics = normalization_violations(net)
    if diagnostics:
        raise NetworkValidationError(
            f"Network is not normalized: {'; '.join(d.message for d in diagnostics)}", diagnostics=diagnostics
        )
    return net


def fix_free_modes(net: TensorNetwork, assignment: Mapping[int, int]) -> TensorNetwork:
    """
    Slice free modes to fixed indices.

    Args:
        net: The network.
        assignment: Free global mode -> 1-based index.

    Returns:
        The network over the remaining modes, contractions renumbered.
    """
    for u in assignment:
        if u not in net.free_modes:
            raise ValidationError(f"Mode {u} is not a free mode", code="not_free")

    per_tensor: dict[int, dict[int, int]] = {}
    for u, index in assignment.items():
        k, local = net.mode_owner(u)
        per_tensor.setdefault(k, {})[local] = int(index)
    tensors = [slice_tensor(x, per_tensor.get(k, {})) for k, x in enumerate(net.tensors, start=1)]

    renumber: dict[int, int] = {}
    for u in range(1, net.num_modes + 1):
        if u not in assignment:
            renumber[u] = len(renumber) + 1
    return TensorNetwork.of(tensors, ((renumber[u], renumber[v]) for u, v in net.contractions))

"""
Normalization of tensor networks.

Rewrites any valid network into one where

- no contraction joins two modes of the same tensor (exact diagonal/trace),
- at most one contraction joins any two tensors (parallel modes fused),
- every mode is in at most one contraction (virtual diagonal copies),
- every contracted mode has the same size (zero padding),

without changing the contraction value or the number of tensors.

Internally every mode position carries a class label: modes identified
through contractions share a label, free modes have singleton labels. The
rules rewrite tensors and labels until none fires.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass
import math
from typing import NamedTuple

import numpy as np
from networkx.utils import UnionFind

from tncsketch.const import LOGGER
from tncsketch.exceptions import ValidationError
from tncsketch.tensor import MultiIndex, SparseTensor, linear_index, linear_indices, pad_modes

from .model import TensorNetwork, ensure_valid

RULE_DIAGONAL = "diagonal"
RULE_SUM_OUT = "sum_out"
RULE_FUSE = "fuse"
RULE_VIRTUAL_COPY = "virtual_copy"
RULE_PAD = "pad"


@dataclass(frozen=True)
class NormalizationStep:
    """One rule application, for the provenance log."""

    rule: str
    tensors: tuple[int, ...]
    detail: str

    def __str__(self) -> str:
        """Readable form."""
        return f"{self.rule}[{', '.join(f'X{k}' for k in self.tensors)}]: {self.detail}"


@dataclass(frozen=True)
class _Diagonal:
    keep: int
    drop: int

    def __call__(self, index: MultiIndex) -> MultiIndex | None:
        if index[self.keep] != index[self.drop]:
            return None
        return index[: self.drop] + index[self.drop + 1 :]


@dataclass(frozen=True)
class _SumOut:
    position: int

    def __call__(self, index: MultiIndex) -> MultiIndex | None:
        return index[: self.position] + index[self.position + 1 :]


@dataclass(frozen=True)
class _Fuse:
    positions: tuple[int, ...]
    sizes: tuple[int, ...]

    def __call__(self, index: MultiIndex) -> MultiIndex | None:
        target = min(self.positions)
        fused = linear_index([index[p] for p in self.positions], self.sizes)
        after = tuple(index[j] for j in range(target + 1, len(index)) if j not in self.positions)
        return (*index[:target], fused, *after)


@dataclass(frozen=True)
class _Expand:
    position: int
    copies: int

    def __call__(self, index: MultiIndex) -> MultiIndex | None:
        return index[: self.position] + (index[self.position],) * self.copies + index[self.position + 1 :]


type _EntryStep = _Diagonal | _SumOut | _Fuse | _Expand


class EntryMap:
    """
    Where each entry of the original network lands after normalization.

    Every rule maps entries linearly: an entry of tensor k at multi-index i
    either moves to a single multi-index of the normalized tensor k (values
    that land on the same index add up) or is dropped (None).
    """

    def __init__(self, steps: Sequence[Sequence[_EntryStep]]) -> None:
        """Initialize from per-tensor step lists."""
        self._steps = tuple(tuple(s) for s in steps)

    @property
    def num_tensors(self) -> int:
        """Number of tensors the map covers."""
        return len(self._steps)

    def __call__(self, k: int, index: Sequence[int]) -> MultiIndex | None:
        """Map entry `index` of tensor k (1-based) into the normalized network."""
        current: MultiIndex | None = tuple(int(i) for i in index)
        for step in self._steps[k - 1]:
            current = step(current)
            if current is None:
                return None
        return current

    def compose(self, other: EntryMap) -> EntryMap:
        """Return the map applying self, then other."""
        if other.num_tensors != self.num_tensors:
            raise ValidationError("Entry maps cover different tensor counts", code="entry_map_mismatch")
        return EntryMap([a + b for a, b in zip(self._steps, other._steps, strict=True)])

    def is_identity(self) -> bool:
        """True when no tensor is rewritten."""
        return not any(self._steps)


class NormalizationResult(NamedTuple):
    """Normalized network with its provenance."""

    network: TensorNetwork
    log: tuple[NormalizationStep, ...]
    entry_map: EntryMap

    @property
    def rule_counts(self) -> dict[str, int]:
        """Number of applications per rule."""
        return dict(Counter(step.rule for step in self.log))


def _drop_column(x: SparseTensor, position: int) -> SparseTensor:
    keep = [j for j in range(x.order) if j != position]
    return SparseTensor(tuple(x.shape[j] for j in keep), x.coords[:, keep], x.values)


class _Normalizer:
    """Mutable working state of one normalization."""

    def __init__(self, net: TensorNetwork) -> None:
        classes = UnionFind(range(1, net.num_modes + 1))
        for u, v in net.contractions:
            classes.union(u, v)
        label_of: dict[int, int] = {}
        self.contracted: set[int] = set()
        for members in classes.to_sets():
            label = min(members)
            for u in members:
                label_of[u] = label
            if len(members) > 1:
                self.contracted.add(label)

        degree = Counter(u for pair in net.contractions for u in pair)

        self.tensors = list(net.tensors)
        self.labels = [[label_of[u] for u in net.modes_of(k)] for k in range(1, net.num_tensors + 1)]
        # Contractions each position took part in, used to pick the tensor that owns a shared mode
        self.degrees = [[degree[u] for u in net.modes_of(k)] for k in range(1, net.num_tensors + 1)]
        self.steps: list[list[_EntryStep]] = [[] for _ in net.tensors]
        self.log: list[NormalizationStep] = []
        self.next_label = net.num_modes + 1

    def _record(self, rule: str, tensors: tuple[int, ...], detail: str) -> None:
        step = NormalizationStep(rule, tensors, detail)
        LOGGER.debug("Normalization %s", step)
        self.log.append(step)

    def members(self, label: int) -> list[tuple[int, int]]:
        """Return the (0-based tensor, position) pairs carrying a label."""
        return [(k, p) for k, labels in enumerate(self.labels) for p, lab in enumerate(labels) if lab == label]

    def diagonal(self) -> bool:
        """Collapse one repeated label inside a tensor; sum it out when it is exhausted."""
        for k, labels in enumerate(self.labels):
            seen: dict[int, int] = {}
            for p, label in enumerate(labels):
                if label not in seen:
                    seen[label] = p
                    continue
                keep, drop = seen[label], p
                x = self.tensors[k]
                mask = x.coords[:, keep] == x.coords[:, drop]
                columns = [j for j in range(x.order) if j != drop]
                self.tensors[k] = SparseTensor(
                    tuple(x.shape[j] for j in columns), x.coords[mask][:, columns], x.values[mask]
                )
                labels.pop(drop)
                degrees = self.degrees[k]
                degrees[keep] = max(degrees[keep], degrees.pop(drop))
                self.steps[k].append(_Diagonal(keep, drop))
                self._record(RULE_DIAGONAL, (k + 1,), f"positions {keep + 1} and {drop + 1}")

                if label in self.contracted and len(self.members(label)) == 1:
                    self.tensors[k] = _drop_column(self.tensors[k], keep)
                    labels.pop(keep)
                    degrees.pop(keep)
                    self.contracted.discard(label)
                    self.steps[k].append(_SumOut(keep))
                    self._record(RULE_SUM_OUT, (k + 1,), f"position {keep + 1}")
                return True
        return False

    def fuse(self) -> bool:
        """Merge all parallel contractions between one pair of tensors."""
        shared: dict[tuple[int, int], list[int]] = {}
        for label in sorted(self.contracted):
            members = self.members(label)
            if len(members) == 2 and members[0][0] != members[1][0]:
                shared.setdefault((members[0][0], members[1][0]), []).append(label)

        for (a, b), labels in sorted(shared.items()):
            if len(labels) < 2:
                continue
            for k in (a, b):
                positions = tuple(self.labels[k].index(label) for label in labels)
                x = self.tensors[k]
                sizes = tuple(x.shape[p] for p in positions)
                target = min(positions)
                after = [j for j in range(target + 1, x.order) if j not in positions]
                fused = linear_indices(x.coords[:, list(positions)], sizes).reshape(-1, 1)
                coords = np.hstack([x.coords[:, :target], fused, x.coords[:, after]])
                shape = (*x.shape[:target], math.prod(sizes), *(x.shape[j] for j in after))
                self.tensors[k] = SparseTensor(shape, coords, x.values)
                self.labels[k] = [*self.labels[k][:target], labels[0], *(self.labels[k][j] for j in after)]
                self.degrees[k] = [*self.degrees[k][:target], 1, *(self.degrees[k][j] for j in after)]
                self.steps[k].append(_Fuse(positions, sizes))
            self.contracted.difference_update(labels[1:])
            self._record(RULE_FUSE, (a + 1, b + 1), f"{len(labels)} contractions merged")
            return True
        return False

    def virtual_copy(self) -> bool:
        """Split one mode shared by three or more tensors into diagonal copies."""
        for label in sorted(self.contracted):
            members = self.members(label)
            if len(members) < 3:
                continue
            # Expand the member in the most contractions, lowest (tensor, position) on ties
            hub, position = max(members, key=lambda kp: (self.degrees[kp[0]][kp[1]], -kp[0], -kp[1]))
            others = [member for member in members if member != (hub, position)]
            copies = len(others)
            fresh = list(range(self.next_label, self.next_label + copies))
            self.next_label += copies

            x = self.tensors[hub]
            column = x.coords[:, [position]]
            coords = np.hstack([x.coords[:, :position], np.repeat(column, copies, axis=1), x.coords[:, position + 1 :]])
            shape = (*x.shape[:position], *(x.shape[position],) * copies, *x.shape[position + 1 :])
            self.tensors[hub] = SparseTensor(shape, coords, x.values)
            self.labels[hub] = [*self.labels[hub][:position], *fresh, *self.labels[hub][position + 1 :]]
            self.degrees[hub] = [*self.degrees[hub][:position], *(1,) * copies, *self.degrees[hub][position + 1 :]]
            for new_label, (k, p) in zip(fresh, others, strict=True):
                self.labels[k][p] = new_label
                self.degrees[k][p] = 1
            self.contracted.discard(label)
            self.contracted.update(fresh)
            self.steps[hub].append(_Expand(position, copies))
            self._record(
                RULE_VIRTUAL_COPY,
                (hub + 1, *(k + 1 for k, _ in others)),
                f"position {position + 1} of X{hub + 1} copied {copies} times",
            )
            return True
        return False

    def pad(self) -> bool:
        """Pad every contracted mode to the largest contracted mode size."""
        sizes = [
            x.shape[p]
            for x, labels in zip(self.tensors, self.labels, strict=True)
            for p, label in enumerate(labels)
            if label in self.contracted
        ]
        if not sizes:
            return False
        target = max(sizes)
        changed = False
        for k, (x, labels) in enumerate(zip(self.tensors, self.labels, strict=True)):
            shape = tuple(target if label in self.contracted else n for n, label in zip(x.shape, labels, strict=True))
            if shape != x.shape:
                self.tensors[k] = pad_modes(x, shape)
                self._record(RULE_PAD, (k + 1,), f"shape {x.shape} -> {shape}")
                changed = True
        return changed

    def run(self) -> None:
        """Apply the rules round by round until none fires."""
        changed = True
        while changed:
            changed = False
            while self.diagonal():
                changed = True
            while self.fuse():
                changed = True
            while self.virtual_copy():
                changed = True
            if self.pad():
                changed = True

    def network(self) -> TensorNetwork:
        """Assemble the normalized network with consecutive mode numbers."""
        modes: dict[int, list[int]] = {}
        u = 0
        for labels in self.labels:
            for label in labels:
                u += 1
                modes.setdefault(label, []).append(u)
        pairs = [tuple(modes[label]) for label in sorted(self.contracted)]
        return TensorNetwork.of(self.tensors, pairs)


def normalize_wlog(net: TensorNetwork) -> NormalizationResult:
    """
    Normalize a network without changing its contraction value.

    Args:
        net: A valid network (checked).

    Returns:
        The normalized network, the provenance log of every rule application
        and the entry map from original to normalized entries.
    """
    ensure_valid(net)
    normalizer = _Normalizer(net)
    normalizer.run()
    result = NormalizationResult(normalizer.network(), tuple(normalizer.log), EntryMap(normalizer.steps))
    if result.log:
        LOGGER.debug("Normalized network with %s", result.rule_counts)
    return result

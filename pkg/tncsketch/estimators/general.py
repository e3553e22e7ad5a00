"""
General full-contraction estimator.

Every contraction (u, v) gets an independent count sketch C_u and its
complement C_v = C'_u. Tensor k is sketched with the tensor sketch T_k built
from the sketches of its own modes, x_k = T_k vec(X_k), and the estimate is

    y = e_1^T idft(dft(x_1) o ... o dft(x_p)) = (1/m) sum_i prod_k dft(x_k)_i.

The complement pairs make every contracted index meet its partner with
conjugate phases, so y is unbiased for cyclic and acyclic networks alike.
Sketch state is linear in the tensors, which supports turnstile updates.
"""

from __future__ import annotations

from collections.abc import Sequence
import math
import threading
from typing import NamedTuple

import numpy as np

from tncsketch.const import IMAG_RESIDUE_TOLERANCE, IMAG_RESIDUE_WARNING, LOGGER, SEED_TAG_CONTRACTION
from tncsketch.exceptions import NumericalError, PartialNetworkError, SchemaMismatchError, ValidationError
from tncsketch.fft import dft, is_power_of_two
from tncsketch.hashing import derive_seed
from tncsketch.network import TensorNetwork, ensure_normalized
from tncsketch.sketch import CountSketchSpec, TensorSketchSpec, cs_complement, ts_apply_tensor, ts_hash
from tncsketch.tensor import MultiIndex


class SketchEstimate(NamedTuple):
    """Real estimate with the imaginary residue it discarded."""

    value: float
    imag_residue: float


def contraction_sketches(net: TensorNetwork, m: int, seed: int) -> dict[int, CountSketchSpec]:
    """Assign C_u and C'_u to the two modes of every contraction."""
    sketches: dict[int, CountSketchSpec] = {}
    for e, (u, v) in enumerate(net.contractions):
        spec = CountSketchSpec.sample(m, net.mode_size(u), derive_seed(seed, SEED_TAG_CONTRACTION, e))
        sketches[u] = spec
        sketches[v] = cs_complement(spec)
    return sketches


class GeneralSketchState:
    """
    Bucket vectors x_k of a network schema.

    One writer applies updates; estimation reads a snapshot taken under the
    same lock. Order-0 tensors are kept as exact scalars.

    Attributes:
        shapes: Tensor shapes of the schema.
        contractions: Contraction set of the schema.
        m: Sketch size.
        seed: Seed the sketches were drawn from.
        sketches: Tensor sketch of every tensor of order >= 1.
    """

    def __init__(self, net: TensorNetwork, m: int, seed: int) -> None:
        """Sample the sketches for a normalized full network schema; buckets start at zero."""
        if not is_power_of_two(m):
            raise ValidationError(f"Sketch size {m} is not a power of two", code="invalid_sketch")
        if not net.is_full:
            raise PartialNetworkError(
                f"Full contraction needs every mode contracted, free modes {list(net.free_modes)}",
                details={"free_modes": list(net.free_modes)},
            )
        ensure_normalized(net)
        self.shapes = tuple(x.shape for x in net.tensors)
        self.contractions = net.contractions
        self.m = m
        self.seed = seed
        modes = contraction_sketches(net, m, seed)
        self.sketches: dict[int, TensorSketchSpec] = {
            k: TensorSketchSpec(tuple(modes[u] for u in net.modes_of(k)))
            for k in range(1, net.num_tensors + 1)
            if net.tensors[k - 1].order
        }
        self._buckets = {k: np.zeros(m) for k in self.sketches}
        self._scalars = {k: 0.0 for k in range(1, net.num_tensors + 1) if k not in self.sketches}
        self._lock = threading.Lock()

    @classmethod
    def from_network(cls, net: TensorNetwork, m: int, seed: int) -> GeneralSketchState:
        """Sketch every tensor of a network in one batch pass."""
        state = cls(net, m, seed)
        for k, x in enumerate(net.tensors, start=1):
            if k in state.sketches:
                state._buckets[k] = ts_apply_tensor(state.sketches[k], x)
            else:
                state._scalars[k] = x.value()
        return state

    @property
    def num_tensors(self) -> int:
        """Number of tensors in the schema."""
        return len(self.shapes)

    def matches(self, net: TensorNetwork) -> bool:
        """True when a network has this state's schema."""
        return tuple(x.shape for x in net.tensors) == self.shapes and net.contractions == self.contractions

    def update(self, k: int, index: Sequence[int], delta: float) -> None:
        """Add delta to entry `index` of tensor k."""
        if not 1 <= k <= self.num_tensors:
            raise SchemaMismatchError(f"Tensor {k} outside 1..{self.num_tensors}", details={"tensor": k})
        shape = self.shapes[k - 1]
        key: MultiIndex = tuple(int(i) for i in index)
        if len(key) != len(shape) or any(not 1 <= i <= n for i, n in zip(key, shape, strict=True)):
            raise SchemaMismatchError(
                f"Index {key} does not address tensor {k} of shape {shape}",
                details={"tensor": k, "index": list(key), "shape": list(shape)},
            )
        with self._lock:
            if k in self._scalars:
                self._scalars[k] += float(delta)
                return
            sign, bucket = ts_hash(self.sketches[k], key)
            self._buckets[k][bucket - 1] += float(delta) * sign

    def snapshot(self) -> tuple[dict[int, np.ndarray], dict[int, float]]:
        """Return copies of the bucket vectors and scalars."""
        with self._lock:
            return {k: x.copy() for k, x in self._buckets.items()}, dict(self._scalars)

    def buckets(self, k: int) -> np.ndarray:
        """Return a copy of x_k."""
        buckets, _ = self.snapshot()
        return buckets[k]


def turnstile_update(state: GeneralSketchState, k: int, i: Sequence[int], delta: float) -> None:
    """Apply X_k(i) += delta to a sketch state in O(q_k)."""
    state.update(k, i, delta)


def estimate_from_state(state: GeneralSketchState) -> SketchEstimate:
    """
    Evaluate the estimator on a state snapshot.

    Raises:
        NumericalError: The imaginary residue exceeds 1e-6 (1 + |real|).
    """
    buckets, scalars = state.snapshot()
    scale = math.prod(scalars.values()) if scalars else 1.0
    if not buckets:
        return SketchEstimate(scale, 0.0)

    spectrum = np.ones(state.m, dtype=np.complex128)
    for k in sorted(buckets):
        spectrum *= dft(buckets[k])
    mean = spectrum.mean()
    real, residue = float(mean.real), abs(float(mean.imag))
    if residue > IMAG_RESIDUE_TOLERANCE * (1.0 + abs(real)):
        raise NumericalError(
            f"Imaginary residue {residue:.3e} exceeds tolerance for estimate {real:.6g}",
            code="imaginary_residue",
            details={"real": real, "imag": residue},
        )
    if residue > IMAG_RESIDUE_WARNING * (1.0 + abs(real)):
        LOGGER.warning("Imaginary residue %.3e on estimate %.6g", residue, real)
    return SketchEstimate(real * scale, residue)


def estimate_general_detailed(net: TensorNetwork, m: int, seed: int) -> SketchEstimate:
    """Single-shot general estimate with its imaginary residue."""
    return estimate_from_state(GeneralSketchState.from_network(net, m, seed))


def estimate_general_once(net: TensorNetwork, m: int, seed: int) -> float:
    """
    Single-shot general estimate of a normalized full network.

    Args:
        net: Normalized full network, cyclic or acyclic.
        m: Power-of-two sketch size.
        seed: Seed of all contraction sketches.
    """
    return estimate_general_detailed(net, m, seed).value

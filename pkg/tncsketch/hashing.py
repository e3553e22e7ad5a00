"""
Seeded k-wise independent hash families.

A KWiseHash is a random polynomial of degree k - 1 over the Mersenne prime
2^61 - 1 whose coefficients are drawn from a numpy SeedSequence. Buckets are
``(poly(x) mod m) + 1``; sign hashes use the parity of the polynomial value.

Every seed in a run is derived from one master seed with derive_seed(), so
every sketch matrix is reproducible from (master seed, purpose tag, index).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
import hashlib

import numpy as np

from .const import MERSENNE_PRIME_61, ROW_INDEPENDENCE, SIGN_INDEPENDENCE
from .exceptions import ValidationError

_SEED_MASK = (1 << 63) - 1


def _tag_key(tag: str) -> int:
    """Stable 32-bit key of a purpose tag."""
    return int.from_bytes(hashlib.blake2b(tag.encode("utf-8"), digest_size=4).digest(), "little")


def derive_seed(master: int, tag: str, *index: int) -> int:
    """
    Derive a child seed.

    Args:
        master: Master seed of the run (or of the enclosing object).
        tag: Purpose tag, one of the SEED_TAG_* constants.
        index: Non-negative integers locating the object (repetition, contraction, level...).

    Returns:
        A 63-bit seed, a pure function of the arguments.
    """
    sequence = np.random.SeedSequence(entropy=int(master), spawn_key=(_tag_key(tag), *(int(i) for i in index)))
    return int(sequence.generate_state(1, dtype=np.uint64)[0]) & _SEED_MASK


def _coefficients(k: int, seed: int) -> tuple[int, ...]:
    """Draw k coefficients in [0, p); the leading one is nonzero."""
    state = np.random.SeedSequence(int(seed)).generate_state(k, dtype=np.uint64)
    coefficients = [int(c) % MERSENNE_PRIME_61 for c in state]
    if coefficients[0] == 0:
        coefficients[0] = 1
    return tuple(coefficients)


@dataclass(frozen=True)
class KWiseHash:
    """
    Polynomial hash h: [n] -> [m] from a k-wise independent family.

    Attributes:
        k: Independence (number of coefficients).
        seed: Seed the coefficients were drawn from.
        n: Domain size, inputs are 1..n.
        m: Range size, outputs are 1..m.
        coefficients: Polynomial coefficients, highest degree first.
    """

    k: int
    seed: int
    n: int
    m: int
    coefficients: tuple[int, ...]

    def polynomial(self, x: int) -> int:
        """Evaluate the polynomial at x modulo 2^61 - 1."""
        acc = 0
        for c in self.coefficients:
            acc = (acc * x + c) % MERSENNE_PRIME_61
        return acc

    def check_input(self, x: int) -> int:
        """Return x as an int, raising when it is outside the domain."""
        x = int(x)
        if not 1 <= x <= self.n:
            raise ValidationError(f"Hash input {x} outside domain [1, {self.n}]", code="index_out_of_range")
        return x

    def __call__(self, x: int) -> int:
        """Return the bucket of x in [1, m]."""
        return self.polynomial(self.check_input(x)) % self.m + 1

    def evaluate(self, xs: np.ndarray) -> np.ndarray:
        """
        Evaluate the polynomial on an array of inputs.

        Returns:
            Object array of Python ints; 61-bit products do not fit int64.
        """
        points = np.asarray(xs, dtype=np.int64).astype(object)
        acc = np.zeros(points.shape, dtype=object)
        for c in self.coefficients:
            acc = (acc * points + c) % MERSENNE_PRIME_61
        return acc

    @cached_property
    def values(self) -> np.ndarray:
        """Polynomial values for the whole domain 1..n."""
        return self.evaluate(np.arange(1, self.n + 1))

    @cached_property
    def table(self) -> np.ndarray:
        """Buckets of 1..n as an int64 array (1-based values)."""
        return (self.values % self.m).astype(np.int64) + 1


@dataclass(frozen=True)
class SignHash:
    """4-wise independent sign function s: [n] -> {-1, +1}."""

    hash: KWiseHash

    @property
    def n(self) -> int:
        """Domain size."""
        return self.hash.n

    @property
    def seed(self) -> int:
        """Seed of the underlying polynomial."""
        return self.hash.seed

    def __call__(self, x: int) -> int:
        """Return the sign of x."""
        return 1 - 2 * (self.hash.polynomial(self.hash.check_input(x)) & 1)

    @cached_property
    def table(self) -> np.ndarray:
        """Signs of 1..n as an int64 array."""
        return 1 - 2 * (self.hash.values % 2).astype(np.int64)


def hash_new(k: int, seed: int, n: int, m: int) -> KWiseHash:
    """Create a k-wise independent hash [n] -> [m] from a seed."""
    if k < 1 or n < 1 or m < 1:
        raise ValidationError(f"Invalid hash parameters k={k}, n={n}, m={m}", code="invalid_hash")
    return KWiseHash(k=k, seed=int(seed), n=n, m=m, coefficients=_coefficients(k, seed))


def row_hash_new(seed: int, n: int, m: int) -> KWiseHash:
    """Create the 2-wise independent row hash of a count sketch."""
    return hash_new(ROW_INDEPENDENCE, seed, n, m)


def sign_new(seed: int, n: int) -> SignHash:
    """Create a 4-wise independent sign hash over [n]."""
    return SignHash(hash_new(SIGN_INDEPENDENCE, seed, n, 2))


def sign_eval(h: SignHash, i: int) -> int:
    """Evaluate a sign hash, raising on inputs outside its domain."""
    return h(i)


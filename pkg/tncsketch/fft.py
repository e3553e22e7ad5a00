"""
Discrete Fourier transforms and circular convolution.

All transforms act on power-of-two lengths and use the unnormalized
forward convention of numpy.fft, so idft(dft(x)) = x and
dft(x * y) = dft(x) o dft(y).
"""

from __future__ import annotations

import numpy as np

from .exceptions import ValidationError


def is_power_of_two(m: int) -> bool:
    """Return True for 1, 2, 4, 8, ..."""
    return m >= 1 and m & (m - 1) == 0


def next_power_of_two(value: float) -> int:
    """Return the smallest power of two that is >= value (at least 1)."""
    target = max(1, int(np.ceil(value)))
    return 1 << (target - 1).bit_length()


def _check_length(x: np.ndarray) -> np.ndarray:
    if x.ndim != 1:
        raise ValidationError(f"Expected a vector, got shape {x.shape}", code="invalid_shape")
    if not is_power_of_two(x.shape[0]):
        raise ValidationError(f"Transform length {x.shape[0]} is not a power of two", code="invalid_length")
    return x


def _check_pair(x: np.ndarray, y: np.ndarray) -> None:
    _check_length(x)
    _check_length(y)
    if x.shape != y.shape:
        raise ValidationError(f"Length mismatch: {x.shape[0]} vs {y.shape[0]}", code="length_mismatch")


def dft(x: np.ndarray) -> np.ndarray:
    """Forward transform: (F x)_j = sum_i x_i w^(ij), w = exp(-2 pi i / m)."""
    return np.fft.fft(_check_length(np.asarray(x)))


def idft(x: np.ndarray) -> np.ndarray:
    """Inverse transform, F^-1 = conj(F) / m."""
    return np.fft.ifft(_check_length(np.asarray(x)))


def circ_conv(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Circular convolution (x * y)_j = sum_i x_i y_(j - i mod m), via the convolution theorem."""
    x, y = np.asarray(x), np.asarray(y)
    _check_pair(x, y)
    result = np.fft.ifft(np.fft.fft(x) * np.fft.fft(y))
    return result.real if np.isrealobj(x) and np.isrealobj(y) else result


def circ_xcorr(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """
    Circular cross-correlation (x star y)_j = sum_i x_i y_(i + j mod m).

    Computed as idft(conj(dft x) o dft y); for real x the first component is <x, y>.
    """
    x, y = np.asarray(x), np.asarray(y)
    _check_pair(x, y)
    result = np.fft.ifft(np.conj(np.fft.fft(x)) * np.fft.fft(y))
    return result.real if np.isrealobj(x) and np.isrealobj(y) else result


def circ_conv_direct(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """O(m^2) circular convolution by direct summation."""
    x, y = np.asarray(x), np.asarray(y)
    m = x.shape[0]
    j = np.arange(m)
    return np.array([np.sum(x * y[(k - j) % m]) for k in range(m)])


def circ_xcorr_direct(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """O(m^2) circular cross-correlation by direct summation."""
    x, y = np.asarray(x), np.asarray(y)
    m = x.shape[0]
    i = np.arange(m)
    return np.array([np.sum(np.conj(x) * y[(i + k) % m]) for k in range(m)])

"""Evaluation of sign polynomials on the unit circle.

Power-of-two grids go through a zero-padded FFT; other grid sizes and
off-grid angles go through the Horner kernel. The two paths cross-check
each other in the test suite.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from . import kernels
from .errors import UndersamplingError
from .polynomials import SignPolynomial

TWO_PI = 2.0 * math.pi


@dataclasses.dataclass(frozen=True)
class CircleSamples:
    """Values of a polynomial at the m-th roots of unity, entry j = f(e^{2pi i j/m})."""

    m: int
    values: np.ndarray
    source_degree: int

    def __post_init__(self):
        if self.values.shape != (self.m,):
            raise ValueError("values length must equal m")

    def thetas(self) -> np.ndarray:
        return TWO_PI * np.arange(self.m) / self.m


def is_power_of_two(m: int) -> bool:
    return m >= 1 and (m & (m - 1)) == 0


def next_power_of_two(m: int) -> int:
    return 1 << max(0, (m - 1).bit_length())


def default_grid_size(degree: int, oversample: int = 16) -> int:
    """Oversampled power-of-two grid: oversample*(degree+1) rounded up."""
    return next_power_of_two(max(2, oversample * (degree + 1)))


def evaluate_at_roots(f: SignPolynomial, m: int) -> CircleSamples:
    """Sample f at m equispaced circle points via zero-padded FFT.

    Non power-of-two m falls through to the direct Horner path.
    """
    if m < f.degree + 1:
        raise UndersamplingError(
            f"m={m} undersamples a degree-{f.degree} polynomial")
    if not is_power_of_two(m):
        return evaluate_at_roots_any(f, m)
    padded = np.zeros(m, dtype=np.float64)
    padded[: f.coeffs.size] = f.coeffs
    # values[j] = sum_k c_k e^{+2 pi i jk/m}, i.e. the inverse-DFT convention
    values = np.fft.ifft(padded) * m
    return CircleSamples(m=m, values=values, source_degree=f.degree)


def evaluate_at_roots_any(f: SignPolynomial, m: int) -> CircleSamples:
    """Sample f at m equispaced circle points for arbitrary m (Horner path)."""
    if m < 1:
        raise UndersamplingError("m must be at least 1")
    thetas = TWO_PI * np.arange(m) / m
    values = kernels.horner_eval(f.coeffs, thetas)
    return CircleSamples(m=m, values=values, source_degree=f.degree)


def evaluate_points(f: SignPolynomial, thetas: np.ndarray) -> np.ndarray:
    """f(e^{i theta}) at arbitrary angles."""
    return kernels.horner_eval(f.coeffs, np.asarray(thetas, dtype=np.float64))


def evaluate_point(f: SignPolynomial, theta: float) -> complex:
    """f(e^{i theta}) at a single angle."""
    return complex(evaluate_points(f, np.array([theta]))[0])


def samples_to_rows(samples: CircleSamples):
    """(index, theta, re, im, abs) rows for CSV export."""
    thetas = samples.thetas()
    for j in range(samples.m):
        v = complex(samples.values[j])
        yield j, float(thetas[j]), v.real, v.imag, abs(v)

"""FFT utilities on periodic grids: Poisson solves, Green kernels, smoothing.

The discrete symbols match the stencils module exactly: `compact` refers to
the 1/h^2 (1, -2, 1) second difference, `wide` to the 2h variant.  Keeping
solver and stencil symbols identical is what makes the discrete sub-mean-value
bound in `sup_mean_gap` exact rather than asymptotic.
"""

from __future__ import annotations

import numpy as np


def _axis_freqs(shape):
    return [np.fft.fftfreq(nk) * nk for nk in shape]  # integer wavenumbers


def laplace_symbol(shape, spacing, wide: bool = False) -> np.ndarray:
    """Fourier multiplier of the periodic FD Laplacian (negative semidefinite)."""
    sym = np.zeros(shape, dtype=np.float64)
    freqs = _axis_freqs(shape)
    for ax, (nk, h) in enumerate(zip(shape, spacing)):
        k = freqs[ax]
        if wide:
            lam = -np.sin(2.0 * np.pi * k / nk) ** 2 / (h * h)
        else:
            lam = -(2.0 - 2.0 * np.cos(2.0 * np.pi * k / nk)) / (h * h)
        reshape = [1] * len(shape)
        reshape[ax] = nk
        sym = sym + lam.reshape(reshape)
    return sym


def solve_poisson(rhs: np.ndarray, spacing, wide: bool = False) -> np.ndarray:
    """Solve Lap_h u = rhs - mean(rhs) on the torus, mean-zero gauge."""
    sym = laplace_symbol(rhs.shape, spacing, wide=wide)
    rhat = np.fft.fftn(rhs)
    with np.errstate(divide="ignore", invalid="ignore"):
        uhat = np.where(sym != 0.0, rhat / sym, 0.0)
    uhat.flat[0] = 0.0
    return np.real(np.fft.ifftn(uhat))


def green_kernel(shape, spacing, wide: bool = False) -> np.ndarray:
    """Kernel K with Lap_h K = N delta_0 - 1 and sum(K) = 0.

    Then u - mean(u) = (1/N) * circular_conv(K, Lap_h u) exactly for any
    periodic grid function u (N = number of grid points).
    """
    n_pts = int(np.prod(shape))
    sym = laplace_symbol(shape, spacing, wide=wide)
    rhat = np.full(shape, float(n_pts), dtype=np.complex128)  # FFT of N*delta_0
    with np.errstate(divide="ignore", invalid="ignore"):
        khat = np.where(sym != 0.0, rhat / sym, 0.0)
    khat.flat[0] = 0.0
    return np.real(np.fft.ifftn(khat))


def circular_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.real(np.fft.ifftn(np.fft.fftn(a) * np.fft.fftn(b)))


def gaussian_smooth(u: np.ndarray, sigma: float, spacing) -> np.ndarray:
    """Periodic Gaussian smoothing, exact in Fourier space.

    `sigma` is in physical length units; the Fourier weight exp(-2 pi^2
    sigma^2 |k|^2) integrates the heat kernel at time sigma^2/2.  Weights lie
    in (0, 1], so smoothing is an average and preserves positivity margins on
    flat models.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    shape = u.shape
    weight = np.ones(shape, dtype=np.float64)
    freqs = _axis_freqs(shape)
    for ax, (nk, h) in enumerate(zip(shape, spacing)):
        xi = freqs[ax] / (nk * h)  # physical frequency
        w = np.exp(-2.0 * np.pi**2 * sigma**2 * xi**2)
        reshape = [1] * len(shape)
        reshape[ax] = nk
        weight = weight * w.reshape(reshape)
    return np.real(np.fft.ifftn(np.fft.fftn(u) * weight))

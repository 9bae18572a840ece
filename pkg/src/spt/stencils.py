"""Periodic finite-difference stencils and small-Hermitian-matrix algebra.

Conventions (fixed once for the whole toolkit):

* n=1 transverse dimension: the complex Hessian is the compact five-point
  quantity u_{z zbar} = (u_xx + u_yy)/4 with centered second differences and
  periodic wrap.
* n=2: entries H_{a b} = d_{z_a} d_{zbar_b} u are built by composing centered
  *first* differences, d_{z_a} = (d_{x_a} - i d_{y_a})/2.  The pure entries
  then use the wide (2h) second difference.  With this factorized form the
  Fourier multipliers of all entries share the same first-difference symbol,
  which makes Sum det(H) and the mixed-determinant expansion exact on the
  discrete torus (the quadratic integration-by-parts cancellations hold
  mode by mode, not just to O(h^2)).

Real axes of an n=2 grid are ordered (x1, y1, x2, y2); z_a = x_a + i y_a.
"""

from __future__ import annotations

import numpy as np


def d1(u: np.ndarray, axis: int, h: float) -> np.ndarray:
    """Centered first difference with periodic wrap."""
    return (np.roll(u, -1, axis=axis) - np.roll(u, 1, axis=axis)) / (2.0 * h)


def d2(u: np.ndarray, axis: int, h: float) -> np.ndarray:
    """Compact centered second difference with periodic wrap."""
    return (np.roll(u, -1, axis=axis) - 2.0 * u + np.roll(u, 1, axis=axis)) / (h * h)


def d2_wide(u: np.ndarray, axis: int, h: float) -> np.ndarray:
    """Wide (2h) second difference = centered first difference applied twice."""
    return (np.roll(u, -2, axis=axis) - 2.0 * u + np.roll(u, 2, axis=axis)) / (4.0 * h * h)


def grad_sup(u: np.ndarray, spacing) -> float:
    """Sup of the Euclidean gradient magnitude (centered differences)."""
    g2 = np.zeros_like(u)
    for ax, h in enumerate(spacing):
        g2 += d1(u, ax, h) ** 2
    return float(np.sqrt(g2.max()))


def hessian_n1(u: np.ndarray, h: float) -> np.ndarray:
    """u_{z zbar} for a 2-real-axis grid."""
    return 0.25 * (d2(u, 0, h) + d2(u, 1, h))


def hessian_n2(u: np.ndarray, h: float):
    """Entries (H11, H22, H12) of the 2x2 complex Hessian; H21 = conj(H12)."""
    h11 = 0.25 * (d2_wide(u, 0, h) + d2_wide(u, 1, h))
    h22 = 0.25 * (d2_wide(u, 2, h) + d2_wide(u, 3, h))
    dx1 = d1(u, 0, h)
    dy1 = d1(u, 1, h)
    # H12 = d_{z1} d_{zbar2} u, both factors centered first differences.
    re = 0.25 * (d1(dx1, 2, h) + d1(dy1, 3, h))
    im = 0.25 * (d1(dx1, 3, h) - d1(dy1, 2, h))
    return h11, h22, re + 1j * im


def herm2_det(h11, h22, h12):
    return h11 * h22 - np.abs(h12) ** 2


def herm2_perm(a11, a22, a12, b11, b22, b12):
    """Mixed-determinant pairing: det(A+B) - det(A) - det(B)."""
    return a11 * b22 + a22 * b11 - 2.0 * np.real(a12 * np.conj(b12))


def herm2_eig_min(h11, h22, h12):
    """Smaller eigenvalue of a 2x2 Hermitian matrix field."""
    mid = 0.5 * (h11 + h22)
    rad = np.sqrt(np.maximum(0.25 * (h11 - h22) ** 2 + np.abs(h12) ** 2, 0.0))
    return mid - rad


def herm2_gen_eig_min(a11, a22, a12, b11, b22, b12):
    """Smaller root of det(A - t B) = 0 for Hermitian A and SPD B.

    det(A - t B) = det(A) - t perm(A,B) + t^2 det(B) with the pairing above
    (note perm(A,B) as defined equals the t-linear coefficient with sign).
    """
    da = herm2_det(a11, a22, a12)
    db = herm2_det(b11, b22, b12)
    pm = herm2_perm(a11, a22, a12, b11, b22, b12)
    disc = np.maximum(pm * pm - 4.0 * da * db, 0.0)
    return (pm - np.sqrt(disc)) / (2.0 * db)

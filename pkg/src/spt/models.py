"""Computable Sasaki substrates carrying the reference transverse Kahler data.

Three compute substrates are provided:

* ``TorusModel`` -- the flat complex torus as transverse quotient (n = 1 or
  2), reference density 1, optionally perturbed by a fixed smooth potential
  psi0.  Basic functions are periodic real grids, the Reeb-fiber integration
  is the constant factor ``reeb_length``.
* ``SphereModel`` -- the transverse CP^1 with the Fubini-Study reference,
  realized on two stereographic charts with a partition-of-unity blend on the
  overlap annulus; quadrature by per-chart weights.
* ``WeightedS3Model`` (see :mod:`spt.typei`) -- the weighted contact
  3-sphere, a pointwise-formula verification target rather than a grid
  substrate.

All volume bookkeeping is normalized so the reference volume is 1 by
default (reeb_length = 1 on the torus; calibrated chart weights on CP^1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import stencils as st
from .errors import BadGrid, NonPositiveReference
from .grids import GridSpec

DEFAULT_TORUS1_SAMPLES = 64
DEFAULT_TORUS2_SAMPLES = 24
DEFAULT_SPHERE_SAMPLES = 64

# Quadrature tolerance for the "volume equals 1" invariant.
VOL_TOL = 1e-10


class ModelBase:
    """Shared interface of the grid substrates."""

    kind: str
    n: int
    reeb_length: float

    # --- sampling -----------------------------------------------------
    def sample(self, fn: Callable) -> np.ndarray:
        raise NotImplementedError

    def zeros(self) -> np.ndarray:
        raise NotImplementedError

    # --- calculus -----------------------------------------------------
    def hessian(self, samples: np.ndarray):
        """Complex Hessian of a basic function in the reference frame."""
        raise NotImplementedError

    def mixed_density(self, hu, hv, k: int) -> np.ndarray:
        """Density of omega_u^k wedge omega_v^(n-k) relative to (omega^T)^n."""
        raise NotImplementedError

    def density(self, hess) -> np.ndarray:
        return self.mixed_density(hess, hess, self.n)

    def normalized_min_eig(self, hess) -> np.ndarray:
        """Smallest eigenvalue of (omega^T)^-1 (omega^T + i dd^c u), pointwise."""
        raise NotImplementedError

    # --- quadrature -----------------------------------------------------
    @property
    def weights(self) -> np.ndarray:
        """Reference quadrature weights; sum equals the total volume."""
        raise NotImplementedError

    @property
    def valid_mask(self) -> np.ndarray:
        """Points that participate in sup/min/margin computations."""
        raise NotImplementedError

    def integrate(self, values: np.ndarray, dens: Optional[np.ndarray] = None) -> float:
        w = self.weights
        if dens is not None:
            return float(np.sum(values * dens * w))
        return float(np.sum(values * w))

    @property
    def vol(self) -> float:
        return float(np.sum(self.weights))


def _as_samples(model: ModelBase, data) -> np.ndarray:
    if callable(data):
        return model.sample(data)
    arr = np.asarray(data, dtype=np.float64)
    return arr


@dataclass
class TorusModel(ModelBase):
    """Flat complex torus transverse quotient, n = 1 or 2."""

    n: int
    grid: GridSpec
    psi0: Optional[np.ndarray] = None
    reeb_length: float = 1.0
    kind: str = field(init=False)

    def __post_init__(self):
        if self.n not in (1, 2):
            raise BadGrid(f"torus transverse dimension must be 1 or 2, got {self.n}")
        if self.grid.rank != 2 * self.n:
            raise BadGrid(f"torus n={self.n} needs {2 * self.n} real axes")
        if len(set(self.grid.dims)) != 1 or len(set(self.grid.spacing)) != 1:
            raise BadGrid("torus grids are isotropic (equal dims and spacing)")
        if not all(self.grid.periodic):
            raise BadGrid("torus axes must be periodic")
        if self.reeb_length <= 0:
            raise BadGrid("reeb_length must be positive")
        self.kind = f"torus{self.n}"
        self.h = float(self.grid.spacing[0])
        self._cell = self.grid.cell_volume()
        if self.psi0 is not None:
            self.psi0 = np.asarray(self.psi0, dtype=np.float64)
            if self.psi0.shape != self.grid.shape:
                raise BadGrid("psi0 shape does not match grid")
            self._g0 = self._flat_plus(self.hessian_raw(self.psi0))
        else:
            self._g0 = self._flat_plus(None)
        margin = self._reference_margin()
        if margin <= 0:
            raise NonPositiveReference(f"reference form margin {margin:.3e} <= 0")
        self.reference_margin = margin
        self._weights = self._ref_density() * (self._cell * self.reeb_length)

    # -- reference data -------------------------------------------------
    def _flat_plus(self, hpsi):
        if self.n == 1:
            return 1.0 if hpsi is None else 1.0 + hpsi
        if hpsi is None:
            return (1.0, 1.0, 0.0)
        h11, h22, h12 = hpsi
        return (1.0 + h11, 1.0 + h22, h12)

    def _ref_density(self) -> np.ndarray:
        ones = np.ones(self.grid.shape)
        if self.n == 1:
            return ones * self._g0
        g11, g22, g12 = self._g0
        return ones * st.herm2_det(g11, g22, g12)

    def _reference_margin(self) -> float:
        if self.n == 1:
            return float(np.min(self._g0)) if np.ndim(self._g0) else float(self._g0)
        g11, g22, g12 = self._g0
        if np.ndim(g11) == 0:
            return 1.0
        return float(np.min(st.herm2_eig_min(g11, g22, g12)))

    # -- interface -------------------------------------------------------
    def coordinates(self):
        axes = [np.arange(d) * h for d, h in zip(self.grid.dims, self.grid.spacing)]
        return np.meshgrid(*axes, indexing="ij")

    def sample(self, fn: Callable) -> np.ndarray:
        coords = self.coordinates()
        return np.asarray(fn(*coords), dtype=np.float64)

    def zeros(self) -> np.ndarray:
        return np.zeros(self.grid.shape)

    def hessian_raw(self, samples: np.ndarray):
        if self.n == 1:
            return st.hessian_n1(samples, self.h)
        return st.hessian_n2(samples, self.h)

    def hessian(self, samples: np.ndarray):
        return self.hessian_raw(samples)

    def _g_of(self, hess):
        if self.n == 1:
            return self._g0 + hess
        g11, g22, g12 = self._g0
        h11, h22, h12 = hess
        return (g11 + h11, g22 + h22, g12 + h12)

    def mixed_density(self, hu, hv, k: int) -> np.ndarray:
        if not 0 <= k <= self.n:
            raise ValueError(f"k={k} outside 0..{self.n}")
        gu = self._g_of(hu)
        gv = self._g_of(hv)
        ref = self._ref_density()
        if self.n == 1:
            g = gu if k == 1 else gv
            return (np.ones(self.grid.shape) * g) / ref
        u11, u22, u12 = gu
        v11, v22, v12 = gv
        if k == 2:
            return st.herm2_det(u11, u22, u12) / ref
        if k == 0:
            return st.herm2_det(v11, v22, v12) / ref
        return 0.5 * st.herm2_perm(u11, u22, u12, v11, v22, v12) / ref

    def normalized_min_eig(self, hess) -> np.ndarray:
        if self.n == 1:
            return (self._g0 + hess) / self._g0 * np.ones(self.grid.shape)
        g11, g22, g12 = self._g0
        h11, h22, h12 = hess
        if np.ndim(g11) == 0:
            return st.herm2_eig_min(1.0 + h11, 1.0 + h22, h12)
        return st.herm2_gen_eig_min(g11 + h11, g22 + h22, g12 + h12, g11, g22, g12)

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def valid_mask(self) -> np.ndarray:
        return np.ones(self.grid.shape, dtype=bool)

    def refined(self, factor: int = 2) -> "TorusModel":
        """Same model on a grid refined by `factor` (psi0 resampled by FFT)."""
        dims = tuple(d * factor for d in self.grid.dims)
        grid = GridSpec(dims=dims, spacing=tuple(s / factor for s in self.grid.spacing))
        psi0 = None
        if self.psi0 is not None:
            psi0 = fourier_resample(self.psi0, dims)
        return TorusModel(n=self.n, grid=grid, psi0=psi0, reeb_length=self.reeb_length)


def fourier_resample(samples: np.ndarray, new_dims) -> np.ndarray:
    """Trigonometric interpolation of a periodic grid onto a finer grid."""
    spec = np.fft.fftn(samples) / samples.size
    out = np.zeros(new_dims, dtype=np.complex128)
    idx = []
    for d_old, d_new in zip(samples.shape, new_dims):
        if d_new < d_old:
            raise ValueError("fourier_resample only upsamples")
        k = np.fft.fftfreq(d_old) * d_old
        idx.append(np.where(k >= 0, k, k + d_new).astype(int))
    mesh = np.meshgrid(*idx, indexing="ij")
    out[tuple(mesh)] = spec
    return np.real(np.fft.ifftn(out)) * out.size


# ---------------------------------------------------------------------------
# Fubini-Study sphere on two stereographic charts
# ---------------------------------------------------------------------------

SPHERE_CHART_HALFWIDTH = 1.6
_BLEND_OUTER = np.sqrt(2.0)  # blend finishes at |z| = sqrt(2)


def _smoothstep(t: np.ndarray) -> np.ndarray:
    t = np.clip(t, 0.0, 1.0)
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t))


def sphere_blend(absz: np.ndarray) -> np.ndarray:
    """Partition-of-unity weight of the |z|-chart; the other chart gets 1 - w."""
    ell = np.log(_BLEND_OUTER)
    with np.errstate(divide="ignore"):
        t = (np.log(np.maximum(absz, 1e-300)) + ell) / (2.0 * ell)
    return 1.0 - _smoothstep(t)


@dataclass
class SphereModel(ModelBase):
    """Transverse CP^1 with the Fubini-Study reference, area normalized to 1.

    Basic functions are arrays of shape (2, N, N): values on the north chart
    grid (axis 0 index 0) and the south chart grid (index 1).  South chart
    coordinate w corresponds to the point z = 1/w of the north chart.
    """

    samples_per_axis: int = DEFAULT_SPHERE_SAMPLES
    psi0: Optional[np.ndarray] = None
    reeb_length: float = 1.0
    kind: str = field(init=False, default="sphere")

    def __post_init__(self):
        if self.samples_per_axis < 8:
            raise BadGrid("sphere charts need >= 8 samples per axis")
        n = self.samples_per_axis
        self.n = 1
        a = SPHERE_CHART_HALFWIDTH
        self.h = 2.0 * a / n
        # Cell centers; never hits the chart origin or the axes exactly.
        ax = -a + (np.arange(n) + 0.5) * self.h
        xx, yy = np.meshgrid(ax, ax, indexing="ij")
        self.z = np.stack([xx + 1j * yy, xx + 1j * yy])  # same lattice per chart
        absz = np.abs(self.z[0])
        self.blend = np.stack([sphere_blend(absz), 1.0 - sphere_blend(1.0 / absz)])
        # Reciprocal-lattice blend: weight of chart c at its own grid points.
        self._fs_g = 1.0 / (2.0 * np.pi) / (1.0 + np.abs(self.z) ** 2) ** 2
        if self.psi0 is not None:
            self.psi0 = np.asarray(self.psi0, dtype=np.float64)
            if self.psi0.shape != self.z.shape:
                raise BadGrid("psi0 shape must be (2, N, N)")
            self._g0 = self._fs_g + self.hessian_raw(self.psi0)
        else:
            self._g0 = self._fs_g.copy()
        if float(np.min(self._g0[self.valid_mask] / self._fs_g[self.valid_mask])) <= 0:
            raise NonPositiveReference("reference form not positive on the charts")
        raw = self.blend * 2.0 * self._g0 * self.h * self.h * self.reeb_length
        self.raw_volume = float(np.sum(raw))
        # Calibrate the chart weights so the reference volume is exactly 1*L.
        self._weights = raw * (self.reeb_length / self.raw_volume)
        self.reference_margin = float(
            np.min(self._g0[self.valid_mask] / self._fs_g[self.valid_mask])
        )

    # -- interface -------------------------------------------------------
    def sample(self, fn: Callable) -> np.ndarray:
        """Sample a callable of the north-chart complex coordinate.

        The callable must be defined on all of CP^1 minus at most the poles;
        it receives z for the north chart and 1/w for the south chart, so a
        single global function is sampled consistently on both charts.
        """
        north = np.asarray(fn(self.z[0]), dtype=np.float64)
        south = np.asarray(fn(1.0 / self.z[1]), dtype=np.float64)
        return np.stack([north, south])

    def zeros(self) -> np.ndarray:
        return np.zeros_like(self.blend)

    def hessian_raw(self, samples: np.ndarray) -> np.ndarray:
        out = np.empty_like(samples)
        for c in (0, 1):
            out[c] = st.hessian_n1(samples[c], self.h)
        return out

    def hessian(self, samples: np.ndarray) -> np.ndarray:
        return self.hessian_raw(samples)

    def mixed_density(self, hu, hv, k: int) -> np.ndarray:
        if not 0 <= k <= 1:
            raise ValueError("k outside 0..1")
        h = hu if k == 1 else hv
        return (self._g0 + h) / self._g0

    def normalized_min_eig(self, hess) -> np.ndarray:
        return (self._g0 + hess) / self._g0

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def valid_mask(self) -> np.ndarray:
        # Interior of the blend support plus one stencil cell of padding.
        pad = 2 * self.h
        inner = np.abs(self.z[0]) <= _BLEND_OUTER + pad
        outer = 1.0 / np.abs(self.z[1]) >= 1.0 / (_BLEND_OUTER + pad)
        return np.stack([inner, outer])

    def stencil_safe_mask(self) -> np.ndarray:
        """Points whose full FD stencil stays inside the chart square."""
        n = self.samples_per_axis
        m = np.zeros((n, n), dtype=bool)
        m[2:-2, 2:-2] = True
        return np.stack([m, m])

    def transfer_from_other_chart(self, samples: np.ndarray, to_chart: int) -> np.ndarray:
        """Values of a basic function at chart `to_chart` points, interpolated
        from the other chart's grid (bilinear).  Used by the overlap penalty
        of the blended-chart solvers."""
        src = samples[1 - to_chart]
        z_here = self.z[to_chart]
        w = 1.0 / z_here  # coordinate of the same point in the other chart
        a = SPHERE_CHART_HALFWIDTH
        fx = (np.real(w) + a) / self.h - 0.5
        fy = (np.imag(w) + a) / self.h - 0.5
        n = self.samples_per_axis
        i0 = np.clip(np.floor(fx).astype(int), 0, n - 2)
        j0 = np.clip(np.floor(fy).astype(int), 0, n - 2)
        tx = np.clip(fx - i0, 0.0, 1.0)
        ty = np.clip(fy - j0, 0.0, 1.0)
        v00 = src[i0, j0]
        v10 = src[i0 + 1, j0]
        v01 = src[i0, j0 + 1]
        v11 = src[i0 + 1, j0 + 1]
        return (1 - tx) * (1 - ty) * v00 + tx * (1 - ty) * v10 + (1 - tx) * ty * v01 + tx * ty * v11

    def overlap_mask(self, chart: int) -> np.ndarray:
        """Points of `chart` lying well inside the blend annulus."""
        absz = np.abs(self.z[chart])
        r = absz if chart == 0 else 1.0 / absz
        return (r > 1.0 / 1.3) & (r < 1.3)


# ---------------------------------------------------------------------------
# Factory
# ---------------------------------------------------------------------------

def build_model(
    kind: str,
    grid: Optional[GridSpec] = None,
    psi0=None,
    reeb_length: float = 1.0,
    samples: Optional[int] = None,
    weights=(1.0, 1.0),
):
    """Build a Sasaki substrate.

    kind: 'torus1', 'torus2', 'sphere' or 'weighted-s3'.
    psi0 may be an array matching the model layout or a callable of the
    model coordinates.  Deterministic for identical inputs.
    """
    kind = kind.lower()
    if kind in ("torus1", "torus2"):
        n = 1 if kind == "torus1" else 2
        if grid is None:
            default = DEFAULT_TORUS1_SAMPLES if n == 1 else DEFAULT_TORUS2_SAMPLES
            grid = GridSpec.torus(n, samples or default)
        probe = TorusModel(n=n, grid=grid, psi0=None, reeb_length=reeb_length)
        if psi0 is not None and callable(psi0):
            psi0 = probe.sample(psi0)
        return TorusModel(n=n, grid=grid, psi0=psi0, reeb_length=reeb_length)
    if kind == "sphere":
        nsamp = samples or DEFAULT_SPHERE_SAMPLES
        probe = SphereModel(samples_per_axis=nsamp, reeb_length=reeb_length)
        if psi0 is not None and callable(psi0):
            psi0 = probe.sample(psi0)
        return SphereModel(samples_per_axis=nsamp, psi0=psi0, reeb_length=reeb_length)
    if kind in ("weighted-s3", "weighteds3", "s3"):
        from .typei import WeightedS3Model

        return WeightedS3Model(a1=float(weights[0]), a2=float(weights[1]))
    raise BadGrid(f"unknown model kind {kind!r}")

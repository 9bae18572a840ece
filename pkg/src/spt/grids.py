"""Grid specification and the SPTG/CSV grid file formats.

SPTG binary layout: magic bytes ``SPTG``, u32 version (=1), u32 rank,
rank x u32 dims, then row-major (C order) 64-bit little-endian floats.
All integers little-endian.

CSV alternative: first line ``# dims=d1,d2,...``, then one value per line
in row-major order.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import BadGrid

_MAGIC = b"SPTG"
_VERSION = 1

MIN_DIM = 8


@dataclass(frozen=True)
class GridSpec:
    """Per-real-axis sample counts, spacings and periodicity flags."""

    dims: tuple[int, ...]
    spacing: tuple[float, ...]
    periodic: tuple[bool, ...] = field(default=())

    def __post_init__(self):
        if not self.dims:
            raise BadGrid("empty dims")
        if any(int(d) < MIN_DIM for d in self.dims):
            raise BadGrid(f"every axis needs >= {MIN_DIM} samples, got {self.dims}")
        if len(self.spacing) != len(self.dims):
            raise BadGrid("spacing/dims rank mismatch")
        if any(s <= 0 for s in self.spacing):
            raise BadGrid(f"spacing must be positive, got {self.spacing}")
        if not self.periodic:
            object.__setattr__(self, "periodic", (True,) * len(self.dims))
        elif len(self.periodic) != len(self.dims):
            raise BadGrid("periodic/dims rank mismatch")

    @property
    def rank(self) -> int:
        return len(self.dims)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(self.dims)

    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    @staticmethod
    def torus(n: int, samples: int) -> "GridSpec":
        """Unit-torus grid with 2n real axes and `samples` points per axis."""
        dims = (samples,) * (2 * n)
        return GridSpec(dims=dims, spacing=(1.0 / samples,) * (2 * n))


def write_sptg(path, array: np.ndarray) -> None:
    a = np.ascontiguousarray(array, dtype="<f8")
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<II", _VERSION, a.ndim))
        fh.write(struct.pack("<" + "I" * a.ndim, *a.shape))
        fh.write(a.tobytes(order="C"))


def read_sptg(path) -> np.ndarray:
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _MAGIC:
            raise BadGrid(f"bad magic {magic!r}, expected {_MAGIC!r}")
        version, rank = struct.unpack("<II", fh.read(8))
        if version != _VERSION:
            raise BadGrid(f"unsupported SPTG version {version}")
        dims = struct.unpack("<" + "I" * rank, fh.read(4 * rank))
        count = int(np.prod(dims))
        data = np.frombuffer(fh.read(8 * count), dtype="<f8", count=count)
        if data.size != count:
            raise BadGrid("truncated SPTG payload")
    return data.reshape(dims).astype(np.float64)


def write_grid_csv(path, array: np.ndarray) -> None:
    a = np.asarray(array, dtype=np.float64)
    with open(path, "w") as fh:
        fh.write("# dims=" + ",".join(str(d) for d in a.shape) + "\n")
        for v in a.ravel(order="C"):
            fh.write(repr(float(v)) + "\n")


def read_grid_csv(path) -> np.ndarray:
    with open(path) as fh:
        header = fh.readline().strip()
        if not header.startswith("# dims="):
            raise BadGrid("missing '# dims=' header")
        dims = tuple(int(t) for t in header[len("# dims=") :].split(","))
        values = [float(line) for line in fh if line.strip()]
    count = int(np.prod(dims))
    if len(values) != count:
        raise BadGrid(f"expected {count} values, got {len(values)}")
    return np.asarray(values, dtype=np.float64).reshape(dims)

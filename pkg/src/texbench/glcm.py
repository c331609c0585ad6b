"""Gray-level co-occurrence matrices and their directional energies."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import BadLevels, EmptyGlcm, OffsetTooLarge, ZeroOffset
from .raster import GrayImage

# (drow, dcol) at distance 1; feature order is fixed
DIRECTIONS = {
    0: (0, 1),
    45: (-1, 1),
    90: (-1, 0),
    135: (-1, -1),
}


@dataclass(frozen=True, eq=False)
class IndexedImage:
    bins: np.ndarray  # (height, width), 1-based bin indices
    levels: int

    @property
    def width(self) -> int:
        return self.bins.shape[1]

    @property
    def height(self) -> int:
        return self.bins.shape[0]


@dataclass(frozen=True, eq=False)
class Glcm:
    counts: np.ndarray  # counts[i-1, j-1] for bins i, j
    offset: tuple[int, int]
    symmetric: bool

    @property
    def levels(self) -> int:
        return self.counts.shape[0]


def quantize(img: GrayImage, levels: int = 8) -> IndexedImage:
    """Linear binning of [0, 255] into ``levels`` 1-based bins."""
    if not 2 <= levels <= 256:
        raise BadLevels(f"levels must be in [2, 256], got {levels}")
    v = img.pixels.astype(np.int64)
    bins = np.minimum(levels, v * levels // 256 + 1)
    return IndexedImage(bins, levels)


def compute_glcm(idx: IndexedImage, offset: tuple[int, int], symmetric: bool = False) -> Glcm:
    """Count bin pairs (idx[p, q], idx[p + drow, q + dcol]) over in-bounds positions.

    ``symmetric`` also accumulates the reversed offset, i.e. adds the transpose.
    """
    dr, dc = int(offset[0]), int(offset[1])
    if dr == 0 and dc == 0:
        raise ZeroOffset("offset (0, 0) pairs every pixel with itself")
    if abs(dr) >= idx.height or abs(dc) >= idx.width:
        raise OffsetTooLarge(f"offset {(dr, dc)} leaves no pairs in a {idx.width}x{idx.height} image")
    zero_based = np.ascontiguousarray(idx.bins - 1, dtype=np.int64)
    counts = _kernels.cooccur(zero_based, dr, dc, idx.levels)
    if symmetric:
        counts = counts + counts.T
    return Glcm(counts, (dr, dc), symmetric)


def glcm_energy(g: Glcm, normalize: bool = True) -> float:
    total = int(g.counts.sum())
    if total <= 0:
        raise EmptyGlcm("GLCM has no pairs")
    if normalize:
        p = g.counts / total
        return float(np.sum(p * p))
    c = g.counts.astype(np.int64)
    return float(np.sum(c * c))


def quantization_lut(levels: int) -> np.ndarray:
    """0-based bin for every 8-bit value (``quantize`` minus one)."""
    if not 2 <= levels <= 256:
        raise BadLevels(f"levels must be in [2, 256], got {levels}")
    v = np.arange(256, dtype=np.int64)
    return np.minimum(levels, v * levels // 256 + 1) - 1


def directional_glcms(img: GrayImage, levels: int = 8) -> list[Glcm]:
    """Symmetric distance-1 GLCMs in DIRECTIONS order, counted in one sweep."""
    counts = _kernels.cooccur4(img.pixels, quantization_lut(levels), levels)
    return [Glcm(c + c.T, off, True) for c, off in zip(counts, DIRECTIONS.values())]


def glcm_features(img: GrayImage, levels: int = 8, normalize: bool = True):
    """Symmetric distance-1 GLCM energies at 0, 45, 90 and 135 degrees."""
    from .classify import FeatureVector

    return FeatureVector("glcm-4", [glcm_energy(g, normalize) for g in directional_glcms(img, levels)])

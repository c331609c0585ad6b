"""Input perturbations used by the robustness experiments."""
from __future__ import annotations

import math

import numpy as np

from . import _kernels
from .errors import BadDensity
from .raster import GrayImage


def salt_pepper(img: GrayImage, density: float, seed: int) -> GrayImage:
    """Set exactly ``round(density * N)`` distinct pixels to 0 or 255.

    One SplitMix64 stream seeded with ``seed`` supplies 2k outputs: the first
    k drive a partial Fisher-Yates shuffle of the flat pixel indices (slot i
    swaps with ``i + draw % (N - i)``), the next k pick the value of each
    selected pixel from their top bit (1 -> 255, 0 -> 0).
    """
    if not 0.0 <= density <= 1.0 or math.isnan(density):
        raise BadDensity(f"density must be in [0, 1], got {density}")
    n = img.width * img.height
    k = int(math.floor(density * n + 0.5))
    if k == 0:
        return img
    draws = _kernels.splitmix64_block(seed & 0xFFFFFFFFFFFFFFFF, 2 * k)
    positions = _kernels.partial_shuffle(draws[:k], n, k)
    values = np.where((draws[k:] >> np.uint64(63)) == 1, 255, 0).astype(np.uint8)
    flat = img.pixels.ravel().copy()
    flat[positions] = values
    return GrayImage(flat.reshape(img.shape))


def equalization_lut(img: GrayImage) -> np.ndarray:
    """256-entry CDF remap table; ``None`` for single-level images."""
    hist = np.bincount(img.pixels.ravel(), minlength=256).astype(np.int64)
    cdf = np.cumsum(hist)
    n = int(cdf[-1])
    cdf_min = int(cdf[np.flatnonzero(hist)[0]])
    if n == cdf_min:
        return None
    span = n - cdf_min
    # integer half-up rounding of 255 * (cdf - cdf_min) / span
    num = 255 * (cdf - cdf_min)
    lut = (2 * num + span) // (2 * span)
    return np.clip(lut, 0, 255).astype(np.uint8)


def hist_equalize(img: GrayImage) -> GrayImage:
    lut = equalization_lut(img)
    if lut is None:
        return img
    return GrayImage(lut[img.pixels])


def rotate(img: GrayImage, degrees: float, interp: str = "nearest") -> GrayImage:
    """Counter-clockwise rotation about the centre, same-size crop, zero fill."""
    if interp != "nearest":
        raise ValueError(f"unsupported interpolation {interp!r}")
    turns = degrees % 360.0
    # exact trig at quarter turns so 90-degree multiples permute pixels exactly
    exact = {0.0: (1.0, 0.0), 90.0: (0.0, 1.0), 180.0: (-1.0, 0.0), 270.0: (0.0, -1.0)}
    if turns in exact:
        cos_t, sin_t = exact[turns]
    else:
        rad = math.radians(degrees)
        cos_t, sin_t = math.cos(rad), math.sin(rad)
    if cos_t == 1.0 and sin_t == 0.0:
        return img
    return GrayImage(_kernels.rotate_nearest(img.pixels, cos_t, sin_t))

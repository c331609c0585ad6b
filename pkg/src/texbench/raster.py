"""Grayscale rasters, binary PGM I/O and the synthetic texture corpus."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from . import _kernels
from .errors import BadKind, BadMagic, BadSize, MalformedHeader, Truncated, UnsupportedMaxval


class GrayImage:
    """Immutable 8-bit grayscale raster stored row-major as an (height, width) array."""

    __slots__ = ("_pixels",)

    def __init__(self, pixels):
        arr = np.asarray(pixels)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"expected a non-empty 2-D pixel array, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            if arr.size and (arr.min() < 0 or arr.max() > 255):
                raise ValueError("pixel intensities must lie in [0, 255]")
            if np.issubdtype(arr.dtype, np.floating) and not np.array_equal(arr, np.round(arr)):
                raise ValueError("pixel intensities must be integers")
            arr = arr.astype(np.uint8)
        arr = np.array(arr, dtype=np.uint8, order="C", copy=True)
        arr.flags.writeable = False
        self._pixels = arr

    @classmethod
    def from_flat(cls, width: int, height: int, pixels: Sequence[int]) -> "GrayImage":
        flat = np.asarray(pixels)
        if flat.size != width * height:
            raise ValueError(f"{flat.size} pixels for a {width}x{height} image")
        return cls(flat.reshape(height, width))

    @property
    def pixels(self) -> np.ndarray:
        return self._pixels

    @property
    def width(self) -> int:
        return self._pixels.shape[1]

    @property
    def height(self) -> int:
        return self._pixels.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self._pixels.shape

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._pixels, other._pixels)

    def __hash__(self):
        return hash((self.shape, self._pixels.tobytes()))

    def __repr__(self):
        return f"GrayImage({self.width}x{self.height})"


# --------------------------------------------------------------------------
# PGM

def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    # skips whitespace and whole comment lines, returns the next token
    while True:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos:pos + 1] == b"#":
            nl = data.find(b"\n", pos)
            pos = len(data) if nl < 0 else nl + 1
            continue
        break
    start = pos
    while pos < len(data) and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
        pos += 1
    return data[start:pos], pos


def load_pgm(data: bytes) -> GrayImage:
    """Parse a binary (P5, maxval 255) PGM."""
    data = bytes(data)
    if data[:2] != b"P5":
        raise BadMagic(f"expected 'P5', got {data[:2]!r}")
    pos = 2
    fields = []
    for name in ("width", "height", "maxval"):
        tok, pos = _next_token(data, pos)
        if not tok.isdigit():
            raise MalformedHeader(f"{name} is not a positive integer: {tok!r}")
        fields.append(int(tok))
    width, height, maxval = fields
    if width <= 0 or height <= 0:
        raise MalformedHeader(f"non-positive dimensions {width}x{height}")
    if maxval != 255:
        raise UnsupportedMaxval(f"maxval {maxval} (only 255 is supported)")
    if pos >= len(data) or not data[pos:pos + 1].isspace():
        raise MalformedHeader("missing whitespace after maxval")
    pos += 1
    n = width * height
    payload = data[pos:pos + n]
    if len(payload) < n:
        raise Truncated(f"payload has {len(payload)} bytes, expected {n}")
    return GrayImage(np.frombuffer(payload, dtype=np.uint8).reshape(height, width))


def save_pgm(img: GrayImage) -> bytes:
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.pixels.tobytes()


def read_pgm(path) -> GrayImage:
    with open(path, "rb") as fh:
        return load_pgm(fh.read())


def write_pgm(path, img: GrayImage) -> None:
    with open(path, "wb") as fh:
        fh.write(save_pgm(img))


# --------------------------------------------------------------------------
# texture kinds

@dataclass(frozen=True)
class Checkerboard:
    period: int

    @property
    def descriptor(self) -> str:
        return f"checkerboard:{self.period}"


@dataclass(frozen=True)
class Grating:
    frequency: float
    orientation: float = 0.0  # degrees

    @property
    def descriptor(self) -> str:
        return f"grating:{_num(self.frequency)}:{_num(self.orientation)}"


@dataclass(frozen=True)
class Noise:
    seed: int

    @property
    def descriptor(self) -> str:
        return f"noise:{self.seed}"


@dataclass(frozen=True)
class Constant:
    value: int

    @property
    def descriptor(self) -> str:
        return f"constant:{self.value}"


TextureKind = Union[Checkerboard, Grating, Noise, Constant]


def _num(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def parse_kind(text: str) -> TextureKind:
    """Parse ``kind:param[:param]`` (e.g. ``checkerboard:8``, ``grating:4:30``)."""
    name, *params = text.strip().split(":")
    try:
        if name == "checkerboard" and len(params) == 1:
            kind = Checkerboard(int(params[0]))
            if kind.period < 1:
                raise BadKind(f"checkerboard period must be >= 1: {text!r}")
            return kind
        if name == "grating" and len(params) in (1, 2):
            return Grating(float(params[0]), float(params[1]) if len(params) == 2 else 0.0)
        if name == "noise" and len(params) == 1:
            return Noise(int(params[0]))
        if name == "constant" and len(params) == 1:
            value = int(params[0])
            if not 0 <= value <= 255:
                raise BadKind(f"constant value outside [0, 255]: {text!r}")
            return Constant(value)
    except ValueError as exc:
        if isinstance(exc, BadKind):
            raise
        raise BadKind(f"bad texture descriptor {text!r}: {exc}") from None
    raise BadKind(f"unknown texture descriptor {text!r}")


def _round_half_up(x: np.ndarray) -> np.ndarray:
    return np.floor(x + 0.5)


def synth_texture(kind: TextureKind, size: int, seed: int = 0) -> GrayImage:
    """Deterministic size x size texture.

    Only ``Noise`` consumes randomness: its SplitMix64 stream starts from
    ``kind.seed XOR seed`` and each pixel is one output modulo 256.
    """
    if isinstance(kind, str):
        kind = parse_kind(kind)
    if size < 8 or size & (size - 1):
        raise BadSize(f"size must be a power of two >= 8, got {size}")
    r, c = np.mgrid[0:size, 0:size]
    if isinstance(kind, Checkerboard):
        even = ((r // kind.period + c // kind.period) % 2) == 0
        px = np.where(even, 255, 0)
    elif isinstance(kind, Grating):
        theta = math.radians(kind.orientation)
        phase = 2 * math.pi * kind.frequency * (c * math.cos(theta) + r * math.sin(theta)) / size
        px = _round_half_up(127.5 * (1 + np.sin(phase)))
    elif isinstance(kind, Noise):
        state = (int(kind.seed) ^ int(seed)) & 0xFFFFFFFFFFFFFFFF
        px = (_kernels.splitmix64_block(state, size * size) % np.uint64(256)).reshape(size, size)
    elif isinstance(kind, Constant):
        px = np.full((size, size), kind.value)
    else:
        raise BadKind(f"unsupported texture kind {kind!r}")
    return GrayImage(np.asarray(px).astype(np.uint8))


# --------------------------------------------------------------------------
# corpus

DEFAULT_KINDS = (
    # periods off the dyadic grid: aligned power-of-two checkerboards have no
    # cH/cV energy at any Haar level and would collapse onto one feature vector
    "checkerboard:3",
    "checkerboard:6",
    "checkerboard:12",
    "grating:4:0",
    "grating:8:45",
    "grating:16:90",
    "grating:32:135",
    "grating:8:30",
    "grating:24:60",
    "noise:1",
)


@dataclass(frozen=True)
class CorpusSpec:
    kinds: tuple = field(default_factory=lambda: tuple(parse_kind(k) for k in DEFAULT_KINDS))
    size: int = 256
    seed: int = 0

    def __post_init__(self):
        kinds = tuple(parse_kind(k) if isinstance(k, str) else k for k in self.kinds)
        object.__setattr__(self, "kinds", kinds)
        if self.size < 8 or self.size & (self.size - 1):
            raise BadSize(f"corpus size must be a power of two >= 8, got {self.size}")
        if not 0 <= self.seed < 2**64:
            raise BadSize(f"seed must be an unsigned 64-bit integer, got {self.seed}")

    @classmethod
    def parse(cls, text: str, size: int = 256, seed: int = 0) -> "CorpusSpec":
        """``default`` or a comma-separated list of texture descriptors."""
        if text.strip() == "default":
            return cls(size=size, seed=seed)
        return cls(tuple(parse_kind(t) for t in text.split(",") if t.strip()), size, seed)


def build_corpus(spec: CorpusSpec) -> list[tuple[str, GrayImage]]:
    """Labelled corpus; each label is the texture's descriptor string."""
    return [(k.descriptor, synth_texture(k, spec.size, spec.seed)) for k in spec.kinds]

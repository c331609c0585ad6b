"""Feature vectors, the labelled feature database and the minimum-distance classifier."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence, Union

import numpy as np

from . import wavelet
from .errors import BadDatabase, EmptyInput, EmptySubband, SchemeMismatch
from .raster import GrayImage

SCHEME_LENGTHS = {"wavelet-7": 7, "glcm-4": 4}
ENERGY_MODES = ("mean_abs", "mean_signed", "mean_square")


class FeatureVector:
    __slots__ = ("scheme", "values")

    def __init__(self, scheme: str, values):
        if scheme not in SCHEME_LENGTHS:
            raise SchemeMismatch(f"unknown scheme {scheme!r}")
        arr = np.array(values, dtype=np.float64)
        if arr.shape != (SCHEME_LENGTHS[scheme],):
            raise SchemeMismatch(f"{scheme} needs {SCHEME_LENGTHS[scheme]} values, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("feature values must be finite")
        arr.flags.writeable = False
        self.scheme = scheme
        self.values = arr

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, FeatureVector):
            return NotImplemented
        return self.scheme == other.scheme and np.array_equal(self.values, other.values)

    def __repr__(self):
        return f"FeatureVector({self.scheme!r}, {self.values.tolist()})"


def subband_energy(s, mode: str = "mean_abs") -> float:
    """Mean of the coefficients (``mean_signed``), their magnitudes or squares."""
    c = np.asarray(getattr(s, "coeffs", s), dtype=np.float64)
    if c.size == 0:
        raise EmptySubband("subband has no coefficients")
    if mode == "mean_abs":
        return float(np.abs(c).sum() / c.size)
    if mode == "mean_signed":
        return float(c.sum() / c.size)
    if mode == "mean_square":
        return float((c * c).sum() / c.size)
    raise ValueError(f"unknown energy mode {mode!r}; choose from {ENERGY_MODES}")


def wavelet_features(img: GrayImage, filt="haar", mode: str = "mean_abs") -> FeatureVector:
    """[E(cH1), E(cV1), E(cH2), E(cV2), E(cH3), E(cV3), E(cA3)] from a 3-level decomposition."""
    dec = wavelet.decompose(img, filt, levels=3)
    values = []
    for level in dec.levels:
        values.append(subband_energy(level.cH, mode))
        values.append(subband_energy(level.cV, mode))
    values.append(subband_energy(dec.final_cA, mode))
    return FeatureVector("wavelet-7", values)


def euclidean(a: FeatureVector, b: FeatureVector) -> float:
    if a.scheme != b.scheme or len(a) != len(b):
        raise SchemeMismatch(f"cannot compare {a.scheme} with {b.scheme}")
    return math.hypot(*(x - y for x, y in zip(a.values.tolist(), b.values.tolist())))


# --------------------------------------------------------------------------
# extraction parameters

@dataclass(frozen=True)
class Extractor:
    """One feature pipeline with its parameters fixed."""

    scheme: str = "wavelet-7"
    wavelet: str = "haar"
    mode: str = "mean_abs"
    levels: int = 8
    normalize: bool = True

    def __call__(self, img: GrayImage) -> FeatureVector:
        if self.scheme == "wavelet-7":
            return wavelet_features(img, self.wavelet, self.mode)
        if self.scheme == "glcm-4":
            from .glcm import glcm_features
            return glcm_features(img, self.levels, self.normalize)
        raise SchemeMismatch(f"unknown scheme {self.scheme!r}")

    @classmethod
    def for_method(cls, method: str, **params) -> "Extractor":
        """``haar``/``db4``/``sym8`` select a wavelet pipeline, ``glcm`` the co-occurrence one."""
        if method == "glcm":
            return cls(scheme="glcm-4", **params)
        return cls(scheme="wavelet-7", wavelet=wavelet.get_filter(method).name, **params)


# --------------------------------------------------------------------------
# database

Threshold = Union[float, str]


@dataclass(frozen=True, eq=False)
class FeatureDatabase:
    scheme: str
    labels: tuple[str, ...]
    matrix: np.ndarray  # (rows, n_features)
    threshold: Threshold = "auto"

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.float64).reshape(len(self.labels), -1)
        if self.scheme not in SCHEME_LENGTHS or m.shape[1] != SCHEME_LENGTHS[self.scheme]:
            raise SchemeMismatch(f"matrix shape {m.shape} does not fit scheme {self.scheme!r}")
        if not self.labels:
            raise EmptyInput("database has no rows")
        if any(not label for label in self.labels):
            raise BadDatabase("labels must be non-empty")
        m.flags.writeable = False
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "matrix", m)

    @property
    def rows(self) -> list[tuple[str, FeatureVector]]:
        return [(lab, FeatureVector(self.scheme, v)) for lab, v in zip(self.labels, self.matrix)]

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        if not isinstance(other, FeatureDatabase):
            return NotImplemented
        return (self.scheme == other.scheme and self.labels == other.labels
                and np.array_equal(self.matrix, other.matrix))

    def resolved_threshold(self, threshold: Optional[Threshold] = None) -> float:
        t = self.threshold if threshold is None else threshold
        if t == "auto":
            return auto_threshold(self)
        t = float(t)
        if t < 0 or math.isnan(t):
            raise ValueError(f"threshold must be non-negative, got {t}")
        return t

    # CSV: header ``scheme,label,f1..fn``; 17 significant digits round-trip doubles
    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        n = self.matrix.shape[1]
        w.writerow(["scheme", "label"] + [f"f{i + 1}" for i in range(n)])
        for label, row in zip(self.labels, self.matrix):
            w.writerow([self.scheme, label] + [format(float(x), ".17g") for x in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, threshold: Threshold = "auto") -> "FeatureDatabase":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0][:2] != ["scheme", "label"]:
            raise BadDatabase("missing 'scheme,label,f1..fn' header")
        n = len(rows[0]) - 2
        if rows[0][2:] != [f"f{i + 1}" for i in range(n)]:
            raise BadDatabase(f"bad feature columns in header: {rows[0][2:]}")
        body = [r for r in rows[1:] if r]
        if not body:
            raise EmptyInput("database file has no rows")
        schemes = {r[0] for r in body}
        if len(schemes) != 1:
            raise BadDatabase(f"mixed schemes in one database: {sorted(schemes)}")
        try:
            matrix = [[float(x) for x in r[2:]] for r in body]
        except ValueError as exc:
            raise BadDatabase(f"non-numeric feature value: {exc}") from None
        if any(len(r) != n for r in matrix):
            raise BadDatabase("ragged feature rows")
        return cls(schemes.pop(), tuple(r[1] for r in body), np.array(matrix), threshold)


def auto_threshold(db: FeatureDatabase) -> float:
    """3x the largest nearest-same-label distance; inf if no label repeats."""
    worst = None
    labels = np.array(db.labels, dtype=object)
    for i, label in enumerate(db.labels):
        same = np.flatnonzero(labels == label)
        same = same[same != i]
        if same.size == 0:
            continue
        d = np.sqrt(((db.matrix[same] - db.matrix[i]) ** 2).sum(axis=1)).min()
        worst = d if worst is None else max(worst, d)
    return math.inf if worst is None else 3.0 * float(worst)


def build_database(items: Sequence[tuple[str, GrayImage]], extractor: Extractor,
                   threshold: Threshold = "auto") -> FeatureDatabase:
    if not items:
        raise EmptyInput("no labelled images")
    vectors = [extractor(img) for _, img in items]
    db = FeatureDatabase(extractor.scheme, tuple(lab for lab, _ in items),
                         np.array([v.values for v in vectors]), threshold)
    if threshold == "auto":
        object.__setattr__(db, "threshold", auto_threshold(db))
    return db


class Match(NamedTuple):
    label: Optional[str]  # None means Unknown
    distance: float
    index: int  # row of the nearest vector, reported even when rejected

    @property
    def known(self) -> bool:
        return self.label is not None


def distances(v: FeatureVector, db: FeatureDatabase) -> np.ndarray:
    if v.scheme != db.scheme:
        raise SchemeMismatch(f"query is {v.scheme}, database is {db.scheme}")
    return np.sqrt(((db.matrix - v.values) ** 2).sum(axis=1))


def classify(v: FeatureVector, db: FeatureDatabase, threshold: Optional[Threshold] = None) -> Match:
    """Nearest database row by Euclidean distance; Unknown beyond the threshold.

    ``threshold=None`` uses the database's own threshold.  Ties go to the
    lowest row index.
    """
    d = distances(v, db)
    i = int(np.argmin(d))  # first minimum
    t = db.resolved_threshold(threshold)
    dmin = float(d[i])
    return Match(db.labels[i] if dmin <= t else None, dmin, i)


def classify_many(vectors: Iterable[FeatureVector], db: FeatureDatabase,
                  threshold: Optional[Threshold] = None) -> list[Match]:
    return [classify(v, db, threshold) for v in vectors]

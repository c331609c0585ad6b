"""Timing and accuracy harness reproducing the layout of the comparison tables."""
from __future__ import annotations

import csv
import io
import os
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import perturb
from .classify import Extractor, FeatureDatabase, build_database, classify
from .errors import BadConfig, EmptyReport
from .raster import CorpusSpec, GrayImage, build_corpus

METHODS = ("haar", "db4", "sym8", "glcm")
SEED_ENV = "TEXBENCH_SEED"


@dataclass(frozen=True)
class Perturbation:
    family: str  # none | noise | equalize | rotate
    param: Optional[float] = None

    def __str__(self):
        if self.param is None:
            return self.family
        return f"{self.family}({self.param:g})"

    def apply(self, img: GrayImage, seed: int) -> GrayImage:
        if self.family == "none":
            return img
        if self.family == "noise":
            return perturb.salt_pepper(img, self.param, seed)
        if self.family == "equalize":
            return perturb.hist_equalize(img)
        if self.family == "rotate":
            return perturb.rotate(img, self.param)
        raise BadConfig(f"unknown perturbation family {self.family!r}")


@dataclass(frozen=True)
class BenchConfig:
    corpus: CorpusSpec = field(default_factory=CorpusSpec)
    methods: tuple[str, ...] = METHODS
    noise_densities: tuple[float, ...] = (0.02, 0.05, 0.09)
    rotations: tuple[float, ...] = (2.0, 4.0, 30.0)
    equalize: bool = True
    repeats: int = 5
    seed: int = 7

    def __post_init__(self):
        if self.repeats < 3 or self.repeats % 2 == 0:
            raise BadConfig(f"repeats must be odd and >= 3, got {self.repeats}")
        unknown = set(self.methods) - set(METHODS)
        if unknown or not self.methods:
            raise BadConfig(f"methods must be a non-empty subset of {METHODS}, got {self.methods}")
        if not 0 <= self.seed < 2**64:
            raise BadConfig(f"seed must be an unsigned 64-bit integer, got {self.seed}")

    def perturbations(self) -> list[Perturbation]:
        cells = [Perturbation("none")]
        cells += [Perturbation("noise", d) for d in self.noise_densities]
        if self.equalize:
            cells.append(Perturbation("equalize"))
        cells += [Perturbation("rotate", r) for r in self.rotations]
        return cells


def resolve_seed(seed: int) -> int:
    """``TEXBENCH_SEED`` wins over the configured seed when set."""
    env = os.environ.get(SEED_ENV)
    return int(env) if env not in (None, "") else seed


@dataclass(frozen=True)
class BenchRow:
    method: str
    perturbation: str
    median_time_s: float
    accuracy_pct: float
    n_images: int


@dataclass
class BenchReport:
    rows: list[BenchRow]
    databases: dict[str, FeatureDatabase] = field(default_factory=dict)

    def cell(self, method: str, perturbation: str) -> BenchRow:
        for row in self.rows:
            if row.method == method and row.perturbation == perturbation:
                return row
        raise KeyError((method, perturbation))


def time_extraction(extract: Callable[[GrayImage], object], images: Sequence[GrayImage],
                    repeats: int = 5, clock=time.perf_counter) -> float:
    """Median over repeats of the mean per-image extraction time, in seconds.

    One untimed call on the first image runs before the clock starts so
    JIT compilation is never billed to a method.
    """
    if repeats < 3 or repeats % 2 == 0:
        raise BadConfig(f"repeats must be odd and >= 3, got {repeats}")
    if not images:
        raise BadConfig("no images to time")
    extract(images[0])
    per_repeat = []
    for _ in range(repeats):
        t0 = clock()
        for img in images:
            extract(img)
        per_repeat.append((clock() - t0) / len(images))
    return statistics.median(per_repeat)


def accuracy_pct(truth: Sequence[str], predicted: Sequence[Optional[str]]) -> float:
    """Percentage of predictions equal to the true label; Unknown (None) counts as wrong."""
    if len(truth) != len(predicted) or not truth:
        raise BadConfig("need equally many, and at least one, labels and predictions")
    return 100.0 * sum(t == p for t, p in zip(truth, predicted)) / len(truth)


def accuracy_experiment(config: BenchConfig, extractors: Optional[dict[str, Extractor]] = None) -> BenchReport:
    """Build one database per method from the clean corpus, then score every perturbation cell.

    Noise for corpus image ``i`` is seeded with ``seed + i``.  Rows come out
    method-major in config order.
    """
    seed = resolve_seed(config.seed)
    corpus = build_corpus(config.corpus)
    labels = [lab for lab, _ in corpus]
    if len(set(labels)) < 2:
        raise BadConfig("corpus needs at least two distinct labels")
    clean = [img for _, img in corpus]
    cells = config.perturbations()
    perturbed = {
        str(cell): [cell.apply(img, (seed + i) & 0xFFFFFFFFFFFFFFFF) for i, img in enumerate(clean)]
        for cell in cells
    }
    extractors = extractors or {}
    rows, databases = [], {}
    for method in config.methods:
        extract = extractors.get(method) or Extractor.for_method(method)
        db = build_database(corpus, extract, threshold="auto")
        databases[method] = db
        for cell in cells:
            images = perturbed[str(cell)]
            predicted = [classify(extract(img), db).label for img in images]
            rows.append(BenchRow(
                method=method,
                perturbation=str(cell),
                median_time_s=time_extraction(extract, images, config.repeats),
                accuracy_pct=accuracy_pct(labels, predicted),
                n_images=len(images),
            ))
    return BenchReport(rows, databases)


# --------------------------------------------------------------------------
# report emission

CSV_HEADER = ("method", "perturbation", "median_time_s", "accuracy_pct", "n_images")


def _family(perturbation: str) -> str:
    return perturbation.split("(", 1)[0]


def emit_report(report: BenchReport, fmt: str = "csv") -> bytes:
    if not report.rows:
        raise EmptyReport("report has no rows")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in report.rows:
            w.writerow([r.method, r.perturbation, f"{r.median_time_s:.4f}",
                        f"{r.accuracy_pct:.2f}", r.n_images])
        return buf.getvalue().encode()
    if fmt == "markdown":
        return _markdown(report).encode()
    raise ValueError(f"unknown report format {fmt!r}")


_TITLES = {
    "none": "Original image",
    "noise": "Salt & pepper noise",
    "equalize": "Histogram equalised",
    "rotate": "Rotated image",
}


def _markdown(report: BenchReport) -> str:
    methods = list(dict.fromkeys(r.method for r in report.rows))
    perturbations = list(dict.fromkeys(r.perturbation for r in report.rows))
    families = list(dict.fromkeys(_family(p) for p in perturbations))
    lookup = {(r.method, r.perturbation): r for r in report.rows}
    out = []
    for fam in families:
        out.append(f"### {_TITLES.get(fam, fam)}\n")
        head = ["Perturbation"]
        for m in methods:
            head += [f"{m} time (s)", f"{m} accuracy (%)"]
        out.append("| " + " | ".join(head) + " |")
        out.append("|" + "---|" * len(head))
        for p in (p for p in perturbations if _family(p) == fam):
            cells = [p]
            for m in methods:
                r = lookup.get((m, p))
                cells += ["-", "-"] if r is None else [f"{r.median_time_s:.4f}", f"{r.accuracy_pct:.2f}"]
            out.append("| " + " | ".join(cells) + " |")
        out.append("")
    n = report.rows[0].n_images
    out.append(f"_{n} images per cell; time is the median per-image feature-extraction time._\n")
    return "\n".join(out)

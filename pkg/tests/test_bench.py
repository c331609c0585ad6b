import numpy as np
import pytest

from texbench.bench import (BenchConfig, BenchReport, BenchRow, Perturbation, accuracy_experiment, accuracy_pct,
                            emit_report, resolve_seed, time_extraction)
from texbench.classify import Extractor
from texbench.errors import BadConfig, EmptyReport
from texbench.raster import CorpusSpec, GrayImage, build_corpus

SMALL = CorpusSpec(("checkerboard:3", "grating:4:0", "grating:8:45", "noise:1"), 32)


def small_config(**kw):
    kw.setdefault("corpus", SMALL)
    kw.setdefault("repeats", 3)
    return BenchConfig(**kw)


class FakeClock:
    def __init__(self, ticks):
        self.ticks = iter(ticks)

    def __call__(self):
        return next(self.ticks)


def test_time_extraction_median_of_repeats():
    clock = FakeClock([0.0, 1.0, 10.0, 12.0, 20.0, 120.0])
    t = time_extraction(lambda img: None, [GrayImage([[1]])], repeats=3, clock=clock)
    assert t == 2.0


def test_time_extraction_divides_by_image_count():
    clock = FakeClock([0.0, 4.0, 0.0, 4.0, 0.0, 4.0])
    assert time_extraction(lambda img: None, [GrayImage([[1]])] * 4, repeats=3, clock=clock) == 1.0


def test_time_extraction_positive():
    imgs = [img for _, img in build_corpus(SMALL)]
    assert time_extraction(Extractor.for_method("haar"), imgs, repeats=3) > 0


@pytest.mark.parametrize("repeats", [1, 2, 4])
def test_time_extraction_repeats_validated(repeats):
    with pytest.raises(BadConfig):
        time_extraction(lambda img: None, [GrayImage([[1]])], repeats=repeats)


def test_accuracy_pct():
    assert accuracy_pct(["a", "b", "c", "d"], ["a", "b", "c", "x"]) == 75.0
    assert accuracy_pct(["a", "b"], ["b", None]) == 0.0
    assert accuracy_pct(["a"], ["a"]) == 100.0


def test_config_defaults_mirror_tables():
    c = BenchConfig()
    assert c.noise_densities == (0.02, 0.05, 0.09)
    assert c.rotations == (2.0, 4.0, 30.0)
    assert c.methods == ("haar", "db4", "sym8", "glcm")
    assert [str(p) for p in c.perturbations()] == [
        "none", "noise(0.02)", "noise(0.05)", "noise(0.09)", "equalize", "rotate(2)", "rotate(4)", "rotate(30)"]


@pytest.mark.parametrize("kw", [{"repeats": 4}, {"repeats": 1}, {"methods": ("haar", "wavelet")}, {"methods": ()}])
def test_config_validation(kw):
    with pytest.raises(BadConfig):
        BenchConfig(**kw)


def test_experiment_structure_and_none_cell(monkeypatch):
    monkeypatch.delenv("TEXBENCH_SEED", raising=False)
    report = accuracy_experiment(small_config(methods=("haar", "glcm")))
    cells = small_config().perturbations()
    assert [(r.method, r.perturbation) for r in report.rows] == [
        (m, str(c)) for m in ("haar", "glcm") for c in cells]
    for row in report.rows:
        assert 0 <= row.accuracy_pct <= 100
        assert row.n_images == 4
        assert row.median_time_s > 0
    assert report.cell("haar", "none").accuracy_pct == 100.0
    assert report.cell("glcm", "none").accuracy_pct == 100.0
    assert set(report.databases) == {"haar", "glcm"}


def test_experiment_needs_two_labels():
    with pytest.raises(BadConfig):
        accuracy_experiment(small_config(corpus=CorpusSpec(("noise:1",), 32)))


def test_experiment_deterministic(monkeypatch):
    monkeypatch.delenv("TEXBENCH_SEED", raising=False)
    a = accuracy_experiment(small_config(methods=("db4", "glcm")))
    b = accuracy_experiment(small_config(methods=("db4", "glcm")))
    assert [r.accuracy_pct for r in a.rows] == [r.accuracy_pct for r in b.rows]
    assert all(a.databases[m].to_csv() == b.databases[m].to_csv() for m in a.databases)


def test_seed_env_override(monkeypatch):
    monkeypatch.setenv("TEXBENCH_SEED", "123")
    assert resolve_seed(7) == 123
    monkeypatch.delenv("TEXBENCH_SEED")
    assert resolve_seed(7) == 7


def test_perturbation_apply():
    img = GrayImage(np.full((8, 8), 100))
    assert Perturbation("none").apply(img, 0) is img
    assert set(np.unique(Perturbation("noise", 1.0).apply(img, 3).pixels)) <= {0, 255}
    assert Perturbation("rotate", 90).apply(img, 0) == img


def test_emit_csv_fixture():
    report = BenchReport([BenchRow("haar", "none", 0.1805, 100.0, 10)])
    lines = emit_report(report, "csv").decode().splitlines()
    assert lines == ["method,perturbation,median_time_s,accuracy_pct,n_images", "haar,none,0.1805,100.00,10"]


def test_emit_empty():
    with pytest.raises(EmptyReport):
        emit_report(BenchReport([]), "csv")
    with pytest.raises(EmptyReport):
        emit_report(BenchReport([]), "markdown")


def test_emit_markdown_one_table_per_family():
    report = BenchReport([
        BenchRow("haar", "noise(0.02)", 0.18, 78.0, 10),
        BenchRow("haar", "noise(0.05)", 0.18, 70.0, 10),
        BenchRow("glcm", "noise(0.02)", 4.3, 70.0, 10),
        BenchRow("haar", "rotate(2)", 0.19, 73.3, 10),
        BenchRow("glcm", "rotate(2)", 0.71, 2.5, 10),
    ])
    md = emit_report(report, "markdown").decode()
    assert md.count("| Perturbation |") == 2
    assert "| noise(0.02) | 0.1800 | 78.00 | 4.3000 | 70.00 |" in md
    assert "| noise(0.05) | 0.1800 | 70.00 | - | - |" in md
    assert "| rotate(2) | 0.1900 | 73.30 | 0.7100 | 2.50 |" in md

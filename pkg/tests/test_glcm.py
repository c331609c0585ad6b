import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra import numpy as hnp

from texbench.errors import BadLevels, EmptyGlcm, OffsetTooLarge, ZeroOffset
from texbench.glcm import (DIRECTIONS, Glcm, IndexedImage, compute_glcm, directional_glcms, glcm_energy,
                           glcm_features, quantize)
from texbench.raster import Checkerboard, GrayImage, synth_texture

# the 4-by-5 worked example from the graycomatrix documentation
DOC_IMAGE = np.array([
    [1, 1, 5, 6, 8],
    [2, 3, 5, 7, 1],
    [4, 5, 7, 1, 2],
    [8, 5, 1, 2, 5],
])


def brute_glcm(bins, levels, dr, dc, symmetric):
    h, w = bins.shape
    C = np.zeros((levels, levels), dtype=np.int64)
    for p in range(h):
        for q in range(w):
            for sr, sc in ([(dr, dc), (-dr, -dc)] if symmetric else [(dr, dc)]):
                if 0 <= p + sr < h and 0 <= q + sc < w:
                    C[bins[p, q] - 1, bins[p + sr, q + sc] - 1] += 1
    return C


@pytest.mark.parametrize("v, b", [(0, 1), (255, 8), (32, 2), (31, 1), (224, 8), (223, 7)])
def test_quantize_8(v, b):
    assert quantize(GrayImage([[v]]), 8).bins[0, 0] == b


def test_quantize_256_identity():
    img = GrayImage(np.arange(256).reshape(16, 16))
    assert np.array_equal(quantize(img, 256).bins, img.pixels.astype(int) + 1)


def test_quantize_2_threshold():
    assert quantize(GrayImage([[127, 128]]), 2).bins.tolist() == [[1, 2]]


@pytest.mark.parametrize("levels", [1, 0, 257])
def test_quantize_bad_levels(levels):
    with pytest.raises(BadLevels):
        quantize(GrayImage([[1]]), levels)


def test_compute_glcm_2x2():
    idx = IndexedImage(np.array([[1, 1], [2, 2]]), 2)
    g = compute_glcm(idx, (0, 1), symmetric=False)
    assert g.counts.tolist() == [[1, 0], [0, 1]]
    gs = compute_glcm(idx, (0, 1), symmetric=True)
    assert gs.counts.tolist() == [[2, 0], [0, 2]]


def test_documentation_example_counts():
    g = compute_glcm(IndexedImage(DOC_IMAGE, 8), (0, 1), symmetric=False)
    assert g.counts[0, 0] == 1  # one horizontal (1,1) pair
    assert g.counts[0, 1] == 2  # two horizontal (1,2) pairs
    assert np.array_equal(g.counts, brute_glcm(DOC_IMAGE, 8, 0, 1, False))
    assert g.counts.sum() == 4 * 4


def test_zero_offset():
    with pytest.raises(ZeroOffset):
        compute_glcm(IndexedImage(DOC_IMAGE, 8), (0, 0))


@pytest.mark.parametrize("off", [(4, 0), (0, 5), (-4, 1), (0, -7)])
def test_offset_too_large(off):
    with pytest.raises(OffsetTooLarge):
        compute_glcm(IndexedImage(DOC_IMAGE, 8), off)


@st.composite
def indexed_with_offset(draw):
    levels = draw(st.integers(2, 6))
    h = draw(st.integers(1, 8))
    w = draw(st.integers(1, 8))
    bins = draw(hnp.arrays(np.int64, (h, w), elements=st.integers(1, levels)))
    offsets = [(dr, dc) for dr in range(-h + 1, h) for dc in range(-w + 1, w) if (dr, dc) != (0, 0)]
    if not offsets:
        bins = np.concatenate([bins, bins], axis=1)
        w *= 2
        offsets = [(0, 1)]
    return IndexedImage(bins, levels), draw(st.sampled_from(offsets))


@given(indexed_with_offset(), st.booleans())
def test_glcm_matches_brute_force(case, symmetric):
    idx, (dr, dc) = case
    g = compute_glcm(idx, (dr, dc), symmetric)
    assert np.array_equal(g.counts, brute_glcm(idx.bins, idx.levels, dr, dc, symmetric))
    pairs = (idx.height - abs(dr)) * (idx.width - abs(dc))
    assert g.counts.sum() == pairs * (2 if symmetric else 1)
    assert np.all(g.counts >= 0)
    if symmetric:
        assert np.array_equal(g.counts, g.counts.T)


def test_energy_examples():
    g = Glcm(np.array([[1, 0], [0, 1]]), (0, 1), False)
    assert glcm_energy(g) == pytest.approx(0.5)
    assert glcm_energy(g, normalize=False) == 2


def test_energy_empty():
    with pytest.raises(EmptyGlcm):
        glcm_energy(Glcm(np.zeros((2, 2), dtype=int), (0, 1), False))


@given(indexed_with_offset())
def test_energy_bounds(case):
    idx, off = case
    g = compute_glcm(idx, off, True)
    e = glcm_energy(g)
    assert 0 < e <= 1 + 1e-15
    single_cell = np.count_nonzero(g.counts) == 1
    assert (abs(e - 1.0) < 1e-15) == single_cell


def test_features_constant_image():
    fv = glcm_features(GrayImage(np.full((8, 8), 77)))
    assert fv.scheme == "glcm-4"
    assert fv.values.tolist() == [1.0, 1.0, 1.0, 1.0]


def test_features_vertical_stripes():
    px = np.tile([0, 255], (8, 4))  # columns alternate between bins 1 and 8
    gs = directional_glcms(GrayImage(px))
    assert gs[0].counts[0, 7] == gs[0].counts[7, 0] == 8 * 7
    assert gs[0].counts[0, 0] == gs[0].counts[7, 7] == 0
    assert gs[2].counts[0, 0] == gs[2].counts[7, 7] == 7 * 4 * 2
    assert gs[2].counts[0, 7] == 0
    fv = glcm_features(GrayImage(px))
    # 0 deg puts its mass on two off-diagonal cells, 90 deg on two diagonal
    # cells; equal halves give equal energy even though the matrices differ
    assert not np.array_equal(gs[0].counts, gs[2].counts)
    assert fv.values[0] == fv.values[2] == 0.5


def test_features_unequal_stripes():
    px = np.tile([0, 0, 255], (8, 3))[:, :8]
    fv = glcm_features(GrayImage(px))
    assert fv.values[0] != fv.values[2]


def test_features_checkerboard_period_1():
    fv = glcm_features(synth_texture(Checkerboard(1), 8))
    assert fv.values[0] == fv.values[2]
    assert fv.values[1] == fv.values[3]


def test_directional_sweep_matches_per_offset(random_image):
    img = random_image(13, 17)
    idx = quantize(img, 8)
    for g, off in zip(directional_glcms(img, 8), DIRECTIONS.values()):
        assert np.array_equal(g.counts, compute_glcm(idx, off, symmetric=True).counts)


@given(hnp.arrays(np.uint8, st.tuples(st.integers(2, 10), st.integers(2, 10))))
def test_transpose_and_flip_permute_directions(px):
    f = glcm_features(GrayImage(px)).values
    t = glcm_features(GrayImage(px.T)).values
    flip = glcm_features(GrayImage(px[:, ::-1])).values
    # transposition mirrors across the main diagonal: 0<->90, 45 and 135 fixed
    assert np.allclose(t, f[[2, 1, 0, 3]], rtol=0, atol=1e-15)
    # a horizontal flip exchanges the two diagonals
    assert np.allclose(flip, f[[0, 3, 2, 1]], rtol=0, atol=1e-15)

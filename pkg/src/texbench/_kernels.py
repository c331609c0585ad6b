"""Inner loops, each with a numba kernel and a numpy twin.

The numpy twins accumulate in the same order as the loops (tap by tap), so
both backends agree to the last bit on the wavelet passes and exactly on the
integer kernels.
"""
import numpy as np

from ._backend import njit, select

GOLDEN_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


# --------------------------------------------------------------------------
# SplitMix64

@njit(cache=True)
def _splitmix_nb(state, n):
    out = np.empty(n, dtype=np.uint64)
    s = np.uint64(state)
    for i in range(n):
        s = s + np.uint64(0x9E3779B97F4A7C15)
        z = s
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        out[i] = z ^ (z >> np.uint64(31))
    return out


def _splitmix_np(state, n):
    with np.errstate(over="ignore"):
        z = np.uint64(state) + GOLDEN_GAMMA * np.arange(1, n + 1, dtype=np.uint64)
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


# --------------------------------------------------------------------------
# partial Fisher-Yates: first k slots of a shuffled arange(n)

@njit(cache=True)
def _partial_shuffle_nb(draws, n, k):
    perm = np.arange(n)
    for i in range(k):
        j = i + np.int64(draws[i] % np.uint64(n - i))
        t = perm[i]
        perm[i] = perm[j]
        perm[j] = t
    return perm[:k].copy()


def _partial_shuffle_np(draws, n, k):
    if k == 0:
        return np.empty(0, dtype=np.int64)
    spans = np.arange(n, n - k, -1, dtype=np.uint64)
    jumps = (draws[:k] % spans).astype(np.int64) + np.arange(k)
    perm = np.arange(n)
    for i, j in enumerate(jumps.tolist()):
        perm[i], perm[j] = perm[j], perm[i]
    return perm[:k].copy()


# --------------------------------------------------------------------------
# periodised analysis / synthesis along the last axis

@njit(cache=True)
def _analysis_rows_nb(x, lo, hi):
    m, n = x.shape
    half = n // 2
    taps = lo.shape[0]
    a = np.empty((m, half))
    d = np.empty((m, half))
    for r in range(m):
        for i in range(half):
            sa = 0.0
            sd = 0.0
            for k in range(taps):
                v = x[r, (2 * i + k) % n]
                sa += lo[k] * v
                sd += hi[k] * v
            a[r, i] = sa
            d[r, i] = sd
    return a, d


def _analysis_rows_np(x, lo, hi):
    n = x.shape[1]
    base = 2 * np.arange(n // 2)
    a = np.zeros((x.shape[0], n // 2))
    d = np.zeros_like(a)
    for k in range(lo.shape[0]):
        v = x[:, (base + k) % n]
        a += lo[k] * v
        d += hi[k] * v
    return a, d


@njit(cache=True)
def _synthesis_rows_nb(a, d, lo, hi):
    m, half = a.shape
    n = 2 * half
    taps = lo.shape[0]
    out = np.zeros((m, n))
    for r in range(m):
        for i in range(half):
            for k in range(taps):
                out[r, (2 * i + k) % n] += lo[k] * a[r, i] + hi[k] * d[r, i]
    return out


def _synthesis_rows_np(a, d, lo, hi):
    half = a.shape[1]
    n = 2 * half
    base = 2 * np.arange(half)
    out = np.zeros((a.shape[0], n))
    # for fixed k the targets (2i + k) mod n are distinct, so fancy-index += is safe
    for k in range(lo.shape[0]):
        out[:, (base + k) % n] += lo[k] * a + hi[k] * d
    return out


# --------------------------------------------------------------------------
# co-occurrence counting, 0-based bins

@njit(cache=True)
def _cooccur_nb(idx, dr, dc, levels):
    h, w = idx.shape
    counts = np.zeros((levels, levels), dtype=np.int64)
    r0 = max(0, -dr)
    r1 = min(h, h - dr)
    c0 = max(0, -dc)
    c1 = min(w, w - dc)
    for r in range(r0, r1):
        for c in range(c0, c1):
            counts[idx[r, c], idx[r + dr, c + dc]] += 1
    return counts


def _cooccur_np(idx, dr, dc, levels):
    h, w = idx.shape
    r0, r1 = max(0, -dr), min(h, h - dr)
    c0, c1 = max(0, -dc), min(w, w - dc)
    src = idx[r0:r1, c0:c1].astype(np.int64)
    dst = idx[r0 + dr:r1 + dr, c0 + dc:c1 + dc]
    flat = np.bincount((src * levels + dst).ravel(), minlength=levels * levels)
    return flat.reshape(levels, levels).astype(np.int64)


# --------------------------------------------------------------------------
# nearest-neighbour inverse-mapped rotation, zero fill

@njit(cache=True)
def _rotate_nb(img, cos_t, sin_t):
    h, w = img.shape
    cy = (h - 1) / 2.0
    cx = (w - 1) / 2.0
    out = np.zeros_like(img)
    for r in range(h):
        y = r - cy
        for c in range(w):
            x = c - cx
            sx = np.floor(cx + x * cos_t - y * sin_t + 0.5)
            sy = np.floor(cy + x * sin_t + y * cos_t + 0.5)
            if 0 <= sx < w and 0 <= sy < h:
                out[r, c] = img[int(sy), int(sx)]
    return out


def _rotate_np(img, cos_t, sin_t):
    h, w = img.shape
    cy, cx = (h - 1) / 2.0, (w - 1) / 2.0
    y, x = np.mgrid[0:h, 0:w].astype(np.float64)
    y -= cy
    x -= cx
    sx = np.floor(cx + x * cos_t - y * sin_t + 0.5)
    sy = np.floor(cy + x * sin_t + y * cos_t + 0.5)
    ok = (sx >= 0) & (sx < w) & (sy >= 0) & (sy < h)
    out = np.zeros_like(img)
    out[ok] = img[sy[ok].astype(np.int64), sx[ok].astype(np.int64)]
    return out




# --------------------------------------------------------------------------
# one separable 2-D analysis level.  Row pass gathers through a precomputed
# wrap table; column pass forms each output row as a tap-weighted sum of
# input rows so every inner loop walks contiguous memory.

def wrap_table(n, taps):
    return np.arange(n + taps) % n


@njit(cache=True)
def _analysis2d_nb(x, lo, hi, rwrap, cwrap):
    h, w = x.shape
    hh2, hw2 = h // 2, w // 2
    taps = lo.shape[0]
    row_lo = np.empty((h, hw2))
    row_hi = np.empty((h, hw2))
    for r in range(h):
        for i in range(hw2):
            sa = 0.0
            sd = 0.0
            for k in range(taps):
                v = x[r, cwrap[2 * i + k]]
                sa += lo[k] * v
                sd += hi[k] * v
            row_lo[r, i] = sa
            row_hi[r, i] = sd
    ll = np.zeros((hh2, hw2))
    lh = np.zeros((hh2, hw2))
    hl = np.zeros((hh2, hw2))
    hhb = np.zeros((hh2, hw2))
    for i in range(hh2):
        for k in range(taps):
            src = rwrap[2 * i + k]
            cl = lo[k]
            ch = hi[k]
            for j in range(hw2):
                a = row_lo[src, j]
                d = row_hi[src, j]
                ll[i, j] += cl * a
                lh[i, j] += ch * a
                hl[i, j] += cl * d
                hhb[i, j] += ch * d
    return ll, lh, hl, hhb


def _analysis2d_np(x, lo, hi, rwrap, cwrap):
    h, w = x.shape
    cbase = 2 * np.arange(w // 2)
    rbase = 2 * np.arange(h // 2)
    row_lo = np.zeros((h, w // 2))
    row_hi = np.zeros((h, w // 2))
    for k in range(lo.shape[0]):
        v = x[:, cwrap[cbase + k]]
        row_lo += lo[k] * v
        row_hi += hi[k] * v
    ll = np.zeros((h // 2, w // 2))
    lh = np.zeros_like(ll)
    hl = np.zeros_like(ll)
    hhb = np.zeros_like(ll)
    for k in range(lo.shape[0]):
        rows = rwrap[rbase + k]
        a = row_lo[rows]
        d = row_hi[rows]
        ll += lo[k] * a
        lh += hi[k] * a
        hl += lo[k] * d
        hhb += hi[k] * d
    return ll, lh, hl, hhb


# --------------------------------------------------------------------------
# the four distance-1 directions in one sweep; quantisation through a LUT.
# Output layout: counts[d] for d = 0 deg (0,1), 45 (-1,1), 90 (-1,0), 135 (-1,-1).

@njit(cache=True)
def _cooccur4_nb(px, lut, levels):
    h, w = px.shape
    counts = np.zeros((4, levels, levels), dtype=np.int64)
    prev = np.empty(w, dtype=np.int64)
    cur = np.empty(w, dtype=np.int64)
    for c in range(w):
        cur[c] = lut[px[0, c]]
    for c in range(w - 1):
        counts[0, cur[c], cur[c + 1]] += 1
    for r in range(1, h):
        for c in range(w):
            prev[c] = cur[c]
            cur[c] = lut[px[r, c]]
        for c in range(w):
            a = cur[c]
            counts[2, a, prev[c]] += 1
            if c + 1 < w:
                counts[0, a, cur[c + 1]] += 1
                counts[1, a, prev[c + 1]] += 1
            if c > 0:
                counts[3, a, prev[c - 1]] += 1
    return counts


def _cooccur4_np(px, lut, levels):
    idx = lut[px]
    offsets = ((0, 1), (-1, 1), (-1, 0), (-1, -1))
    return np.stack([_cooccur_np(idx, dr, dc, levels) for dr, dc in offsets])


analysis2d = select(_analysis2d_nb, _analysis2d_np)
cooccur4 = select(_cooccur4_nb, _cooccur4_np)
_splitmix = select(_splitmix_nb, _splitmix_np)


def splitmix64_block(state, n):
    """``n`` consecutive SplitMix64 outputs starting from ``state`` (any u64)."""
    return _splitmix(np.uint64(state), n)


partial_shuffle = select(_partial_shuffle_nb, _partial_shuffle_np)
analysis_rows = select(_analysis_rows_nb, _analysis_rows_np)
synthesis_rows = select(_synthesis_rows_nb, _synthesis_rows_np)
cooccur = select(_cooccur_nb, _cooccur_np)
rotate_nearest = select(_rotate_nb, _rotate_np)

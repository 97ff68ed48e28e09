"""Numpy implementation of the per-pixel hot kernels.

This is the fallback lane used when the compiled extension
(``hsisteg._kernels_c``) is unavailable. Both lanes implement the same
contract with the same arithmetic, in the same operation order, so their
quantized outputs agree; ``tests/test_kernels.py`` checks that agreement.

Kernel contract (shared with the compiled lane):

* ``rgb_to_hsi_planes(rgb)``: ``(n, 3) uint8`` -> ``(n, 3) uint16`` rows of
  (hue degrees [0, 359], saturation percent [0, 100], intensity [0, 255]).
* ``hsi_to_rgb_planes(hsi)``: inverse mapping, out-of-gamut values clamped.
* ``enforce_lsb_bits(rgb, bits)``: minimal per-pixel adjustment so that the
  rounded intensity of each row has the requested least significant bit.

All rounding is round-half-away-from-zero, realized as ``floor(x + 0.5)``
(every rounded quantity here is non-negative). The intensity level is pure
integer arithmetic, ``(r + g + b + 1) // 3``, so bit-carrying behaviour is
identical in both lanes regardless of floating-point details.
"""

from __future__ import annotations

import math

import numpy as np

RAD2DEG = 180.0 / math.pi
DEG2RAD = math.pi / 180.0
TWO_PI = 2.0 * math.pi
THIRD_PI = math.pi / 3.0

BACKEND_NAME = "numpy"


def rgb_to_hsi_planes(rgb: np.ndarray) -> np.ndarray:
    """Convert ``(n, 3)`` uint8 RGB rows to quantized ``(n, 3)`` uint16 HSI."""
    rgb = np.ascontiguousarray(rgb, dtype=np.uint8)
    n = rgb.shape[0]
    out = np.zeros((n, 3), dtype=np.uint16)

    ri = rgb[:, 0].astype(np.int64)
    gi = rgb[:, 1].astype(np.int64)
    bi = rgb[:, 2].astype(np.int64)
    total = ri + gi + bi
    out[:, 2] = ((total + 1) // 3).astype(np.uint16)

    # Hue and saturation are only defined off the gray axis; gray pixels keep
    # the (0, 0) convention already present in the zero-initialized output.
    chroma = ~((ri == gi) & (gi == bi))
    if not np.any(chroma):
        return out

    rf = ri[chroma].astype(np.float64)
    gf = gi[chroma].astype(np.float64)
    bf = bi[chroma].astype(np.float64)
    t = rf + gf + bf
    r = rf / t
    g = gf / t
    b = bf / t

    t1 = r - g
    t2 = r - b
    t3 = g - b
    num = 0.5 * (t1 + t2)
    den = np.sqrt(t1 * t1 + t2 * t3)
    ratio = np.clip(num / den, -1.0, 1.0)
    h = np.arccos(ratio)
    flip = bi[chroma] > gi[chroma]
    h[flip] = TWO_PI - h[flip]

    minc = np.minimum(np.minimum(rf, gf), bf)
    s = 1.0 - 3.0 * (minc / t)

    hq = np.floor(h * RAD2DEG + 0.5).astype(np.int64)
    hq[hq == 360] = 0
    sq = np.floor(s * 100.0 + 0.5).astype(np.int64)
    np.clip(sq, 0, 100, out=sq)

    out[chroma, 0] = hq.astype(np.uint16)
    out[chroma, 1] = sq.astype(np.uint16)
    return out


def hsi_to_rgb_planes(hsi: np.ndarray) -> np.ndarray:
    """Convert quantized ``(n, 3)`` uint16 HSI rows back to uint8 RGB."""
    hsi = np.ascontiguousarray(hsi, dtype=np.uint16)
    n = hsi.shape[0]

    hq = hsi[:, 0].astype(np.int64)
    s = hsi[:, 1].astype(np.float64) / 100.0
    i = hsi[:, 2].astype(np.float64) / 255.0

    # Three 120-degree sectors; the channel assignment rotates one step per
    # sector so the reconstruction is continuous across sector boundaries.
    sector = np.where(hq < 120, 0, np.where(hq < 240, 1, 2))
    hp = (hq - 120 * sector).astype(np.float64) * DEG2RAD

    x = i * (1.0 - s)
    y = i * (1.0 + s * np.cos(hp) / np.cos(THIRD_PI - hp))
    z = 3.0 * i - (x + y)

    chans = np.empty((n, 3), dtype=np.float64)
    m0 = sector == 0
    m1 = sector == 1
    m2 = sector == 2
    chans[m0, 2] = x[m0]
    chans[m0, 0] = y[m0]
    chans[m0, 1] = z[m0]
    chans[m1, 0] = x[m1]
    chans[m1, 1] = y[m1]
    chans[m1, 2] = z[m1]
    chans[m2, 1] = x[m2]
    chans[m2, 2] = y[m2]
    chans[m2, 0] = z[m2]

    q = np.floor(chans * 255.0 + 0.5)
    np.clip(q, 0.0, 255.0, out=q)
    return q.astype(np.uint8)


_DELTA_PREFERENCE = (1, -1, 2, -2, 3, -3)


def enforce_lsb_bits(rgb: np.ndarray, bits: np.ndarray) -> tuple[np.ndarray, int]:
    """Force the intensity LSB of each RGB row to the matching bit.

    Returns the adjusted copy and the number of rows that changed. For each
    row needing a change, the adjustment minimizes the total absolute channel
    change; ties prefer raising over lowering, then loading the change onto
    R, then G, then B.
    """
    rgb = np.ascontiguousarray(rgb, dtype=np.uint8)
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.shape[0] != rgb.shape[0]:
        raise ValueError("bits and pixel rows must have equal length")

    work = rgb.astype(np.int64)
    s = work.sum(axis=1)
    want = (bits & 1).astype(np.int64)
    need = (((s + 1) // 3) & 1) != want
    idx = np.nonzero(need)[0]
    if idx.size == 0:
        return work.astype(np.uint8), 0

    rs = work[idx, 0]
    gs = work[idx, 1]
    bs = work[idx, 2]
    ss = s[idx]
    ws = want[idx]
    up = np.minimum(3, 255 - rs) + np.minimum(3, 255 - gs) + np.minimum(3, 255 - bs)
    down = np.minimum(3, rs) + np.minimum(3, gs) + np.minimum(3, bs)

    valid = np.empty((idx.size, len(_DELTA_PREFERENCE)), dtype=bool)
    for j, d in enumerate(_DELTA_PREFERENCE):
        parity_ok = ((((ss + d) + 1) // 3) & 1) == ws
        feasible = (up >= d) if d > 0 else (down >= -d)
        valid[:, j] = parity_ok & feasible
    # A feasible delta always exists: the channel sum can move by 3 in at
    # least one direction anywhere in [0, 765].
    d = np.asarray(_DELTA_PREFERENCE, dtype=np.int64)[np.argmax(valid, axis=1)]

    pos = d > 0
    mag = np.abs(d)
    dr = np.minimum(mag, np.where(pos, np.minimum(3, 255 - rs), np.minimum(3, rs)))
    rem = mag - dr
    dg = np.minimum(rem, np.where(pos, np.minimum(3, 255 - gs), np.minimum(3, gs)))
    db = rem - dg
    sign = np.where(pos, 1, -1)

    work[idx, 0] = rs + sign * dr
    work[idx, 1] = gs + sign * dg
    work[idx, 2] = bs + sign * db
    return work.astype(np.uint8), int(idx.size)

"""RGB <-> HSI conversion on the quantized integer grid.

Hue is stored as integer degrees in [0, 359], saturation as integer percent
in [0, 100], intensity as an integer level in [0, 255]. Rounding is
round-half-away-from-zero throughout, written as ``floor(x + 0.5)`` since
every rounded quantity is non-negative.

The forward direction normalizes the channels by their sum, takes
``acos`` of the usual chromaticity ratio for hue (flipped into (180, 360)
when B > G), ``1 - 3 min(r, g, b)`` for saturation, and the channel mean
for intensity. The inverse splits the hue circle into three 120-degree
sectors; within a sector the channels are recovered as

    x = i (1 - s)
    y = i (1 + s cos(h') / cos(60deg - h'))
    z = 3 i - (x + y)

with the (x, y, z) -> (R, G, B) assignment rotating one step per sector:
(B, R, G), then (R, G, B), then (G, B, R).

Two conventions close the degenerate cases: gray pixels (R = G = B,
including black) take H = 0, S = 0, and the acos argument is clamped to
[-1, 1] against roundoff.

Scalar functions here are the readable reference; whole images go through
:mod:`hsisteg.kernels`, which performs the same arithmetic in the same
operation order, vectorized or compiled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels

RAD2DEG = 180.0 / math.pi
DEG2RAD = math.pi / 180.0
TWO_PI = 2.0 * math.pi
THIRD_PI = math.pi / 3.0

# Largest per-channel deviation of hsi_to_rgb(rgb_to_hsi(p)) over all
# 2**24 RGB pixels, measured once by exhaustive scan and pinned as a
# regression constant. The worst cases sit near the gamut edge where the
# inverse magnifies the half-degree hue quantization step.
ROUND_TRIP_MAX_CHANNEL_DEV = 4


class RgbPixel(NamedTuple):
    r: int
    g: int
    b: int


class NormalizedRgb(NamedTuple):
    """Chromaticity coordinates r + g + b = 1 (black maps to thirds)."""

    r: float
    g: float
    b: float


class HsiPixel(NamedTuple):
    h_deg: int
    s_pct: int
    i_level: int


def _check_rgb(p: RgbPixel) -> None:
    for v in p:
        if not 0 <= int(v) <= 255:
            raise ValueError(f"RGB channel out of range: {p!r}")


def _check_hsi(p: HsiPixel) -> None:
    h, s, i = p
    if not (0 <= int(h) < 360 and 0 <= int(s) <= 100 and 0 <= int(i) <= 255):
        raise ValueError(f"HSI triple out of range: {p!r}")


def normalize(p: RgbPixel) -> NormalizedRgb:
    """Channel sums to chromaticities, r = R / (R+G+B) and so on."""
    _check_rgb(p)
    total = p.r + p.g + p.b
    if total == 0:
        third = 1.0 / 3.0
        return NormalizedRgb(third, third, third)
    t = float(total)
    return NormalizedRgb(p.r / t, p.g / t, p.b / t)


def rgb_to_hsi(p: RgbPixel) -> HsiPixel:
    """Forward conversion of one pixel onto the quantized HSI grid."""
    p = RgbPixel(*p)
    _check_rgb(p)
    total = p.r + p.g + p.b
    i_level = (total + 1) // 3
    if p.r == p.g == p.b:
        return HsiPixel(0, 0, i_level)

    r, g, b = normalize(p)
    t1 = r - g
    t2 = r - b
    t3 = g - b
    num = 0.5 * (t1 + t2)
    den = math.sqrt(t1 * t1 + t2 * t3)
    ratio = min(1.0, max(-1.0, num / den))
    h = math.acos(ratio)
    if p.b > p.g:
        h = TWO_PI - h
    s = 1.0 - 3.0 * (min(p.r, p.g, p.b) / float(total))

    h_deg = int(math.floor(h * RAD2DEG + 0.5))
    if h_deg == 360:
        h_deg = 0
    s_pct = min(100, max(0, int(math.floor(s * 100.0 + 0.5))))
    return HsiPixel(h_deg, s_pct, i_level)


def hsi_to_rgb(p: HsiPixel) -> RgbPixel:
    """Inverse conversion; out-of-gamut intermediates are clamped."""
    p = HsiPixel(*p)
    _check_hsi(p)
    s = p.s_pct / 100.0
    i = p.i_level / 255.0

    if p.h_deg < 120:
        sector = 0
    elif p.h_deg < 240:
        sector = 1
    else:
        sector = 2
    hp = (p.h_deg - 120 * sector) * DEG2RAD

    x = i * (1.0 - s)
    y = i * (1.0 + s * math.cos(hp) / math.cos(THIRD_PI - hp))
    z = 3.0 * i - (x + y)
    if sector == 0:
        rf, gf, bf = y, z, x
    elif sector == 1:
        rf, gf, bf = x, y, z
    else:
        rf, gf, bf = z, x, y

    def q(v: float) -> int:
        return min(255, max(0, int(math.floor(v * 255.0 + 0.5))))

    return RgbPixel(q(rf), q(gf), q(bf))


@dataclass(frozen=True)
class RgbImage:
    """Immutable row-major RGB image, pixels shaped (height, width, 3) uint8."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.array(self.pixels, dtype=np.uint8, copy=True, order="C")
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(f"expected (height, width, 3) pixel array, got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def pixel_count(self) -> int:
        return self.height * self.width

    def __eq__(self, other):
        if not isinstance(other, RgbImage):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and np.array_equal(
            self.pixels, other.pixels
        )


@dataclass(frozen=True)
class HsiImage:
    """Immutable HSI image on the integer grid, (height, width, 3) uint16."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.array(self.pixels, dtype=np.uint16, copy=True, order="C")
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(f"expected (height, width, 3) pixel array, got {arr.shape}")
        if arr.size:
            if arr[:, :, 0].max() > 359 or arr[:, :, 1].max() > 100 or arr[:, :, 2].max() > 255:
                raise ValueError("HSI plane out of range")
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def pixel_count(self) -> int:
        return self.height * self.width

    def intensity_plane(self) -> np.ndarray:
        """The I levels as a (height, width) array, values in [0, 255]."""
        return self.pixels[:, :, 2]

    def __eq__(self, other):
        if not isinstance(other, HsiImage):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and np.array_equal(
            self.pixels, other.pixels
        )


def rgb_image_to_hsi(img: RgbImage) -> HsiImage:
    flat = img.pixels.reshape(-1, 3)
    hsi = kernels.rgb_to_hsi_planes(flat)
    return HsiImage(hsi.reshape(img.pixels.shape))


def hsi_image_to_rgb(img: HsiImage) -> RgbImage:
    flat = img.pixels.reshape(-1, 3)
    rgb = kernels.hsi_to_rgb_planes(flat)
    return RgbImage(rgb.reshape(img.pixels.shape))


def intensity_levels(img: RgbImage) -> np.ndarray:
    """Quantized I plane straight from RGB, as (height, width) uint8.

    The rounded intensity depends only on the channel sum:
    round((R+G+B)/3) == (R+G+B+1) // 3 for sums in [0, 765]. This integer
    identity is what makes I-plane bits survive reconversion and lets
    extraction skip the full HSI transform.
    """
    total = img.pixels.astype(np.int64).sum(axis=2)
    return ((total + 1) // 3).astype(np.uint8)

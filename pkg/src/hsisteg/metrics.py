"""Cover/stego quality measurement: MSE, PSNR, channel histograms.

MSE averages the squared channel differences over all 3*M*N samples.
PSNR follows 10*log10(c_max^2 / mse) where c_max is, by default, the
maximum channel value observed in either image rather than the fixed 255
of most PSNR conventions; pass ``peak=255`` for the conventional number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .colorspace import RgbImage
from .errors import DimensionMismatch


@dataclass(frozen=True)
class QualityReport:
    mse: float
    psnr_db: float
    c_max: int

    def csv_fields(self) -> tuple:
        """(mse, psnr_db, c_max) formatted for CSV output."""
        psnr = "inf" if math.isinf(self.psnr_db) else f"{self.psnr_db:.4f}"
        return (f"{self.mse:.10g}", psnr, str(self.c_max))


@dataclass(frozen=True)
class ChannelHistogram:
    channel: str
    bins: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.bins, dtype=np.int64)
        if arr.shape != (256,):
            raise ValueError("histogram needs exactly 256 bins")
        object.__setattr__(self, "bins", arr)

    def write_csv(self, path) -> None:
        """256 lines of ``value,count``."""
        with open(path, "w", newline="") as fh:
            for v in range(256):
                fh.write(f"{v},{int(self.bins[v])}\n")


def _check_dims(cover: RgbImage, stego: RgbImage) -> None:
    if cover.pixels.shape != stego.pixels.shape:
        raise DimensionMismatch(
            f"cover is {cover.width}x{cover.height}, "
            f"stego is {stego.width}x{stego.height}"
        )


def mse(cover: RgbImage, stego: RgbImage) -> float:
    """Channel-averaged mean squared error."""
    _check_dims(cover, stego)
    if cover.pixels.size == 0:
        return 0.0
    diff = cover.pixels.astype(np.int64) - stego.pixels.astype(np.int64)
    total = int((diff * diff).sum())
    return total / (3 * cover.height * cover.width)


def psnr(cover: RgbImage, stego: RgbImage, peak: int | None = None) -> QualityReport:
    """Quality report for the pair; ``peak=None`` uses the observed maximum."""
    _check_dims(cover, stego)
    err = mse(cover, stego)
    if peak is None:
        c_max = 0
        if cover.pixels.size:
            c_max = int(max(cover.pixels.max(), stego.pixels.max()))
    else:
        c_max = int(peak)
    if err == 0.0:
        return QualityReport(0.0, math.inf, c_max)
    return QualityReport(err, 10.0 * math.log10((c_max * c_max) / err), c_max)


_CHANNEL_INDEX = {"R": 0, "G": 1, "B": 2}


def histogram(img: RgbImage, channel: str) -> ChannelHistogram:
    """Exact 256-bin count of one channel."""
    ch = str(channel).upper()
    if ch not in _CHANNEL_INDEX:
        raise ValueError(f"channel must be one of R, G, B, got {channel!r}")
    values = img.pixels[:, :, _CHANNEL_INDEX[ch]].ravel()
    bins = np.bincount(values, minlength=256).astype(np.int64)
    return ChannelHistogram(ch, bins)

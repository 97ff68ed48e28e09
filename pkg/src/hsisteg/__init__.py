"""Intensity-plane image steganography with LSB baselines and metrics."""

from . import errors
from .codec import capacity_bytes, deframe, frame
from .colorspace import (
    ROUND_TRIP_MAX_CHANNEL_DEV,
    HsiImage,
    HsiPixel,
    NormalizedRgb,
    RgbImage,
    RgbPixel,
    hsi_image_to_rgb,
    hsi_to_rgb,
    rgb_image_to_hsi,
    rgb_to_hsi,
)
from .engine import (
    EmbedResult,
    StegoKey,
    embed_hsi,
    embed_karim,
    embed_lsb_plain,
    enforce_intensity_lsb,
    extract_hsi,
    extract_karim,
    extract_lsb_plain,
)
from .imageio import load, save
from .kernels import get_backend
from .metrics import ChannelHistogram, QualityReport, histogram, mse, psnr

__version__ = "0.1.0"

__all__ = [
    "ROUND_TRIP_MAX_CHANNEL_DEV",
    "ChannelHistogram",
    "EmbedResult",
    "HsiImage",
    "HsiPixel",
    "NormalizedRgb",
    "QualityReport",
    "RgbImage",
    "RgbPixel",
    "StegoKey",
    "capacity_bytes",
    "deframe",
    "embed_hsi",
    "embed_karim",
    "embed_lsb_plain",
    "enforce_intensity_lsb",
    "errors",
    "extract_hsi",
    "extract_karim",
    "extract_lsb_plain",
    "frame",
    "get_backend",
    "histogram",
    "hsi_image_to_rgb",
    "hsi_to_rgb",
    "load",
    "mse",
    "psnr",
    "rgb_image_to_hsi",
    "rgb_to_hsi",
    "save",
    "__version__",
]

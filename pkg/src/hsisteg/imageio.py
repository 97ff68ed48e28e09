"""Lossless image file IO.

PNG and BMP are supported both ways; TIFF is read-only and only when the
file uses a lossless compression scheme. Grayscale and palette images are
expanded to RGB on load. Anything with an alpha channel is rejected so the
mapping between file bytes and stego bits stays unambiguous, and lossy
formats are rejected outright since recompression would shred the LSBs.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .colorspace import RgbImage
from .errors import (
    AlphaNotSupported,
    CorruptFile,
    IoFailure,
    UnsupportedFormat,
)

_READ_FORMATS = {"PNG", "BMP", "TIFF"}
_WRITE_FORMATS = {"PNG", "BMP"}
# TIFF tag 259: 1=uncompressed, 5=LZW, 8=deflate, 32773=PackBits.
_LOSSLESS_TIFF_COMPRESSION = {1, 5, 8, 32773}
_PLAIN_MODES = {"1", "L", "P", "RGB"}
_ALPHA_MODES = {"RGBA", "LA", "PA", "RGBa", "La"}


def load(path) -> RgbImage:
    """Decode an image file to an RgbImage, or raise a specific error."""
    try:
        img = Image.open(path)
    except FileNotFoundError as exc:
        raise IoFailure(f"cannot open {path}: {exc}") from exc
    except UnidentifiedImageError as exc:
        raise UnsupportedFormat(f"{path} is not a recognized image file") from exc
    except OSError as exc:
        raise CorruptFile(f"cannot read {path}: {exc}") from exc

    with img:
        fmt = (img.format or "").upper()
        if fmt not in _READ_FORMATS:
            raise UnsupportedFormat(
                f"{fmt or 'unknown'} input is not supported; use PNG or BMP "
                "(lossy formats would destroy the embedded bits)"
            )
        if fmt == "TIFF":
            compression = img.tag_v2.get(259, 1)
            if compression not in _LOSSLESS_TIFF_COMPRESSION:
                raise UnsupportedFormat(
                    f"TIFF compression scheme {compression} is not lossless"
                )
        mode = img.mode
        if mode in _ALPHA_MODES or (mode == "P" and "transparency" in img.info):
            raise AlphaNotSupported(
                f"{path} carries transparency; flatten it before embedding"
            )
        if mode not in _PLAIN_MODES:
            raise UnsupportedFormat(
                f"mode {mode} is not supported (8-bit grayscale or RGB only)"
            )
        try:
            arr = np.asarray(img.convert("RGB"), dtype=np.uint8)
        except OSError as exc:
            raise CorruptFile(f"failed to decode {path}: {exc}") from exc
    return RgbImage(arr)


def save(img: RgbImage, path, fmt: str | None = None) -> None:
    """Encode to PNG or BMP; fmt defaults from the file extension."""
    if fmt is None:
        ext = Path(path).suffix.lstrip(".").upper()
        fmt = ext if ext in _WRITE_FORMATS else "PNG"
    fmt = str(fmt).upper()
    if fmt not in _WRITE_FORMATS:
        raise UnsupportedFormat(f"cannot write {fmt}; supported: PNG, BMP")
    try:
        Image.fromarray(img.pixels, "RGB").save(path, format=fmt)
    except (OSError, ValueError, SystemError) as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc

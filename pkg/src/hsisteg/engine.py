"""Embedding and extraction engines.

Three method pairs share the codec frame and raster traversal (row-major,
top-left origin, bit k goes to pixel k):

* ``hsi``: the I-plane method. The image is converted to HSI, framed bits
  replace the LSB of successive intensity levels, and the image is
  converted back to RGB. Because the reconversion rounds each channel,
  the recomputed intensity can drift off the embedded bit, so a repair
  pass (``enforce_intensity_lsb``) nudges every carrying pixel until its
  rounded intensity holds the bit again. Extraction is then unconditional.
* ``lsb``: plain LSB substitution over channel slots, R then G then B
  within each pixel.
* ``karim``: keyed channel selection. For pixel k, LSB(R) XOR key bit
  (key cycled over pixel index) picks the carrier: 0 writes the bit to
  BLUE, 1 to GREEN. RED is never modified.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import codec, kernels
from .colorspace import RgbImage, RgbPixel, intensity_levels
from .errors import InsufficientCapacity


@dataclass(frozen=True)
class StegoKey:
    """Cycled bit sequence for the karim method; pixel k uses bit k mod len."""

    bits: tuple

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if not bits:
            raise ValueError("key must contain at least one bit")
        if any(b not in (0, 1) for b in bits):
            raise ValueError("key bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    def __len__(self) -> int:
        return len(self.bits)

    @classmethod
    def from_bytes(cls, data: bytes) -> "StegoKey":
        """Key from raw bytes, most significant bit of each byte first."""
        arr = np.frombuffer(bytes(data), dtype=np.uint8)
        return cls(tuple(int(b) for b in np.unpackbits(arr)))

    @classmethod
    def from_file(cls, path) -> "StegoKey":
        """Load a key file: ASCII '0'/'1' text if it parses, raw bytes if not."""
        with open(path, "rb") as fh:
            data = fh.read()
        try:
            text = data.decode("ascii")
        except UnicodeDecodeError:
            return cls.from_bytes(data)
        stripped = "".join(text.split())
        if stripped and set(stripped) <= {"0", "1"}:
            return cls(tuple(int(c) for c in stripped))
        return cls.from_bytes(data)

    def as_array(self, length: int) -> np.ndarray:
        """The key cycled out to ``length`` bits as a uint8 array."""
        return np.resize(np.array(self.bits, dtype=np.uint8), length)


@dataclass(frozen=True)
class EmbedResult:
    stego: RgbImage
    bits_embedded: int
    pixels_adjusted: int


def enforce_intensity_lsb(p: RgbPixel, bit: int) -> RgbPixel:
    """Minimal channel adjustment so round((R+G+B)/3) has the given LSB.

    Minimizes the total absolute channel change; among minimal choices it
    prefers raising over lowering and loads the change onto R, then G,
    then B. Pixels already satisfying the bit come back untouched.
    """
    if bit not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {bit!r}")
    p = RgbPixel(*p)
    for v in p:
        if not 0 <= int(v) <= 255:
            raise ValueError(f"RGB channel out of range: {p!r}")
    row = np.array([[p.r, p.g, p.b]], dtype=np.uint8)
    out, _ = kernels.enforce_lsb_bits(row, np.array([bit], dtype=np.uint8))
    return RgbPixel(int(out[0, 0]), int(out[0, 1]), int(out[0, 2]))


def _capacity_check(bits_needed: int, slots: int, w: int, h: int, spp: int) -> None:
    if bits_needed > slots:
        cap = codec.capacity_bytes(w, h, spp)
        raise InsufficientCapacity(
            f"framed payload needs {bits_needed} bits but the carrier has "
            f"{slots}; insufficient capacity ({cap} bytes max)"
        )


def embed_hsi(cover: RgbImage, payload: bytes) -> EmbedResult:
    """Hide a payload in the intensity-plane LSBs of the cover."""
    bits = codec.frame(payload)
    n = bits.size
    _capacity_check(n, cover.pixel_count, cover.width, cover.height, 1)

    flat = cover.pixels.reshape(-1, 3)
    hsi = kernels.rgb_to_hsi_planes(flat)
    hsi[:n, 2] = (hsi[:n, 2] & 0xFFFE) | bits
    rgb = kernels.hsi_to_rgb_planes(hsi)
    repaired, adjusted = kernels.enforce_lsb_bits(rgb[:n], bits)
    rgb[:n] = repaired
    stego = RgbImage(rgb.reshape(cover.pixels.shape))
    return EmbedResult(stego, n, adjusted)


def extract_hsi(stego: RgbImage) -> bytes:
    """Read the I-plane LSBs in raster order and deframe the payload."""
    bits = intensity_levels(stego).ravel() & 1
    return codec.deframe(bits)


def embed_lsb_plain(cover: RgbImage, payload: bytes) -> EmbedResult:
    """Classic LSB substitution across channel slots in raster order."""
    bits = codec.frame(payload)
    n = bits.size
    _capacity_check(n, 3 * cover.pixel_count, cover.width, cover.height, 3)

    chan = cover.pixels.reshape(-1).copy()
    chan[:n] = (chan[:n] & 0xFE) | bits
    stego = RgbImage(chan.reshape(cover.pixels.shape))
    return EmbedResult(stego, n, 0)


def extract_lsb_plain(stego: RgbImage) -> bytes:
    bits = stego.pixels.reshape(-1) & 1
    return codec.deframe(bits)


def embed_karim(cover: RgbImage, payload: bytes, key: StegoKey) -> EmbedResult:
    """Keyed-channel LSB embedding; RED steers, GREEN or BLUE carries."""
    bits = codec.frame(payload)
    n = bits.size
    _capacity_check(n, cover.pixel_count, cover.width, cover.height, 1)

    flat = cover.pixels.reshape(-1, 3).copy()
    x = (flat[:n, 0] & 1) ^ key.as_array(n)
    blue = x == 0
    flat[:n, 2] = np.where(blue, (flat[:n, 2] & 0xFE) | bits, flat[:n, 2])
    flat[:n, 1] = np.where(~blue, (flat[:n, 1] & 0xFE) | bits, flat[:n, 1])
    stego = RgbImage(flat.reshape(cover.pixels.shape))
    return EmbedResult(stego, n, 0)


def extract_karim(stego: RgbImage, key: StegoKey) -> bytes:
    flat = stego.pixels.reshape(-1, 3)
    n = flat.shape[0]
    x = (flat[:, 0] & 1) ^ key.as_array(n)
    bits = np.where(x == 0, flat[:, 2] & 1, flat[:, 1] & 1)
    return codec.deframe(bits)

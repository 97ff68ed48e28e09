"""Length-framed bitstream codec and capacity arithmetic.

Wire format: a 32-bit big-endian payload byte count, then the payload
bytes most-significant-bit first. The header is the termination rule;
extraction reads exactly ``32 + 8 * length`` bits and stops.
"""

from __future__ import annotations

import numpy as np

from .errors import PayloadTooLarge, TruncatedStream

HEADER_BITS = 32
MAX_PAYLOAD_BYTES = 2**32 - 1


def frame(payload: bytes) -> np.ndarray:
    """Serialize a payload to its framed bit vector (uint8 array of 0/1)."""
    payload = bytes(payload)
    n = len(payload)
    if n > MAX_PAYLOAD_BYTES:
        raise PayloadTooLarge(f"payload of {n} bytes exceeds the 32-bit length field")
    buf = np.frombuffer(n.to_bytes(4, "big") + payload, dtype=np.uint8)
    return np.unpackbits(buf)


def deframe(bits: np.ndarray) -> bytes:
    """Recover the payload from a framed bit vector.

    Extra bits past the frame are ignored; too few raise TruncatedStream,
    which usually means the carrier never held a frame (or was cropped or
    recompressed into garbage).
    """
    bits = np.asarray(bits, dtype=np.uint8).ravel() & 1
    if bits.size < HEADER_BITS:
        raise TruncatedStream(
            f"need {HEADER_BITS} header bits, found {bits.size}"
        )
    header = np.packbits(bits[:HEADER_BITS]).tobytes()
    n = int.from_bytes(header, "big")
    end = HEADER_BITS + 8 * n
    if bits.size < end:
        raise TruncatedStream(
            f"header declares {n} payload bytes but only "
            f"{(bits.size - HEADER_BITS) // 8} are present"
        )
    return np.packbits(bits[HEADER_BITS:end]).tobytes()


def frame_bit_length(payload_bytes: int) -> int:
    """Framed size in bits for a payload of the given byte length."""
    return HEADER_BITS + 8 * payload_bytes


def capacity_bytes(width: int, height: int, slots_per_pixel: int = 1) -> int:
    """Largest payload (bytes) a width x height carrier can frame.

    ``slots_per_pixel`` is 1 for the I-plane and Karim methods and 3 for
    plain LSB, which writes one bit per channel.
    """
    slots = width * height * slots_per_pixel
    return max(0, (slots - HEADER_BITS) // 8)

# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementation of the per-pixel hot kernels.

Mirrors ``hsisteg._kernels_np`` operation for operation; see that module
for the kernel contract and quantization rules. Loops run without the GIL
over C-contiguous memoryviews.
"""

import numpy as np

from libc.math cimport M_PI, acos, cos, floor, sqrt

cdef double RAD2DEG = 180.0 / M_PI
cdef double DEG2RAD = M_PI / 180.0
cdef double TWO_PI = 2.0 * M_PI
cdef double THIRD_PI = M_PI / 3.0

BACKEND_NAME = "c"


cdef inline long _clip_long(long v, long lo, long hi) nogil:
    if v < lo:
        return lo
    if v > hi:
        return hi
    return v


cdef inline long _min3(long a, long b) nogil:
    return a if a < b else b


def rgb_to_hsi_planes(rgb):
    """Convert ``(n, 3)`` uint8 RGB rows to quantized ``(n, 3)`` uint16 HSI."""
    rgb = np.ascontiguousarray(rgb, dtype=np.uint8)
    cdef const unsigned char[:, ::1] src = rgb
    cdef Py_ssize_t n = src.shape[0]
    out_arr = np.zeros((n, 3), dtype=np.uint16)
    cdef unsigned short[:, ::1] out = out_arr

    cdef Py_ssize_t k
    cdef long ri, gi, bi, total, minc, hq, sq
    cdef double t, r, g, b, t1, t2, t3, num, den, ratio, h, s

    with nogil:
        for k in range(n):
            ri = src[k, 0]
            gi = src[k, 1]
            bi = src[k, 2]
            total = ri + gi + bi
            out[k, 2] = <unsigned short>((total + 1) // 3)
            if ri == gi and gi == bi:
                continue
            t = <double>total
            r = ri / t
            g = gi / t
            b = bi / t
            t1 = r - g
            t2 = r - b
            t3 = g - b
            num = 0.5 * (t1 + t2)
            den = sqrt(t1 * t1 + t2 * t3)
            ratio = num / den
            if ratio > 1.0:
                ratio = 1.0
            elif ratio < -1.0:
                ratio = -1.0
            h = acos(ratio)
            if bi > gi:
                h = TWO_PI - h
            minc = _min3(_min3(ri, gi), bi)
            s = 1.0 - 3.0 * (minc / t)
            hq = <long>floor(h * RAD2DEG + 0.5)
            if hq == 360:
                hq = 0
            sq = _clip_long(<long>floor(s * 100.0 + 0.5), 0, 100)
            out[k, 0] = <unsigned short>hq
            out[k, 1] = <unsigned short>sq
    return out_arr


def hsi_to_rgb_planes(hsi):
    """Convert quantized ``(n, 3)`` uint16 HSI rows back to uint8 RGB."""
    hsi = np.ascontiguousarray(hsi, dtype=np.uint16)
    cdef const unsigned short[:, ::1] src = hsi
    cdef Py_ssize_t n = src.shape[0]
    out_arr = np.empty((n, 3), dtype=np.uint8)
    cdef unsigned char[:, ::1] out = out_arr

    cdef Py_ssize_t k
    cdef long hq, sector
    cdef double s, i, hp, x, y, z, rf, gf, bf

    with nogil:
        for k in range(n):
            hq = src[k, 0]
            s = src[k, 1] / 100.0
            i = src[k, 2] / 255.0
            if hq < 120:
                sector = 0
            elif hq < 240:
                sector = 1
            else:
                sector = 2
            hp = (hq - 120 * sector) * DEG2RAD
            x = i * (1.0 - s)
            y = i * (1.0 + s * cos(hp) / cos(THIRD_PI - hp))
            z = 3.0 * i - (x + y)
            if sector == 0:
                bf = x
                rf = y
                gf = z
            elif sector == 1:
                rf = x
                gf = y
                bf = z
            else:
                gf = x
                bf = y
                rf = z
            out[k, 0] = <unsigned char>_clip_long(<long>floor(rf * 255.0 + 0.5), 0, 255)
            out[k, 1] = <unsigned char>_clip_long(<long>floor(gf * 255.0 + 0.5), 0, 255)
            out[k, 2] = <unsigned char>_clip_long(<long>floor(bf * 255.0 + 0.5), 0, 255)
    return out_arr


def enforce_lsb_bits(rgb, bits):
    """Force the intensity LSB of each RGB row to the matching bit.

    Same adjustment rule as the numpy lane: minimal total absolute channel
    change, ties prefer raising, then loading onto R, then G, then B.
    Returns the adjusted copy and the number of rows that changed.
    """
    rgb = np.ascontiguousarray(rgb, dtype=np.uint8)
    bits_arr = np.ascontiguousarray(bits, dtype=np.uint8)
    if bits_arr.shape[0] != rgb.shape[0]:
        raise ValueError("bits and pixel rows must have equal length")
    out_arr = rgb.copy()
    cdef unsigned char[:, ::1] out = out_arr
    cdef const unsigned char[::1] bv = bits_arr
    cdef Py_ssize_t n = out.shape[0]

    cdef long prefs[6]
    prefs[0] = 1
    prefs[1] = -1
    prefs[2] = 2
    prefs[3] = -2
    prefs[4] = 3
    prefs[5] = -3

    cdef Py_ssize_t k
    cdef int j
    cdef long r0, g0, b0, s, want, up, down, d, chosen, mag, dr, dg, db, sign
    cdef long changed = 0
    cdef bint feas

    with nogil:
        for k in range(n):
            r0 = out[k, 0]
            g0 = out[k, 1]
            b0 = out[k, 2]
            s = r0 + g0 + b0
            want = bv[k] & 1
            if (((s + 1) // 3) & 1) == want:
                continue
            up = _min3(3, 255 - r0) + _min3(3, 255 - g0) + _min3(3, 255 - b0)
            down = _min3(3, r0) + _min3(3, g0) + _min3(3, b0)
            chosen = 0
            for j in range(6):
                d = prefs[j]
                # Feasibility first: it guarantees s + d >= 0, keeping the
                # parity division below out of C truncation territory.
                feas = (up >= d) if d > 0 else (down >= -d)
                if feas and (((s + d + 1) // 3) & 1) == want:
                    chosen = d
                    break
            if chosen > 0:
                sign = 1
                mag = chosen
                dr = _min3(mag, _min3(3, 255 - r0))
                dg = _min3(mag - dr, _min3(3, 255 - g0))
            else:
                sign = -1
                mag = -chosen
                dr = _min3(mag, _min3(3, r0))
                dg = _min3(mag - dr, _min3(3, g0))
            db = mag - dr - dg
            out[k, 0] = <unsigned char>(r0 + sign * dr)
            out[k, 1] = <unsigned char>(g0 + sign * dg)
            out[k, 2] = <unsigned char>(b0 + sign * db)
            changed += 1
    return out_arr, int(changed)

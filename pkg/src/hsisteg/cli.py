"""Command line frontend.

Subcommands: embed, extract, capacity, compare, analyze. Exit codes:
0 success, 1 usage error, 2 insufficient capacity, 3 format or IO
problem, 4 extraction mismatch (including extraction from a carrier
that holds no intact frame).
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

import numpy as np

from . import codec, engine, imageio, metrics
from .colorspace import RgbImage
from .errors import (
    AlphaNotSupported,
    CorruptFile,
    DimensionMismatch,
    InsufficientCapacity,
    IoFailure,
    PayloadTooLarge,
    TruncatedStream,
    UnsupportedFormat,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAPACITY = 2
EXIT_FORMAT = 3
EXIT_MISMATCH = 4

METHODS = ("hsi", "lsb", "karim")
CSV_COLUMNS = "image,method,payload_bytes,mse,psnr_db,c_max,status"


def _read_payload_file(path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise IoFailure(f"cannot read payload {path}: {exc}") from exc


def _load_key(args) -> engine.StegoKey | None:
    if args.method != "karim":
        return None
    if not args.key:
        raise ValueError("method karim requires --key")
    try:
        return engine.StegoKey.from_file(args.key)
    except OSError as exc:
        raise IoFailure(f"cannot read key {args.key}: {exc}") from exc


def _embed(method: str, cover: RgbImage, payload: bytes, key) -> engine.EmbedResult:
    if method == "hsi":
        return engine.embed_hsi(cover, payload)
    if method == "lsb":
        return engine.embed_lsb_plain(cover, payload)
    return engine.embed_karim(cover, payload, key)


def _extract(method: str, stego: RgbImage, key) -> bytes:
    if method == "hsi":
        return engine.extract_hsi(stego)
    if method == "lsb":
        return engine.extract_lsb_plain(stego)
    return engine.extract_karim(stego, key)


def _slots(method: str, img: RgbImage) -> int:
    return img.pixel_count * (3 if method == "lsb" else 1)


def cmd_embed(args) -> int:
    key = _load_key(args)
    cover = imageio.load(args.cover)
    payload = _read_payload_file(args.payload)
    result = _embed(args.method, cover, payload, key)
    imageio.save(result.stego, args.out, args.format)
    slots = _slots(args.method, cover)
    used = 100.0 * result.bits_embedded / slots if slots else 0.0
    print(f"bits_embedded={result.bits_embedded}")
    print(f"pixels_adjusted={result.pixels_adjusted}")
    print(f"capacity_used={used:.2f}%")
    return EXIT_OK


def cmd_extract(args) -> int:
    key = _load_key(args)
    stego = imageio.load(args.stego)
    payload = _extract(args.method, stego, key)
    if args.out:
        try:
            Path(args.out).write_bytes(payload)
        except OSError as exc:
            raise IoFailure(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    return EXIT_OK


def cmd_capacity(args) -> int:
    img = imageio.load(args.image)
    w, h = img.width, img.height
    print(f"hsi {codec.capacity_bytes(w, h)}")
    print(f"karim {codec.capacity_bytes(w, h)}")
    print(f"lsb {codec.capacity_bytes(w, h, 3)}")
    return EXIT_OK


def _parse_methods(spec: str) -> list:
    methods = []
    for name in spec.split(","):
        name = name.strip()
        if name not in METHODS:
            raise ValueError(f"unknown method {name!r}")
        if name not in methods:
            methods.append(name)
    return methods


def _parse_sizes(spec: str) -> list:
    sizes = []
    for part in spec.split(","):
        try:
            n = int(part.strip())
        except ValueError:
            raise ValueError(f"bad payload size {part.strip()!r}") from None
        if n < 0:
            raise ValueError("payload size must be >= 0")
        sizes.append(n)
    return sizes


def _parse_resizes(spec: str) -> list:
    dims = []
    for part in spec.split(","):
        part = part.strip().lower()
        w, sep, h = part.partition("x")
        if not sep or not w.isdigit() or not h.isdigit() or int(w) < 1 or int(h) < 1:
            raise ValueError(f"bad resize {part!r}, expected WxH")
        dims.append((int(w), int(h)))
    return dims


def _resize_nearest(img: RgbImage, w: int, h: int) -> RgbImage:
    rows = ((np.arange(h) + 0.5) * (img.height / h)).astype(np.int64)
    cols = ((np.arange(w) + 0.5) * (img.width / w)).astype(np.int64)
    np.clip(rows, 0, img.height - 1, out=rows)
    np.clip(cols, 0, img.width - 1, out=cols)
    return RgbImage(img.pixels[rows][:, cols])


def cmd_compare(args) -> int:
    methods = _parse_methods(args.methods)
    if args.payload and args.payload_size:
        raise ValueError("--payload and --payload-size are mutually exclusive")
    if not args.payload and not args.payload_size:
        raise ValueError("compare needs --payload or --payload-size")

    key = None
    if "karim" in methods:
        if not args.key:
            raise ValueError("method karim requires --key")
        try:
            key = engine.StegoKey.from_file(args.key)
        except OSError as exc:
            raise IoFailure(f"cannot read key {args.key}: {exc}") from exc

    fixed_payload = _read_payload_file(args.payload) if args.payload else None
    sizes = _parse_sizes(args.payload_size) if args.payload_size else [None]
    resizes = _parse_resizes(args.resize) if args.resize else [None]
    peak = 255 if args.cmax == "255" else None
    rng = random.Random(args.seed)

    source = f"file:{Path(args.payload).name}" if args.payload else "random"
    lines = [
        f"# hsisteg compare seed={args.seed} payload={source} cmax={args.cmax}",
        CSV_COLUMNS,
    ]
    mismatched = False
    for cover_path in args.covers:
        base = imageio.load(cover_path)
        name = Path(cover_path).name
        for dims in resizes:
            if dims is None:
                img, label = base, name
            else:
                img = _resize_nearest(base, dims[0], dims[1])
                label = f"{name}@{dims[0]}x{dims[1]}"
            for method in methods:
                for size in sizes:
                    payload = fixed_payload if size is None else rng.randbytes(size)
                    nbytes = len(payload)
                    try:
                        result = _embed(method, img, payload, key)
                    except InsufficientCapacity:
                        lines.append(
                            f"{label},{method},{nbytes},,,,insufficient-capacity"
                        )
                        continue
                    try:
                        recovered = _extract(method, result.stego, key)
                    except TruncatedStream:
                        recovered = None
                    if recovered != payload:
                        mismatched = True
                        lines.append(f"{label},{method},{nbytes},,,,extract-mismatch")
                        continue
                    report = metrics.psnr(img, result.stego, peak=peak)
                    m, p, c = report.csv_fields()
                    lines.append(f"{label},{method},{nbytes},{m},{p},{c},ok")

    text = "\n".join(lines) + "\n"
    if args.out:
        try:
            Path(args.out).write_text(text, newline="")
        except OSError as exc:
            raise IoFailure(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(text)
    return EXIT_MISMATCH if mismatched else EXIT_OK


def cmd_analyze(args) -> int:
    cover = imageio.load(args.cover)
    stego = imageio.load(args.stego)
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoFailure(f"cannot create {out_dir}: {exc}") from exc

    peak = 255 if args.cmax == "255" else None
    for role, img in (("cover", cover), ("stego", stego)):
        for ch in "rgb":
            hist = metrics.histogram(img, ch)
            hist.write_csv(out_dir / f"{role}_{ch}.csv")
    report = metrics.psnr(cover, stego, peak=peak)
    m, p, c = report.csv_fields()
    quality = out_dir / "quality.csv"
    quality.write_text(
        "image,method,payload_bytes,mse,psnr_db,c_max\n"
        f"{Path(args.stego).name},,,{m},{p},{c}\n",
        newline="",
    )
    print(f"mse={m} psnr_db={p} c_max={c}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hsisteg",
        description="Hide and recover byte payloads in lossless RGB images.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="hide a payload file inside a cover image")
    p.add_argument("cover", help="cover image (PNG or BMP)")
    p.add_argument("--payload", required=True, help="file whose bytes are hidden")
    p.add_argument("--method", choices=METHODS, default="hsi")
    p.add_argument("--key", help="key file, required for karim")
    p.add_argument("--out", required=True, help="stego image path")
    p.add_argument("--format", choices=("png", "bmp"), default="png")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", help="recover the payload from a stego image")
    p.add_argument("stego")
    p.add_argument("--method", choices=METHODS, default="hsi")
    p.add_argument("--key", help="key file, required for karim")
    p.add_argument("--out", help="payload output path (default: stdout)")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("capacity", help="print per-method payload capacity")
    p.add_argument("image")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser(
        "compare",
        help="embed/measure/verify across covers, methods and payload sizes",
    )
    p.add_argument("covers", nargs="*", help="cover images")
    p.add_argument("--methods", default="hsi,lsb,karim")
    p.add_argument("--payload", help="fixed payload file for every row")
    p.add_argument(
        "--payload-size",
        help="comma list of random payload sizes in bytes, e.g. 2000,4000",
    )
    p.add_argument("--key", help="key file, required when karim is selected")
    p.add_argument("--seed", type=int, default=42, help="payload RNG seed")
    p.add_argument("--resize", help="comma list of WxH nearest-neighbor resizes")
    p.add_argument("--cmax", choices=("observed", "255"), default="observed")
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser(
        "analyze", help="write histogram CSVs and a quality row for a pair"
    )
    p.add_argument("cover")
    p.add_argument("stego")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--cmax", choices=("observed", "255"), default="observed")
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DimensionMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InsufficientCapacity, PayloadTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (UnsupportedFormat, AlphaNotSupported, CorruptFile, IoFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except TruncatedStream as exc:
        print(f"error: extraction failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())

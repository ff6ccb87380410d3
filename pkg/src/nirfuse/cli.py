"""Command-line interface: fuse, synth, and metrics subcommands."""

from __future__ import annotations

import argparse
import sys

from . import image
from .config import FusionConfig, load_config
from .metrics import psnr
from .pipeline import run_pipeline
from .synthetic import SyntheticSpec, synthesize_pair


def _parse_rect(text: str):
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected TOP,LEFT,HEIGHT,WIDTH")
    try:
        return tuple(int(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"rectangle components must be integers: {exc}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nirfuse",
        description="Fuse a noisy visible color image with a clean near-infrared gray image.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fuse = sub.add_parser("fuse", help="run the full fusion pipeline")
    fuse.add_argument("--vci", required=True, help="noisy visible color PNG")
    fuse.add_argument("--ngi", required=True, help="clean near-infrared gray PNG")
    fuse.add_argument("--out", required=True, help="output PNG path")
    fuse.add_argument("--config", help="YAML config file (flat key/value)")
    fuse.add_argument(
        "--dump-intermediates",
        metavar="DIR",
        help="write the four per-stage images into DIR",
    )

    synth = sub.add_parser("synth", help="make a synthetic VCI/NGI pair from a clean image")
    synth.add_argument("--clean", required=True, help="clean color PNG")
    synth.add_argument("--sigma", type=float, default=0.1, help="noise std on the VCI")
    synth.add_argument("--brightness", type=float, default=0.0, help="brightness field amplitude")
    synth.add_argument(
        "--erase-rect",
        type=_parse_rect,
        default=None,
        metavar="TOP,LEFT,HEIGHT,WIDTH",
        help="region whose NGI edges are erased",
    )
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--out-prefix", required=True, help="written as PREFIX_{vci,ngi,clean}.png")

    metrics = sub.add_parser("metrics", help="print PSNR between two images")
    metrics.add_argument("--a", required=True)
    metrics.add_argument("--b", required=True)
    return parser


def _cmd_fuse(args) -> int:
    cfg = load_config(args.config) if args.config else FusionConfig()
    if args.dump_intermediates:
        cfg.dump_intermediates = True
    vci = image.load_rgb(args.vci)
    ngi = image.load_gray(args.ngi)
    result = run_pipeline(vci, ngi, cfg, dump_dir=args.dump_intermediates)
    image.save_rgb(args.out, result.fused)
    print(f"wrote {args.out}")
    return 0


def _cmd_synth(args) -> int:
    clean = image.load_rgb(args.clean)
    spec = SyntheticSpec(
        sigma=args.sigma,
        brightness=args.brightness,
        erase_rect=args.erase_rect,
        seed=args.seed,
    )
    vci, ngi, clean_ref = synthesize_pair(clean, spec)
    image.save_rgb(f"{args.out_prefix}_vci.png", vci)
    image.save_gray(f"{args.out_prefix}_ngi.png", ngi)
    image.save_rgb(f"{args.out_prefix}_clean.png", clean_ref)
    print(f"wrote {args.out_prefix}_{{vci,ngi,clean}}.png")
    return 0


def _cmd_metrics(args) -> int:
    a = image.load_rgb(args.a)
    b = image.load_rgb(args.b)
    print(f"PSNR: {psnr(a, b):.4f} dB")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"fuse": _cmd_fuse, "synth": _cmd_synth, "metrics": _cmd_metrics}
    try:
        return handlers[args.command](args)
    except Exception as exc:  # one diagnostic line, nonzero exit
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

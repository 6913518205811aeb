"""Command-line interface: ``kaleido <command> ...``.

Exit status is 0 on success, 1 on a usage error and 2 on a data or format
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import box_counting_dimension, reduction_factor, sampling_fraction
from .builder import FractalSpec, Mode, build
from .errors import KaleidoscopeError
from .farey import farey_sequence
from .kmap import KaleidoscopeParams, kt_2d, unity_smear_multipliers
from .maskio import (
    RunMetadata,
    read_image,
    read_mask,
    read_metadata,
    read_pattern,
    read_polygon,
    rebuild_from_metadata,
    write_image,
    write_mask,
    write_metadata,
)
from .norms import LpNorm, PolygonNorm, TransformedLpNorm

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _matrix(text):
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError:
        vals = []
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("transform needs four numbers a,b,c,d (row-major)")
    return [vals[:2], vals[2:]]


def _parse_norm(text):
    text = text.lower()
    if text == "l1":
        return 1.0
    if text == "l2":
        return 2.0
    if text.startswith("lp:"):
        try:
            p = float(text[3:])
        except ValueError:
            p = -1.0
        if p > 0:
            return p
    raise argparse.ArgumentTypeError(f"norm must be l1, l2 or lp:<p> with p > 0, got {text!r}")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kaleido", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("farey", help="print the Farey sequence of a given order")
    p.add_argument("--order", type=int, required=True)

    p = sub.add_parser("kt", help="kaleidoscope-transform an image (.npy or Netpbm)")
    p.add_argument("--input", required=True)
    p.add_argument("--nu", type=int, required=True, help="downsample factor along x (columns)")
    p.add_argument("--sigma", type=int, required=True, help="smear factor along x")
    p.add_argument("--nu-y", type=int, help="downsample factor along y (rows); default --nu")
    p.add_argument("--sigma-y", type=int, help="smear factor along y; default --sigma")
    p.add_argument("--branch", choices=["upper", "lower"], help="branch when sigma is 0")
    p.add_argument("--out", required=True)

    p = sub.add_parser("mask", help="build a fractal sampling mask")
    p.add_argument("--width", type=int, help="grid columns N")
    p.add_argument("--height", type=int, help="grid rows M")
    p.add_argument("--norm", type=_parse_norm, default=2.0, help="l1 | l2 | lp:<p>")
    p.add_argument("--transform", type=_matrix, help="a,b,c,d applied before the norm")
    p.add_argument("--polygon", help="JSON file of star-polygon vertices")
    p.add_argument("--katz", type=float, default=1.0)
    p.add_argument("--mode", choices=[m.value for m in Mode], default="lines")
    p.add_argument("--pattern", help="JSON or CSV point file for explicit mode")
    p.add_argument("--unity-only", action="store_true")
    p.add_argument("--m-max", type=int, default=1)
    p.add_argument("--smear", type=int, choices=[-1, 1], help="keep only this unity smear")
    p.add_argument("--order", type=int, help="Farey order (default max(width, height))")
    p.add_argument("--from-meta", help="rebuild from a metadata JSON file")
    p.add_argument("--out", required=True, help="output .pbm (support) or .pgm (counts)")
    p.add_argument("--meta", help="write run metadata JSON here")

    p = sub.add_parser("analyze", help="measure a mask")
    p.add_argument("--input", required=True)
    p.add_argument("--box-dim", action="store_true")
    p.add_argument("--sizes", type=_int_list)
    p.add_argument("--fraction", action="store_true")
    p.add_argument("--edges", choices=["pad", "crop"], default="pad", help="partial edge boxes: count or crop")
    p.add_argument("--csv", help="write log-size/log-count CSV here")

    p = sub.add_parser("multipliers", help="list unity-smear multipliers of a modulus")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--m-max", type=int, default=1)
    return parser


def _cmd_farey(args):
    for f in farey_sequence(args.order):
        print(f)


def _cmd_kt(args):
    img = read_image(args.input)
    M, N = img.shape
    nu_y = args.nu if args.nu_y is None else args.nu_y
    sigma_y = args.sigma if args.sigma_y is None else args.sigma_y
    pc = KaleidoscopeParams(N, args.nu, args.sigma, args.branch if args.sigma == 0 else None)
    pr = KaleidoscopeParams(M, nu_y, sigma_y, args.branch if sigma_y == 0 else None)
    out = kt_2d(img, pr, pc)
    if np.issubdtype(img.dtype, np.integer):
        out = np.rint(out).astype(np.int64)
    write_image(out, args.out)


def _spec_from_args(args) -> FractalSpec:
    if args.from_meta:
        return read_metadata(args.from_meta).spec
    if args.width is None or args.height is None:
        raise UsageError("--width and --height are required unless --from-meta is given")
    mode = Mode(args.mode)
    if mode is Mode.EXPLICIT:
        if not args.pattern:
            raise UsageError("explicit mode needs --pattern")
        pattern = read_pattern(args.pattern, (args.height, args.width))
        return FractalSpec(
            args.height, args.width, norm=None, pattern=pattern, mode=mode,
            unity_only=args.unity_only, m_max=args.m_max, smear=args.smear,
        )
    if args.pattern:
        raise UsageError("--pattern is only valid with --mode explicit")
    if args.polygon:
        norm = PolygonNorm(read_polygon(args.polygon))
    elif args.transform:
        norm = TransformedLpNorm(args.norm, args.transform)
    else:
        norm = LpNorm(args.norm)
    return FractalSpec(
        args.height, args.width, norm=norm, katz=args.katz, mode=mode,
        unity_only=args.unity_only, m_max=args.m_max, smear=args.smear, order=args.order,
    )


def _cmd_mask(args):
    spec = _spec_from_args(args)
    # a metadata rebuild must reproduce the recorded digest
    mask = rebuild_from_metadata(args.from_meta) if args.from_meta else build(spec)
    fmt = "pbm" if Path(args.out).suffix.lower() == ".pbm" else "pgm"
    write_mask(mask, args.out, fmt)
    meta = RunMetadata.from_mask(spec, mask)
    if args.meta:
        write_metadata(meta, args.meta)
    summary = {
        "R": meta.R,
        "katz": meta.katz,
        "sampling_fraction": meta.sampling_fraction,
        "sha256": meta.digest,
    }
    print(json.dumps(summary))


def _cmd_analyze(args):
    mask = read_mask(args.input)
    out = {"rows": mask.rows, "cols": mask.cols}
    do_all = not (args.box_dim or args.fraction)
    if args.fraction or do_all:
        out["sampling_fraction"] = sampling_fraction(mask)
        out["reduction_factor"] = reduction_factor(mask)
    if args.box_dim or do_all or args.sizes:
        rep = box_counting_dimension(mask, args.sizes, args.edges)
        out["box_counting"] = json.loads(rep.to_json())
        if args.csv:
            Path(args.csv).write_text(rep.to_csv())
    print(json.dumps(out, indent=2))


def _cmd_multipliers(args):
    print("L\tm\tsign\texact")
    for u in unity_smear_multipliers(args.modulus, args.m_max):
        print(f"{u.multiplier}\t{u.m}\t{'+' if u.sign > 0 else '-'}\t{'yes' if u.exact else 'no'}")


COMMANDS = {
    "farey": _cmd_farey,
    "kt": _cmd_kt,
    "mask": _cmd_mask,
    "analyze": _cmd_analyze,
    "multipliers": _cmd_multipliers,
}


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"kaleido: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (KaleidoscopeError, OSError, ValueError, KeyError) as exc:
        print(f"kaleido: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

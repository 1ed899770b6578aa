"""Command-line front end.

Every subcommand that writes a file also writes ``<output>.meta``, a flat
key=value record of the effective configuration (key material included) plus
results. Passing that file back with ``--config`` reproduces the output.

Exit codes: 0 success, 1 I/O error, 2 configuration error, 3 a battery test failed.
"""

from __future__ import annotations

import argparse
import logging
import os
import statistics
import sys
from pathlib import Path

from . import __version__, netpbm
from .analysis import (
    AlternatingSource,
    ConstantSource,
    WordSource,
    encode_stream,
    format_bench,
    format_report,
    point_cloud,
    run_battery,
    sensitivity_experiment,
    throughput_bench,
    write_point_cloud_csv,
    write_sensitivity_csv,
)
from .analysis.security import PERTURB_TARGETS
from .errors import CiprngError, InvalidKeyError, ParameterError
from .fixtures import FIXTURES, WORKED_N
from .generators import Isaac, Xorshift32
from .prng import INDEX_MODES, CiPrng, CiPrngParams, SeedKey
from .watermark import BitImage, GrayImage, embed, encrypt_watermark, extract, psnr

log = logging.getLogger("ciprng")

ISAAC_KEY_ENV = "CIPRNG_ISAAC_KEY"
# Used when no key material is given at all; echoed to the sidecar like any key.
DEFAULT_XORSHIFT_SEED = 0x2545F491
SOURCES = ("ci", "isaac", "xorshift", "zeros", "alternating")
EXIT_IO, EXIT_CONFIG, EXIT_BATTERY = 1, 2, 3


def _hex_int(text: str) -> int:
    text = text.strip().lower()
    try:
        return int(text[2:] if text.startswith("0x") else text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex number: {text!r}") from None


def _hex_bytes(text: str) -> bytes:
    text = text.strip().lower().removeprefix("0x")
    try:
        return bytes.fromhex(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex byte string: {text!r}") from None


def _key_options(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("key and generator parameters")
    g.add_argument("--x0", type=_hex_int, help="initial state, hex")
    g.add_argument("--isaac-key", type=_hex_bytes,
                   help=f"ISAAC key bytes, hex (falls back to ${ISAAC_KEY_ENV})")
    g.add_argument("--xorshift-seed", type=_hex_int, help="nonzero 32-bit XORshift seed, hex")
    g.add_argument("--time-seed", action="store_true", help="derive the key from the clock")
    g.add_argument("--n", type=int, default=32, help="number of cells N (default 32)")
    g.add_argument("--c", type=int, help="base flips per round (default 3N)")
    g.add_argument("--no-emit-initial", action="store_true", help="do not emit x0 first")
    g.add_argument("--unsafe-params", action="store_true", help="allow c < 3N")
    g.add_argument("--index-mode", choices=INDEX_MODES, default="modulo")


def _output_options(p: argparse.ArgumentParser, default_out: str | None = "-") -> None:
    p.add_argument("--out", default=default_out, required=default_out is None,
                   help="output path ('-' for stdout)")
    p.add_argument("--meta", help="metadata sidecar path (default: <out>.meta)")
    p.add_argument("--config", help="key=value file (e.g. a previous .meta) supplying defaults")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ciprng", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a bit stream")
    _key_options(p)
    p.add_argument("--bits", type=int, default=1 << 20)
    p.add_argument("--format", choices=("raw", "ascii"), default="raw")
    p.add_argument("--source", choices=SOURCES, default="ci")
    p.add_argument("--inject-fixture", choices=sorted(FIXTURES))
    _output_options(p)

    p = sub.add_parser("test", help="run the built-in battery")
    _key_options(p)
    p.add_argument("--bits", type=int, default=10_000_000)
    p.add_argument("--bins", type=int, default=256)
    p.add_argument("--source", choices=SOURCES, default="ci")
    _output_options(p)

    p = sub.add_parser("sensitivity", help="variance ratio over one-bit key perturbations")
    _key_options(p)
    p.add_argument("--pairs", type=int, default=100)
    p.add_argument("--bits", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0, help="seed for drawing the base keys")
    p.add_argument("--target", choices=PERTURB_TARGETS, default="x0")
    p.add_argument("--workers", type=int, default=1)
    _output_options(p)

    p = sub.add_parser("cloud", help="overlapping normalized word triples as CSV")
    _key_options(p)
    p.add_argument("--words", type=int, default=10_000)
    p.add_argument("--inject-fixture", choices=sorted(FIXTURES))
    _output_options(p)

    p = sub.add_parser("bench", help="throughput of CI, ISAAC and XORshift")
    _key_options(p)
    p.add_argument("--bytes", type=int, default=1 << 20)
    _output_options(p)

    for name, helptext in (("wm-encrypt", "encrypt a PBM watermark (its own inverse)"),
                           ("wm-embed", "embed a PBM watermark into a PGM carrier"),
                           ("wm-extract", "extract a watermark from a marked PGM")):
        p = sub.add_parser(name, help=helptext)
        _key_options(p)
        p.add_argument("--iterations", type=int, default=5000)
        if name == "wm-embed":
            p.add_argument("--carrier", required=True)
            p.add_argument("--watermark", required=True)
        else:
            p.add_argument("--in", dest="input", required=True)
        if name == "wm-extract":
            p.add_argument("--wm-width", type=int, default=64)
            p.add_argument("--wm-height", type=int, default=64)
        _output_options(p, default_out=None)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if not getattr(args, "config", None):
        return args
    subparser = parser._subparsers._group_actions[0].choices[args.command]
    actions = {a.dest: a for a in subparser._actions}
    defaults = {}
    for line in Path(args.config).read_text().splitlines():
        if not line.strip() or line.startswith("#") or "=" not in line:
            continue
        name, value = (part.strip() for part in line.split("=", 1))
        action = actions.get(name)
        if action is None or name in ("config", "meta", "out", "help"):
            continue
        if isinstance(action, argparse._StoreTrueAction):
            defaults[name] = value.lower() in ("1", "true", "yes")
        elif value == "None":
            defaults[name] = None
        else:
            defaults[name] = action.type(value) if action.type else value
    subparser.set_defaults(**defaults)
    return parser.parse_args(argv)


def _params(args) -> CiPrngParams:
    return CiPrngParams(args.n, args.c, not args.no_emit_initial, args.unsafe_params, args.index_mode)


def _key(args) -> SeedKey:
    if args.time_seed:
        key = SeedKey.from_time(args.n)
    else:
        isaac_key = args.isaac_key
        if isaac_key is None and os.environ.get(ISAAC_KEY_ENV):
            isaac_key = _hex_bytes(os.environ[ISAAC_KEY_ENV])
        if args.x0 is None and isaac_key is None and args.xorshift_seed is None:
            log.warning("no key given; using the fixed default key")
        seed = DEFAULT_XORSHIFT_SEED if args.xorshift_seed is None else args.xorshift_seed
        if seed == 0:
            raise InvalidKeyError("xorshift seed must be nonzero (0 is the fixed point of xorshift)")
        key = SeedKey(args.x0 or 0, isaac_key or b"", seed)
    # record the effective key so the sidecar reproduces time-seeded runs too
    args.x0, args.isaac_key, args.xorshift_seed, args.time_seed = (
        key.x0, key.isaac_key, key.xorshift_seed, False)
    return key


def _source(args):
    if args.source == "zeros":
        return ConstantSource(0)
    if args.source == "alternating":
        return AlternatingSource()
    key = _key(args)
    if args.source == "isaac":
        return WordSource(Isaac.from_key(key.isaac_key))
    if args.source == "xorshift":
        return WordSource(Xorshift32(key.xorshift_seed))
    return CiPrng(key, _params(args))


def _format_value(value) -> str:
    return value.hex() if isinstance(value, bytes) else str(value)


def _write_meta(args, results: dict) -> None:
    path = args.meta or (None if args.out == "-" else args.out + ".meta")
    if path is None:
        return
    lines = [f"# ciprng {__version__}"]
    for name, value in sorted(vars(args).items()):
        if name in ("config", "meta", "verbose"):
            continue
        if name in ("x0", "xorshift_seed") and isinstance(value, int):
            value = f"{value:x}"
        lines.append(f"{name}={_format_value(value)}")
    for name, value in results.items():
        lines.append(f"result.{name}={_format_value(value)}")
    Path(path).write_text("\n".join(lines) + "\n")


def _emit(args, data: bytes) -> None:
    if args.out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(args.out).write_bytes(data)


def _describe(source) -> dict:
    if isinstance(source, CiPrng) and source._injected is None:
        return {f"generator.{k}": v for k, v in source.describe().items()}
    return {}


def cmd_generate(args) -> int:
    if args.bits < 0:
        raise ParameterError("--bits must be non-negative")
    if args.inject_fixture:
        if args.n != WORKED_N:
            raise ParameterError(f"fixture {args.inject_fixture} needs --n {WORKED_N}")
        source = FIXTURES[args.inject_fixture](not args.no_emit_initial)
    else:
        source = _source(args)
    data = encode_stream(source.next_bits(args.bits), args.format)
    _emit(args, data)
    _write_meta(args, {"bytes": len(data), **_describe(source)})
    return 0


def cmd_test(args) -> int:
    source = _source(args)
    reports = run_battery(source, args.bits, args.bins)
    _emit(args, format_report(reports).encode())
    failed = [r.test_name for r in reports if not r.passed]
    _write_meta(args, {"failed": ",".join(failed) or "none", **_describe(source)})
    return EXIT_BATTERY if failed else 0


def cmd_sensitivity(args) -> int:
    results = sensitivity_experiment(args.pairs, args.bits, _params(args), args.seed,
                                     args.target, args.workers)
    mean = statistics.fmean(r.result.p for r in results)
    write_sensitivity_csv(results, sys.stdout if args.out == "-" else args.out)
    print(f"mean P = {mean:.6f} over {len(results)} pairs", file=sys.stderr)
    _write_meta(args, {"mean_p": repr(mean), "min_p": min(r.result.p for r in results),
                       "max_p": max(r.result.p for r in results)})
    return 0


def cmd_cloud(args) -> int:
    if args.inject_fixture:
        if args.n != WORKED_N:
            raise ParameterError(f"fixture {args.inject_fixture} needs --n {WORKED_N}")
        source = FIXTURES[args.inject_fixture](not args.no_emit_initial)
    else:
        source = CiPrng(_key(args), _params(args))
    points = point_cloud(source.next_words(args.words), args.n)
    write_point_cloud_csv(points, sys.stdout if args.out == "-" else args.out)
    _write_meta(args, {"points": len(points), **_describe(source)})
    return 0


def cmd_bench(args) -> int:
    entries = throughput_bench(args.bytes, _key(args), _params(args))
    _emit(args, format_bench(entries).encode())
    _write_meta(args, {f"{e.name}.bytes_per_second": repr(e.bytes_per_second) for e in entries})
    return 0


def cmd_wm_encrypt(args) -> int:
    w = BitImage(netpbm.read_pbm(args.input))
    out = encrypt_watermark(w, _key(args), args.iterations, _params(args))
    netpbm.write_pbm(args.out, out.bits)
    _write_meta(args, {"width": w.width, "height": w.height})
    return 0


def cmd_wm_embed(args) -> int:
    carrier = GrayImage(netpbm.read_pgm(args.carrier))
    w = BitImage(netpbm.read_pbm(args.watermark))
    marked = embed(carrier, w, _key(args), args.iterations, _params(args))
    netpbm.write_pgm(args.out, marked.pixels)
    _write_meta(args, {"psnr_db": psnr(carrier, marked), "wm_width": w.width, "wm_height": w.height})
    return 0


def cmd_wm_extract(args) -> int:
    marked = GrayImage(netpbm.read_pgm(args.input))
    w = extract(marked, _key(args), (args.wm_height, args.wm_width), args.iterations, _params(args))
    netpbm.write_pbm(args.out, w.bits)
    _write_meta(args, {"wm_width": w.width, "wm_height": w.height})
    return 0


COMMANDS = {
    "generate": cmd_generate,
    "test": cmd_test,
    "sensitivity": cmd_sensitivity,
    "cloud": cmd_cloud,
    "bench": cmd_bench,
    "wm-encrypt": cmd_wm_encrypt,
    "wm-embed": cmd_wm_embed,
    "wm-extract": cmd_wm_extract,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = _apply_config(parser, argv)
    except OSError as exc:
        print(f"ciprng: error: {exc}", file=sys.stderr)
        return EXIT_IO
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="ciprng: %(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except CiprngError as exc:
        print(f"ciprng: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"ciprng: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

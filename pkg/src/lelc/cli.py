"""Command-line front end.

Exit status: 0 success, 1 usage error, 2 file format error, 3 codec error.
"""

from __future__ import annotations

import argparse
import sys

from . import formats, metrics, theory, throttle
from .codecs import parse_codec
from .errors import FormatError, InvalidParameterError, LelcError
from .mapping import mapgen
from .prefixcode import validate
from .profiler import profile, synthesize_trace

EXIT_OK, EXIT_USAGE, EXIT_FORMAT, EXIT_CODEC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text: str, count: int, name: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"{name} expects {count} comma-separated integers") from None
    if len(values) != count:
        raise UsageError(f"{name} expects {count} comma-separated integers")
    return values


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x]
    except ValueError:
        raise UsageError("--thresholds expects comma-separated numbers") from None


def cmd_profile(args, out):
    tf = formats.read_trace(args.trace)
    formats.write_histogram(args.out, profile(tf.payloads, args.k))


def cmd_synth(args, out):
    h = formats.read_histogram(args.hist)
    payloads = synthesize_trace(h, args.payloads, args.payload_bits, args.seed)
    formats.write_trace(args.out, payloads, args.payload_bits)


def cmd_mapgen(args, out):
    h = formats.read_histogram(args.hist)
    formats.write_map(args.out, mapgen(h, args.n, args.weight_monotone))


def cmd_encode(args, out):
    codec = parse_codec(args.codec)
    tf = formats.read_trace(args.trace)
    coded = metrics.encode_trace(tf.payloads, codec, verify=False)
    if tf.variable:
        raise FormatError("encode expects an uncoded version-1 trace")
    if codec.needs_source_bits(tf.payload_bits):
        formats.write_trace(args.out, coded, tf.payload_bits, variable=True)
    else:
        formats.write_trace(args.out, coded)


def cmd_decode(args, out):
    codec = parse_codec(args.codec)
    tf = formats.read_trace(args.trace)
    if not tf.variable and codec.variable_rate:
        raise FormatError(f"{codec.name} output needs a version-2 trace with a length index")
    source_bits = tf.payload_bits if tf.variable else None
    decoded = []
    for i, p in enumerate(tf.payloads):
        try:
            decoded.append(codec.decode(p, source_bits))
        except LelcError as exc:
            metrics.with_payload_index(exc, i)
            raise
    formats.write_trace(args.out, decoded)


def _link_for(args, payload_bits: int) -> metrics.LinkConfig:
    if args.link:
        rows, cols, flit, payload = _int_list(args.link, 4, "--link")
        return metrics.LinkConfig(flit, payload, rows, cols)
    d = metrics.DEFAULT_LINK
    return metrics.LinkConfig(d.flit_bits, payload_bits, d.grid_rows, d.grid_cols, d.header_flits)


def cmd_analyze(args, out):
    codec = parse_codec(args.codec)
    tf = formats.read_trace(args.trace)
    if tf.variable:
        raise FormatError("analyze expects an uncoded version-1 trace")
    link = _link_for(args, tf.payload_bits)
    weights = formats.read_crosstalk_weights(args.xtalk) if args.xtalk else None
    report = metrics.analysis(tf.payloads, codec, link, weights)
    out.write(metrics.format_report(report))
    if args.figure:
        from .plotting import plot_crosstalk_classes
        coded = metrics.encode_trace(tf.payloads, codec, verify=False)
        x = metrics.crosstalk_report(tf.payloads, codec, link, weights, coded=coded)
        plot_crosstalk_classes(x.histogram_coded, x.histogram_uncoded, args.figure)


def cmd_curve(args, out):
    points = theory.tradeoff_curve(args.samples)
    out.write("f\trate\treduction_pct\n")
    for p in points:
        out.write(f"{p.ones_fraction:.6f}\t{p.rate:.6f}\t{p.energy_reduction_pct:.4f}\n")
    if args.figure:
        from .plotting import plot_tradeoff
        plot_tradeoff(points, args.figure)


def cmd_throttle(args, out):
    inj = formats.read_injections(args.inj)
    cfg = throttle.ThrottleConfig(args.window, 0.0, args.flits_coded,
                                  args.flits_uncoded, args.header_flits)
    rows = throttle.threshold_sweep(inj, cfg, _float_list(args.thresholds))
    out.write("threshold\tpct_coded\tpct_uncoded\ttotal_cycles\n")
    for r in rows:
        out.write(f"{r.threshold:g}\t{r.pct_coded:.4f}\t{r.pct_uncoded:.4f}\t{r.total_cycles}\n")
    if args.figure:
        from .plotting import plot_sweep
        plot_sweep(rows, args.figure)


def cmd_validate(args, out):
    table = formats.read_prefix_table(args.table)
    report = validate(table, check_weight=args.weight)
    out.write(metrics.format_report({"entries": len(table), "ok": str(report.ok).lower(),
                                     "violations": len(report.violations)}))
    for v in report.violations:
        out.write(f"violation={v}\n")
    return EXIT_OK if report.ok else EXIT_CODEC


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lelc", description="Low-energy line codes for on-chip links")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("profile", help="dataword histogram of a trace")
    s.add_argument("--trace", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_profile)

    s = sub.add_parser("synth", help="random trace drawn from a histogram")
    s.add_argument("--hist", required=True)
    s.add_argument("--payloads", type=int, required=True)
    s.add_argument("--payload-bits", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_synth)

    s = sub.add_parser("mapgen", help="mapping code from a histogram")
    s.add_argument("--hist", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--weight-monotone", action="store_true")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_mapgen)

    for name, func in (("encode", cmd_encode), ("decode", cmd_decode)):
        s = sub.add_parser(name, help=f"{name} every payload of a trace")
        s.add_argument("--codec", required=True)
        s.add_argument("--trace", required=True)
        s.add_argument("--out", required=True)
        s.set_defaults(func=func)

    s = sub.add_parser("analyze", help="rate, energy, flit and crosstalk report")
    s.add_argument("--codec", required=True)
    s.add_argument("--trace", required=True)
    s.add_argument("--link", help="rows,cols,flit_bits,payload_bits")
    s.add_argument("--xtalk", help="LELCXT crosstalk weight file")
    s.add_argument("--figure", help="write a crosstalk pattern chart to this file")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("curve", help="optimal rate/energy trade-off table")
    s.add_argument("--samples", type=int, required=True)
    s.add_argument("--figure", help="write the curve to this image file")
    s.set_defaults(func=cmd_curve)

    s = sub.add_parser("throttle", help="utilization threshold sweep on one link")
    s.add_argument("--inj", required=True)
    s.add_argument("--window", type=int, default=100_000)
    s.add_argument("--flits-coded", type=int, required=True)
    s.add_argument("--flits-uncoded", type=int, required=True)
    s.add_argument("--header-flits", type=int, default=1)
    s.add_argument("--thresholds", required=True)
    s.add_argument("--figure", help="write the sweep to this image file")
    s.set_defaults(func=cmd_throttle)

    s = sub.add_parser("validate", help="check a LELCPFX prefix table")
    s.add_argument("--table", required=True)
    s.add_argument("--weight", action="store_true",
                   help="also require weight(codeword) <= weight(path)")
    s.set_defaults(func=cmd_validate)
    return p


def run(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        status = args.func(args, out)
        return EXIT_OK if status is None else status
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except FormatError as exc:
        err.write(f"format error: {exc}\n")
        return EXIT_FORMAT
    except OSError as exc:
        err.write(f"cannot access file: {exc}\n")
        return EXIT_FORMAT
    except InvalidParameterError as exc:
        err.write(f"invalid parameter: {exc}\n")
        return EXIT_USAGE
    except LelcError as exc:
        err.write(f"codec error: {exc}\n")
        return EXIT_CODEC


def main(argv=None) -> int:
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()

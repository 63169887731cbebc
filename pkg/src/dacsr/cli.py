"""Command-line interface: analyze, reorder, convert, predict, spmv, bench.

Exit codes: 0 success, 1 operational error, 2 usage error.
"""

import argparse
import json
import sys

import numpy as np

from .bench import BenchConfig, CacheSpec, FormatSpec, run_suite
from .core import (
    INDEX_WIDTHS,
    SCALAR_WIDTHS,
    bandwidth,
    csr_from_triplets,
    index_max,
    to_csr,
    to_dacsr,
)
from .errors import DacsrError
from .generate import parse_generate_spec
from .io import read_matrix_market, write_matrix_market, write_results
from .model import StorageWidths, predicted_speedup, relative_performance
from .reorder import permute_symmetric, rcm
from .spmv import SERIAL_VARIANTS, ParallelRowBlock, spmv


def parse_size(text):
    """Parse a byte size with an optional K/M/G suffix (1024 base)."""
    s = str(text).strip()
    mult = 1
    if s and s[-1].upper() in "KMG":
        mult = 1024 ** ("KMG".index(s[-1].upper()) + 1)
        s = s[:-1]
    try:
        return int(s) * mult
    except ValueError:
        raise ValueError(f"bad size {text!r}")


def _int_list(text):
    return tuple(int(t) for t in text.split(",") if t.strip())


def _load_file(path):
    return csr_from_triplets(read_matrix_market(path), oindex=64, iindex=64)


def _gather_inputs(paths, generate_specs):
    """Load files and --generate specs; returns (inputs, error count)."""
    inputs = []
    errors = 0
    for path in paths:
        try:
            inputs.append((path, _load_file(path)))
        except (DacsrError, OSError) as exc:
            print(f"error: {path}: {exc}", file=sys.stderr)
            errors += 1
    for spec in generate_specs or ():
        try:
            inputs.append(parse_generate_spec(spec))
        except (DacsrError, ValueError) as exc:
            print(f"error: {spec}: {exc}", file=sys.stderr)
            errors += 1
    return inputs, errors


def _print_table(headers, rows, out):
    cells = [headers] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    for r in cells:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip(), file=out)


def _cmd_analyze(args):
    inputs, errors = _gather_inputs(args.paths, args.generate)
    if not inputs and not errors:
        print("error: no inputs; give paths or --generate", file=sys.stderr)
        return 2
    k = args.iindex_width
    rows = []
    for name, mat in inputs:
        w0 = bandwidth(mat)
        if mat.nrows == mat.ncols:
            w1 = bandwidth(permute_symmetric(mat, rcm(mat)))
        else:
            w1 = None
        fits_csr = mat.ncols <= 2 ** (k - 1)
        fits_da = w1 is not None and w1 <= index_max(k)
        rows.append({
            "name": name,
            "nrows": mat.nrows,
            "ncols": mat.ncols,
            "nnz": mat.nnz,
            "bandwidth": w0,
            "rcm_bandwidth": w1,
            "fits_csr_narrow": fits_csr,
            "fits_dacsr_narrow": fits_da,
        })
    fields = ["name", "nrows", "ncols", "nnz", "bandwidth", "rcm_bandwidth",
              "fits_csr_narrow", "fits_dacsr_narrow"]
    if args.json:
        json.dump(rows, sys.stdout, indent=2)
        print()
    elif args.csv:
        print(",".join(fields))
        for r in rows:
            print(",".join(str(v).lower() if isinstance(v, bool) else str(v)
                           for v in r.values()))
    else:
        headers = ["name", "nrows", "ncols", "nnz", "bandwidth",
                   "rcm_bandwidth", f"fits_csr{k}", f"fits_dacsr{k}"]
        _print_table(headers, [
            [r["name"], r["nrows"], r["ncols"], r["nnz"], r["bandwidth"],
             "-" if r["rcm_bandwidth"] is None else r["rcm_bandwidth"],
             r["fits_csr_narrow"], r["fits_dacsr_narrow"]]
            for r in rows
        ], sys.stdout)
        total = len(rows)
        if total:
            n_csr = sum(r["fits_csr_narrow"] for r in rows)
            n_da = sum(r["fits_dacsr_narrow"] for r in rows)
            print(f"{total} analyzed: {n_csr} fit {k}-bit CSR "
                  f"({100.0 * n_csr / total:.1f}%), {n_da} fit {k}-bit DA-CSR "
                  f"after reordering ({100.0 * n_da / total:.1f}%)")
    return 0 if inputs else 1


def _cmd_reorder(args):
    mat = _load_file(args.input)
    out = permute_symmetric(mat, rcm(mat))
    write_matrix_market(out, args.output)
    print(f"bandwidth {bandwidth(mat)} -> {bandwidth(out)}")
    return 0


def _cmd_convert(args):
    t = read_matrix_market(args.input)
    if args.format == "csr":
        iindex = args.iindex if args.iindex else 32
        mat = csr_from_triplets(t, oindex=args.oindex, iindex=iindex,
                                scalar=args.scalar)
    else:
        iindex = args.iindex if args.iindex else 16
        wide = csr_from_triplets(t, oindex=args.oindex, iindex=64,
                                 scalar=args.scalar)
        mat = to_csr(to_dacsr(wide, iindex), 64)
    write_matrix_market(mat, args.output)
    return 0


def _cmd_predict(args):
    if not args.approx and (args.nrows is None or args.nnz is None):
        print("error: --nrows and --nnz are required without --approx",
              file=sys.stderr)
        return 2
    ratio = predicted_speedup(args.from_widths, args.to_widths,
                              approx_no_rowptr=args.approx,
                              nrows=args.nrows, nnz=args.nnz)
    print(f"{ratio} = {float(ratio)}")
    return 0


def _cmd_spmv(args):
    t = read_matrix_market(args.matrix)
    if args.format == "dacsr":
        wide = csr_from_triplets(t, oindex=32, iindex=64, scalar=args.scalar)
        base = to_dacsr(wide, args.iindex if args.iindex else 16)
    else:
        base = csr_from_triplets(t, oindex=32,
                                 iindex=args.iindex if args.iindex else 32,
                                 scalar=args.scalar)
    dtype = base.values.dtype
    if args.x:
        x = np.loadtxt(args.x, dtype=dtype, ndmin=1)
    else:
        x = np.ones(base.ncols, dtype=dtype)
    y = np.zeros(base.nrows, dtype=dtype) if args.beta != 0 else None
    variant = (args.variant if args.threads == 1
               else ParallelRowBlock(args.threads, args.variant))
    y = spmv(base, x, y, args.alpha, args.beta, variant, backend=args.backend)
    for v in y:
        print(f"{v:.17g}")
    return 0


_CONFIG_KEYS = ("epochs", "warmup", "min_epoch_ms", "threads", "l1d", "l2", "l3")


def _load_config(path):
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            s = raw.strip()
            if not s or s.startswith("#"):
                continue
            key, eq, val = s.partition("=")
            key = key.strip()
            if not eq or key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: bad config line {s!r}")
            values[key] = val.strip()
    return values


def _pick(flag, config, key, conv, default):
    if flag is not None:
        return flag
    if key in config:
        return conv(config[key])
    return default


def _cmd_bench(args):
    inputs, errors = _gather_inputs(args.paths, args.generate)
    if not inputs:
        print("error: no benchmark inputs", file=sys.stderr)
        return 2 if not errors else 1
    config = _load_config(args.config) if args.config else {}
    cfg = BenchConfig(
        epochs=_pick(args.epochs, config, "epochs", int, 11),
        warmup_iters=_pick(args.warmup, config, "warmup", int, 10),
        min_epoch_iters=args.min_epoch_iters if args.min_epoch_iters is not None else 10,
        min_epoch_time=_pick(args.min_epoch_ms, config, "min_epoch_ms", float, 100.0) / 1000.0,
        thread_counts=_pick(args.threads, config, "threads", _int_list, (1, 2, 4, 6, 8)),
    )
    cache = CacheSpec(
        l1d_bytes=_pick(args.l1d, config, "l1d", parse_size, 32 * 1024),
        l2_total_bytes=_pick(args.l2, config, "l2", parse_size, 8 * 2 ** 20),
        l3_bytes=_pick(args.l3, config, "l3", parse_size, 11 * 2 ** 20),
    )
    formats = []
    for kind in args.formats.split(","):
        kind = kind.strip()
        if kind == "csr":
            widths = StorageWidths(args.oindex // 8, args.csr_iindex // 8,
                                   args.scalar // 8)
        elif kind == "dacsr":
            widths = StorageWidths(args.oindex // 8, args.dacsr_iindex // 8,
                                   args.scalar // 8)
        else:
            print(f"error: unknown format {kind!r}", file=sys.stderr)
            return 2
        formats.append(FormatSpec(kind, widths))
    variants = tuple(v.strip() for v in args.variants.split(",") if v.strip())
    for v in variants:
        if v not in SERIAL_VARIANTS:
            print(f"error: unknown variant {v!r}", file=sys.stderr)
            return 2

    suite = run_suite(inputs, formats, variants, cfg, cache=cache,
                      backend=args.backend, seed=args.seed)
    for fail in suite.failures:
        print(f"skipped: {fail.matrix_name} [{fail.format}]: {fail.reason}",
              file=sys.stderr)

    headers = ["matrix", "format", "variant", "threads", "time_s",
               "gflop_per_s", "gbyte_per_s", "bucket", "best"]
    rows = [
        [r.matrix_name, r.format, r.variant, r.threads,
         f"{r.time_seconds:.3e}", f"{r.performance_flops_per_s / 1e9:.3f}",
         f"{r.throughput_bytes_per_s / 1e9:.3f}", r.cache_bucket,
         "*" if r.best else ""]
        for r in suite.records
    ]
    _print_table(headers, rows, sys.stdout)

    best = {}
    for r in suite.records:
        if r.best:
            best[(r.matrix_name, r.format)] = r
    for name in dict.fromkeys(n for n, _ in best):
        c = best.get((name, "csr"))
        d = best.get((name, "dacsr"))
        if c and d:
            ratio = relative_performance(c.time_seconds, d.time_seconds)
            print(f"{name}: best dacsr vs best csr performance: {ratio:.3f}x")

    if args.out:
        write_results(suite.records, args.out,
                      format="json" if args.json else "csv")
    return 0 if suite.records else 1


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="dacsr",
        description="Diagonally-addressed CSR storage, reordering, SpMV, and benchmarks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="bandwidth and narrow-index fit report")
    p.add_argument("paths", nargs="*", help="Matrix Market files")
    p.add_argument("--generate", action="append", metavar="SPEC",
                   help="synthetic input, e.g. banded:n=200,band=8,seed=1")
    p.add_argument("--iindex-width", type=int, default=16, choices=INDEX_WIDTHS)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("reorder", help="apply reverse Cuthill-McKee and write the result")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=_cmd_reorder)

    p = sub.add_parser("convert", help="validate a storage conversion and rewrite the file")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--format", choices=("csr", "dacsr"), default="csr")
    p.add_argument("--oindex", type=int, default=32, choices=INDEX_WIDTHS)
    p.add_argument("--iindex", type=int, default=None, choices=INDEX_WIDTHS)
    p.add_argument("--scalar", type=int, default=64, choices=SCALAR_WIDTHS)
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("predict", help="memory-bound speedup of a width change")
    p.add_argument("--from", dest="from_widths", type=StorageWidths.parse,
                   required=True, metavar="WIDTHS", help="e.g. f64,i32")
    p.add_argument("--to", dest="to_widths", type=StorageWidths.parse,
                   required=True, metavar="WIDTHS", help="e.g. f64,i16")
    p.add_argument("--approx", action="store_true",
                   help="drop the rowptr term (matrix-independent ratio)")
    p.add_argument("--nrows", type=int)
    p.add_argument("--nnz", type=int)
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("spmv", help="compute y = alpha*A@x + beta*y and print y")
    p.add_argument("matrix")
    p.add_argument("--x", help="whitespace-separated vector file (default: ones)")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--format", choices=("csr", "dacsr"), default="csr")
    p.add_argument("--iindex", type=int, default=None, choices=INDEX_WIDTHS)
    p.add_argument("--scalar", type=int, default=64, choices=SCALAR_WIDTHS)
    p.add_argument("--variant", choices=SERIAL_VARIANTS, default="naive")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--backend", choices=("numba", "numpy"), default=None)
    p.set_defaults(func=_cmd_spmv)

    p = sub.add_parser("bench", help="time SpMV kernels over formats and thread counts")
    p.add_argument("paths", nargs="*")
    p.add_argument("--generate", action="append", metavar="SPEC")
    p.add_argument("--formats", default="csr,dacsr")
    p.add_argument("--scalar", type=int, default=64, choices=SCALAR_WIDTHS)
    p.add_argument("--oindex", type=int, default=32, choices=INDEX_WIDTHS)
    p.add_argument("--csr-iindex", type=int, default=32, choices=INDEX_WIDTHS)
    p.add_argument("--dacsr-iindex", type=int, default=16, choices=INDEX_WIDTHS)
    p.add_argument("--variants", default="naive,multi_accumulator_3,strip_mined_4")
    p.add_argument("--threads", type=_int_list, default=None,
                   metavar="N,N,...", help="thread counts (default 1,2,4,6,8)")
    p.add_argument("--epochs", type=int, default=None)
    p.add_argument("--warmup", type=int, default=None)
    p.add_argument("--min-epoch-iters", type=int, default=None)
    p.add_argument("--min-epoch-ms", type=float, default=None)
    p.add_argument("--l1d", type=parse_size, default=None)
    p.add_argument("--l2", type=parse_size, default=None)
    p.add_argument("--l3", type=parse_size, default=None)
    p.add_argument("--config", help="key=value file: " + ", ".join(_CONFIG_KEYS))
    p.add_argument("--backend", choices=("numba", "numpy"), default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write records to this file")
    ofmt = p.add_mutually_exclusive_group()
    ofmt.add_argument("--json", action="store_true")
    ofmt.add_argument("--csv", action="store_true")
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DacsrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

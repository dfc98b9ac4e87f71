"""Command-line interface: bmds params | encode | decode | repair | check-mds | bench."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import gf2
from .code import is_prime, is_two_primitive, validate
from .codec import ColumnSet, decode, encode_at, information_set
from .errors import (
    BmdsError,
    FormatError,
    NotMDSError,
    ParameterError,
    RepairError,
    UnrecoverableError,
)
from .fileformat import (
    MANIFEST_NAME,
    Manifest,
    join_stripes,
    read_column,
    split_stripes,
    write_column,
)
from .mdscheck import DEFAULT_BUDGET, TABLE1_PRIMES, Verdict, check_mds, sufficient_bound, table1_scan
from .repair import ReadCounter, execute_repair, msr_lower_bound, plan_repair

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARAMS = 2
EXIT_UNRECOVERABLE = 3
EXIT_NOT_MDS = 4


def column_name(index: int) -> str:
    return f"col{index:02d}.bmds"


def _params(args, min_k: int = 4):
    missing = [f"--{name}" for name in ("k", "r", "p") if getattr(args, name) is None]
    if missing:
        raise ParameterError(f"missing {', '.join(missing)}")
    return validate(args.family, args.k, args.r, args.p, min_k=min_k)


def cmd_params(args) -> int:
    params = _params(args)
    print(params.describe())
    print(f"n={params.n} msr_bound={msr_lower_bound(params)}")
    print(f"sufficient_bound={sufficient_bound(params)}")
    return EXIT_OK


def cmd_encode(args) -> int:
    params = _params(args)
    src = Path(args.input)
    data = src.read_bytes()
    if not data:
        raise FormatError(f"{src} is empty")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    positions = information_set(params)
    stripes, padding = split_stripes(data, params)
    coded = [encode_at(s, params, positions).columns for s in stripes]
    names = [column_name(i + 1) for i in range(params.n)]
    for i, name in enumerate(names):
        write_column(out / name, params, i + 1, [c[i] for c in coded])
    Manifest(params.family.value, params.k, params.r, params.p, len(data), padding,
             len(stripes), names, [c + 1 for c in positions]).dump(out / MANIFEST_NAME)
    print(f"wrote {params.n} columns x {len(stripes)} stripes to {out}")
    return EXIT_OK


def _load_dir(directory: Path, only=None):
    manifest = Manifest.load(directory / MANIFEST_NAME)
    params = manifest.params()
    columns = []
    for i, name in enumerate(manifest.columns):
        path = directory / name
        if (only is not None and i + 1 not in only) or not path.exists():
            columns.append(None)
            continue
        stripes = read_column(path, params, i + 1)
        if len(stripes) != manifest.stripes:
            raise FormatError(f"{name}: {len(stripes)} stripes, manifest says {manifest.stripes}")
        columns.append(stripes)
    return manifest, params, columns


def cmd_decode(args) -> int:
    directory = Path(args.dir)
    manifest, params, columns = _load_dir(directory)
    present = sum(c is not None for c in columns)
    if present < params.k:
        raise UnrecoverableError(f"only {present} of {params.n} columns present, need {params.k}")
    stripes = []
    for s in range(manifest.stripes):
        cs = ColumnSet(params, [None if c is None else c[s] for c in columns])
        full = decode(cs)
        stripes.append([full.columns[c - 1] for c in manifest.data_columns])
    Path(args.out).write_bytes(join_stripes(stripes, params, manifest.size))
    print(f"restored {manifest.size} bytes to {args.out}")
    return EXIT_OK


def cmd_repair(args) -> int:
    directory = Path(args.dir)
    manifest = Manifest.load(directory / MANIFEST_NAME)
    params = manifest.params()
    f = args.failed
    plan = plan_repair(params, f)
    _, _, columns = _load_dir(directory, only=set(plan.helper_columns))
    counter = ReadCounter()
    restored = []
    for s in range(manifest.stripes):
        cols = [None if c is None else c[s] for c in columns]
        missing = [c for c in plan.helper_columns if cols[c - 1] is None]
        if missing:
            raise RepairError(f"helper columns {missing} are missing")
        restored.append(execute_repair(ColumnSet(params, cols), plan, counter))
    target = Path(args.out) if args.out else directory / manifest.columns[f - 1]
    write_column(target, params, f, restored)
    bound = msr_lower_bound(params)
    print(f"bandwidth={plan.bandwidth} bound={bound} ratio={plan.bandwidth / bound:.3f}")
    print(f"helpers={plan.helper_columns} method={plan.method} stripes={manifest.stripes} "
          f"bits_read={counter.bits}")
    print(f"restored column {f} to {target}")
    return EXIT_OK


def _prime_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if "-" in part:
            lo, hi = (int(x) for x in part.split("-"))
            out.extend(q for q in range(lo, hi + 1) if is_prime(q) and is_two_primitive(q))
        else:
            out.append(int(part))
    return out


def cmd_check_mds(args) -> int:
    if args.table1 is not None:
        primes = _prime_list(args.p) if args.p else list(TABLE1_PRIMES.get(args.table1, ()))
        if not primes:
            raise ParameterError("give candidate primes with --p (e.g. 3,5,11 or 3-40)")
        worst = EXIT_OK
        for p, verdict in table1_scan(args.table1, primes, args.budget):
            print(f"k={args.table1} p={p} {verdict.value}")
            if verdict is Verdict.NOT_MDS:
                worst = EXIT_NOT_MDS
        return worst
    args.p = int(args.p) if args.p is not None else None
    report = check_mds(_params(args, min_k=2), args.budget)
    print(report.summary())
    return EXIT_NOT_MDS if report.verdict is Verdict.NOT_MDS else EXIT_OK


def cmd_bench(args) -> int:
    from . import bench
    params = _params(args)
    print(f"backend={gf2.BACKEND} {params} {params.describe()}")
    if args.count_xors:
        got, formula = bench.count_xors(params)
        print(f"divide_by_binomial xors={got} formula={formula}")
    print(f"{'kernel':<16} {'python_us':>10} {'compiled':>10} {'speedup':>7}")
    for row in bench.run(params, repeat=args.repeat):
        print(row.line())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bmds", description="Binary MDS array codes with low-bandwidth repair")
    sub = parser.add_subparsers(dest="command", required=True)

    def code_flags(p, p_type=int):
        p.add_argument("--family", type=str.lower, choices=["c1", "c2"], default="c1")
        p.add_argument("--k", type=int)
        p.add_argument("--r", type=int)
        p.add_argument("--p", type=p_type)

    p = sub.add_parser("params", help="derive and print code parameters")
    code_flags(p)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("encode", help="shard a file into column files")
    p.add_argument("input")
    code_flags(p)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="rebuild the original file from surviving columns")
    p.add_argument("dir")
    p.add_argument("--out", required=True, help="output file")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("repair", help="rebuild one lost column from its helpers")
    p.add_argument("dir")
    p.add_argument("--failed", type=int, required=True, help="1-based column index")
    p.add_argument("--out", help="output column file (default: its place in dir)")
    p.set_defaults(func=cmd_repair)

    p = sub.add_parser("check-mds", help="certify the MDS property")
    code_flags(p, p_type=str)
    p.add_argument("--table1", type=int, metavar="K", help="scan C2(K, 4) over the primes in --p")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_check_mds)

    p = sub.add_parser("bench", help="compare compiled and pure-Python kernels")
    code_flags(p)
    p.add_argument("--repeat", type=int, default=200)
    p.add_argument("--count-xors", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except (UnrecoverableError, NotMDSError, RepairError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNRECOVERABLE
    except (BmdsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

"""binrel command line: build, query, verify, stats, bench."""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

from . import serialize
from .build import REPRESENTATIONS, STANDARD_CONFIGS, BuildConfig, build
from .core import OPS, SET_RESULTS, NaiveRelation, Pair, QueryError, object_major
from .space import report
from .verify import random_args, run_rounds


class InputError(ValueError):
    pass


def read_edge_list(path) -> tuple[list[Pair], int, int]:
    """Parse "label object" lines; an optional "% n sigma" header fixes the bounds."""
    header = None
    pairs = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.lstrip("%").split() if line.startswith("%") else line.split()
            try:
                values = [int(f) for f in fields]
            except ValueError:
                raise InputError(f"{path}:{lineno}: expected integers, got {line!r}") from None
            if line.startswith("%"):
                if header is not None or pairs or len(values) != 2 or min(values) < 1:
                    raise InputError(f"{path}:{lineno}: bad header {line!r}")
                header = tuple(values)
                continue
            if len(values) != 2:
                raise InputError(f"{path}:{lineno}: expected 'label object', got {line!r}")
            label, obj = values
            if label < 1 or obj < 1:
                raise InputError(f"{path}:{lineno}: labels and objects are 1-based, got {line!r}")
            if header and (obj > header[0] or label > header[1]):
                raise InputError(f"{path}:{lineno}: pair ({label}, {obj}) outside n={header[0]} sigma={header[1]}")
            pairs.append(Pair(label, obj))
    if header:
        n, sigma = header
    else:
        n = max((p.object for p in pairs), default=1)
        sigma = max((p.label for p in pairs), default=1)
    return pairs, n, sigma


def format_answer(result_kind: str, value) -> list[str]:
    if result_kind == "count":
        return [str(value)]
    if result_kind in SET_RESULTS:
        if result_kind == "pairs":
            return [f"{p.label} {p.object}" for p in value]
        return [str(v) for v in value]
    if value is None:
        return ["none"]
    if result_kind == "pair":
        return [f"{value.label} {value.object}"]
    return [str(value)]


def _load_any(path):
    """A serialized structure, or an edge list built as an oracle."""
    data = Path(path).read_bytes()
    if data[:4] == serialize.MAGIC:
        return serialize.loads(data)
    pairs, n, sigma = read_edge_list(path)
    return NaiveRelation(pairs, n, sigma)


def cmd_build(args) -> int:
    if args.arity is not None and args.repr != "gwt":
        raise InputError("--arity applies to gwt only")
    pairs, n, sigma = read_edge_list(args.input)
    config = BuildConfig(args.repr, **({"arity": args.arity} if args.arity else {}))
    rel = build(config, pairs, n, sigma)
    try:
        serialize.save(rel, args.output)
    except OSError as exc:
        raise InputError(f"cannot write {args.output}: {exc.strerror}") from None
    d = rel.dims
    print(f"repr={config.name} n={d.n} sigma={d.sigma} t={d.t} payload_bits={rel.payload_bits}")
    return 0


def cmd_query(args) -> int:
    if args.op not in OPS:
        print(f"binrel: unknown operation {args.op!r}; choose from {', '.join(OPS)}", file=sys.stderr)
        return 2
    try:
        values = [int(a) for a in args.args]
    except ValueError:
        raise InputError("query arguments must be integers") from None
    rel = _load_any(args.structure)
    answer = rel.query(args.op, *values)
    for line in format_answer(OPS[args.op][1], answer):
        print(line)
    return 0


def cmd_verify(args) -> int:
    pairs, n, sigma = read_edge_list(args.input)
    oracle = NaiveRelation(pairs, n, sigma)
    wanted = args.reprs.split(",")
    unknown = set(wanted) - set(REPRESENTATIONS)
    if unknown:
        raise InputError(f"unknown representations {sorted(unknown)}")
    configs = [c for c in STANDARD_CONFIGS if c.repr in wanted]
    structures = {c.name: build(c, pairs, n, sigma) for c in configs}
    result = run_rounds(structures, oracle, args.rounds, args.seed)
    for op in OPS:
        print(f"{op:<16} {result.passes[op]} passed")
    if not result.ok:
        print(result.mismatch.repro())
        return 1
    print(f"all {sum(result.passes.values())} checks passed over {', '.join(structures)}")
    return 0


def cmd_stats(args) -> int:
    rel = _load_any(args.path)
    if isinstance(rel, NaiveRelation):
        pairs = rel.pairs
        structures = {name: build(name, pairs, rel.n, rel.sigma) for name in ("wt", "brwt")}
    else:
        pairs = rel.pairs()
        structures = {serialize.tag_of(rel): rel}
    labels = [p.label for p in sorted(pairs, key=object_major)]
    rep = report(rel.dims, labels, structures)
    print(rep.to_text())
    print()
    print(rep.to_kv())
    return 0


def cmd_bench(args) -> int:
    if args.op not in OPS:
        print(f"binrel: unknown operation {args.op!r}", file=sys.stderr)
        return 2
    rel = serialize.load(args.structure)
    if args.count == 0:
        print(f"op={args.op} queries=0")
        return 0
    oracle_like = NaiveRelation(rel.pairs(), rel.n, rel.sigma) if "J" in OPS[args.op][0] else rel
    rng = random.Random(args.seed)
    counted = hasattr(rel, "reset_visits")
    visits = []
    start = time.perf_counter()
    for _ in range(args.count):
        qargs = random_args(args.op, oracle_like, rng)
        if counted:
            rel.reset_visits()
        rel.query(args.op, *qargs)
        if counted:
            visits.append(rel.visits)
    elapsed = time.perf_counter() - start
    line = f"op={args.op} queries={args.count} seconds={elapsed:.4f}"
    if counted:
        line += f" mean_visits={sum(visits) / len(visits):.3f} max_visits={max(visits)}"
    print(line)
    return 0


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="binrel", description="Compact binary relations.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="serialize an edge list as one representation")
    p.add_argument("input")
    p.add_argument("--repr", choices=REPRESENTATIONS, default="wt")
    p.add_argument("--arity", type=int, help="multiary tree arity (gwt only)")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="answer one operation")
    p.add_argument("structure", help="serialized structure or edge list")
    p.add_argument("op")
    p.add_argument("args", nargs="*")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify", help="random cross-check against the oracle")
    p.add_argument("input")
    p.add_argument("--reprs", default=",".join(REPRESENTATIONS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rounds", type=int, default=100)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="entropy and space report")
    p.add_argument("path", help="serialized structure or edge list")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="node visits and wall time over random queries")
    p.add_argument("structure")
    p.add_argument("op")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, QueryError, serialize.FormatError, OSError) as exc:
        print(f"binrel: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

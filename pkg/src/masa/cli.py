"""Command-line front end.

Exit codes: 0 success, 1 verification failure or step budget exhausted,
2 usage or domain error, 3 machine fault.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import counting
from . import group_tower as gt
from .encoding import assign_basis, build_virtual_tree, tree_dump, verify_tree
from .encoding.dump import dumps
from .errors import BudgetExceeded, DomainError, MachineFault, MasaError, ResourceLimitError, UsageError
from .export import PGM_MAX_LEVEL, to_csv, to_pgm
from .machine import BLANK, SHIPPED, halt_space, resolve_machine, run
from .report import fmt
from .suites import summarize, verify_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_FAULT = 0, 1, 2, 3


def _parse_vector(text: str) -> tuple[int, ...]:
    try:
        x = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated naturals, got {text!r}") from None
    if any(v < 0 for v in x):
        raise argparse.ArgumentTypeError(f"entries must be nonnegative, got {text!r}")
    return x


def _write(out, data, binary=False):
    if out is None or out == "-":
        if binary:
            sys.stdout.buffer.write(data)
            sys.stdout.buffer.flush()
        else:
            sys.stdout.write(data)
    else:
        Path(out).write_bytes(data) if binary else Path(out).write_text(data, encoding="utf-8")


def cmd_table(args) -> int:
    if args.format == "pgm" and args.level > PGM_MAX_LEVEL:
        raise ResourceLimitError(f"PGM output is limited to level {PGM_MAX_LEVEL}")
    if args.twist:
        entries, top = gt.twist(args.level).entries, 1
    else:
        entries, top = gt.group_table(args.level).entries, 2**args.level - 1
    if args.format == "csv":
        _write(args.output, to_csv(entries))
    else:
        _write(args.output, to_pgm(entries, top, args.level), binary=True)
    return EXIT_OK


def cmd_simulate(args) -> int:
    M = resolve_machine(args.machine)
    comp = run(M, args.input, args.max_steps)
    if args.trace:
        for i, c in enumerate(comp.configurations):
            print(f"{i:>6} {c}")
    last = comp.last
    print(f"machine: {M.name or args.machine}")
    print(f"input: {','.join(map(str, args.input))}")
    print(f"steps: {comp.transitions}")
    print(f"halt_space: {halt_space(comp)}")
    if not comp.halted:
        print(f"status: budget exhausted after {comp.transitions} steps without halting")
        return EXIT_FAIL
    print("status: halted")
    print(f"final_tape: {last.tape or BLANK}")
    for w in comp.warnings():
        print(f"warning: {w}")
    print(f"output: {comp.output if comp.output is not None else 'undecodable'}")
    return EXIT_OK


def cmd_count(args) -> int:
    L = args.length
    if L < 1:
        raise UsageError("--length must be positive")
    print("L,n,count,paper_closed_form,match")
    for row in counting.count_rows(L, args.parts):
        print(",".join(fmt(v) for v in row))
    status = EXIT_OK
    if args.check_fib:
        total = sum(counting.count_valid(L, n) for n in range(1, counting.max_parts(L) + 1))
        ok = counting.check_fib_identity(L)
        print(f"fib_identity L={L} sum={total} fib={counting.fib(L)} {'holds' if ok else 'FAILS'}")
        status = EXIT_OK if ok else EXIT_FAIL
    if args.argmax:
        r = counting.argmax_n(L)
        print(f"argmax L={L} n={r.n} counts={fmt(r.counts)} threshold={fmt(r.threshold)} "
              f"asymptote={fmt(r.asymptote)} gap={fmt(r.gap)}")
    return status


def cmd_embed(args) -> int:
    M = resolve_machine(args.machine)
    vt = build_virtual_tree(M, args.output, args.length, args.max_steps)
    ba = assign_basis(vt)
    print(f"tree machine={M.name or args.machine} y={vt.y} L={vt.L} h={vt.h} branches={len(vt.branches)} N={ba.level}")
    print("# h_x counts transitions; k_x = h - h_x")
    for b in vt.branches:
        print(f"branch {b.index} input={fmt(b.input)} h_x={b.h} k_x={b.k}")
    report = None
    status = EXIT_OK
    if args.verify:
        report = verify_tree(M, vt, ba)
        print(summarize(report).render())
        status = EXIT_OK if report.passed else EXIT_FAIL
    if args.dump:
        _write(args.dump, dumps(tree_dump(vt, ba, report)))
    return status


def cmd_verify_all(args) -> int:
    machines = [resolve_machine(m) for m in args.machine] if args.machine else None
    rep = verify_all(args.max_level, args.max_length, args.embed_length, machines)
    text = rep.render() + "\n"
    if args.report:
        _write(args.report, text)
        print(text.splitlines()[-1])
    else:
        sys.stdout.write(text)
    return EXIT_OK if rep.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="masa", description="Cyclic 2-group tower and unary Turing machine encodings.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="emit a group table or twist matrix")
    t.add_argument("--level", type=int, required=True)
    t.add_argument("--format", choices=("csv", "pgm"), default="csv")
    t.add_argument("--twist", action="store_true", help="emit the twist matrix instead of the table")
    t.add_argument("--output", "-o", help="output path (default stdout)")
    t.set_defaults(func=cmd_table)

    s = sub.add_parser("simulate", help="run a machine on an input vector")
    s.add_argument("machine", help=f"machine file or shipped name ({', '.join(SHIPPED)})")
    s.add_argument("input", type=_parse_vector, help="comma-separated naturals, e.g. 1,1")
    s.add_argument("--max-steps", type=int, default=None)
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_simulate)

    c = sub.add_parser("count", help="count valid initial tapes of a given length")
    c.add_argument("--length", "-L", type=int, required=True)
    c.add_argument("--parts", "-n", type=int, default=None)
    c.add_argument("--check-fib", action="store_true")
    c.add_argument("--argmax", action="store_true")
    c.set_defaults(func=cmd_count)

    e = sub.add_parser("embed", help="build a virtual tree and its embedding")
    e.add_argument("machine")
    e.add_argument("--output", "-y", type=int, required=True, help="output value y")
    e.add_argument("--length", "-L", type=int, required=True, help="input length L")
    e.add_argument("--max-steps", type=int, default=None)
    e.add_argument("--verify", action="store_true")
    e.add_argument("--dump", help="write the tree as JSON to this path")
    e.set_defaults(func=cmd_embed)

    v = sub.add_parser("verify-all", help="run every invariant suite")
    v.add_argument("--max-level", type=int, default=6)
    v.add_argument("--max-length", type=int, default=14)
    v.add_argument("--embed-length", type=int, default=6)
    v.add_argument("--machine", action="append", help="machine file or shipped name (repeatable; default: all shipped)")
    v.add_argument("--report", help="write the full report here instead of stdout")
    v.set_defaults(func=cmd_verify_all)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except MachineFault as exc:
        print(f"machine fault: {exc}", file=sys.stderr)
        return EXIT_FAULT
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (DomainError, UsageError, ResourceLimitError, MasaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

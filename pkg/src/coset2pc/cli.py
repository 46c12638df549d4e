"""Command-line entry point: ``coset2pc <subcommand> ...``.

Exit codes: 0 success, 2 validation error, 3 security refusal (code not
minimal), 4 transport or protocol error.
"""

from __future__ import annotations

import argparse
import json
import logging
import secrets
import sys
from pathlib import Path

from . import analysis
from .code import (
    LinearCode,
    expand_binary_to_qary,
    ghw_hierarchy,
    intersecting_witness,
    is_minimal_code,
    load_code,
    paper_code_9_4,
    paper_code_20_4_ternary,
    save_code,
    simplex_code,
)
from .errors import Coset2pcError, EnumerationCapError, NotMinimalError, ProtocolError, TransportError
from .field import PrimeField, SeededRng
from .matrix import FieldVector
from .protocol import (
    augment_euclidean_input,
    hamming_spec,
    run_protocol,
    run_receiver_socket,
    run_sender_socket,
    scalar_product_spec,
    squared_euclidean_spec,
)
from .protocol.ot import make_ot

EXIT_OK, EXIT_VALIDATION, EXIT_REFUSAL, EXIT_TRANSPORT = 0, 2, 3, 4

log = logging.getLogger("coset2pc")


def _seed(args) -> int:
    if args.seed is None:
        args.seed = secrets.randbits(63)
        print(f"seed: {args.seed}")
    return args.seed


def _fmt_vec(v: FieldVector) -> str:
    return v.digits()


def _summary(code: LinearCode) -> list[str]:
    cert = is_minimal_code(code)
    lines = [
        f"code: {code.label}",
        f"q: {code.q}  r: {code.r}  n: {code.n}",
        f"w_max: {code.w_max}",
        f"minimal: {str(bool(cert)).lower()}",
    ]
    if not cert:
        a, b = cert.witness
        lines.append(f"witness: a={_fmt_vec(a)} b={_fmt_vec(b)}")
    return lines


def cmd_gen_code(args) -> int:
    if args.kind == "simplex":
        code = simplex_code(args.r, PrimeField(args.q))
    elif args.kind == "paper-9-4":
        code = paper_code_9_4()
    elif args.kind == "paper-20-4":
        code = paper_code_20_4_ternary()
    elif args.kind == "expand":
        if not args.input:
            raise ValueError("expand needs --in CODEFILE")
        code = expand_binary_to_qary(load_code(args.input), PrimeField(args.q))
    elif args.kind == "search":
        if args.n is None or args.k is None:
            raise ValueError("search needs --n and --k")
        code = analysis.random_minimal_search(args.n, args.k, args.q, args.trials, SeededRng(_seed(args)))
        if code is None:
            print(f"no minimal [{args.n},{args.k}] code over GF({args.q}) found in {args.trials} trials")
            return EXIT_VALIDATION
    else:  # argparse restricts choices
        raise ValueError(args.kind)
    if args.out:
        save_code(code, args.out)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(code.canonical_text())
    print("\n".join(_summary(code)))
    return EXIT_OK


def cmd_check(args) -> int:
    code = load_code(args.code)
    cert = is_minimal_code(code)
    wit = intersecting_witness(code)
    prof = code.weight_profile
    print(f"q: {code.q}  r: {code.r}  n: {code.n}")
    print(f"minimal: {str(bool(cert)).lower()}")
    if not cert:
        a, b = cert.witness
        print(f"witness: supp({_fmt_vec(b)}) within supp({_fmt_vec(a)}), independent")
    print(f"intersecting: {str(wit is None).lower()}")
    if wit is not None:
        print(f"disjoint pair: {_fmt_vec(wit[0])} {_fmt_vec(wit[1])}")
    print(f"weights: {prof}")
    print(f"w_max: {prof.max_weight}  d: {prof.min_weight}")
    try:
        print("GHW: " + " ".join(str(d) for d in ghw_hierarchy(code)))
    except EnumerationCapError as exc:
        print(f"GHW: skipped ({exc})")
    return EXIT_OK


def _parse_hostport(text: str) -> tuple[str, int]:
    host, _, port = text.rpartition(":")
    return host or "127.0.0.1", int(port)


def _build_spec(args, code: LinearCode):
    f = code.field
    y = FieldVector.from_digits(f, args.y)
    if args.function == "scalar":
        return scalar_product_spec(y)
    if args.function == "euclid":
        return squared_euclidean_spec(y)
    return hamming_spec(y, allow_wraparound=args.allow_wraparound)


def _build_input(args, code: LinearCode) -> FieldVector:
    x = FieldVector.from_digits(code.field, args.x)
    if args.function == "euclid":
        return augment_euclidean_input(x)
    if args.function == "hamming" and any(v > 1 for v in x.values):
        raise ValueError("Hamming distance needs a binary X")
    return x


def cmd_run(args) -> int:
    code = load_code(args.code)
    seed = _seed(args)
    if args.role == "local":
        if args.x is None or args.y is None:
            raise ValueError("local mode needs --x and --y")
        res = run_protocol(
            _build_input(args, code),
            _build_spec(args, code),
            code,
            ot=make_ot(args.ot_mode),
            seeds=seed,
            reveal=args.reveal,
            unsafe=args.unsafe,
        )
        print(f"output: {res.p2_output.value}")
        if args.reveal:
            print(f"p1 output: {res.p1_output.value}")
        if args.transcript_dir:
            out = Path(args.transcript_dir)
            out.mkdir(parents=True, exist_ok=True)
            res.p1_transcript.write(out / "p1.jsonl")
            res.p2_transcript.write(out / "p2.jsonl")
        return EXIT_OK
    if args.role == "p1":
        if args.x is None or args.listen is None:
            raise ValueError("p1 needs --x and --listen HOST:PORT")
        host, port = _parse_hostport(args.listen)
        transcript = None
        try:
            sender, transcript = run_sender_socket(
                _build_input(args, code), code, host, port, seed,
                ot_mode=args.ot_mode, reveal=args.reveal, unsafe=args.unsafe,
                on_bound=lambda p: print(f"listening: {host}:{p}", flush=True),
            )
        finally:
            if transcript is not None and args.transcript:
                transcript.write(args.transcript)
        if args.reveal:
            print(f"output: {sender.output.value}")
        else:
            print(f"transferred: {sender.transferred}")
        return EXIT_OK
    if args.y is None or args.connect is None:
        raise ValueError("p2 needs --y and --connect HOST:PORT")
    host, port = _parse_hostport(args.connect)
    receiver, transcript = run_receiver_socket(
        _build_spec(args, code), code, host, port, seed,
        ot_mode=args.ot_mode, reveal=args.reveal, unsafe=args.unsafe,
    )
    if args.transcript:
        transcript.write(args.transcript)
    print(f"output: {receiver.output.value}")
    return EXIT_OK


def _parse_int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def cmd_analyze(args) -> int:
    code = load_code(args.code)
    records = []
    if args.revealed is not None or args.values is not None:
        positions = _parse_int_list(args.revealed or "")
        values = _parse_int_list(args.values or "")
        if len(positions) != len(values):
            raise ValueError(f"{len(positions)} positions but {len(values)} values")
        report = analysis.leakage_report(code, dict(zip(positions, values)))
        print(f"revealed: {sorted(report.revealed_positions)}")
        print(f"leaked dimension: {report.leaked_dimension}")
        print(f"posterior: {report.posterior_size} messages, uniform: {str(report.posterior_uniform).lower()}")
        for msg, mult in sorted(report.posterior.items()):
            print(f"  {''.join(map(str, msg)) if code.q <= 10 else ','.join(map(str, msg))}  x{mult}")
        records.append({
            "kind": "posterior",
            "revealed": sorted(report.revealed_positions),
            "leaked_dimension": report.leaked_dimension,
            "posterior_size": report.posterior_size,
            "posterior_uniform": report.posterior_uniform,
        })
    if args.wtc2_sweep is not None:
        table = analysis.wtc2_sweep(code, args.wtc2_sweep, rng=SeededRng(_seed(args)) if code.n > analysis.EXHAUSTIVE_SWEEP_MAX_N else None)
        print(table.format())
        print(f"violations: {len(table.violations)}")
        for row in table.rows:
            records.append({
                "kind": "wtc2_sweep",
                "size": row.size,
                "max_leakage": row.max_leakage,
                "bound": row.bound,
                "sets_checked": row.sets_checked,
                "exhaustive": row.exhaustive,
            })
    if not records:
        raise ValueError("nothing to analyze: give --revealed/--values or --wtc2-sweep")
    if args.records:
        _write_records(args.records, records)
    return EXIT_OK


def _write_records(path, records):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def cmd_bounds(args) -> int:
    q = args.q
    PrimeField(q)
    print(f"q: {q}")
    print(f"min rate (existence): {analysis.min_bound_rate(q):.14f}")
    print(f"max rate (Sperner):   {analysis.max_rate(q):.14f}")
    records = []
    if args.n_max is not None:
        print(f"{'n':>3} {'k':>3} {'rate':>7} {'margin>0':>8}  [n,k]_q")
        for n in range(max(args.n_min, 2), args.n_max + 1):
            for k in range(max(args.k_min, 2), min(args.k_max, n) + 1):
                row = analysis.bounds_row(q, n, k)
                positive = row.existence_margin > 0
                print(f"{n:>3} {k:>3} {k / n:>7.4f} {str(positive).lower():>8}  {row.gaussian_nk}")
                records.append(row.as_record())
    if args.records:
        _write_records(args.records, records)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coset2pc", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-code", help="construct a code and certify it")
    g.add_argument("kind", choices=["simplex", "expand", "search", "paper-9-4", "paper-20-4"])
    g.add_argument("--r", type=int, default=3)
    g.add_argument("--q", type=int, default=2)
    g.add_argument("--in", dest="input")
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--trials", type=int, default=1000)
    g.add_argument("--seed", type=int)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen_code)

    c = sub.add_parser("check", help="minimality, intersection, weights and GHW of a code file")
    c.add_argument("code")
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("run", help="execute the protocol")
    r.add_argument("role", choices=["local", "p1", "p2"])
    r.add_argument("--function", choices=["scalar", "euclid", "hamming"], default="scalar")
    r.add_argument("--x")
    r.add_argument("--y")
    r.add_argument("--code", required=True)
    r.add_argument("--seed", type=int)
    r.add_argument("--listen", help="HOST:PORT (p1)")
    r.add_argument("--connect", help="HOST:PORT (p2)")
    r.add_argument("--reveal", action="store_true", help="P2 sends the result back to P1")
    r.add_argument("--ot-mode", choices=["batched", "sequential"], default="batched")
    r.add_argument("--transcript", help="transcript path (socket roles)")
    r.add_argument("--transcript-dir", help="directory for p1.jsonl/p2.jsonl (local)")
    r.add_argument("--unsafe", action="store_true", help="skip the minimality refusal")
    r.add_argument("--allow-wraparound", action="store_true", help="hamming: accept q <= r (result mod q)")
    r.set_defaults(func=cmd_run)

    a = sub.add_parser("analyze", help="leakage of revealed coordinates")
    a.add_argument("--code", required=True)
    a.add_argument("--revealed", help="comma-separated 1-based positions")
    a.add_argument("--values", help="comma-separated values at those positions")
    a.add_argument("--wtc2-sweep", type=int, metavar="MAX_SIZE")
    a.add_argument("--seed", type=int)
    a.add_argument("--records", help="write JSON-lines records here")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("bounds", help="rate bounds and existence margins")
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--n-min", type=int, default=2)
    b.add_argument("--n-max", type=int)
    b.add_argument("--k-min", type=int, default=2)
    b.add_argument("--k-max", type=int, default=4)
    b.add_argument("--records")
    b.set_defaults(func=cmd_bounds)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except NotMinimalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSAL
    except (TransportError, ProtocolError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRANSPORT
    except (Coset2pcError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point ``fsmid``.

Exit status: 0 on success (an UNSAT or exhausted search is a success), 2 on
a usage error, 3 on a file or format error, 4 on an observation conflict or
an inadequate test-state set.  Diagnostics go to stderr; data go to stdout
or to the file named by ``-o``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench as benchmod
from . import charmatrix as cm
from .automata import Alphabet, machine_from_json, to_dot
from .errors import ClosureError, FormatError, FsmidError, InadequacyError, InputDomainError, ObservationConflict
from .observations import (
    ObservationSet,
    format_tsv,
    gen_random_target,
    parse_tsv,
    parse_words,
    sample_crash_retrieval,
    sample_flight_show,
    sample_observational,
)
from .sat import format_model, parse_dimacs, solve as sat_solve, verify_external
from .solvers import count_consistent, min_k, reduce_cnf
from .timid import identify_incremental

EXIT_OK, EXIT_USAGE, EXIT_FORMAT, EXIT_CONFLICT = 0, 2, 3, 4
DEFAULT_BUDGET = 16


class UsageError(Exception):
    pass


# -- file helpers -----------------------------------------------------------

def _read(path) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write(path, text: str, stdout):
    if path is None or path == "-":
        stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def instance_to_json(d: ObservationSet, k: int) -> str:
    """Self-contained instance bundle: alphabets, budget and inline observations."""
    bundle = {
        "input_alphabet": list(d.input_alphabet.symbols),
        "output_alphabet": list(d.output_alphabet.symbols),
        "k": k,
        "observations": [[d.input_alphabet.format(w), d.output_alphabet.symbols[o]] for w, o in d.items()],
    }
    return json.dumps(bundle, indent=1, ensure_ascii=False) + "\n"


def instance_from_json(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(obj, dict):
        raise FormatError("instance must be a JSON object")
    try:
        sigma = Alphabet(tuple(obj["input_alphabet"]))
        omega = Alphabet(tuple(obj["output_alphabet"]))
        k = obj["k"]
        rows = obj["observations"]
    except KeyError as exc:
        raise FormatError(f"missing key {exc.args[0]!r}") from None
    except (InputDomainError, TypeError) as exc:
        raise FormatError(f"bad alphabet: {exc}") from None
    if type(k) is not int or k < 1:
        raise FormatError(f"bad state budget {k!r}")
    d = ObservationSet(sigma, omega)
    for i, row in enumerate(rows):
        if not (isinstance(row, list) and len(row) == 2 and all(isinstance(x, str) for x in row)):
            raise FormatError(f"observation {i} must be a [string, output] pair")
        try:
            d = d.insert(sigma.parse(row[0]), omega.index(row[1]))
        except InputDomainError as exc:
            raise FormatError(f"observation {i}: {exc}") from None
    return d, k


def _load_observations(path):
    """Observation TSV, or an instance bundle (returns its budget as well)."""
    text = _read(path)
    if text.lstrip().startswith("{"):
        return instance_from_json(text)
    return parse_tsv(text), None


def _load_words(source, d: ObservationSet, budget: int, auto):
    if source == "auto":
        return auto(d, budget)
    return parse_words(_read(source), d.input_alphabet)


# -- subcommands ------------------------------------------------------------

def cmd_gen(args, out):
    m = gen_random_target(args.states, args.sigma, args.omega, args.seed)
    _write(args.output, m.to_json(), out)


def cmd_sample(args, out):
    m = machine_from_json(_read(args.machine))
    if args.mode == "observational":
        d = sample_observational(m, args.walks, args.max_len, args.dropout, args.seed)
    elif args.mode == "crash":
        if args.depth is None:
            raise UsageError("--mode crash needs --depth")
        d = sample_crash_retrieval(m, args.depth)
    else:
        if args.traces is None:
            raise UsageError("--mode flightshow needs --traces")
        traces = parse_words(_read(args.traces), m.input_alphabet)
        d = sample_flight_show(m, traces, args.repetitions)
    _write(args.output, format_tsv(d), out)


def cmd_matrix(args, out):
    d, _ = _load_observations(args.data)
    T = _load_words(args.T, d, args.budget, cm.auto_tests)
    E = _load_words(args.E, d, args.budget, cm.auto_experiments)
    mx = cm.build(d, T, E)
    count, density, positions = cm.holes(mx)
    fmt = d.input_alphabet.format
    lines = [mx.pretty().rstrip("\n"), ""]
    lines.append(f"holes={count} density={density:.6f}")
    for t, e in positions if args.list_holes else ():
        lines.append(f"  hole\t{fmt(t)}\t{fmt(e)}")
    ties = cm.tied_rows(mx)
    if not ties.classes:
        lines.append("tie classes: none (no hole-free rows)")
    for i, cls in enumerate(ties.classes):
        lines.append(f"class {i}: " + " ".join(fmt(r) for r in cls))
    st = cm.status(mx)
    lines.append(f"hole_free={_flag(st.hole_free)} closed={_flag(st.closed)} consistent={_flag(st.consistent)}")
    out.write("\n".join(lines) + "\n")


def _flag(b):
    return "true" if b else "false"


def cmd_solve(args, out):
    d, bundle_k = _load_observations(args.data)
    k_max = args.k_max if args.k_max is not None else bundle_k
    if k_max is None:
        raise UsageError("--k-max is required for observation files")
    if args.count:
        text = "".join(f"count(k={k})={count_consistent(d, k)}\n" for k in range(1, k_max + 1))
        _write(args.output, text, out)
        return
    found = min_k(d, k_max, args.method)
    if found is None:
        _write(args.output, "k_min=none\n", out)
    else:
        k, m = found
        _write(args.output, f"k_min={k}\n" + m.to_json(), out)


def cmd_reduce(args, out):
    inst = reduce_cnf(parse_dimacs(_read(args.formula)))
    _write(args.output, instance_to_json(inst.d, inst.k), out)


def cmd_sat(args, out):
    phi = parse_dimacs(_read(args.formula))
    if args.verify is not None:
        model = verify_external(phi, _read(args.verify))
        out.write("verified SAT\n" if model is not None else "reported UNSAT (not checked)\n")
        return
    _write(args.output, format_model(sat_solve(phi), phi.n_vars), out)


def cmd_timid(args, out):
    m = machine_from_json(_read(args.machine))
    _write(args.output, identify_incremental(m, args.max_len).to_csv(), out)


def cmd_bench(args, out):
    d = parse_tsv(_read(args.data)) if args.data else benchmod.load_fixture()
    if args.suite == "blowup":
        rows = benchmod.run_blowup(d, args.k_max, args.seed)
    else:
        rows = benchmod.run_kernels(d, args.k_max)
    _write(args.output, benchmod.report_bench(rows), out)


def cmd_export_dot(args, out):
    _write(args.output, to_dot(machine_from_json(_read(args.machine))), out)


# -- parser -----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _natural(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def _probability(text):
    v = float(text)
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"expected a value in [0, 1], got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fsmid", description="Identify finite state machines from partial observations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="random target machine as JSON")
    g.add_argument("--states", type=_positive, required=True)
    g.add_argument("--sigma", type=_positive, required=True)
    g.add_argument("--omega", type=_positive, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("sample", help="observe a target machine")
    s.add_argument("-m", "--machine", required=True)
    s.add_argument("--mode", choices=("observational", "crash", "flightshow"), required=True)
    s.add_argument("--walks", type=_natural, default=10)
    s.add_argument("--max-len", type=_natural, default=5)
    s.add_argument("--dropout", type=_probability, default=0.0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--depth", type=_natural)
    s.add_argument("--traces")
    s.add_argument("--repetitions", type=_positive, default=1)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_sample)

    mx = sub.add_parser("matrix", help="print the characterization matrix")
    mx.add_argument("-d", "--data", required=True)
    mx.add_argument("--T", default="auto", help="'auto' or a file with one test string per line")
    mx.add_argument("--E", default="auto", help="'auto' or a file with one experiment string per line")
    mx.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    mx.add_argument("--list-holes", action="store_true", help="print every hole position")
    mx.set_defaults(func=cmd_matrix)

    sv = sub.add_parser("solve", help="smallest consistent machine, or ambiguity counts")
    sv.add_argument("-d", "--data", required=True, help="observation TSV or instance JSON")
    sv.add_argument("--method", choices=("brute", "sat"), default="brute")
    sv.add_argument("--k-max", type=_positive)
    sv.add_argument("--count", action="store_true")
    sv.add_argument("-o", "--output")
    sv.set_defaults(func=cmd_solve)

    r = sub.add_parser("reduce", help="CNF formula to identification instance")
    r.add_argument("-f", "--formula", required=True)
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_reduce)

    st = sub.add_parser("sat", help="solve a DIMACS formula or verify an external model")
    st.add_argument("-f", "--formula", required=True)
    st.add_argument("--verify", metavar="RESULT")
    st.add_argument("-o", "--output")
    st.set_defaults(func=cmd_sat)

    t = sub.add_parser("timid", help="convergence log of the merging learner")
    t.add_argument("-m", "--machine", required=True)
    t.add_argument("--max-len", type=_natural, required=True)
    t.add_argument("-o", "--output")
    t.set_defaults(func=cmd_timid)

    b = sub.add_parser("bench", help="scaling measurements as CSV")
    b.add_argument("--suite", choices=("blowup", "kernels"), default="blowup")
    b.add_argument("--k-max", type=_positive, default=4)
    b.add_argument("-d", "--data", help="observation TSV (default: shipped fixture)")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_bench)

    x = sub.add_parser("export-dot", help="Graphviz description of a machine")
    x.add_argument("-m", "--machine", required=True)
    x.add_argument("-o", "--output")
    x.set_defaults(func=cmd_export_dot)

    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        args.func(args, stdout)
    except UsageError as exc:
        print(f"fsmid {args.command}: {exc}", file=stderr)
        return EXIT_USAGE
    except (ObservationConflict, InadequacyError) as exc:
        print(f"fsmid {args.command}: {exc}", file=stderr)
        return EXIT_CONFLICT
    except (OSError, FormatError, ClosureError, UnicodeDecodeError) as exc:
        print(f"fsmid {args.command}: {exc}", file=stderr)
        return EXIT_FORMAT
    except FsmidError as exc:
        # domain errors on the supplied values (alphabet sizes, closures, ...)
        print(f"fsmid {args.command}: {exc}", file=stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

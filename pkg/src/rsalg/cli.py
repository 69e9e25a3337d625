"""Command-line front end.

Exit codes: 0 success, 1 property falsified, 2 input error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import corpus
from ._linalg import DEFAULT_TOL
from .analysis.norms import b_norm, sigma_r_norm
from .errors import AxiomError, InputError, NumericalError, PropertyViolation
from .groupoid import build_associated_groupoid
from .io import parse_function, render_groupoid, render_rep
from .restricted import build_restricted_semigroup, lambda_r, rho_r
from .semigroup import parse_semigroup, render_semigroup
from .verify import render_report, render_text, verify_all

EXIT_OK, EXIT_PROPERTY, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3
EMITTABLE = ("sr", "sa", "lambda", "rho")


class UsageError(InputError):
    pass


def _source(p, positional=True):
    g = p.add_argument_group("semigroup source")
    g.add_argument("--builtin", metavar="NAME", help=f"one of {', '.join(corpus.NAMES)}, or 'all'")
    g.add_argument("--input", metavar="PATH", help="semigroup file (JSON tables)")
    if positional:
        g.add_argument("path", nargs="?", help="same as --input")


def _common(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--out", metavar="PATH")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rsalg", description="Restricted Fourier-Stieltjes algebras of finite inverse semigroups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate the inverse semigroup axioms")
    _source(p)
    _common(p)

    p = sub.add_parser("construct", help="write S_r, S_a and the regular representations")
    _source(p)
    _common(p)
    p.add_argument("--emit", required=True, metavar="LIST", help="comma list from sr,sa,lambda,rho")

    p = sub.add_parser("norm", help="Sigma_r norm of f or dual norm of u")
    _source(p)
    _common(p)
    p.add_argument("--function", required=True, metavar="PATH")
    p.add_argument("--which", choices=("sigma_r", "b"), required=True)

    p = sub.add_parser("verify", help="run the full property suite")
    _source(p)
    _common(p)

    p = sub.add_parser("groupoid", help="associated groupoid tools")
    p.add_argument("action", choices=("export",))
    _source(p, positional=False)
    _common(p)
    return parser


def load(args):
    """List of semigroups named by the arguments; raises before any computation."""
    path = args.input or getattr(args, "path", None)
    if args.builtin and path:
        raise UsageError("give either --builtin or an input file, not both")
    if args.builtin:
        try:
            return corpus.resolve(args.builtin)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    if not path:
        raise UsageError("no semigroup given (use --builtin NAME or --input PATH)")
    S = parse_semigroup(Path(path).read_text())
    return [S if S.name else replace(S, name=Path(path).stem)]


def single(args):
    items = load(args)
    if len(items) != 1:
        raise UsageError(f"'{args.command}' takes a single semigroup")
    return items[0]


def write(args, text):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_check(args):
    path = args.input or args.path
    try:
        items = load(args)
    except AxiomError as exc:
        report = exc.report
        label = Path(path).stem if path else "input"
        if args.format == "structured":
            write(args, json.dumps({"name": label, **report.to_dict()}, indent=2) + "\n")
        else:
            lines = [f"{label}: INVALID"]
            for axiom, witness in report.violations:
                lines.append(f"  {axiom}: {list(witness)}")
            write(args, "\n".join(lines) + "\n")
        return EXIT_PROPERTY
    docs = []
    for S in items:
        docs.append({"name": S.name, "n": S.n, "valid": True, "violations": [],
                     "identity": S.identity, "zero": S.zero})
    if args.format == "structured":
        write(args, json.dumps(docs if len(docs) > 1 else docs[0], indent=2) + "\n")
    else:
        lines = []
        for d in docs:
            extra = f", zero element {d['zero']}" if d["zero"] is not None else ""
            lines.append(f"{d['name']}: valid (n={d['n']}, identity {d['identity']}{extra})")
        write(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_construct(args):
    wanted = [w.strip() for w in args.emit.split(",") if w.strip()]
    if not wanted:
        raise UsageError("--emit needs at least one of " + ",".join(EMITTABLE))
    unknown = sorted(set(wanted) - set(EMITTABLE))
    if unknown:
        raise UsageError(f"cannot emit {', '.join(unknown)}; choose from {','.join(EMITTABLE)}")
    outdir = Path(args.out or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for S in load(args):
        makers = {
            "sr": lambda: render_semigroup(build_restricted_semigroup(S).sr),
            "sa": lambda: render_groupoid(build_associated_groupoid(S)),
            "lambda": lambda: render_rep(lambda_r(S)),
            "rho": lambda: render_rep(rho_r(S)),
        }
        for what in wanted:
            target = outdir / f"{S.name}_{what}.json"
            target.write_text(makers[what]())
            written.append(str(target))
    sys.stdout.write("\n".join(written) + "\n")
    return EXIT_OK


def cmd_norm(args):
    S = single(args)
    f = parse_function(Path(args.function).read_text(), S)
    report = sigma_r_norm(S, f) if args.which == "sigma_r" else b_norm(S, f, seed=args.seed)
    if args.format == "structured":
        doc = {"semigroup": S.name, "which": args.which, **report.to_dict()}
        write(args, json.dumps(doc, indent=2) + "\n")
    else:
        write(args, f"{args.which} norm = {report.value:.12g}  (method {report.method}, "
                    f"bounds [{report.lower_bound:.12g}, {report.upper_bound:.12g}])\n")
    return EXIT_OK


def cmd_verify(args):
    report = verify_all(load(args), seed=args.seed, tol=args.tol)
    write(args, render_report(report) if args.format == "structured" else render_text(report))
    return EXIT_OK if report["status"] == "pass" else EXIT_PROPERTY


def cmd_groupoid(args):
    G = build_associated_groupoid(single(args))
    write(args, render_groupoid(G))
    return EXIT_OK


COMMANDS = {"check": cmd_check, "construct": cmd_construct, "norm": cmd_norm,
            "verify": cmd_verify, "groupoid": cmd_groupoid}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except PropertyViolation as exc:
        print(f"property falsified: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

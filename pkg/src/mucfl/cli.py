"""Command-line front end.

Exit status: 0 on success, equal languages or an all-pass suite; 1 when an
equivalence is refuted or a law check fails; 2 on usage or parse errors.
Term arguments starting with ``@`` are read from the named file.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from mucfl.axioms import Law, SuiteConfig, run_suite
from mucfl.grammar import bekic_term, grammar_eval, to_grammar
from mucfl.parsing import ParseError, parse_grammar, parse_term, print_grammar, print_term
from mucfl.semantics import DEFAULT_K, canonical_eval, equiv_upto, format_word
from mucfl.syntax import approximant, is_identifier

EXIT_OK, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise _UsageError(f"{self.prog}: error: {message}")


def _read(arg: str) -> str:
    if arg.startswith("@"):
        try:
            return Path(arg[1:]).read_text(encoding="utf-8")
        except OSError as exc:
            raise _UsageError(f"cannot read {arg[1:]}: {exc.strerror}") from exc
    return arg


def _term(arg: str):
    return parse_term(_read(arg))


def _grammar(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_grammar(text)


def _bound(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid bound {text!r}") from None
    if k < 0:
        raise argparse.ArgumentTypeError("bound must be non-negative")
    return k


def _identifier(text: str) -> str:
    if not is_identifier(text):
        raise argparse.ArgumentTypeError(f"invalid variable name {text!r}")
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mucfl", description="mu-expressions and context-free grammars, checked up to a word-length bound")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="list the words of length <= k denoted by a term")
    p.add_argument("-k", type=_bound, default=DEFAULT_K)
    p.add_argument("term")

    p = sub.add_parser("equiv", help="compare two terms up to length k")
    p.add_argument("-k", type=_bound, default=DEFAULT_K)
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("approx", help="print the unsimplified n-th approximant of mu x.term")
    p.add_argument("-n", type=_bound, required=True)
    p.add_argument("-x", type=_identifier, required=True)
    p.add_argument("term")

    p = sub.add_parser("to-grammar", help="flatten a term into a grammar")
    p.add_argument("term")

    p = sub.add_parser("from-grammar", help="print a closed term for a grammar nonterminal")
    p.add_argument("-v", type=_identifier, default=None)
    p.add_argument("file")

    p = sub.add_parser("check", help="run the randomized law suite")
    p.add_argument("-k", type=_bound, default=DEFAULT_K)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--law", choices=[law.value for law in Law], default=None)

    p = sub.add_parser("lang", help="list the words of length <= k generated by a grammar file")
    p.add_argument("-k", type=_bound, default=DEFAULT_K)
    p.add_argument("-v", type=_identifier, default=None)
    p.add_argument("file")
    return parser


def _run(args: argparse.Namespace, out) -> int:
    if args.command == "eval":
        for w in canonical_eval(_term(args.term), args.k).sorted():
            print(format_word(w), file=out)
        return EXIT_OK
    if args.command == "equiv":
        result = equiv_upto(_term(args.left), _term(args.right), args.k)
        print(result, file=out)
        return EXIT_OK if result.equal else EXIT_REFUTED
    if args.command == "approx":
        print(print_term(approximant(args.n, args.x, _term(args.term))), file=out)
        return EXIT_OK
    if args.command == "to-grammar":
        t = _term(args.term)
        try:
            g = to_grammar(t)
        except ValueError as exc:
            raise _UsageError(str(exc)) from exc
        print(print_grammar(g), file=out)
        return EXIT_OK
    if args.command == "from-grammar":
        g = _grammar(args.file)
        v = args.v or g.start
        if v not in g.nonterminals:
            raise _UsageError(f"{v!r} is not a nonterminal of {args.file}")
        print(print_term(bekic_term(g, v)), file=out)
        return EXIT_OK
    if args.command == "lang":
        g = _grammar(args.file)
        v = args.v or g.start
        if v not in g.nonterminals:
            raise _UsageError(f"{v!r} is not a nonterminal of {args.file}")
        for w in grammar_eval(g, args.k)[v].sorted():
            print(format_word(w), file=out)
        return EXIT_OK
    assert args.command == "check"
    if args.cases < 1 or args.seed < 0:
        raise _UsageError("--cases must be positive and --seed non-negative")
    laws = (Law(args.law),) if args.law else tuple(Law)
    reports = run_suite(SuiteConfig(seed=args.seed, cases=args.cases, k=args.k, laws=laws))
    for report in reports:
        print(report.line(), file=out)
    return EXIT_OK if all(r.verdict != "fail" for r in reports) else EXIT_REFUTED


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _run(args, out)
    except _UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())

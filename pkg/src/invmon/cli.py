"""``ik``: command-line front end.

Exit codes: 0 yes/success, 1 no/failed check, 2 unknown/truncated, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import graphs
from .analysis import check_loop_weights, mu_candidate_growth, mu_falsifier_search
from .families import FamilySpec, build_presentation, replicate
from .munn import FreeContext, munn_tree
from .stephen import Budget, Presentation, Verdict, closure, eq, is_idempotent, leq, parse_presentation
from .words import format_word

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 64

_VERDICT_EXIT = {Verdict.YES: EXIT_OK, Verdict.NO: EXIT_NO, Verdict.UNKNOWN: EXIT_UNKNOWN}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _lens(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values or min(values) < 0:
        raise argparse.ArgumentTypeError("length bounds must be nonnegative")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ik", description="Computations in finitely presented inverse monoids.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def presented(name, help_, words):
        cmd = sub.add_parser(name, help=help_)
        src = cmd.add_mutually_exclusive_group()
        src.add_argument("-p", "--presentation", metavar="FILE", help="presentation file")
        src.add_argument("--family", help="built-in family, e.g. St2 or TI1,2,3")
        cmd.add_argument("--alphabet", help="alphabet of the free presentation used when no -p is given")
        cmd.add_argument("--budget-rounds", type=_positive, default=Budget().max_rounds)
        cmd.add_argument("--budget-vertices", type=_positive, default=Budget().max_vertices)
        cmd.add_argument("--json", action="store_true", help="machine-readable output")
        for w in words:
            cmd.add_argument(w)
        return cmd

    m = sub.add_parser("munn", help="Munn tree of a word in the free inverse monoid")
    m.add_argument("word")
    m.add_argument("--alphabet")
    m.add_argument("--format", choices=["json", "dot"], default="json")
    m.add_argument("--json", action="store_true")

    presented("eq", "decide u = v", ["u", "v"])
    presented("leq", "decide u <= v in the natural order", ["u", "v"])
    presented("idem", "decide whether w is idempotent", ["word"])
    c = presented("closure", "Schützenberger automaton of w by Stephen's procedure", ["word"])
    c.add_argument("--format", choices=["json", "dot"], default="json")
    c.add_argument("--show-partial", action="store_true",
                   help="print the last approximant when the budget runs out")
    presented("rclass", "size of the R-class of w", ["word"])
    ms = presented("mu-search", "look for idempotents strictly between e and s", ["s"])
    ms.add_argument("e", nargs="?", help="candidate idempotent below s (not needed with --growth)")
    ms.add_argument("--max-len", type=int, default=8)
    ms.add_argument("--growth", type=_lens, metavar="L1,L2,...",
                    help="instead count maximal idempotents below s at each length bound")
    wt = presented("weights", "check letter weights of the cycles of A(w)", ["word"])
    wt.add_argument("--letter", required=True)
    wt.add_argument("--sample", type=_positive)

    fr = sub.add_parser("family-replicate", help="run the replication checks for a family")
    fr.add_argument("family", help="St<t> or TI<i,j,...>")
    fr.add_argument("--depth", type=_positive, default=3)
    fr.add_argument("--mu-len", type=int, default=8)
    fr.add_argument("--json", action="store_true")
    return parser


def _presentation(args) -> Presentation:
    if args.presentation:
        try:
            with open(args.presentation, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read presentation file: {exc}") from None
        try:
            return parse_presentation(text)
        except ValueError as exc:
            raise UsageError(f"{args.presentation}: {exc}") from None
    if args.family:
        try:
            return build_presentation(FamilySpec.parse(args.family))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return Presentation.free(_free_alphabet(args))


def _free_alphabet(args) -> str:
    if args.alphabet:
        return args.alphabet
    letters = set()
    for name in ("word", "u", "v", "s", "e"):
        letters.update(getattr(args, name, "") or "")
    letters = sorted({ch.lower() for ch in letters if ch.isalpha()})
    return "".join(letters) or "a"


def _word(p_or_ctx, text):
    try:
        return p_or_ctx.word(text)
    except ValueError as exc:
        raise UsageError(f"malformed word {text!r}: {exc}") from None


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _verdict(args, verdict: Verdict, **extra) -> int:
    if args.json:
        _emit(json.dumps({"verdict": verdict.value, **extra}, sort_keys=True))
    else:
        _emit(verdict.value)
    return _VERDICT_EXIT[verdict]


def _budget(args) -> Budget:
    return Budget(args.budget_rounds, args.budget_vertices)


def _truncation_warning(c) -> None:
    print(f"WARNING: Stephen's procedure truncated after {c.rounds_used} rounds "
          f"({c.automaton.vertex_count} vertices); result is only an approximation",
          file=sys.stderr)


def cmd_munn(args) -> int:
    try:
        ctx = FreeContext.of(args.alphabet or _free_alphabet(args))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    tree = graphs.canonical_form(munn_tree(ctx, _word(ctx, args.word)))
    if args.format == "dot" and not args.json:
        _emit(graphs.to_dot(tree, ctx.alphabet))
    else:
        _emit(graphs.to_json(tree, ctx.alphabet))
    return EXIT_OK


def cmd_eq(args) -> int:
    p = _presentation(args)
    u, v = _word(p, args.u), _word(p, args.v)
    return _verdict(args, eq(p, u, v, _budget(args)), u=args.u, v=args.v)


def cmd_leq(args) -> int:
    p = _presentation(args)
    u, v = _word(p, args.u), _word(p, args.v)
    return _verdict(args, leq(p, u, v, _budget(args)), u=args.u, v=args.v)


def cmd_idem(args) -> int:
    p = _presentation(args)
    return _verdict(args, is_idempotent(p, _word(p, args.word), _budget(args)), word=args.word)


def cmd_closure(args) -> int:
    p = _presentation(args)
    c = closure(p, _word(p, args.word), _budget(args))
    a = graphs.canonical_form(c.automaton)
    if not c.exact:
        _truncation_warning(c)
        if not args.show_partial:
            if args.json:
                _emit(json.dumps({"status": c.status.value, "rounds_used": c.rounds_used}, sort_keys=True))
            else:
                _emit(c.status.value)
            return EXIT_UNKNOWN
    if args.json:
        _emit(json.dumps({"status": c.status.value, "rounds_used": c.rounds_used,
                          "automaton": graphs.to_json_dict(a, p.alphabet)}, sort_keys=True))
    elif args.format == "dot":
        _emit(graphs.to_dot(a, p.alphabet))
    else:
        _emit(graphs.to_json(a, p.alphabet))
    return EXIT_OK if c.exact else EXIT_UNKNOWN


def cmd_rclass(args) -> int:
    p = _presentation(args)
    c = closure(p, _word(p, args.word), _budget(args))
    size = c.automaton.vertex_count if c.exact else None
    if not c.exact:
        _truncation_warning(c)
    if args.json:
        _emit(json.dumps({"word": args.word, "size": size, "status": c.status.value}, sort_keys=True))
    else:
        _emit(str(size) if size is not None else "Unknown")
    return EXIT_OK if c.exact else EXIT_UNKNOWN


def cmd_mu_search(args) -> int:
    p = _presentation(args)
    s = _word(p, args.s)
    budget = _budget(args)
    if args.growth:
        counts = mu_candidate_growth(p, s, args.growth, budget)
        if args.json:
            _emit(json.dumps({"target": args.s, "lens": args.growth, "counts": counts}, sort_keys=True))
        else:
            _emit(" ".join(f"{n}:{k}" for n, k in zip(args.growth, counts)))
        return EXIT_OK
    if args.e is None:
        raise UsageError("mu-search needs a candidate e unless --growth is given")
    e = _word(p, args.e)
    try:
        report = mu_falsifier_search(p, s, e, args.max_len, budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        _emit(report.to_json())
    else:
        _emit(f"target {report.target}, candidate {args.e}: {report.words_enumerated} trees "
              f"up to length {report.max_len}")
        for cand, witness in report.strict_between_found:
            _emit(f"  strictly between: {witness}")
        if not report.strict_between_found:
            _emit("  no strict intermediate idempotent found")
    if report.strict_between_found:
        return EXIT_NO
    return EXIT_UNKNOWN if report.unknown else EXIT_OK


def cmd_weights(args) -> int:
    p = _presentation(args)
    if args.letter not in p.alphabet:
        raise UsageError(f"letter {args.letter!r} not in alphabet")
    c = closure(p, _word(p, args.word), _budget(args))
    if not c.exact:
        _truncation_warning(c)
    r = check_loop_weights(c.automaton, p.alphabet.index(args.letter), args.sample, p.alphabet)
    if args.json:
        _emit(json.dumps({"letter": r.letter, "loops_checked": r.loops_checked,
                          "violations": r.violations, "status": c.status.value}, sort_keys=True))
    else:
        _emit(f"{r.loops_checked} cycles checked, {len(r.violations)} with nonzero {r.letter}-weight")
        for base, loop in r.violations:
            _emit(f"  at {base}: {loop}")
    if r.violations:
        return EXIT_NO
    return EXIT_OK if c.exact else EXIT_UNKNOWN


def cmd_family_replicate(args) -> int:
    try:
        spec = FamilySpec.parse(args.family)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = replicate(spec, depth=args.depth, mu_len=args.mu_len)
    _emit(report.to_json() if args.json else report.table())
    return EXIT_OK if report.passed else EXIT_NO


COMMANDS = {
    "munn": cmd_munn, "eq": cmd_eq, "leq": cmd_leq, "idem": cmd_idem, "closure": cmd_closure,
    "rclass": cmd_rclass, "mu-search": cmd_mu_search, "weights": cmd_weights,
    "family-replicate": cmd_family_replicate,
}


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"ik: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

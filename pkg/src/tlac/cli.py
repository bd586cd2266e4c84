"""Command-line front end.

Exit codes: 0 success, 1 domain failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import verify as verify_mod
from .coxeter import (
    CoxeterGraph,
    Side,
    canonical_form,
    enumerate_fc,
    format_word,
    graph,
    is_fc_reduced,
    parse_word,
)
from .diagram import from_generator_word, from_text, render_diagram, to_text, validate_admissible
from .heap import n_value, render_heap
from .starops import classified_irreducibles, is_irreducible, reduce_to_irreducible
from .theta import inverse_theta, theta_monomial, verify_faithfulness
from .tl import TLElement, normalize_word, tl_multiply


class DomainError(Exception):
    pass


def _graph(args) -> CoxeterGraph:
    if args.graph is None or args.n is None:
        raise DomainError("--graph and --n are required for this command")
    return graph(args.graph, args.n)


def _need_word(args) -> tuple[int, ...]:
    if args.word is None:
        raise DomainError("--word is required for this command")
    return parse_word(args.word)


def _element(args):
    g = _graph(args)
    word = _need_word(args)
    if not is_fc_reduced(g, word):
        raise DomainError(f"word '{format_word(word)}' is not fc-reduced over {g.describe()}")
    return g, canonical_form(g, word)


def cmd_enumerate(args) -> int:
    g = _graph(args)
    if args.max_len is None:
        raise DomainError("--max-len is required for enumerate")
    for e in enumerate_fc(g, args.max_len):
        rows = e.rows_text() or "e"
        if args.format == "tsv":
            print(f"{e.length}\t{rows}")
        else:
            print(rows)
    return 0


def cmd_fc_check(args) -> int:
    g = _graph(args)
    word = _need_word(args)
    print("fully commutative" if is_fc_reduced(g, word) else "not fully commutative")
    return 0


def cmd_heap(args) -> int:
    g, e = _element(args)
    print(f"rows: {e.rows_text() or 'e'}")
    if not e.is_identity:
        print(f"n-value: {n_value(e)}")
    picture = render_heap(e)
    if picture:
        print(picture)
    if args.fig:
        from .figures import save_heap_figure

        save_heap_figure(e, args.fig)
        print(f"figure: {args.fig}")
    return 0


def cmd_star(args) -> int:
    g, e = _element(args)
    trace = reduce_to_irreducible(e)
    text = trace.text()
    if text:
        print(text)
    print(f"end: {trace.end.rows_text() or 'e'}")
    return 0


def cmd_irreducible(args) -> int:
    g = _graph(args)
    if args.word is not None:
        _, e = _element(args)
        print("irreducible" if is_irreducible(e) else "reducible")
        return 0
    if args.max_len is None:
        raise DomainError("irreducible needs --word or --max-len")
    for e in classified_irreducibles(g, args.max_len):
        print(e.rows_text() or "e")
    return 0


def cmd_tl_mul(args) -> int:
    g = _graph(args)
    if args.words is not None:
        parts = [parse_word(part) for part in args.words.split(";")]
        if len(parts) != 2:
            raise DomainError("--words takes exactly two words separated by ';'")
        factors = []
        for word in parts:
            if not is_fc_reduced(g, word):
                raise DomainError(f"word '{format_word(word)}' is not fc-reduced")
            factors.append(TLElement.basis(canonical_form(g, word)))
        print(tl_multiply(factors[0], factors[1]).text())
        return 0
    word = _need_word(args)
    print(normalize_word(g, word).text())
    return 0


def cmd_diagram(args) -> int:
    g = _graph(args)
    word = _need_word(args)
    r = from_generator_word(g, word)
    scalar = []
    if r.two_exp:
        scalar.append(str(2**r.two_exp))
    if r.delta_exp:
        scalar.append("d" if r.delta_exp == 1 else f"d^{r.delta_exp}")
    if scalar:
        print("scalar: " + " * ".join(scalar))
    sys.stdout.write(to_text(r.diagram))
    if args.render:
        print(render_diagram(r.diagram))
    if args.fig:
        from .figures import save_diagram_figure

        save_diagram_figure(r.diagram, args.fig)
        print(f"figure: {args.fig}")
    return 0


def cmd_theta(args) -> int:
    g = _graph(args)
    if args.invert:
        with open(args.invert, "r", encoding="utf-8") as handle:
            d = from_text(handle.read())
        problems = validate_admissible(d)
        if problems:
            raise DomainError("inadmissible diagram: " + "; ".join(problems))
        e = inverse_theta(d)
        print(e.rows_text() or "e")
        return 0
    _, e = _element(args)
    d = theta_monomial(e)
    sys.stdout.write(to_text(d))
    print(f"a-value: {d.a_value()}")
    if args.render:
        print(render_diagram(d))
    return 0


def cmd_verify(args) -> int:
    if args.graph is not None:
        g = _graph(args)
        max_len = args.max_len if args.max_len is not None else 8
        report = verify_faithfulness(g, max_len)
        for line in report.summary_lines():
            print(line)
        return 0 if report.passed else 1

    results = verify_mod.full_suite(seed=args.seed)
    rows = []
    for res in results:
        rows.append(res.tsv_row() if args.format == "tsv" else res.text_line())
    print("\n".join(rows))
    for note in verify_mod.paper_discrepancy_notes():
        print(note)
    if args.figures_dir:
        os.makedirs(args.figures_dir, exist_ok=True)
        from .figures import save_avalue_figure, save_counts_figure

        written = []
        for res in results:
            base = os.path.join(args.figures_dir, res.name)
            if res.counts_by_length:
                save_counts_figure(res.counts_by_length, res.name, base + "-counts.png")
                written.append(base + "-counts.png")
            if res.a_values:
                save_avalue_figure(res.a_values, res.name, base + "-avalues.png")
                written.append(base + "-avalues.png")
        report_path = os.path.join(args.figures_dir, "verify.tsv")
        with open(report_path, "w", encoding="utf-8") as handle:
            handle.write("check\tstatus\tdetail\tseconds\n")
            for res in results:
                handle.write(res.tsv_row() + "\n")
        written.append(report_path)
        for path in written:
            print(f"wrote: {path}")
    ok = all(res.passed for res in results)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tlac",
        description="Temperley-Lieb algebra of type affine C: words, heaps, diagrams, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, *, word=False, words=False, max_len=False, render=False, fig=False):
        p.add_argument("--graph", choices=["a", "b", "bprime", "caffine"])
        p.add_argument("--n", type=int)
        if word:
            p.add_argument("--word", help="whitespace-separated 1-based generator indices")
        if words:
            p.add_argument("--words", help="two words separated by ';'")
        if max_len:
            p.add_argument("--max-len", type=int, dest="max_len")
        p.add_argument("--format", choices=["text", "tsv"], default="text")
        p.add_argument("--seed", type=int, default=0)
        if render:
            p.add_argument("--render", action="store_true", help="include the ASCII picture")
        if fig:
            p.add_argument("--fig", help="write a matplotlib rendering to this file")

    p = sub.add_parser("enumerate", help="list fully commutative elements up to a length bound")
    common(p, max_len=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("fc-check", help="test whether a word is fc-reduced")
    common(p, word=True)
    p.set_defaults(func=cmd_fc_check)

    p = sub.add_parser("heap", help="canonical rows, n-value and heap picture of a word")
    common(p, word=True, render=True, fig=True)
    p.set_defaults(func=cmd_heap)

    p = sub.add_parser("star", help="weak star reduction trace to an irreducible element")
    common(p, word=True)
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("irreducible", help="test a word, or list the classified irreducibles")
    common(p, word=True, max_len=True)
    p.set_defaults(func=cmd_irreducible)

    p = sub.add_parser("tl-mul", help="normalize a generator product, or multiply two monomials")
    common(p, word=True, words=True)
    p.set_defaults(func=cmd_tl_mul)

    p = sub.add_parser("diagram", help="fold a generator word into a diagram")
    common(p, word=True, render=True, fig=True)
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("theta", help="monomial image diagram, or invert a diagram file")
    common(p, word=True, render=True)
    p.add_argument("--invert", help="diagram file to map back to a canonical word")
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("verify", help="run the verification suites")
    common(p, max_len=True)
    p.add_argument("--figures-dir", dest="figures_dir", help="write PNG figures and a TSV report here")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``cnatlab <command> ...``.

Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .bijections import BijectionError, LabelledCnat, phi, psi
from .cnat import Cnat, DotGrid, cnat_count, enumerate_cnats, validate
from .harness import THEOREM_IDS, bnk_table, export, verify
from .perm import parse
from .render import DOT, parse_ascii, render, render_svg, render_svg_sheet

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _perm(text: str):
    try:
        p = parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if p.n < 1:
        raise InputError("empty permutation")
    return p


def _int_list(text: str) -> tuple[int, ...]:
    tokens = text.replace(",", " ").split()
    try:
        return tuple(int(t) for t in tokens)
    except ValueError:
        raise InputError(f"expected integers, got {text!r}") from None


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def load_grid(text: str) -> tuple[Cnat, tuple[int, ...] | None]:
    """Read a CNAT given as JSON (plain or labelled), text format, or an ASCII drawing."""
    stripped = text.strip()
    if not stripped:
        raise InputError("empty input")
    labels = None
    if stripped.startswith("{"):
        data = json.loads(stripped)
        if "cnat" in data:
            labels = tuple(data["labels"])
            data = data["cnat"]
        grid = DotGrid.from_json(data)
    elif DOT in stripped:
        grid = parse_ascii(text)
    else:
        grid = DotGrid.from_text(stripped)
    return validate(grid), labels


def cmd_count(args) -> int:
    print(cnat_count(_perm(args.perm)))
    return EXIT_OK


def cmd_list(args) -> int:
    p = _perm(args.perm)
    trees = enumerate_cnats(p)
    if args.format == "json":
        doc = {"permutation": p.to_json(), "count": len(trees),
               "cnats": [t.to_json() for t in trees]}
        text = json.dumps(doc) + "\n"
    elif args.format == "ascii":
        text = "\n".join(render(t, "ascii") for t in trees)
    elif args.format == "text":
        text = "\n".join(t.to_text() for t in trees)
    else:
        text = render_svg_sheet(trees)
    _write(text, args.out)
    return EXIT_OK


def cmd_psi(args) -> int:
    data = json.loads(_read(args.input))
    t = LabelledCnat.from_json(data)
    print(" ".join(map(str, psi(t))))
    return EXIT_OK


def cmd_phi(args) -> int:
    word = _int_list(args.word)
    labels = _int_list(args.labels) if args.labels else None
    t = phi(word, labels)
    if args.format == "json":
        text = json.dumps(t.to_json()) + "\n"
    elif args.format == "ascii":
        text = render(t.cnat, "ascii")
    else:
        text = render_svg(t.cnat, t.labels)
    _write(text, args.out)
    return EXIT_OK


def cmd_table(args) -> int:
    table = bnk_table(args.n_max, allow_stretch=args.allow_n9)
    _write(export(table, args.format), args.out)
    figure = args.figure
    if figure is None and args.out and not args.no_figure:
        figure = str(Path(args.out).with_suffix(".png"))
    if figure:
        from .figures import save_table_figure
        save_table_figure(table, figure)
        print(f"figure: {figure}", file=sys.stderr)
    odd = table.odd_entries()
    if odd:
        print("odd entries: " + " ".join(f"b({n},{k})={c}" for n, k, c in odd), file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    ids = THEOREM_IDS if args.id == "all" else (args.id,)
    reports = [verify(i, args.n_max, allow_stretch=args.allow_n9) for i in ids]
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=2))
    else:
        print("\n".join(r.to_text() for r in reports))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def cmd_render(args) -> int:
    t, labels = load_grid(_read(args.input))
    if args.format == "svg":
        text = render_svg(t, labels)
    else:
        text = render(t, "ascii")
    _write(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cnatlab", description=(
        "Complete non-ambiguous trees, permutation graphs and sandpile minimal recurrent "
        "configurations."))
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("count", help="number of CNATs of a permutation")
    s.add_argument("perm", help='one-line notation, e.g. "561243" or "5 6 1 2 4 3"')
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("list", help="enumerate the CNATs of a permutation")
    s.add_argument("perm")
    s.add_argument("--format", choices=["json", "ascii", "svg", "text"], default="json")
    s.add_argument("--out", help="write here instead of stdout")
    s.set_defaults(func=cmd_list)

    s = sub.add_parser("psi", help="word of a labelled upper-diagonal CNAT")
    s.add_argument("--in", dest="input", required=True, help='JSON {"labels":..,"cnat":..}, or -')
    s.set_defaults(func=cmd_psi)

    s = sub.add_parser("phi", help="labelled upper-diagonal CNAT of a word")
    s.add_argument("--word", required=True, help='e.g. "5 2 4"')
    s.add_argument("--labels", help="label set, e.g. 2,4,5 (defaults to the letters of the word)")
    s.add_argument("--format", choices=["json", "ascii", "svg"], default="json")
    s.add_argument("--out")
    s.set_defaults(func=cmd_phi)

    s = sub.add_parser("table", help="exhaustive b(n,k) table")
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.add_argument("--out", help="output file; a PNG figure is written next to it")
    s.add_argument("--figure", help="figure path (default: OUT with a .png suffix)")
    s.add_argument("--no-figure", action="store_true")
    s.add_argument("--allow-n9", action="store_true", help="permit n_max = 9 (slow)")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("verify", help="check a claim exhaustively")
    s.add_argument("--id", required=True, choices=[*THEOREM_IDS, "all"])
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.add_argument("--allow-n9", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("render", help="draw a CNAT")
    s.add_argument("--in", dest="input", required=True,
                   help="JSON, text format ('m n' then 'c r' lines) or an ASCII drawing; - for stdin")
    s.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    s.add_argument("--out")
    s.set_defaults(func=cmd_render)
    return ap


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, BijectionError, ValueError, KeyError, TypeError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())

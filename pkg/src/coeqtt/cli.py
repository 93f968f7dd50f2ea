"""Command-line driver.

    coeqtt check FILE... [--json] [--include-optional] [--no-color]
    coeqtt nf NAME FILE...
    coeqtt axioms NAME FILE...
    coeqtt check-all [--corpus DIR] [--include-optional] [--json] [--no-color]

Exit status: 0 on success, 1 on type errors or an unknown target, 2 on a
missing file or a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import nbe as N
from . import syntax as S
from .corpus import (check_files, default_corpus_dir, manifest_files, read_manifest,
                     with_deep_stack)

TYPE_WIDTH = 100


class _Args(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors exit with status 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Args(prog="coeqtt", description="Check .hott proof files.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Args)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="diagnostics as newline-delimited JSON")
        sp.add_argument("--no-color", action="store_true", help="plain output")

    c = sub.add_parser("check", help="check files in order")
    c.add_argument("files", nargs="+", type=Path)
    c.add_argument("--include-optional", action="store_true",
                   help="accepted for symmetry with check-all; files given explicitly are always checked")
    common(c)
    for name, text in (("nf", "print the normal form of a definition"),
                       ("axioms", "print the axioms a definition depends on")):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("name")
        sp.add_argument("files", nargs="+", type=Path)
        common(sp)
    a = sub.add_parser("check-all", help="check the files listed in the corpus manifest")
    a.add_argument("--corpus", type=Path, default=None)
    a.add_argument("--include-optional", action="store_true", help="also check optional files")
    common(a)
    return p


def _truncate(text: str, width: int = TYPE_WIDTH) -> str:
    return text if len(text) <= width else text[: width - 3] + "..."


def _paint(text: str, code: str, enabled: bool) -> str:
    return f"\x1b[{code}m{text}\x1b[0m" if enabled else text


def _check(files: list[Path], args, out, err, quiet: bool = False):
    missing = [f for f in files if not f.is_file()]
    if missing:
        for f in missing:
            print(f"coeqtt: no such file: {f}", file=err)
        return None, 2
    color = not args.no_color and not args.json and out.isatty()

    def on_accept(name: str, ty: Optional[str]) -> None:
        if quiet or args.json:
            return
        tag = _paint("ok", "32", color)
        print(f"{tag} {name}" + (f" : {_truncate(ty)}" if ty is not None else " (assertion)"), file=out)

    report = check_files(files, on_accept=on_accept)
    for d in report.diagnostics:
        if args.json:
            print(json.dumps(d.to_json(), sort_keys=True), file=out)
        else:
            print(_paint(d.render(), "31", color), file=err)
    return report, (0 if report.ok else 1)


def cmd_check(args, out=sys.stdout, err=sys.stderr) -> int:
    return _check(args.files, args, out, err)[1]


def cmd_check_all(args, out=sys.stdout, err=sys.stderr) -> int:
    corpus = args.corpus or default_corpus_dir()
    if not (corpus / "manifest.txt").is_file():
        print(f"coeqtt: no manifest at {corpus / 'manifest.txt'}", file=err)
        return 2
    if not args.include_optional:
        skipped = [e.file for e in read_manifest(corpus / "manifest.txt") if e.optional]
        for name in skipped:
            print(f"skip {name} (optional)", file=err)
    return _check(manifest_files(corpus, args.include_optional), args, out, err)[1]


def _target(args, out, err):
    report, status = _check(args.files, args, out, err, quiet=True)
    if status:
        return None, status
    if args.name in S.AXIOM_NAMES:
        return args.name, 0
    entry = report.sig.get(args.name)
    if entry is None:
        print(f"coeqtt: unknown name: {args.name}", file=err)
        return None, 1
    return entry, 0


def cmd_nf(args, out=sys.stdout, err=sys.stderr) -> int:
    entry, status = _target(args, out, err)
    if status:
        return status
    if isinstance(entry, str):  # an axiom is its own normal form
        print(entry, file=out)
        return 0
    print(with_deep_stack(lambda: S.print_core(N.quote(0, entry.value))), file=out)
    return 0


def cmd_axioms(args, out=sys.stdout, err=sys.stderr) -> int:
    entry, status = _target(args, out, err)
    if status:
        return status
    axioms = {entry} if isinstance(entry, str) else entry.axioms
    for name in sorted(axioms):
        print(name, file=out)
    return 0


COMMANDS = {"check": cmd_check, "nf": cmd_nf, "axioms": cmd_axioms, "check-all": cmd_check_all}


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    raise SystemExit(main())

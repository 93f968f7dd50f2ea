"""Checking files in dependency order, the corpus manifest, and golden types.

The manifest (``corpus/manifest.txt``) lists one file per line in
dependency order; a line ``optional: NAME`` marks a file that is only
checked on request.  ``corpus/goldens.txt`` records, per line, a
declaration name, a tab, and the printed normal form of its type.
"""

from __future__ import annotations

import sys
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, TypeVar

from . import nbe as N
from . import syntax as S
from .parser import Diagnostic, SurfaceDecl, parse_module
from .typecheck import AuditHook, Checker

T = TypeVar("T")

STACK_SIZE = 1 << 29
RECURSION_LIMIT = 1_000_000


def with_deep_stack(fn: Callable[[], T]) -> T:
    """Run ``fn`` in a thread with a large stack; evaluation of proofs recurses deeply."""
    result: list = []
    error: list = []

    def target() -> None:
        try:
            result.append(fn())
        except BaseException as e:  # re-raised in the calling thread
            error.append(e)

    old_limit = sys.getrecursionlimit()
    old_size = threading.stack_size()
    sys.setrecursionlimit(max(old_limit, RECURSION_LIMIT))
    threading.stack_size(STACK_SIZE)
    try:
        t = threading.Thread(target=target)
        t.start()
        t.join()
    finally:
        threading.stack_size(old_size)
    if error:
        raise error[0]
    return result[0]


@dataclass
class ManifestEntry:
    file: str
    optional: bool = False


def default_corpus_dir() -> Path:
    """The ``corpus/`` directory of a source checkout, or of the working directory."""
    here = Path(__file__).resolve().parents[2] / "corpus"
    return here if here.is_dir() else Path.cwd() / "corpus"


def read_manifest(path: Path) -> list[ManifestEntry]:
    entries = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("optional:"):
            entries.append(ManifestEntry(line[len("optional:"):].strip(), True))
        else:
            entries.append(ManifestEntry(line))
    return entries


def manifest_files(corpus_dir: Path, include_optional: bool = False) -> list[Path]:
    entries = read_manifest(Path(corpus_dir) / "manifest.txt")
    return [Path(corpus_dir) / e.file for e in entries if include_optional or not e.optional]


def read_goldens(path: Path) -> dict[str, str]:
    goldens = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        if not raw.strip() or raw.startswith("#"):
            continue
        name, _, ty = raw.partition("\t")
        goldens[name.strip()] = ty.strip()
    return goldens


def golden_type(entry: S.Entry) -> str:
    """The printed type of a declaration, with definitions left folded."""
    return S.print_core(N.quote(0, entry.type_value, unfold=False))


@dataclass
class FileResult:
    file: str
    accepted: list[str] = field(default_factory=list)
    assertions: list[str] = field(default_factory=list)
    diagnostics: list[Diagnostic] = field(default_factory=list)
    decls: list[SurfaceDecl] = field(default_factory=list)


@dataclass
class CheckReport:
    sig: S.Signature
    files: list[FileResult] = field(default_factory=list)

    @property
    def diagnostics(self) -> list[Diagnostic]:
        return [d for f in self.files for d in f.diagnostics]

    @property
    def ok(self) -> bool:
        return not self.diagnostics


def check_source(checker: Checker, source: str, file: str,
                 on_accept: Optional[Callable[[str, str], None]] = None) -> FileResult:
    """Parse and check one file's text, continuing after failed declarations."""
    result = FileResult(file)
    decls, parse_diags = parse_module(source, file)
    result.decls = decls
    for d in decls:
        diag = checker.check_declaration(d, file)
        if diag is not None:
            result.diagnostics.append(diag)
        elif d.kind == "def":
            result.accepted.append(d.name)
            if on_accept is not None:
                on_accept(d.name, golden_type(checker.sig[d.name]))
        else:
            result.assertions.append(d.name)
            if on_accept is not None:
                on_accept(d.name, None)
    result.diagnostics.extend(parse_diags)
    return result


def check_files(paths: list[Path], sig: Optional[S.Signature] = None, audit: Optional[AuditHook] = None,
                on_accept: Optional[Callable[[str, Optional[str]], None]] = None) -> CheckReport:
    """Check files in the given order against one growing signature."""
    checker = Checker(sig, audit)
    report = CheckReport(checker.sig)

    def run() -> None:
        for p in paths:
            text = Path(p).read_text(encoding="utf-8")
            report.files.append(check_source(checker, text, str(p), on_accept))

    with_deep_stack(run)
    return report

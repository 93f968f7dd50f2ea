from __future__ import annotations

from pathlib import Path

import pytest

from coeqtt.corpus import check_files, manifest_files

ROOT = Path(__file__).resolve().parents[1]
CORPUS = ROOT / "corpus"
PRELUDE = CORPUS / "prelude.hott"
BAD = Path(__file__).resolve().parent / "bad"
STATEMENTS = Path(__file__).resolve().parent / "statements.hott"


@pytest.fixture(scope="session")
def prelude_report():
    report = check_files([PRELUDE])
    assert report.ok, [d.render() for d in report.diagnostics]
    return report


@pytest.fixture(scope="session")
def level_audit():
    """Every eliminator use in the full corpus, as (name, level tag, codomain level)."""
    uses: list[tuple[str, int, int]] = []
    report = check_files(manifest_files(CORPUS, include_optional=True),
                         audit=lambda kw, tag, lv: uses.append((kw, tag, lv)))
    return report, uses


@pytest.fixture(scope="session")
def corpus_report(level_audit):
    report, _ = level_audit
    assert report.ok, [d.render() for d in report.diagnostics]
    return report

from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from coeqtt.corpus import check_files, golden_type, manifest_files, read_goldens, read_manifest, with_deep_stack

from conftest import BAD, CORPUS, STATEMENTS

ALLOWED_AXIOMS = {"funext", "univalence", "cgluebeta"}

# Headline results of the required corpus, one name per item.
REQUIRED = [
    "coeq_canon", "coeq_canon_biinv",
    "isWildCat", "isInitial",
    "ObC", "HomC", "catC", "ObD", "HomD", "catD",
    "Phi0_fun", "Phi0", "Phi0_biinv", "Phi1", "Phi1_biinv", "Phi1_id", "Phi1_comp",
    "pathover_fun_map", "pathover_fun_biinv",
    "D_initial", "C_initial",
    "coeq_path_ind", "coeq_path_beta_refl", "coeq_path_beta_glue",
    "Pushout", "pinl", "pinr", "pglue", "pushout_ind", "pushout_rec",
    "pushout_path_ind_left", "pushout_path_ind_right", "pushout_path_beta_refl", "pushout_path_beta_glue",
    "ObP", "HomP", "catP", "P_initial",
    "isEmbedding", "isEmbeddingFib", "emb_ap_to_fib", "emb_fib_to_ap", "pushout_preserves_embedding",
]


def test_manifest_lists_existing_files():
    entries = read_manifest(CORPUS / "manifest.txt")
    assert [e.file for e in entries if e.optional] == ["circle.hott", "counterexample.hott"]
    for e in entries:
        assert (CORPUS / e.file).is_file()


def test_required_corpus_has_every_result(corpus_report):
    for name in REQUIRED:
        assert name in corpus_report.sig, name


def test_golden_types(corpus_report):
    goldens = read_goldens(CORPUS / "goldens.txt")
    for name in REQUIRED:
        assert name in goldens, name

    def run():
        for name, ty in goldens.items():
            assert golden_type(corpus_report.sig[name]) == ty, name
    with_deep_stack(run)


def test_independent_statements(corpus_report):
    """Hand-written restatements are inhabited by the corpus terms."""
    report = check_files(manifest_files(CORPUS) + [STATEMENTS])
    assert report.ok, [d.render() for d in report.diagnostics]


def test_required_axioms(corpus_report):
    required = {Path(p).name for p in map(str, manifest_files(CORPUS))}
    for f in corpus_report.files:
        if Path(f.file).name not in required:
            continue
        for name in f.accepted:
            assert corpus_report.sig[name].axioms <= ALLOWED_AXIOMS, name


def test_path_algebra_is_axiom_free(corpus_report):
    for name in ["concat", "ap", "transport", "inv", "apd", "idtoeqv", "based_J"]:
        assert corpus_report.sig[name].axioms == frozenset(), name


def test_phi0_uses_univalence(corpus_report):
    assert "univalence" in corpus_report.sig["Phi0"].axioms


def test_conversion_assertions_present(corpus_report):
    asserted = {n for f in corpus_report.files for n in f.assertions}
    assert {"cind1_inj", "cind0_inj", "pushout_elim_inl", "pushout_elim_inr", "loop_obj_aut"} <= asserted


BAD_FILES = sorted(BAD.glob("*.hott"))


def expected_codes(path: Path) -> list[str]:
    first = path.read_text(encoding="utf-8").splitlines()[0]
    assert first.startswith("-- expect:")
    return first[len("-- expect:"):].split()


def test_there_are_twenty_bad_files():
    assert len(BAD_FILES) == 20
    assert (BAD / "unbound.hott") in BAD_FILES


@pytest.mark.parametrize("path", BAD_FILES, ids=lambda p: p.name)
def test_bad_file_diagnostic(path):
    report = check_files([path])
    assert [d.code for d in report.diagnostics] == expected_codes(path)
    lines = path.read_text(encoding="utf-8").split("\n")
    for d in report.diagnostics:
        assert d.message and d.file == str(path)
        # the span starts inside the file (end of input counts as inside)
        assert 1 <= d.span.line <= len(lines)
        assert 1 <= d.span.col <= len(lines[d.span.line - 1]) + 1


def test_unbound_name_via_cli():
    proc = subprocess.run([sys.executable, "-m", "coeqtt.cli", "check", "--json", str(BAD / "unbound.hott")],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    (record,) = [json.loads(line) for line in proc.stdout.splitlines()]
    assert record["code"] == "unbound-name"
    assert set(record) == {"file", "line", "col", "code", "message"}

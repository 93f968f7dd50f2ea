"""End-to-end acceptance checks, one PASS/FAIL line per criterion.

Run with ``pytest -v tests/test_acceptance.py`` or directly with
``python3 tests/test_acceptance.py``.  The stretch check (judgmental
computation of path induction at refl) is reported but never fails the run.
"""

from __future__ import annotations

import subprocess
import sys
import time
from pathlib import Path

import pytest

from coeqtt import nbe as N
from coeqtt import syntax as S
from coeqtt.corpus import (check_files, golden_type, manifest_files, read_goldens, read_manifest,
                           with_deep_stack)
from coeqtt.parser import parse_module, parse_term, print_module
from coeqtt.typecheck import Context, ElabError, Elaborator

HERE = Path(__file__).resolve().parent
ROOT = HERE.parent
CORPUS = ROOT / "corpus"
sys.path.insert(0, str(HERE))

from test_corpus import ALLOWED_AXIOMS, REQUIRED, expected_codes  # noqa: E402

TIME_LIMIT = 120.0
STRETCH_TIME_LIMIT = 60.0
STRETCH_FILE = CORPUS / "stretch" / "beta_refl_judgmental.hott"


def cli(*args, timeout=None):
    return subprocess.run([sys.executable, "-m", "coeqtt.cli", *args], capture_output=True, text=True,
                          cwd=ROOT, timeout=timeout)


def report(label: str, ok: bool, detail: str = "") -> str:
    line = f"{'PASS' if ok else 'FAIL'} {label}" + (f" -- {detail}" if detail else "")
    return line


# --- the criteria ---------------------------------------------------------------

def criterion_1() -> tuple[bool, str]:
    start = time.monotonic()
    proc = cli("check-all", "--no-color")
    elapsed = time.monotonic() - start
    if proc.returncode != 0:
        return False, f"check-all exited {proc.returncode}: {proc.stderr.strip()[:300]}"
    if elapsed >= TIME_LIMIT:
        return False, f"took {elapsed:.1f}s"
    sig = check_files(manifest_files(CORPUS)).sig
    goldens = read_goldens(CORPUS / "goldens.txt")
    missing = [n for n in REQUIRED if n not in sig or n not in goldens]
    if missing:
        return False, f"missing: {missing}"
    wrong = with_deep_stack(lambda: [n for n in REQUIRED if golden_type(sig[n]) != goldens[n]])
    if wrong:
        return False, f"golden type mismatch: {wrong}"
    return True, f"required corpus checked in {elapsed:.1f}s; {len(REQUIRED)} results match their golden types"


def criterion_2() -> tuple[bool, str]:
    rep = check_files(manifest_files(CORPUS))
    if not rep.ok:
        return False, rep.diagnostics[0].render()
    asserted = {n for f in rep.files for n in f.assertions}
    need = {"cind1_inj", "cind0_inj", "pushout_elim_inl", "pushout_elim_inr", "pushout_rec_on_inl"}
    return need <= asserted, f"conversion assertions passed: {sorted(need & asserted)}"


def criterion_3() -> tuple[bool, str]:
    rep = check_files(manifest_files(CORPUS) + [HERE / "statements.hott"])
    if not rep.ok:
        return False, rep.diagnostics[0].render()
    names = {"stmt_coeq_path_beta_refl", "stmt_coeq_path_beta_glue", "stmt_coeq_path_ind"}
    return names <= set(rep.files[-1].accepted), "both computation rules inhabit their stated types"


def stretch() -> tuple[bool, str]:
    files = [str(CORPUS / "prelude.hott"), str(CORPUS / "coeq_equality.hott"), str(STRETCH_FILE)]
    try:
        proc = cli("check", "--json", *files, timeout=STRETCH_TIME_LIMIT)
    except subprocess.TimeoutExpired:
        return False, f"not established: conversion did not finish within {STRETCH_TIME_LIMIT:.0f}s"
    if proc.returncode == 0:
        return True, "path induction computes to r at refl by conversion"
    return False, "not established: " + proc.stdout.strip()[:200]


def criterion_4() -> tuple[bool, str]:
    paths = manifest_files(CORPUS)
    sig = check_files(paths).sig
    problems = [name for name in REQUIRED if not sig[name].axioms <= ALLOWED_AXIOMS]
    for name in ["concat", "ap", "transport", "idtoeqv"]:
        if sig[name].axioms:
            problems.append(f"{name} uses axioms")
    if "univalence" not in sig["Phi0"].axioms:
        problems.append("Phi0 does not use univalence")
    # the command-line audit reports the same sets
    for name in ["concat", "Phi0", "pushout_preserves_embedding"]:
        proc = cli("axioms", name, *map(str, paths))
        if proc.returncode != 0 or proc.stdout.split() != sorted(sig[name].axioms):
            problems.append(f"'coeqtt axioms {name}' disagrees")
    return not problems, "; ".join(problems) or "axiom sets within {funext, univalence, cgluebeta}"


def criterion_5() -> tuple[bool, str]:
    prelude = check_files([CORPUS / "prelude.hott"])
    if not prelude.ok:
        return False, "prelude does not check"
    sig = prelude.sig

    def kernel_properties():
        for e in sig:
            nf = N.normalize((), e.body)
            if not S.alpha_equal(N.normalize((), nf), nf):
                return f"normalization not idempotent on {e.name}"
            try:
                Elaborator(sig).check(Context(), parse_term(S.print_core(nf)), e.type_value)
            except ElabError as err:
                return f"subject reduction fails on {e.name}: {err}"
        return None

    problem = with_deep_stack(kernel_properties)
    if problem:
        return False, problem
    hott_files = sorted(CORPUS.glob("**/*.hott"))
    for path in hott_files:
        decls, diags = parse_module(path.read_text(encoding="utf-8"), str(path))
        if diags or parse_module(print_module(decls))[0] != decls:
            return False, f"round trip fails on {path.name}"
    bad = sorted((HERE / "bad").glob("*.hott"))
    if len(bad) != 20:
        return False, f"expected 20 ill-typed files, found {len(bad)}"
    for path in bad:
        got = [d.code for d in check_files([path]).diagnostics]
        if got != expected_codes(path):
            return False, f"{path.name}: got {got}"
    return True, (f"{len(sig)} prelude bodies idempotent and re-checked; {len(hott_files)} files round-trip; "
                  f"{len(bad)} ill-typed files give their codes")


def criterion_6() -> tuple[bool, str]:
    optional = [e.file for e in read_manifest(CORPUS / "manifest.txt") if e.optional]
    without = cli("check-all", "--no-color")
    skipped = all(f"skip {name} (optional)" in without.stderr for name in optional)
    with_flag = cli("check-all", "--no-color", "--include-optional")
    if not (without.returncode == 0 and skipped):
        return False, "optional files not cleanly skipped without the flag"
    if with_flag.returncode != 0:
        return False, f"optional files fail: {with_flag.stderr.strip()[:300]}"
    ok = "ok loop_initial" in with_flag.stdout and "ok wrong_principle_false" in with_flag.stdout
    return ok, f"{optional} check with --include-optional, skipped without"


CRITERIA = [
    ("criterion 1: required corpus checks with golden types", criterion_1),
    ("criterion 2: judgmental computation of the eliminators", criterion_2),
    ("criterion 3: types of the two computation rules of path induction", criterion_3),
    ("criterion 4: axiom audit", criterion_4),
    ("criterion 5: kernel property suite", criterion_5),
    ("criterion 6: optional files behind a flag", criterion_6),
]


@pytest.mark.parametrize("label,fn", CRITERIA, ids=[f"criterion_{i + 1}" for i in range(len(CRITERIA))])
def test_criterion(label, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + report(label, ok, detail))
    assert ok, detail


def test_stretch_reported(capsys):
    ok, detail = stretch()
    with capsys.disabled():
        print("\n" + report("stretch (non-blocking): path induction at refl holds by conversion", ok, detail))


if __name__ == "__main__":
    results = [(label, *fn()) for label, fn in CRITERIA]
    for label, ok, detail in results:
        print(report(label, ok, detail))
    print(report("stretch (non-blocking): path induction at refl holds by conversion", *stretch()))
    sys.exit(0 if all(ok for _, ok, _ in results) else 1)

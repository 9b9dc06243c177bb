"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line (shown with ``-s`` and in
the terminal summary) and then asserts. All comparisons are exact set
equalities; the time limits are wall-clock budgets.
"""

import time
from pathlib import Path

import pytest

from conftest import ACCEPTANCE_LINES, EQUAL_AB_TERM, equal_counts, words_upto
from mucfl.axioms import Law, SuiteConfig, run_suite, stabilization_bound
from mucfl.grammar import bekic_term, derive_oracle, grammar_eval, to_grammar
from mucfl.parsing import parse_grammar, parse_term, print_grammar, print_term
from mucfl.semantics import canonical_eval, equiv_upto, language_term
from mucfl.syntax import GenConfig, alpha_eq, random_terms

GRAMMAR_FILE = Path(__file__).parent / "data" / "equal_ab.cfg"
GEN = GenConfig(alphabet=("a", "b"), max_depth=4, max_mu_nesting=2, seed=42)


def report(number, name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {name}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


@pytest.fixture(scope="module")
def suite():
    start = time.perf_counter()
    reports = run_suite(SuiteConfig(seed=42, cases=100, k=5))
    return reports, time.perf_counter() - start


def test_1_equal_ab_term_bounded():
    start = time.perf_counter()
    got = canonical_eval(parse_term(EQUAL_AB_TERM), 6).words
    elapsed = time.perf_counter() - start
    expected = equal_counts(6)
    ok = got == expected and len(got) == 29 and elapsed < 1.0
    report(1, "equal-count term at k=6", ok, f"{len(got)} words (expected {len(expected)}), {elapsed:.3f}s < 1s")


def test_2_grammar_term_agreement():
    start = time.perf_counter()
    g = parse_grammar(GRAMMAR_FILE.read_text(encoding="utf-8"))
    by_iteration = grammar_eval(g, 6)["S"].words
    by_derivation = derive_oracle(g, 6)["S"].words
    elapsed = time.perf_counter() - start
    ok = by_iteration == equal_counts(6) and by_derivation == by_iteration and elapsed < 1.0
    report(
        2, "grammar_eval = derive_oracle = criterion 1 set", ok,
        f"{len(by_iteration)}/{len(by_derivation)} words, {elapsed:.3f}s < 1s",
    )


def test_3_bekic_roundtrip():
    start = time.perf_counter()
    terms = random_terms(GEN, 50)
    bad = []
    for t in terms:
        assert t.fv <= {"a", "b"}
        g = to_grammar(t)
        result = equiv_upto(bekic_term(g, g.start), t, 6)
        if not result.equal:
            bad.append((print_term(t), str(result)))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30.0
    detail = f"{50 - len(bad)}/50 equal, {elapsed:.2f}s < 30s"
    report(3, "Bekic round-trip on 50 closed terms", ok, detail + (f"; first failure {bad[0]}" if bad else ""))


def test_4_axiom_suite(suite):
    reports, elapsed = suite
    failures = [r.line() for r in reports if r.verdict != "pass"]
    laws = {r.law for r in reports}
    ok = not failures and laws == set(Law) and len(reports) == 100 * len(Law) and elapsed < 120.0
    report(
        4, "axiom suite seed=42 cases=100 k=5", ok,
        f"{len(reports)} reports over {len(laws)} laws, {len(failures)} not passing, {elapsed:.2f}s < 120s",
    )


def test_5_stabilization_bound(suite):
    reports, _ = suite
    bound = stabilization_bound(2, 5)
    indices = [r.stabilization for r in reports if r.stabilization is not None]
    ok = bound == 64 and indices and max(indices) <= bound
    report(5, "stabilization indices <= 64", ok, f"{len(indices)} chain reports, max index {max(indices)}")


def test_6_truncation_coherence():
    start = time.perf_counter()
    terms = random_terms(GenConfig(alphabet=("a", "b"), seed=42), 100)
    bad = [print_term(t) for t in terms if canonical_eval(t, 4) != canonical_eval(t, 6).truncate(4)]
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10.0
    report(6, "truncation coherence k=4 vs k=6", ok, f"{100 - len(bad)}/100 coherent, {elapsed:.2f}s < 10s")


def test_7_refutation_sanity():
    omitted = ("a", "b", "a")
    words = [w for w in words_upto("ab", 3) if w != omitted]
    result = equiv_upto(parse_term("mu x. 1 + a x + b x"), language_term(words), 3)
    ok = result.counterexample == omitted and result.in_left is True
    report(7, "refutation returns the omitted word", ok, str(result))


def test_8_roundtrips():
    terms = random_terms(GenConfig(alphabet=("a", "b"), max_depth=6, max_mu_nesting=3, seed=42), 200)
    term_ok = sum(alpha_eq(parse_term(print_term(t)), t) for t in terms)
    text = GRAMMAR_FILE.read_text(encoding="utf-8")
    grammar_ok = print_grammar(parse_grammar(text)) == text.rstrip("\n")
    ok = term_ok == 200 and grammar_ok
    report(8, "parse/print round-trips", ok, f"{term_ok}/200 terms, grammar file identical: {grammar_ok}")

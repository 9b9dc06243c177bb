import io
import subprocess
import sys

import pytest

from conftest import EQUAL_AB_GRAMMAR, EQUAL_AB_TERM
from mucfl.axioms import Law, parse_report_line
from mucfl.cli import main
from mucfl.parsing import parse_term


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def grammar_file(tmp_path):
    path = tmp_path / "dyck.cfg"
    path.write_text(EQUAL_AB_GRAMMAR, encoding="utf-8")
    return str(path)


def test_equiv_equal():
    assert run("equiv", "-k", "4", "mu x. 1 + a x", "mu x. 1 + x a") == (0, "equal up to 4\n", "")


def test_equiv_refuted():
    code, out, _ = run("equiv", "-k", "3", "a a", "a a + b")
    assert code == 1
    assert out == "counterexample: b (in right only)\n"


def test_eval_equal_ab_term():
    assert run("eval", "-k", "2", EQUAL_AB_TERM) == (0, "eps\nab\nba\n", "")


def test_eval_is_sorted_and_default_bound():
    code, out, _ = run("eval", "mu x. 1 + x (a + b)")
    words = out.split()
    assert code == 0 and len(words) == 127
    assert words[:4] == ["eps", "a", "b", "aa"]
    assert len(set(words)) == len(words)


def test_eval_empty_language():
    assert run("eval", "-k", "3", "mu x. a x") == (0, "", "")


def test_approx():
    assert run("approx", "-n", "0", "-x", "x", "1 + a x") == (0, "0\n", "")
    assert run("approx", "-n", "2", "-x", "x", "1 + a x")[1] == "1 + a (1 + a 0)\n"


def test_to_grammar():
    code, out, _ = run("to-grammar", "a (mu x. 1 + b x)")
    assert code == 0
    assert out == "S -> a x\nx -> eps | b x\n"


def test_to_grammar_rejects_eps_terminal():
    code, _, err = run("to-grammar", "eps a")
    assert code == 2 and "eps" in err


def test_from_grammar(grammar_file):
    code, out, _ = run("from-grammar", grammar_file)
    assert code == 0
    assert parse_term(out) == parse_term(EQUAL_AB_TERM)
    code, out, _ = run("from-grammar", "-v", "A", grammar_file)
    assert code == 0 and out.startswith("mu A.")


def test_from_grammar_unknown_nonterminal(grammar_file):
    code, _, err = run("from-grammar", "-v", "a", grammar_file)
    assert code == 2 and "not a nonterminal" in err


def test_lang(grammar_file):
    assert run("lang", "-k", "2", grammar_file) == (0, "eps\nab\nba\n", "")
    assert run("lang", "-k", "3", grammar_file, "-v", "A") == (0, "a\naab\naba\nbaa\n", "")


def test_check_single_law():
    code, out, _ = run("check", "-k", "3", "--cases", "4", "--law", "samelists")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 4
    assert all(parse_report_line(line).law is Law.SAMELISTS for line in lines)


def test_check_all_laws_deterministic():
    first = run("check", "-k", "3", "--cases", "2", "--seed", "5")
    assert first[0] == 0
    assert len(first[1].splitlines()) == 2 * len(Law)
    assert first == run("check", "-k", "3", "--cases", "2", "--seed", "5")


def test_check_reports_failures(monkeypatch):
    from mucfl.semantics import Evaluator

    monkeypatch.setattr(Evaluator, "_lfp", lambda self, t, env: self.eval(t.body, {**env, t.var: frozenset()}))
    code, out, _ = run("check", "-k", "3", "--cases", "3", "--law", "park-eq")
    assert code == 1
    assert "VERDICT=fail" in out


def test_term_from_file(tmp_path):
    path = tmp_path / "t.mu"
    path.write_text(EQUAL_AB_TERM + "\n", encoding="utf-8")
    assert run("eval", "-k", "2", f"@{path}") == (0, "eps\nab\nba\n", "")
    assert run("equiv", "-k", "4", f"@{path}", EQUAL_AB_TERM)[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["eval", "-k", "-1", "a"],
        ["eval", "-k", "two", "a"],
        ["approx", "-n", "1", "a"],
        ["approx", "-n", "1", "-x", "mu", "a"],
        ["check", "--law", "nope"],
        ["check", "--cases", "0"],
        ["eval", "@/nonexistent/file"],
        ["lang", "/nonexistent/file"],
    ],
)
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == 2
    assert out == "" and err


def test_parse_error_exit_code():
    code, _, err = run("eval", "a +")
    assert code == 2
    assert err.startswith("parse error:") and "line 1, column 4" in err


def test_grammar_parse_error(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("S -> a eps\n", encoding="utf-8")
    code, _, err = run("lang", "-k", "2", str(path))
    assert code == 2 and err.startswith("parse error:")


def test_help_exits_zero():
    assert run("--help")[0] == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mucfl", "eval", "-k", "1", "a + 1"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout == "eps\na\n"

from itertools import product

import pytest
from hypothesis import settings, strategies as st

from mucfl.parsing import parse_grammar, parse_term
from mucfl.syntax import ONE, ZERO, Mu, Prod, Sum, Var, subst

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

EQUAL_AB_GRAMMAR = """\
S -> eps | a B | b A
A -> a S | b A A
B -> b S | a B B
"""

EQUAL_AB_TERM = "mu S. 1 + a (mu B. b S + a B B) + b (mu A. a S + b A A)"


def words_upto(alphabet, k):
    """Brute-force enumeration of alphabet^{<=k} as tuples."""
    return [w for n in range(k + 1) for w in product(sorted(alphabet), repeat=n)]


def equal_counts(k):
    """Brute-force oracle: words over {a,b} with as many a's as b's."""
    return {w for w in words_upto("ab", k) if w.count("a") == w.count("b")}


def rename_all(t, k=[0]):
    """Rename every binder to a brand new name: an alpha-equivalent copy."""
    if isinstance(t, Mu):
        k[0] += 1
        y = f"r{k[0]}"
        return Mu(y, rename_all(subst(t.body, t.var, Var(y))))
    if isinstance(t, (Sum, Prod)):
        return type(t)(rename_all(t.left), rename_all(t.right))
    return t


@pytest.fixture
def equal_ab_grammar():
    return parse_grammar(EQUAL_AB_GRAMMAR)


@pytest.fixture
def equal_ab_term():
    return parse_term(EQUAL_AB_TERM)


symbols = st.sampled_from(["a", "b"])
variables = st.sampled_from(["a", "b", "x", "y"])
binders = st.sampled_from(["x", "y", "z"])


def terms(max_leaves=8):
    """Arbitrary terms over a, b with possibly free x, y."""
    base = st.one_of(st.just(ZERO), st.just(ONE), variables.map(Var))
    return st.recursive(
        base,
        lambda sub: st.one_of(
            st.builds(Sum, sub, sub),
            st.builds(Prod, sub, sub),
            st.builds(Mu, binders, sub),
        ),
        max_leaves=max_leaves,
    )


@st.composite
def grammars(draw, max_nonterminals=3, max_alts=3, max_len=3):
    """Small random grammars over terminals a, b, including eps-cycles."""
    from mucfl.grammar import Grammar

    n = draw(st.integers(1, max_nonterminals))
    nts = ["S", "A", "B", "C"][:n]
    sym = st.sampled_from(nts + ["a", "b"])
    prods = {}
    for nt in nts:
        alts = draw(st.lists(st.lists(sym, max_size=max_len).map(tuple), min_size=1, max_size=max_alts))
        prods[nt] = tuple(alts)
    return Grammar(nts[0], tuple(nts), prods)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

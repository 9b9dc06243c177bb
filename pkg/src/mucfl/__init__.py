"""mu-regular expressions and context-free grammars, evaluated up to a word-length bound."""

from mucfl.axioms import CheckReport, Law, SuiteConfig, check_identity, check_mu_continuity, check_park, run_suite
from mucfl.grammar import Grammar, bekic_term, derive_oracle, grammar_eval, to_grammar
from mucfl.parsing import ParseError, SourcePos, parse_grammar, parse_term, print_grammar, print_term
from mucfl.semantics import (
    EquivResult,
    TruncatedLang,
    approximant_chain,
    canonical_eval,
    equiv_upto,
    evaluate,
    trunc_product,
)
from mucfl.syntax import (
    GenConfig,
    Mu,
    One,
    Prod,
    Sum,
    Term,
    Var,
    Zero,
    alpha_eq,
    approximant,
    free_vars,
    random_term,
    subst,
)

__version__ = "0.1.0"

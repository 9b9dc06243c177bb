"""Context-free grammars as systems of polynomial inequalities.

A grammar ``N -> alt | ...`` is read as the inequality ``alt + ... <= N``;
its language is the least solution of the system. This module converts
between grammars and mu-terms and computes bounded languages two ways:
joint Kleene iteration and an independent sentential-form search.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping

from mucfl.semantics import TruncatedLang, _product
from mucfl.syntax import Mu, One, Prod, Sum, Term, Var, Zero, fresh_name, product_of, subst, sum_of

__all__ = ["Grammar", "to_grammar", "bekic_term", "grammar_eval", "derive_oracle", "default_form_cap"]

Alt = tuple[str, ...]


@dataclass(frozen=True, eq=False)
class Grammar:
    start: str
    nonterminals: tuple[str, ...]
    productions: Mapping[str, tuple[Alt, ...]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "nonterminals", tuple(self.nonterminals))
        prods = {n: tuple(dict.fromkeys(tuple(a) for a in alts)) for n, alts in self.productions.items()}
        object.__setattr__(self, "productions", prods)
        if self.start not in self.nonterminals:
            raise ValueError(f"start symbol {self.start!r} is not a nonterminal")
        if len(set(self.nonterminals)) != len(self.nonterminals):
            raise ValueError("duplicate nonterminal")
        for n in prods:
            if n not in self.nonterminals:
                raise ValueError(f"production for undeclared nonterminal {n!r}")
        for n in self.nonterminals:
            prods.setdefault(n, ())

    @property
    def terminals(self) -> frozenset[str]:
        nts = set(self.nonterminals)
        return frozenset(s for alts in self.productions.values() for alt in alts for s in alt if s not in nts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Grammar):
            return NotImplemented
        return (
            self.start == other.start
            and self.nonterminals == other.nonterminals
            and all(set(self.productions[n]) == set(other.productions[n]) for n in self.nonterminals)
        )

    def __hash__(self) -> int:
        return hash((self.start, self.nonterminals))

    def __str__(self) -> str:
        from mucfl.parsing import print_grammar

        return print_grammar(self)


# -- term -> grammar -------------------------------------------------------


def to_grammar(t: Term) -> Grammar:
    """Flatten t into a grammar with one nonterminal per mu-binder.

    Free variables of t become terminals. A root that is itself a binder
    becomes the start symbol; otherwise a fresh start symbol ``S`` is added.
    Nonterminals are named after their binders, suffixed where needed to
    stay distinct from each other and from the terminals.
    """
    terminals = set(t.fv)
    if "eps" in terminals:
        raise ValueError("a terminal named 'eps' cannot be written in grammar files")
    taken = set(terminals)
    order: list[str] = []
    prods: dict[str, tuple[Alt, ...]] = {}

    def new_nonterminal(base: str) -> str:
        name = base if base not in taken and base != "eps" else fresh_name(base, taken | {"eps"})
        taken.add(name)
        order.append(name)
        return name

    def flatten(u: Term, scope: dict[str, str]) -> list[Alt]:
        if isinstance(u, Zero):
            return []
        if isinstance(u, One):
            return [()]
        if isinstance(u, Var):
            return [(scope.get(u.name, u.name),)]
        if isinstance(u, Sum):
            return _dedup(flatten(u.left, scope) + flatten(u.right, scope))
        if isinstance(u, Prod):
            left = flatten(u.left, scope)
            if not left:
                return []
            right = flatten(u.right, scope)
            return _dedup([a + b for a in left for b in right])
        assert isinstance(u, Mu)
        return [(binder(u, scope),)]

    def binder(u: Mu, scope: dict[str, str]) -> str:
        name = new_nonterminal(u.var)
        prods[name] = tuple(flatten(u.body, {**scope, u.var: name}))
        return name

    if isinstance(t, Mu):
        start = binder(t, {})
    else:
        start = "S" if "S" not in taken else fresh_name("S", taken)
        taken.add(start)
        order.insert(0, start)
        prods[start] = tuple(flatten(t, {}))
    return Grammar(start, tuple(order), prods)


def _dedup(alts: list[Alt]) -> list[Alt]:
    return list(dict.fromkeys(alts))


# -- grammar -> term -------------------------------------------------------


def _rhs_term(alts: tuple[Alt, ...]) -> Term:
    return sum_of([product_of([Var(s) for s in alt]) for alt in alts])


def bekic_term(g: Grammar, v: str | None = None) -> Term:
    """Closed mu-term for component ``v`` (default: start) of the least
    solution of g.

    Nonterminals are eliminated one at a time in reverse declaration order:
    the last one is bound innermost, ``mu N_i. p_i`` is substituted into the
    right-hand sides of N_1..N_{i-1}, and so on down to N_1, whose term is
    then closed. The remaining components follow by substituting the closed
    solutions of N_1..N_{i-1} back into each ``mu N_i. p_i``.
    """
    if v is None:
        v = g.start
    if v not in g.nonterminals:
        raise ValueError(f"{v!r} is not a nonterminal of the grammar")
    nts = list(g.nonterminals)
    rhs = {n: _rhs_term(g.productions[n]) for n in nts}
    open_terms: dict[str, Term] = {}
    for i in range(len(nts) - 1, -1, -1):
        n = nts[i]
        open_terms[n] = Mu(n, rhs[n])
        for m in nts[:i]:
            rhs[m] = subst(rhs[m], n, open_terms[n])
    solved: dict[str, Term] = {}
    for i, n in enumerate(nts):
        term = open_terms[n]
        for m in nts[:i]:
            term = subst(term, m, solved[m])
        solved[n] = term
        if n == v:
            return term
    raise AssertionError("unreachable")


# -- bounded languages -----------------------------------------------------


def _terminal_sets(g: Grammar, k: int) -> dict[str, frozenset]:
    return {a: frozenset({(a,)}) if k >= 1 else frozenset() for a in g.terminals}


def grammar_eval(g: Grammar, k: int) -> dict[str, TruncatedLang]:
    """Least solution of g truncated at length k, by joint Kleene iteration."""
    if k < 0:
        raise ValueError("bound must be non-negative")
    consts = _terminal_sets(g, k)
    values: dict[str, frozenset] = {n: frozenset() for n in g.nonterminals}
    while True:
        env = {**consts, **values}
        nxt = {}
        for n in g.nonterminals:
            acc: set = set()
            for alt in g.productions[n]:
                part: frozenset = frozenset({()})
                for sym in alt:
                    part = _product(part, env[sym], k)
                    if not part:
                        break
                acc |= part
            nxt[n] = frozenset(acc)
        if nxt == values:
            return {n: TruncatedLang(k, values[n]) for n in g.nonterminals}
        values = nxt


def default_form_cap(g: Grammar, k: int) -> int:
    """Length cap on sentential forms used by :func:`derive_oracle`."""
    longest = max((len(a) for alts in g.productions.values() for a in alts), default=0)
    return k + len(g.nonterminals) * longest


def derive_oracle(g: Grammar, k: int, max_form_len: int | None = None) -> dict[str, TruncatedLang]:
    """Bounded languages by breadth-first leftmost derivation.

    Forms carrying more than k terminals are pruned. Because nullable
    nonterminals can make forms grow without adding terminals, forms longer
    than ``max_form_len`` (default :func:`default_form_cap`) are dropped as
    well; completeness assumes every word of length <= k has a leftmost
    derivation staying under that cap.
    """
    if k < 0:
        raise ValueError("bound must be non-negative")
    cap = default_form_cap(g, k) if max_form_len is None else max_form_len
    nts = set(g.nonterminals)
    result = {}
    for root in g.nonterminals:
        words: set = set()
        # a form is (terminal prefix, rest); rest starts at the leftmost nonterminal
        first = ((), (root,))
        seen = {first}
        queue = deque([first])
        while queue:
            prefix, rest = queue.popleft()
            if not rest:
                words.add(prefix)
                continue
            head, tail = rest[0], rest[1:]
            for alt in g.productions[head]:
                form = alt + tail
                i = 0
                while i < len(form) and form[i] not in nts:
                    i += 1
                new_prefix = prefix + form[:i]
                new_rest = form[i:]
                if len(new_prefix) + sum(1 for s in new_rest if s not in nts) > k:
                    continue
                if len(new_prefix) + len(new_rest) > cap:
                    continue
                state = (new_prefix, new_rest)
                if state not in seen:
                    seen.add(state)
                    queue.append(state)
        result[root] = TruncatedLang(k, frozenset(words))
    return result

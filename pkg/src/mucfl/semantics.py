"""Language semantics of mu-expressions, truncated at a word-length bound.

Subsets of words of length at most k, with union and length-truncated
concatenation, form a finite mu-continuous Chomsky algebra. Truncation
commutes with union and product, so evaluating a term here yields exactly
the words of length <= k of its context-free language.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Iterable, Mapping, Sequence

from mucfl.syntax import Mu, One, Prod, Sum, Term, Var, Zero, approximant, product_of, subst, sum_of

__all__ = [
    "Word", "TruncatedLang", "UnboundVariable", "EvalStats", "Evaluator", "EquivResult",
    "trunc_product", "evaluate", "canonical_valuation", "canonical_eval", "approximant_chain",
    "equiv_upto", "word_key", "format_word", "parse_word", "word_term", "all_words",
    "language_term", "DEFAULT_K",
]

DEFAULT_K = 6

Word = tuple[str, ...]
Words = frozenset  # frozenset[Word]


def word_key(w: Word) -> tuple[int, Word]:
    """Sort key: shortest first, then lexicographic by symbol name."""
    return (len(w), w)


def format_word(w: Word, sep: str | None = None) -> str:
    """``eps`` for the empty word; symbols concatenated when all are single
    characters, otherwise joined by ``sep`` (default a space)."""
    if not w:
        return "eps"
    if sep is None:
        sep = "" if all(len(s) == 1 for s in w) else " "
    return sep.join(w)


def parse_word(text: str) -> Word:
    """Inverse of :func:`format_word` for the default separator."""
    text = text.strip()
    if text in ("", "eps"):
        return ()
    if " " in text:
        return tuple(text.split())
    return tuple(text)


def word_term(w: Word) -> Term:
    """The word spelled as a product of symbols; the empty word is 1."""
    return product_of([Var(s) for s in w])


def all_words(alphabet: Iterable[str], k: int) -> list[Word]:
    """Every word over ``alphabet`` of length <= k, shortest-then-lex."""
    syms = sorted(set(alphabet))
    out: list[Word] = []
    for n in range(k + 1):
        out.extend(cartesian(syms, repeat=n))
    return out


@dataclass(frozen=True)
class TruncatedLang:
    """A set of words, each no longer than ``bound``."""

    bound: int
    words: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.bound < 0:
            raise ValueError("bound must be non-negative")
        words = frozenset(tuple(w) for w in self.words)
        for w in words:
            if len(w) > self.bound:
                raise ValueError(f"word {format_word(w)!r} is longer than the bound {self.bound}")
        object.__setattr__(self, "words", words)

    @classmethod
    def of(cls, bound: int, *words: str | Word) -> TruncatedLang:
        """Build from words given as tuples or as strings (see :func:`parse_word`)."""
        return cls(bound, frozenset(parse_word(w) if isinstance(w, str) else tuple(w) for w in words))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.sorted())

    def __contains__(self, w: object) -> bool:
        return w in self.words

    def __or__(self, other: TruncatedLang) -> TruncatedLang:
        _same_bound(self, other)
        return TruncatedLang(self.bound, self.words | other.words)

    def __le__(self, other: TruncatedLang) -> bool:
        _same_bound(self, other)
        return self.words <= other.words

    def __lt__(self, other: TruncatedLang) -> bool:
        _same_bound(self, other)
        return self.words < other.words

    def sorted(self) -> list[Word]:
        return sorted(self.words, key=word_key)

    def truncate(self, k: int) -> TruncatedLang:
        """The words of length <= k, with bound k."""
        return TruncatedLang(k, frozenset(w for w in self.words if len(w) <= k))

    def __str__(self) -> str:
        return "{" + ", ".join(format_word(w) for w in self.sorted()) + "}"


def _same_bound(a: TruncatedLang, b: TruncatedLang) -> None:
    if a.bound != b.bound:
        raise ValueError(f"languages truncated at different bounds ({a.bound} vs {b.bound})")


def _product(a: frozenset, b: frozenset, k: int) -> frozenset:
    if not a or not b:
        return frozenset()
    out = set()
    for x in a:
        room = k - len(x)
        if room < 0:
            continue
        for y in b:
            if len(y) <= room:
                out.add(x + y)
    return frozenset(out)


def trunc_product(a: TruncatedLang, b: TruncatedLang, k: int) -> TruncatedLang:
    """{xy : x in a, y in b, |xy| <= k}."""
    return TruncatedLang(k, _product(a.words, b.words, k))


class UnboundVariable(LookupError):
    """A free variable of the term has no value in the valuation."""


@dataclass
class EvalStats:
    """Counters collected while solving fixpoints."""

    fixpoints: int = 0
    max_iterations: int = 0


class Evaluator:
    """Evaluates terms at a fixed bound, memoising on node identity.

    Results are cached per (node, values of its free variables), so terms
    that share subterms, such as successive approximants, are evaluated in
    time proportional to their DAG size. The cache keeps every node it has
    seen alive, so ids stay valid for the evaluator's lifetime.
    """

    def __init__(self, k: int, stats: EvalStats | None = None) -> None:
        if k < 0:
            raise ValueError("bound must be non-negative")
        self.k = k
        self.stats = stats if stats is not None else EvalStats()
        self._cache: dict[tuple, tuple[Term, frozenset]] = {}
        self._fv_order: dict[int, tuple[str, ...]] = {}

    def __call__(self, t: Term, sigma: Mapping[str, TruncatedLang]) -> TruncatedLang:
        env = {}
        for v in t.fv:
            if v not in sigma:
                raise UnboundVariable(f"free variable {v!r} has no value")
            lang = sigma[v]
            if lang.bound != self.k:
                raise ValueError(f"value of {v!r} has bound {lang.bound}, expected {self.k}")
            env[v] = lang.words
        return TruncatedLang(self.k, self.eval(t, env))

    def eval(self, t: Term, env: Mapping[str, frozenset]) -> frozenset:
        """Evaluate on raw word sets; ``env`` must cover ``t.fv``."""
        if isinstance(t, Var):
            return env[t.name]
        if isinstance(t, Zero):
            return frozenset()
        if isinstance(t, One):
            return _EPS_SET
        order = self._fv_order.get(id(t))
        if order is None:
            order = self._fv_order[id(t)] = tuple(sorted(t.fv))
        key = (id(t), *(env[v] for v in order))
        hit = self._cache.get(key)
        if hit is not None:
            return hit[1]
        if isinstance(t, Sum):
            value = self.eval(t.left, env) | self.eval(t.right, env)
        elif isinstance(t, Prod):
            left = self.eval(t.left, env)
            value = _product(left, self.eval(t.right, env), self.k) if left else frozenset()
        else:
            assert isinstance(t, Mu)
            value = self._lfp(t, env)
        self._cache[key] = (t, value)
        return value

    def _lfp(self, t: Mu, env: Mapping[str, frozenset]) -> frozenset:
        # Kleene iteration from the empty set; inner fixpoints are solved
        # completely on every round.
        inner = dict(env)
        current: frozenset = frozenset()
        rounds = 0
        while True:
            inner[t.var] = current
            nxt = self.eval(t.body, inner)
            rounds += 1
            if nxt == current:
                break
            current = nxt
        self.stats.fixpoints += 1
        self.stats.max_iterations = max(self.stats.max_iterations, rounds)
        return current


_EPS_SET = frozenset({()})


def evaluate(t: Term, sigma: Mapping[str, TruncatedLang], k: int, stats: EvalStats | None = None) -> TruncatedLang:
    """Truncated language of t under the valuation ``sigma``."""
    return Evaluator(k, stats)(t, sigma)


def canonical_valuation(names: Iterable[str], k: int) -> dict[str, TruncatedLang]:
    """Each symbol denotes its own one-letter word (nothing when k = 0)."""
    return {v: TruncatedLang(k, frozenset({(v,)}) if k >= 1 else frozenset()) for v in names}


def canonical_eval(t: Term, k: int, stats: EvalStats | None = None) -> TruncatedLang:
    """Words of length <= k in the context-free language denoted by t."""
    return evaluate(t, canonical_valuation(t.fv, k), k, stats)


def approximant_chain(x: str, t: Term, sigma: Mapping[str, TruncatedLang], k: int) -> list[TruncatedLang]:
    """Values of the approximants of mu x.t, from n = 0 up to the first one
    that reaches the value of mu x.t itself."""
    ev = Evaluator(k)
    target = ev(Mu(x, t), sigma)
    chain: list[TruncatedLang] = []
    approx: Term = approximant(0, x, t)
    while True:
        value = ev(approx, sigma)
        if chain and not chain[-1].words < value.words and value != target:
            # a chain that stops growing below the fixpoint never reaches it
            raise AssertionError(f"approximants of mu {x} stalled below the fixpoint at n={len(chain)}")
        chain.append(value)
        if value == target:
            return chain
        approx = subst(t, x, approx)


@dataclass(frozen=True)
class EquivResult:
    """``counterexample is None`` means the languages agree up to ``bound``."""

    bound: int
    counterexample: Word | None = None
    in_left: bool | None = None

    @property
    def equal(self) -> bool:
        return self.counterexample is None

    def __str__(self) -> str:
        if self.equal:
            return f"equal up to {self.bound}"
        side = "left" if self.in_left else "right"
        return f"counterexample: {format_word(self.counterexample)} (in {side} only)"


def equiv_upto(s: Term, t: Term, k: int) -> EquivResult:
    """Compare canonical languages up to length k; report the least
    differing word (shortest, then lexicographic) if they differ."""
    ev = Evaluator(k)
    sigma = canonical_valuation(s.fv | t.fv, k)
    left = ev(s, sigma).words
    right = ev(t, sigma).words
    diff = left ^ right
    if not diff:
        return EquivResult(k)
    w = min(diff, key=word_key)
    return EquivResult(k, w, w in left)


def language_term(words: Sequence[Word]) -> Term:
    """A finite sum of word products denoting exactly ``words``."""
    return sum_of([word_term(w) for w in sorted(words, key=word_key)])


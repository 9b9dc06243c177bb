"""Executable checks of the laws of mu-continuous Chomsky algebras.

Each check instantiates a law with concrete terms, evaluates both sides in
the truncated-language algebra under the canonical valuation, and returns a
:class:`CheckReport`. Every law checked here is a theorem, so a failing
report on any instance points at a bug in the evaluator or the syntax code.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Mapping

from mucfl.parsing import print_term
from mucfl.semantics import (
    Evaluator,
    TruncatedLang,
    Word,
    all_words,
    canonical_valuation,
    format_word,
    word_key,
    word_term,
)
from mucfl.syntax import (
    ONE,
    ZERO,
    GenConfig,
    Mu,
    Prod,
    Sum,
    Term,
    Var,
    fresh_name,
    random_term,
    rename_bound,
    subst,
)

__all__ = [
    "Law", "CheckReport", "SuiteConfig", "LawInstanceError", "check_park", "check_mu_continuity",
    "check_identity", "run_suite", "parse_report_line", "stabilization_bound",
]


class Law(str, Enum):
    PARK_INEQ1 = "park-ineq1"
    PARK_INEQ2 = "park-ineq2"
    PARK_EQ = "park-eq"
    MU_CONTINUITY = "mu-continuity"
    SAMELISTS = "samelists"
    LISTDISTR_LEFT = "listdistr-left"
    LISTDISTR_RIGHT = "listdistr-right"
    GREIBACH_LEFT = "greibach-left"
    GREIBACH_RIGHT = "greibach-right"
    SUBSTITUTION = "substitution"
    FREECONT = "freecont"
    SUPREMUM = "supremum-decomposition"

    def __str__(self) -> str:
        return self.value


# Metavariables each law needs. Binder names (x, y) are optional in env.
REQUIRED: dict[Law, tuple[str, ...]] = {
    Law.PARK_INEQ1: ("t",),
    Law.PARK_INEQ2: ("t",),
    Law.PARK_EQ: ("t",),
    Law.MU_CONTINUITY: ("a", "t", "b"),
    Law.SAMELISTS: ("a",),
    Law.LISTDISTR_LEFT: ("a", "b"),
    Law.LISTDISTR_RIGHT: ("a", "b"),
    Law.GREIBACH_LEFT: ("s", "r"),
    Law.GREIBACH_RIGHT: ("s", "r"),
    Law.SUBSTITUTION: ("t", "u"),
    Law.FREECONT: ("s", "t"),
    Law.SUPREMUM: ("s", "t", "u"),
}


class LawInstanceError(ValueError):
    """The environment cannot instantiate the requested law."""


@dataclass(frozen=True)
class CheckReport:
    law: Law
    instance: str
    bound: int
    verdict: str  # "pass", "fail" or "skip"
    witness: Word | None = None
    stabilization: int | None = None
    seed: int = 0

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def line(self) -> str:
        parts = [f"LAW={self.law.value}", f"SEED={self.seed}", f"K={self.bound}", f"VERDICT={self.verdict}"]
        if self.witness is not None:
            parts.append(f"WITNESS={format_word(self.witness, sep=None if _short(self.witness) else '.')}")
        if self.stabilization is not None:
            parts.append(f"STAB={self.stabilization}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.line()


def _short(w: Word) -> bool:
    return all(len(s) == 1 for s in w)


_LINE_RE = re.compile(
    r"LAW=(?P<law>[a-z0-9-]+) SEED=(?P<seed>\d+) K=(?P<k>\d+) VERDICT=(?P<verdict>pass|fail|skip)"
    r"(?: WITNESS=(?P<witness>\S+))?(?: STAB=(?P<stab>\d+))?\Z"
)


def parse_report_line(line: str) -> CheckReport:
    """Read back a serialized report (the instance text is not serialized)."""
    m = _LINE_RE.match(line.strip())
    if m is None:
        raise ValueError(f"malformed report line: {line!r}")
    witness = None
    if m["witness"] is not None:
        text = m["witness"]
        if text == "eps":
            witness = ()
        elif "." in text:
            witness = tuple(text.split("."))
        else:
            witness = tuple(text)
    return CheckReport(
        law=Law(m["law"]),
        instance="",
        bound=int(m["k"]),
        verdict=m["verdict"],
        witness=witness,
        stabilization=int(m["stab"]) if m["stab"] is not None else None,
        seed=int(m["seed"]),
    )


def stabilization_bound(alphabet_size: int, k: int) -> int:
    """|Sigma^{<=k}| + 1: no chain of word sets can grow for longer."""
    return sum(alphabet_size**i for i in range(k + 1)) + 1


# -- helpers ---------------------------------------------------------------


class _Ctx:
    """Canonical evaluation over the free variables of an instance."""

    def __init__(self, k: int, *terms: Term) -> None:
        self.k = k
        self.alphabet = sorted(frozenset().union(*(t.fv for t in terms)))
        self.sigma = canonical_valuation(self.alphabet, k)
        self.ev = Evaluator(k)

    def __call__(self, t: Term, **overrides: TruncatedLang) -> frozenset:
        sigma = {**self.sigma, **overrides} if overrides else self.sigma
        missing = t.fv - sigma.keys()
        if missing:
            sigma = {**sigma, **canonical_valuation(missing, self.k)}
        return self.ev(t, sigma).words


def _least(words: frozenset) -> Word | None:
    return min(words, key=word_key) if words else None


def _report(law: Law, instance: str, k: int, witness: Word | None, seed: int, stab: int | None = None) -> CheckReport:
    return CheckReport(law, instance, k, "pass" if witness is None else "fail", witness, stab, seed)


def _equal(left: frozenset, right: frozenset) -> Word | None:
    return _least(left ^ right)


def _included(left: frozenset, right: frozenset) -> Word | None:
    return _least(left - right)


def _binder(env: Mapping[str, Term], key: str) -> str:
    v = env.get(key, Var(key))
    if not isinstance(v, Var):
        raise LawInstanceError(f"binder {key!r} must be a variable, got {print_term(v)}")
    return v.name


def _fresh_binder(base: str, *terms: Term) -> str:
    names = frozenset().union(*(t.names for t in terms))
    return base if base not in names else fresh_name(base, names)


def _describe(env: Mapping[str, Term], extra: str = "") -> str:
    text = "; ".join(f"{k}={print_term(v)}" for k, v in env.items())
    return f"{text}; {extra}" if extra else text


# -- Park ------------------------------------------------------------------


def _park_premise_samples(ctx: _Ctx, x: str, t: Term, lfp: frozenset, rng: random.Random, samples: int):
    universe = all_words(ctx.alphabet, ctx.k)
    yield lfp
    for _ in range(samples):
        yield lfp | frozenset(w for w in universe if rng.random() < 0.5)
    # candidates that omit part of the least fixpoint must never be prefixed points
    for w in rng.sample(sorted(lfp, key=word_key), min(samples, len(lfp))):
        yield lfp - {w}
    for _ in range(samples):
        yield frozenset(w for w in universe if rng.random() < 0.5)


def _park_ineq2(ctx: _Ctx, x: str, t: Term, lfp: frozenset, seed: int, samples: int) -> Word | None:
    """Least witness against 't <= x implies mu x.t <= x' over sampled values of x."""
    rng = random.Random(seed)
    for a in _park_premise_samples(ctx, x, t, lfp, rng, samples):
        value = ctx(t, **{x: TruncatedLang(ctx.k, a)})
        if value <= a:
            w = _included(lfp, a)
            if w is not None:
                return w
        elif a == lfp:
            # the least solution must itself satisfy the premise
            return _least(value - a)
    return None


def check_park(t: Term, x: str, k: int, law: Law | None = None, seed: int = 0, samples: int = 10) -> CheckReport:
    """Park axioms for mu x.t at bound k.

    With ``law=None`` both the fixpoint equation t[mu x.t/x] = mu x.t and
    the induction rule (checked on sampled values of x) must hold; the
    report is filed under ``park-eq``. Passing one of the three Park law
    names checks that law alone.
    """
    mu = Mu(x, t)
    ctx = _Ctx(k, mu)
    lhs = ctx(subst(t, x, mu))
    lfp = ctx(mu)
    instance = _describe({"t": t}, f"x={x}")
    if law is Law.PARK_INEQ1:
        return _report(Law.PARK_INEQ1, instance, k, _included(lhs, lfp), seed)
    if law is Law.PARK_INEQ2:
        return _report(Law.PARK_INEQ2, instance, k, _park_ineq2(ctx, x, t, lfp, seed, samples), seed)
    witness = _equal(lhs, lfp)
    if law is None and witness is None:
        witness = _park_ineq2(ctx, x, t, lfp, seed, samples)
    return _report(Law.PARK_EQ, instance, k, witness, seed)


# -- chains ----------------------------------------------------------------


def _chain(ctx: _Ctx, y: str, t: Term, outer: Callable[[Term], Term]) -> list[frozenset]:
    """Values of outer(n y.t) for n = 0, 1, ... until n y.t stops growing.

    Once two consecutive approximants of mu y.t agree, every later one has
    the same value, and so does everything built around it.
    """
    approx: Term = ZERO
    inner_prev = None
    chain = []
    while True:
        inner = ctx(approx)
        chain.append(ctx(outer(approx)))
        if inner == inner_prev:
            return chain
        inner_prev = inner
        approx = subst(t, y, approx)


def _chain_verdict(chain: list[frozenset], lhs: frozenset, bound: int) -> tuple[Word | None, int]:
    union = frozenset().union(*chain)
    stab = next(i for i, c in enumerate(chain) if c == union)
    for prev, cur in zip(chain, chain[1:]):
        if not prev <= cur:
            return _least(prev - cur), stab
    witness = _equal(lhs, union)
    if witness is None and stab > bound:
        raise AssertionError(f"stabilization index {stab} exceeds the bound {bound}")
    return witness, stab


def check_mu_continuity(a: Term, x: str, t: Term, b: Term, k: int, seed: int = 0) -> CheckReport:
    """a (mu x.t) b against the union of a (n x.t) b over the approximants."""
    mu = rename_bound(Mu(x, t), a.fv | b.fv)
    x, t = mu.var, mu.body
    ctx = _Ctx(k, a, mu, b)
    lhs = ctx(Prod(Prod(a, mu), b))
    chain = _chain(ctx, x, t, lambda approx: Prod(Prod(a, approx), b))
    witness, stab = _chain_verdict(chain, lhs, stabilization_bound(len(ctx.alphabet), k))
    instance = _describe({"a": a, "t": t, "b": b}, f"x={x}")
    return _report(Law.MU_CONTINUITY, instance, k, witness, seed, stab)


# -- the remaining identities ----------------------------------------------


def check_identity(law: Law | str, env: Mapping[str, Term], k: int, seed: int = 0) -> CheckReport:
    """Instantiate ``law`` with the metavariables in ``env`` and check it at bound k.

    Binder names default to ``x`` and ``y`` and may be supplied as
    variables under those keys. Where a law requires a binder not to occur
    in a metavariable, a fresh binder is chosen instead.
    """
    law = Law(law)
    missing = [m for m in REQUIRED[law] if m not in env]
    if missing:
        raise LawInstanceError(f"{law.value} needs metavariable(s) {', '.join(missing)}")
    for key, v in env.items():
        if not isinstance(v, Term):
            raise LawInstanceError(f"metavariable {key!r} is not a term")
    if law in (Law.PARK_INEQ1, Law.PARK_INEQ2, Law.PARK_EQ):
        return check_park(env["t"], _binder(env, "x"), k, law=law, seed=seed)
    if law is Law.MU_CONTINUITY:
        return check_mu_continuity(env["a"], _binder(env, "x"), env["t"], env["b"], k, seed=seed)
    return _IDENTITIES[law](env, k, seed)


def _samelists(env, k, seed):
    a = env["a"]
    x = _fresh_binder(_binder(env, "x"), a)
    X = Var(x)
    lhs, rhs = Mu(x, Sum(ONE, Prod(a, X))), Mu(x, Sum(ONE, Prod(X, a)))
    ctx = _Ctx(k, lhs, rhs)
    return _report(Law.SAMELISTS, _describe({"a": a}, f"x={x}"), k, _equal(ctx(lhs), ctx(rhs)), seed)


def _listdistr(law):
    def check(env, k, seed):
        a, b = env["a"], env["b"]
        x = _fresh_binder(_binder(env, "x"), a, b)
        X = Var(x)
        if law is Law.LISTDISTR_LEFT:
            lhs = Prod(a, Mu(x, Sum(ONE, Prod(X, b))))
            rhs = Mu(x, Sum(a, Prod(X, b)))
        else:
            lhs = Prod(Mu(x, Sum(ONE, Prod(b, X))), a)
            rhs = Mu(x, Sum(a, Prod(b, X)))
        ctx = _Ctx(k, lhs, rhs)
        return _report(law, _describe({"a": a, "b": b}, f"x={x}"), k, _equal(ctx(lhs), ctx(rhs)), seed)

    return check


def _greibach(law):
    def check(env, k, seed):
        s, r = env["s"], env["r"]
        x = _binder(env, "x")
        y = _fresh_binder(_binder(env, "y"), s, r, Var(x))
        Y = Var(y)
        if law is Law.GREIBACH_LEFT:
            lhs = Mu(x, Prod(s, Mu(y, Sum(ONE, Prod(r, Y)))))
            rhs = Mu(x, Sum(s, Prod(Var(x), r)))
        else:
            lhs = Mu(x, Prod(Mu(y, Sum(ONE, Prod(Y, r))), s))
            rhs = Mu(x, Sum(s, Prod(r, Var(x))))
        ctx = _Ctx(k, lhs, rhs)
        return _report(law, _describe({"s": s, "r": r}, f"x={x}; y={y}"), k, _included(ctx(lhs), ctx(rhs)), seed)

    return check


def _substitution(env, k, seed):
    t, u = env["t"], env["u"]
    y = _binder(env, "y")
    ctx = _Ctx(k, t, u, Var(y))
    lhs = ctx(subst(t, y, u))
    rhs = ctx(t, **{y: TruncatedLang(k, ctx(u))})
    return _report(Law.SUBSTITUTION, _describe({"t": t, "u": u}, f"y={y}"), k, _equal(lhs, rhs), seed)


def _freecont(env, k, seed):
    s, t = env["s"], env["t"]
    y = _binder(env, "y")
    mu = Mu(y, t)
    ctx = _Ctx(k, s, mu)
    lhs = ctx(subst(s, y, mu))
    chain = _chain(ctx, y, t, lambda approx: subst(s, y, approx))
    witness, stab = _chain_verdict(chain, lhs, stabilization_bound(len(ctx.alphabet), k))
    return _report(Law.FREECONT, _describe({"s": s, "t": t}, f"y={y}"), k, witness, seed, stab)


def _supremum(env, k, seed):
    s, t, u = env["s"], env["t"], env["u"]
    ctx = _Ctx(k, s, t, u)
    lhs = ctx(Prod(Prod(s, t), u))
    rhs: frozenset = frozenset()
    for w in sorted(ctx(t), key=word_key):
        rhs |= ctx(Prod(Prod(s, word_term(w)), u))
    return _report(Law.SUPREMUM, _describe({"s": s, "t": t, "u": u}), k, _equal(lhs, rhs), seed)


_IDENTITIES = {
    Law.SAMELISTS: _samelists,
    Law.LISTDISTR_LEFT: _listdistr(Law.LISTDISTR_LEFT),
    Law.LISTDISTR_RIGHT: _listdistr(Law.LISTDISTR_RIGHT),
    Law.GREIBACH_LEFT: _greibach(Law.GREIBACH_LEFT),
    Law.GREIBACH_RIGHT: _greibach(Law.GREIBACH_RIGHT),
    Law.SUBSTITUTION: _substitution,
    Law.FREECONT: _freecont,
    Law.SUPREMUM: _supremum,
}


# -- randomized suite --------------------------------------------------------


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 42
    cases: int = 100
    k: int = 5
    gen: GenConfig = field(default_factory=GenConfig)
    laws: tuple[Law, ...] = tuple(Law)
    retries: int = 10

    def __post_init__(self) -> None:
        if self.cases < 1:
            raise ValueError("cases must be at least 1")
        if self.k < 0:
            raise ValueError("k must be non-negative")
        object.__setattr__(self, "laws", tuple(Law(law) for law in self.laws))


# Metavariables that should be able to mention the law's binder.
_OPEN_IN = {
    Law.PARK_INEQ1: {"t": "x"},
    Law.PARK_INEQ2: {"t": "x"},
    Law.PARK_EQ: {"t": "x"},
    Law.MU_CONTINUITY: {"t": "x"},
    Law.GREIBACH_LEFT: {"s": "x", "r": "x"},
    Law.GREIBACH_RIGHT: {"s": "x", "r": "x"},
    Law.SUBSTITUTION: {"t": "y"},
    Law.FREECONT: {"s": "y", "t": "y"},
}


# Context metavariables wrap the interesting term; shallow ones keep the
# product inside the bound often enough for the check to mean something.
_CONTEXT = {Law.MU_CONTINUITY: ("a", "b"), Law.SUPREMUM: ("s", "u")}


def _instance(law: Law, gen: GenConfig, rng: random.Random) -> dict[str, Term]:
    env: dict[str, Term] = {}
    for meta in REQUIRED[law]:
        extra = _OPEN_IN.get(law, {}).get(meta)
        open_vars = (extra,) if extra and extra not in gen.alphabet else ()
        depth = max(1, gen.max_depth - 2) if meta in _CONTEXT.get(law, ()) else gen.max_depth
        cfg = replace(gen, seed=rng.getrandbits(64), open_vars=open_vars, max_depth=depth)
        env[meta] = random_term(cfg)
    return env


def run_suite(cfg: SuiteConfig) -> list[CheckReport]:
    """Check every law on ``cfg.cases`` seeded random instances.

    Reports come law by law, in generation order; the same configuration
    always yields the same reports.
    """
    reports = []
    for law in cfg.laws:
        rng = random.Random(f"{cfg.seed}:{law.value}")
        for _ in range(cfg.cases):
            case_seed = rng.getrandbits(64)
            case_rng = random.Random(case_seed)
            for _attempt in range(cfg.retries):
                env = _instance(law, cfg.gen, case_rng)
                try:
                    reports.append(check_identity(law, env, cfg.k, seed=case_seed))
                    break
                except LawInstanceError:
                    continue
            else:
                reports.append(CheckReport(law, "side condition unsatisfied", cfg.k, "skip", seed=case_seed))
    return reports

"""Abstract syntax of mu-expressions and the binding-aware operations on it.

Terms are immutable and may share subterms freely. Every node caches its
hash, its free variables and the set of all names occurring in it, so
substitution can skip untouched subterms and approximants stay linear in
size even though their tree expansion is exponential.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field, replace
from typing import Iterator, Sequence

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_']*\Z")

__all__ = [
    "Term", "Zero", "One", "Var", "Sum", "Prod", "Mu", "ZERO", "ONE",
    "free_vars", "all_names", "subst", "rename_bound", "alpha_eq",
    "approximant", "fresh_name", "GenConfig", "random_term", "random_terms",
    "sum_of", "product_of", "is_identifier",
]


def is_identifier(name: str) -> bool:
    return bool(IDENT_RE.match(name)) and name != "mu"


class Term:
    """Base class of mu-expression nodes."""

    __slots__ = ("_hash", "fv", "names")

    fv: frozenset[str]
    names: frozenset[str]

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        from mucfl.parsing import print_term

        return f"<{type(self).__name__} {print_term(self)!r}>"

    # Operator sugar for building terms in code and tests.
    def __add__(self, other: Term) -> Term:
        return Sum(self, other)

    def __mul__(self, other: Term) -> Term:
        return Prod(self, other)


class Zero(Term):
    __slots__ = ()

    def __init__(self) -> None:
        self.fv = self.names = frozenset()
        self._hash = hash("Zero")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Zero)

    __hash__ = Term.__hash__


class One(Term):
    __slots__ = ()

    def __init__(self) -> None:
        self.fv = self.names = frozenset()
        self._hash = hash("One")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, One)

    __hash__ = Term.__hash__


ZERO = Zero()
ONE = One()


class Var(Term):
    __slots__ = ("name",)

    def __init__(self, name: str) -> None:
        if not is_identifier(name):
            raise ValueError(f"invalid variable name {name!r}")
        self.name = name
        self.fv = self.names = frozenset((name,))
        self._hash = hash(("Var", name))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Var) and other.name == self.name

    __hash__ = Term.__hash__


class _Binary(Term):
    __slots__ = ("left", "right")

    def __init__(self, left: Term, right: Term) -> None:
        self.left = left
        self.right = right
        self.fv = left.fv | right.fv
        self.names = left.names | right.names
        self._hash = hash((type(self).__name__, left._hash, right._hash))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return (
            type(other) is type(self)
            and self._hash == other._hash
            and self.left == other.left
            and self.right == other.right
        )

    __hash__ = Term.__hash__


class Sum(_Binary):
    __slots__ = ()


class Prod(_Binary):
    __slots__ = ()


class Mu(Term):
    __slots__ = ("var", "body")

    def __init__(self, var: str, body: Term) -> None:
        if not is_identifier(var):
            raise ValueError(f"invalid binder name {var!r}")
        self.var = var
        self.body = body
        self.fv = body.fv - {var}
        self.names = body.names | {var}
        self._hash = hash(("Mu", var, body._hash))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return (
            isinstance(other, Mu)
            and self._hash == other._hash
            and self.var == other.var
            and self.body == other.body
        )

    __hash__ = Term.__hash__


def sum_of(terms: Sequence[Term]) -> Term:
    """Left-nested sum; the empty sum is 0."""
    if not terms:
        return ZERO
    acc = terms[0]
    for t in terms[1:]:
        acc = Sum(acc, t)
    return acc


def product_of(terms: Sequence[Term]) -> Term:
    """Left-nested product; the empty product is 1."""
    if not terms:
        return ONE
    acc = terms[0]
    for t in terms[1:]:
        acc = Prod(acc, t)
    return acc


def free_vars(t: Term) -> frozenset[str]:
    return t.fv


def all_names(t: Term) -> frozenset[str]:
    """Every variable name occurring in t, free or bound."""
    return t.names


def fresh_name(base: str, avoid: frozenset[str] | set[str]) -> str:
    """Smallest numeric-suffixed variant of ``base`` not in ``avoid``.

    Trailing digits of ``base`` are dropped first, so ``x`` and ``x3`` both
    start the search at ``x1``.
    """
    stem = base.rstrip("0123456789") or base
    i = 1
    while f"{stem}{i}" in avoid:
        i += 1
    return f"{stem}{i}"


def subst(t: Term, x: str, u: Term) -> Term:
    """Capture-avoiding substitution t[u/x]."""
    if x not in t.fv:
        return t
    if isinstance(t, Var):
        return u
    if isinstance(t, _Binary):
        return type(t)(subst(t.left, x, u), subst(t.right, x, u))
    assert isinstance(t, Mu)
    # x is free in t, so t.var != x.
    if t.var in u.fv:
        y = fresh_name(t.var, t.names | u.names | {x})
        body = subst(t.body, t.var, Var(y))
        return Mu(y, subst(body, x, u))
    return Mu(t.var, subst(t.body, x, u))


def rename_bound(t: Mu, avoid: frozenset[str] | set[str]) -> Mu:
    """Alpha-rename the outermost binder of t away from ``avoid``."""
    if t.var not in avoid:
        return t
    y = fresh_name(t.var, t.names | set(avoid))
    return Mu(y, subst(t.body, t.var, Var(y)))


def alpha_eq(s: Term, t: Term) -> bool:
    """Equality up to consistent renaming of bound variables."""
    return _alpha(s, t, {}, {}, 0)


def _alpha(s: Term, t: Term, ls: dict[str, int], rs: dict[str, int], depth: int) -> bool:
    if s is t and not any(v in ls or v in rs for v in s.fv):
        return True
    if isinstance(s, Var) and isinstance(t, Var):
        a, b = ls.get(s.name), rs.get(t.name)
        if a is None and b is None:
            return s.name == t.name
        return a == b
    if isinstance(s, Mu) and isinstance(t, Mu):
        ls2 = dict(ls)
        rs2 = dict(rs)
        ls2[s.var] = depth
        rs2[t.var] = depth
        return _alpha(s.body, t.body, ls2, rs2, depth + 1)
    if isinstance(s, _Binary) and type(s) is type(t):
        return _alpha(s.left, t.left, ls, rs, depth) and _alpha(s.right, t.right, ls, rs, depth)
    return isinstance(s, (Zero, One)) and type(s) is type(t)


def approximant(n: int, x: str, t: Term) -> Term:
    """The n-fold unfolding of t applied to 0, without any simplification."""
    if n < 0:
        raise ValueError("approximant index must be non-negative")
    acc: Term = ZERO
    for _ in range(n):
        acc = subst(t, x, acc)
    return acc


def subterms(t: Term) -> Iterator[Term]:
    """Pre-order traversal of the syntax tree (shared nodes repeat)."""
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, _Binary):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, Mu):
            stack.append(node.body)


@dataclass(frozen=True)
class GenConfig:
    """Parameters of the seeded random term generator."""

    alphabet: tuple[str, ...] = ("a", "b")
    max_depth: int = 4
    max_mu_nesting: int = 2
    seed: int = 42
    binder_names: tuple[str, ...] = field(default=("x", "y", "z", "w"), repr=False)
    # variables that occur free and are drawn as often as bound ones
    open_vars: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "open_vars", tuple(self.open_vars))
        if not self.alphabet:
            raise ValueError("alphabet must be nonempty")
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        if self.max_mu_nesting < 0:
            raise ValueError("max_mu_nesting must be non-negative")
        for a in self.alphabet + self.open_vars:
            if not is_identifier(a):
                raise ValueError(f"invalid alphabet symbol {a!r}")

    def binders(self) -> list[str]:
        """One binder name per nesting level, all disjoint from the alphabet."""
        taken = set(self.alphabet) | set(self.open_vars)
        out: list[str] = []
        pool = list(self.binder_names)
        for level in range(self.max_mu_nesting):
            name = pool[level] if level < len(pool) else f"v{level}"
            if name in taken:
                name = fresh_name(name, taken)
            taken.add(name)
            out.append(name)
        return out


def random_term(cfg: GenConfig) -> Term:
    """Draw a term deterministically from ``cfg.seed``."""
    rng = random.Random(cfg.seed)
    binders = cfg.binders()
    symbols = [Var(a) for a in cfg.alphabet]

    def atom(scope: tuple[str, ...]) -> Term:
        roll = rng.random()
        if scope and roll < 0.4:
            # favour the innermost binder so that bodies are usually recursive
            return Var(scope[-1] if rng.random() < 0.7 else rng.choice(scope))
        if roll < 0.8:
            return rng.choice(symbols)
        return ONE if roll < 0.97 else ZERO

    def recursive(depth: int, scope: tuple[str, ...], var: str) -> Term:
        # depth >= 3; a base case that avoids var plus an alternative recursing through var
        base = gen(depth - 1, tuple(v for v in scope if v != var))
        step = gen(depth - 2, scope)
        rec = Prod(step, Var(var)) if rng.random() < 0.5 else Prod(Var(var), step)
        return Sum(base, rec)

    def gen(depth: int, scope: tuple[str, ...]) -> Term:
        if depth <= 1:
            return atom(scope)
        level = len(scope) - len(cfg.open_vars)
        can_bind = depth >= 3 and level < cfg.max_mu_nesting
        weights = {"atom": 1, "sum": 3, "prod": 4, "mu": 2 if can_bind else 0}
        kind = rng.choices(list(weights), weights=list(weights.values()))[0]
        if kind == "atom":
            return atom(scope)
        if kind == "mu":
            name = binders[level]
            inner = scope + (name,)
            if depth >= 4 and rng.random() < 0.6:
                return Mu(name, recursive(depth - 1, inner, name))
            return Mu(name, gen(depth - 1, inner))
        left = gen(depth - 1, scope)
        right = gen(depth - 1, scope)
        return Sum(left, right) if kind == "sum" else Prod(left, right)

    if cfg.open_vars and cfg.max_depth >= 3 and rng.random() < 0.5:
        return recursive(cfg.max_depth, cfg.open_vars, rng.choice(cfg.open_vars))
    return gen(cfg.max_depth, cfg.open_vars)


def random_terms(cfg: GenConfig, count: int) -> list[Term]:
    """``count`` terms whose individual seeds are derived from ``cfg.seed``."""
    rng = random.Random(cfg.seed)
    out = []
    for _ in range(count):
        out.append(random_term(replace(cfg, seed=rng.getrandbits(64))))
    return out

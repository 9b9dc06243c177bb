"""Concrete text syntax for terms and grammar files.

Term syntax::

    t ::= t + t | t t | t . t | 0 | 1 | ident | mu ident . t | ( t )

Product (juxtaposition or ``.``) binds tighter than ``+``; both are
left-associative. A ``mu`` body extends as far right as possible.

Grammar files hold one ``N -> alt | alt ...`` rule per line, where each
alternative is a space-separated symbol sequence or the lone token ``eps``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from mucfl.syntax import ONE, ZERO, Mu, One, Prod, Sum, Term, Var, Zero, is_identifier

__all__ = ["SourcePos", "ParseError", "parse_term", "print_term", "parse_grammar", "print_grammar"]


@dataclass(frozen=True)
class SourcePos:
    line: int
    column: int

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}"


class ParseError(ValueError):
    def __init__(self, pos: SourcePos, message: str) -> None:
        super().__init__(f"{pos}: {message}")
        self.pos = pos
        self.message = message


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_']*)
  | (?P<num>[0-9]+)
  | (?P<mu>μ)
  | (?P<op>[+.()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # ident, mu, num, op, eof
    text: str
    pos: SourcePos


def _pos_at(text: str, offset: int) -> SourcePos:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return SourcePos(line, col)


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(_pos_at(text, i), f"unexpected character {text[i]!r}")
        kind = m.lastgroup
        assert kind is not None
        if kind != "ws":
            word = m.group()
            if kind == "ident" and word == "mu":
                kind = "mu"
            elif kind == "num" and word not in ("0", "1"):
                raise ParseError(_pos_at(text, i), f"only the constants 0 and 1 are allowed, got {word!r}")
            toks.append(_Tok(kind, word, _pos_at(text, i)))
        i = m.end()
    toks.append(_Tok("eof", "", _pos_at(text, len(text))))
    return toks


class _TermParser:
    def __init__(self, text: str) -> None:
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, text: str | None = None, what: str = "") -> _Tok:
        tok = self.tok
        if tok.kind != kind or (text is not None and tok.text != text):
            found = tok.text or "end of input"
            raise ParseError(tok.pos, f"expected {what or text or kind}, found {found!r}")
        return self.advance()

    def starts_factor(self) -> bool:
        tok = self.tok
        return tok.kind in ("ident", "num", "mu") or (tok.kind == "op" and tok.text == "(")

    def parse(self) -> Term:
        t = self.sum()
        if self.tok.kind != "eof":
            raise ParseError(self.tok.pos, f"unexpected {self.tok.text!r}")
        return t

    def sum(self) -> Term:
        t = self.product()
        while self.tok.kind == "op" and self.tok.text == "+":
            self.advance()
            t = Sum(t, self.product())
        return t

    def product(self) -> Term:
        binder = self.tok.kind == "mu"
        t = self.factor()
        while not binder:
            # a bare mu factor has already swallowed everything to its right
            if self.tok.kind == "op" and self.tok.text == ".":
                self.advance()
            elif not self.starts_factor():
                break
            binder = self.tok.kind == "mu"
            t = Prod(t, self.factor())
        return t

    def factor(self) -> Term:
        tok = self.tok
        if tok.kind == "ident":
            self.advance()
            return Var(tok.text)
        if tok.kind == "num":
            self.advance()
            return ZERO if tok.text == "0" else ONE
        if tok.kind == "mu":
            self.advance()
            name = self.expect("ident", what="binder name after 'mu'")
            self.expect("op", ".", what="'.' after binder name")
            return Mu(name.text, self.sum())
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            t = self.sum()
            self.expect("op", ")", what="')'")
            return t
        found = tok.text or "end of input"
        raise ParseError(tok.pos, f"expected a term, found {found!r}")


def parse_term(text: str) -> Term:
    """Parse one term; raises ParseError with a position on bad input."""
    return _TermParser(text).parse()


_SUM, _PROD, _ATOM = 0, 1, 2


def print_term(t: Term) -> str:
    """Render t with the fewest parentheses that still reparse to t."""
    return _show(t, _SUM, True)


def _show(t: Term, prec: int, open_right: bool) -> str:
    # open_right: nothing follows t in its enclosing context, so a mu may
    # extend to the end without parentheses.
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Sum):
        if prec > _SUM:
            return f"({_show(t, _SUM, True)})"
        return f"{_show(t.left, _SUM, False)} + {_show(t.right, _PROD, open_right)}"
    if isinstance(t, Prod):
        if prec > _PROD:
            return f"({_show(t, _PROD, True)})"
        return f"{_show(t.left, _PROD, False)} {_show(t.right, _ATOM, open_right)}"
    assert isinstance(t, Mu)
    text = f"mu {t.var}. {_show(t.body, _SUM, True)}"
    return text if open_right else f"({text})"


# -- grammar files ---------------------------------------------------------

_EPS = "eps"


def parse_grammar(text: str):
    """Parse a grammar file into a :class:`mucfl.grammar.Grammar`."""
    from mucfl.grammar import Grammar

    order: list[str] = []
    rules: dict[str, list[tuple[str, ...]]] = {}
    rule_pos: dict[str, SourcePos] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        arrow = line.find("->")
        if arrow < 0:
            col = len(line) - len(line.lstrip()) + 1
            raise ParseError(SourcePos(lineno, col), "expected 'N -> alternatives'")
        lhs = line[:arrow].strip()
        lhs_col = len(line) - len(line.lstrip()) + 1
        if not lhs:
            raise ParseError(SourcePos(lineno, lhs_col), "missing nonterminal before '->'")
        if not is_identifier(lhs) or lhs == _EPS:
            raise ParseError(SourcePos(lineno, lhs_col), f"invalid nonterminal name {lhs!r}")
        alts = rules.setdefault(lhs, [])
        if lhs not in rule_pos:
            order.append(lhs)
            rule_pos[lhs] = SourcePos(lineno, lhs_col)
        offset = arrow + 2
        for chunk in line[arrow + 2:].split("|"):
            col = offset + (len(chunk) - len(chunk.lstrip())) + 1
            symbols = chunk.split()
            offset += len(chunk) + 1
            if not symbols:
                raise ParseError(SourcePos(lineno, col), "empty alternative (write 'eps' for the empty word)")
            if _EPS in symbols:
                if len(symbols) > 1:
                    raise ParseError(SourcePos(lineno, col), "'eps' must stand alone in an alternative")
                alt: tuple[str, ...] = ()
            else:
                for sym in symbols:
                    if not is_identifier(sym):
                        raise ParseError(SourcePos(lineno, col), f"invalid symbol {sym!r}")
                alt = tuple(symbols)
            if alt not in alts:
                alts.append(alt)
    if not order:
        raise ParseError(SourcePos(1, 1), "grammar has no productions")
    return Grammar(order[0], tuple(order), {n: tuple(rules[n]) for n in order})


def print_grammar(g) -> str:
    """One line per nonterminal, start symbol first, then declaration order."""
    lines = []
    for n in g.nonterminals:
        alts = " | ".join(" ".join(alt) if alt else _EPS for alt in g.productions[n])
        lines.append(f"{n} -> {alts}")
    return "\n".join(lines)

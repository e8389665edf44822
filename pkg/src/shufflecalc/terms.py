"""Term syntax for the shuffling call-by-value lambda calculus.

Terms are variables, abstractions and applications; values are variables
and abstractions.  Terms carry named binders at the surface but compare
and hash by a canonical nameless (binder-index) form, so every set or
dict of terms is automatically a set of alpha-equivalence classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

Path = tuple  # tuple[int, ...]: 0 = fun/body, 1 = arg; () = root


class ParseError(ValueError):
    """Malformed concrete syntax; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PathError(Exception):
    """A path that does not resolve to a subterm."""


class Term:
    """Base class; equality and hashing are up to alpha-conversion."""

    __slots__ = ()

    def __eq__(self, other):
        return isinstance(other, Term) and canon(self) == canon(other)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(canon(self))

    def __str__(self):
        return pretty(self)

    def __repr__(self):
        return pretty(self)


@dataclass(frozen=True, eq=False, repr=False)
class Var(Term):
    __slots__ = ("name", "_canon", "_fv")
    name: str


@dataclass(frozen=True, eq=False, repr=False)
class Abs(Term):
    __slots__ = ("binder", "body", "_canon", "_fv")
    binder: str
    body: Term


@dataclass(frozen=True, eq=False, repr=False)
class App(Term):
    __slots__ = ("fun", "arg", "_canon", "_fv")
    fun: Term
    arg: Term


def _canon(t: Term, env: dict, depth: int):
    if isinstance(t, Var):
        bind = env.get(t.name)
        if bind is None:
            return ("f", t.name)
        return ("b", depth - bind - 1)
    if isinstance(t, Abs):
        inner = dict(env)
        inner[t.binder] = depth
        return ("l", _canon(t.body, inner, depth + 1))
    return ("a", _canon(t.fun, env, depth), _canon(t.arg, env, depth))


def canon(t: Term):
    """Canonical nameless key of ``t``; alpha-equal terms share it."""
    try:
        return object.__getattribute__(t, "_canon")
    except AttributeError:
        key = _canon(t, {}, 0)
        object.__setattr__(t, "_canon", key)
        return key


def alpha_eq(a: Term, b: Term) -> bool:
    return canon(a) == canon(b)


def free_vars(t: Term) -> frozenset:
    try:
        return object.__getattribute__(t, "_fv")
    except AttributeError:
        if isinstance(t, Var):
            fv = frozenset((t.name,))
        elif isinstance(t, Abs):
            fv = free_vars(t.body) - {t.binder}
        else:
            fv = free_vars(t.fun) | free_vars(t.arg)
        object.__setattr__(t, "_fv", fv)
        return fv


def is_value(t: Term) -> bool:
    return isinstance(t, (Var, Abs))


def size(t: Term) -> int:
    """Number of AST nodes."""
    if isinstance(t, Var):
        return 1
    if isinstance(t, Abs):
        return 1 + size(t.body)
    return 1 + size(t.fun) + size(t.arg)


def fresh_name(base: str, avoid) -> str:
    """First primed variant of ``base`` not occurring in ``avoid``."""
    name = base
    while name in avoid:
        name += "'"
    return name


def substitute(t: Term, x: str, v: Term) -> Term:
    """Capture-avoiding substitution of ``v`` for free ``x`` in ``t``."""
    if x not in free_vars(t):
        return t
    if isinstance(t, Var):
        return v
    if isinstance(t, App):
        return App(substitute(t.fun, x, v), substitute(t.arg, x, v))
    # x is free in t, so t.binder != x
    binder, body = t.binder, t.body
    if binder in free_vars(v):
        renamed = fresh_name(binder, free_vars(v) | free_vars(body) | {x})
        body = substitute(body, binder, Var(renamed))
        binder = renamed
    return Abs(binder, substitute(body, x, v))


def subterm_at(t: Term, path: Path) -> Term:
    for i, step in enumerate(path):
        if isinstance(t, App) and step == 0:
            t = t.fun
        elif isinstance(t, App) and step == 1:
            t = t.arg
        elif isinstance(t, Abs) and step == 0:
            t = t.body
        else:
            raise PathError(f"path {path} does not resolve (stuck at index {i})")
    return t


def replace_at(t: Term, path: Path, s: Term) -> Term:
    """Graft ``s`` at ``path`` (capture-allowing, as context-hole filling)."""
    if not path:
        return s
    step, rest = path[0], path[1:]
    if isinstance(t, App) and step == 0:
        return App(replace_at(t.fun, rest, s), t.arg)
    if isinstance(t, App) and step == 1:
        return App(t.fun, replace_at(t.arg, rest, s))
    if isinstance(t, Abs) and step == 0:
        return Abs(t.binder, replace_at(t.body, rest, s))
    raise PathError(f"path {path} does not resolve")


def decompose_applicative(t: Term):
    """Unique decomposition of ``t`` as a value applied to arguments.

    Returns ``(V, [N1, ..., Nn])`` with ``t = V N1 ... Nn``; ``n`` is zero
    exactly when ``t`` is a value.
    """
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def apply_spine(head: Term, args) -> Term:
    for a in args:
        head = App(head, a)
    return head


# ---------------------------------------------------------------------------
# Concrete syntax

_ABBREVIATIONS = {
    "I": lambda: Abs("x", Var("x")),
    "D": lambda: Abs("x", App(Var("x"), Var("x"))),
}


def _lex(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in "\\λ":
            tokens.append(("lam", c, i))
            i += 1
        elif c == ".":
            tokens.append(("dot", c, i))
            i += 1
        elif c == "(":
            tokens.append(("lpar", c, i))
            i += 1
        elif c == ")":
            tokens.append(("rpar", c, i))
            i += 1
        elif c.isalpha():
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "'"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
        else:
            raise ParseError(f"unexpected character {c!r}", i)
    tokens.append(("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _lex(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", tok[2])
        return tok

    def term(self, scope: frozenset) -> Term:
        if self.peek()[0] == "lam":
            self.next()
            name = self.expect("ident")[1]
            self.expect("dot")
            return Abs(name, self.term(scope | {name}))
        t = self.atom(scope)
        if t is None:
            tok = self.peek()
            raise ParseError(f"expected a term, found {tok[1] or 'end of input'!r}", tok[2])
        while True:
            nxt = self.atom(scope)
            if nxt is None:
                return t
            t = App(t, nxt)

    def atom(self, scope: frozenset) -> Optional[Term]:
        kind, value, pos = self.peek()
        if kind == "ident":
            self.next()
            if value in _ABBREVIATIONS and value not in scope:
                return _ABBREVIATIONS[value]()
            return Var(value)
        if kind == "lpar":
            self.next()
            t = self.term(scope)
            self.expect("rpar")
            return t
        return None


def parse(text: str) -> Term:
    """Parse concrete syntax; applications left-associative, abstraction
    bodies extend maximally right.  ``I`` and ``D`` abbreviate the identity
    and self-application combinators when not bound in scope."""
    parser = _Parser(text)
    t = parser.term(frozenset())
    tok = parser.peek()
    if tok[0] != "eof":
        raise ParseError(f"trailing input {tok[1]!r}", tok[2])
    return t


def pretty(t: Term, unicode: bool = False) -> str:
    """Print with minimal parentheses; ``parse(pretty(t))`` is alpha-equal
    to ``t``."""
    lam = "λ" if unicode else "\\"

    def go(t: Term) -> str:
        if isinstance(t, Var):
            return t.name
        if isinstance(t, Abs):
            return f"{lam}{t.binder}.{go(t.body)}"
        return f"{fun(t.fun)} {atom(t.arg)}"

    def fun(t: Term) -> str:
        if isinstance(t, Var):
            return t.name
        if isinstance(t, App):
            return go(t)
        return f"({go(t)})"

    def atom(t: Term) -> str:
        if isinstance(t, Var):
            return t.name
        return f"({go(t)})"

    return go(t)

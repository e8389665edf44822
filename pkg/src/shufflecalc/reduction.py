"""Rewrite rules and reduction relations.

Root rules:

    (\\x.M) V    -> M{V/x}            betav   (V a value)
    (\\x.M) N L  -> (\\x.M L) N       sigma1  (x not free in L)
    V ((\\x.L) N) -> (\\x.V L) N      sigma3  (x not free in V)

plus their closures: full contextual closure over any rule set, the head
relations (deterministic head betav, non-deterministic head sigma, their
union), pair-level internal reduction, and the weak/stratified closures
used by the valuability and solvability analyses.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .terms import (
    Abs,
    App,
    Path,
    Term,
    Var,
    alpha_eq,
    apply_spine,
    canon,
    decompose_applicative,
    free_vars,
    fresh_name,
    is_value,
    parse,
    pretty,
    replace_at,
    substitute,
    subterm_at,
)


class RedexError(Exception):
    """contract() was pointed at a position that is not a redex."""


class TraceError(Exception):
    """A trace whose steps do not replay."""


class Rule(enum.Enum):
    BETA_V = "betav"
    SIGMA1 = "sigma1"
    SIGMA3 = "sigma3"

    def __str__(self):
        return self.value


SIGMA_RULES = (Rule.SIGMA1, Rule.SIGMA3)
V_RULES = (Rule.BETA_V, Rule.SIGMA1, Rule.SIGMA3)

_RULE_ORDER = {Rule.BETA_V: 0, Rule.SIGMA1: 1, Rule.SIGMA3: 2}


# ---------------------------------------------------------------------------
# Relation identifiers

@dataclass(frozen=True)
class Full:
    """Full contextual closure of the given root rules."""

    rules: tuple = V_RULES


class HeadRel(enum.Enum):
    HEAD_BETAV = "head-betav"
    HEAD_SIGMA = "head-sigma"
    HEAD_V = "head-v"
    INTERNAL_V = "internal-v"
    WEAK = "weak"
    STRATIFIED = "stratified"


FULL_V = Full(V_RULES)
FULL_SIGMA = Full(SIGMA_RULES)
FULL_BETAV = Full((Rule.BETA_V,))
HEAD_BETAV = HeadRel.HEAD_BETAV
HEAD_SIGMA = HeadRel.HEAD_SIGMA
HEAD_V = HeadRel.HEAD_V
INTERNAL_V = HeadRel.INTERNAL_V
WEAK = HeadRel.WEAK
STRATIFIED = HeadRel.STRATIFIED

RelationId = object  # Full | HeadRel


# ---------------------------------------------------------------------------
# Steps, traces, outcomes

@dataclass(frozen=True)
class Step:
    rule: Rule
    path: Path
    result: Term


@dataclass(frozen=True)
class Trace:
    start: Term
    steps: tuple = ()

    @property
    def end(self) -> Term:
        return self.steps[-1].result if self.steps else self.start

    def terms(self) -> list:
        return [self.start] + [s.result for s in self.steps]

    def __len__(self) -> int:
        return len(self.steps)

    def validate(self) -> None:
        from .terms import PathError

        cur = self.start
        for i, s in enumerate(self.steps):
            try:
                expected = contract(cur, s.path, s.rule)
            except (RedexError, PathError) as exc:
                raise TraceError(f"step {i}: no {s.rule} redex at {s.path}") from exc
            if not alpha_eq(expected, s.result):
                raise TraceError(
                    f"step {i}: result {pretty(s.result)} does not match "
                    f"contraction {pretty(expected)}"
                )
            cur = s.result

    def extend(self, step: Step) -> "Trace":
        return Trace(self.start, self.steps + (step,))


class Strategy(enum.Enum):
    LEFTMOST = "leftmost"
    EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True)
class NormalForm:
    term: Term
    trace: Trace


@dataclass(frozen=True)
class CycleDetected:
    trace: Trace
    loop_entry: Term


@dataclass(frozen=True)
class FuelExhausted:
    trace: Trace


Outcome = object  # NormalForm | CycleDetected | FuelExhausted


# ---------------------------------------------------------------------------
# Root rules

def match_rule(t: Term, rule: Rule) -> Optional[Term]:
    """Root contractum of ``t`` under ``rule``, if ``t`` matches.

    Side conditions of sigma1/sigma3 are discharged by alpha-renaming the
    redex binder when (and only when) they would be violated.
    """
    if rule is Rule.BETA_V:
        if isinstance(t, App) and isinstance(t.fun, Abs) and is_value(t.arg):
            return substitute(t.fun.body, t.fun.binder, t.arg)
        return None
    if rule is Rule.SIGMA1:
        if (
            isinstance(t, App)
            and isinstance(t.fun, App)
            and isinstance(t.fun.fun, Abs)
        ):
            lam, n, l = t.fun.fun, t.fun.arg, t.arg
            x, m = lam.binder, lam.body
            if x in free_vars(l):
                x2 = fresh_name(x, free_vars(l) | free_vars(m) | free_vars(n))
                m = substitute(m, x, Var(x2))
                x = x2
            return App(Abs(x, App(m, l)), n)
        return None
    if rule is Rule.SIGMA3:
        if (
            isinstance(t, App)
            and is_value(t.fun)
            and isinstance(t.arg, App)
            and isinstance(t.arg.fun, Abs)
        ):
            v, lam, n = t.fun, t.arg.fun, t.arg.arg
            x, l = lam.binder, lam.body
            if x in free_vars(v):
                x2 = fresh_name(x, free_vars(v) | free_vars(l) | free_vars(n))
                l = substitute(l, x, Var(x2))
                x = x2
            return App(Abs(x, App(v, l)), n)
        return None
    raise ValueError(f"unknown rule {rule!r}")


def redex_positions(t: Term, rule: Rule) -> list:
    """All positions where ``rule`` matches, in pre-order."""
    out = []

    def walk(t: Term, path: Path) -> None:
        if match_rule(t, rule) is not None:
            out.append(path)
        if isinstance(t, Abs):
            walk(t.body, path + (0,))
        elif isinstance(t, App):
            walk(t.fun, path + (0,))
            walk(t.arg, path + (1,))

    walk(t, ())
    return out


def contract(t: Term, path: Path, rule: Rule) -> Term:
    sub = subterm_at(t, path)
    reduct = match_rule(sub, rule)
    if reduct is None:
        raise RedexError(f"no {rule} redex at {path} in {pretty(t)}")
    return replace_at(t, path, reduct)


# ---------------------------------------------------------------------------
# Head reduction

def head_redexes(t: Term) -> list:
    """Occurrences fireable by the inductive head rules, as (path, rule).

    The rules recurse on the applicative spine ``V N1 ... Nn`` and, via the
    rule *right*, into the first argument ``N1``.  At most one betav entry
    exists (head betav is deterministic).
    """
    head, args = decompose_applicative(t)
    n = len(args)
    out = []
    if n >= 1:
        base = (0,) * (n - 1)
        if isinstance(head, Abs) and is_value(args[0]):
            out.append((base, Rule.BETA_V))
        if n >= 2 and isinstance(head, Abs):
            out.append(((0,) * (n - 2), Rule.SIGMA1))
        if isinstance(args[0], App) and isinstance(args[0].fun, Abs):
            out.append((base, Rule.SIGMA3))
        for path, rule in head_redexes(args[0]):
            out.append((base + (1,) + path, rule))
    out.sort(key=lambda pr: (pr[0], _RULE_ORDER[pr[1]]))
    return out


def head_successors(t: Term) -> list:
    return [Step(r, p, contract(t, p, r)) for p, r in head_redexes(t)]


def step_head_betav(t: Term) -> Optional[Term]:
    """The unique head betav successor, or None when head betav-normal."""
    head, args = decompose_applicative(t)
    if not args:
        return None
    if isinstance(head, Abs) and is_value(args[0]):
        contractum = substitute(head.body, head.binder, args[0])
        return apply_spine(contractum, args[1:])
    inner = step_head_betav(args[0])
    if inner is None:
        return None
    return apply_spine(head, [inner] + args[1:])


# ---------------------------------------------------------------------------
# Weak and stratified contexts
#
#   W ::= <> | W M | M W | (\x.W) M
#   S ::= W | \x.S | S M

def weak_positions(t: Term, applied: bool = False) -> Iterator[Path]:
    yield ()
    if isinstance(t, App):
        for p in weak_positions(t.fun, applied=True):
            yield (0,) + p
        for p in weak_positions(t.arg, applied=False):
            yield (1,) + p
    elif isinstance(t, Abs) and applied:
        for p in weak_positions(t.body, applied=False):
            yield (0,) + p


def stratified_positions(t: Term) -> Iterator[Path]:
    def strat(t: Term) -> Iterator[Path]:
        yield from weak_positions(t)
        if isinstance(t, Abs):
            for p in strat(t.body):
                yield (0,) + p
        elif isinstance(t, App):
            for p in strat(t.fun):
                yield (0,) + p

    seen = set()
    for p in strat(t):
        if p not in seen:
            seen.add(p)
            yield p


def _positional_steps(t: Term, positions, rules) -> list:
    steps = []
    for p in positions:
        sub = subterm_at(t, p)
        for r in rules:
            reduct = match_rule(sub, r)
            if reduct is not None:
                steps.append(Step(r, p, replace_at(t, p, reduct)))
    steps.sort(key=lambda s: (s.path, _RULE_ORDER[s.rule]))
    return steps


def successors(t: Term, rel) -> list:
    """All one-step reducts of ``t`` under the relation, as Steps in the
    deterministic order (path lexicographic, betav < sigma1 < sigma3)."""
    if isinstance(rel, Full):
        steps = []
        for r in rel.rules:
            for p in redex_positions(t, r):
                steps.append(Step(r, p, contract(t, p, r)))
        steps.sort(key=lambda s: (s.path, _RULE_ORDER[s.rule]))
        return steps
    if rel is HeadRel.HEAD_BETAV:
        return [s for s in head_successors(t) if s.rule is Rule.BETA_V]
    if rel is HeadRel.HEAD_SIGMA:
        return [s for s in head_successors(t) if s.rule is not Rule.BETA_V]
    if rel is HeadRel.HEAD_V:
        return head_successors(t)
    if rel is HeadRel.INTERNAL_V:
        # occurrence-level: a step is internal when it does not fire a head
        # occurrence (result-based classification would drop steps whose
        # result alpha-coincides with a head result, breaking the inclusion
        # of internal parallel reduction in iterated internal reduction)
        head_occurrences = set(head_redexes(t))
        return [
            s
            for s in successors(t, FULL_V)
            if (s.path, s.rule) not in head_occurrences
        ]
    if rel is HeadRel.WEAK:
        return _positional_steps(t, sorted(set(weak_positions(t))), V_RULES)
    if rel is HeadRel.STRATIFIED:
        return _positional_steps(t, sorted(set(stratified_positions(t))), V_RULES)
    raise ValueError(f"unknown relation {rel!r}")


# ---------------------------------------------------------------------------
# Bounded normalization

def normalize(t: Term, rel, strategy: Strategy = Strategy.LEFTMOST, fuel: int = 10000):
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    if strategy is Strategy.LEFTMOST:
        return _normalize_leftmost(t, rel, fuel)
    return _normalize_exhaustive(t, rel, fuel)


def _normalize_leftmost(t: Term, rel, fuel: int):
    trace = Trace(t)
    seen = {canon(t)}
    cur = t
    for _ in range(fuel):
        steps = successors(cur, rel)
        if not steps:
            return NormalForm(cur, trace)
        step = steps[0]
        trace = trace.extend(step)
        key = canon(step.result)
        if key in seen:
            return CycleDetected(trace, step.result)
        seen.add(key)
        cur = step.result
    if not successors(cur, rel):
        return NormalForm(cur, trace)
    return FuelExhausted(trace)


def _normalize_exhaustive(t: Term, rel, fuel: int):
    parents = {canon(t): None}
    queue = deque([t])
    expanded = 0
    last = t

    def path_to(u: Term) -> Trace:
        chain = []
        key = canon(u)
        while True:
            entry = parents[key]
            if entry is None:
                break
            src, step = entry
            chain.append(step)
            key = canon(src)
        chain.reverse()
        return Trace(t, tuple(chain))

    while queue:
        if expanded >= fuel:
            return FuelExhausted(path_to(last))
        u = queue.popleft()
        last = u
        expanded += 1
        steps = successors(u, rel)
        if not steps:
            return NormalForm(u, path_to(u))
        for s in steps:
            key = canon(s.result)
            if key in parents:
                continue
            parents[key] = (u, s)
            queue.append(s.result)
    # Finite graph fully explored and every node has a successor: the
    # first-successor walk from the start must revisit a term.
    walk = Trace(t)
    seen = {canon(t)}
    cur = t
    while True:
        step = successors(cur, rel)[0]
        walk = walk.extend(step)
        key = canon(step.result)
        if key in seen:
            return CycleDetected(walk, step.result)
        seen.add(key)
        cur = step.result


# ---------------------------------------------------------------------------
# Trace text format

def path_str(path: Path) -> str:
    return ".".join(str(i) for i in path) if path else "e"


def parse_path(text: str) -> Path:
    text = text.strip()
    if text == "e":
        return ()
    try:
        return tuple(int(part) for part in text.split("."))
    except ValueError as exc:
        raise TraceError(f"bad path {text!r}") from exc


def trace_to_text(trace: Trace, unicode: bool = False) -> str:
    lines = [f"term: {pretty(trace.start, unicode=unicode)}"]
    for s in trace.steps:
        lines.append(
            f"step: {s.rule} @ {path_str(s.path)} -> {pretty(s.result, unicode=unicode)}"
        )
    return "\n".join(lines) + "\n"


def trace_from_text(text: str) -> Trace:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines or not lines[0].startswith("term:"):
        raise TraceError("trace must begin with a 'term:' line")
    start = parse(lines[0][len("term:"):])
    steps = []
    by_name = {r.value: r for r in Rule}
    for line in lines[1:]:
        if not line.startswith("step:"):
            raise TraceError(f"expected a 'step:' line, found {line!r}")
        body = line[len("step:"):].strip()
        try:
            rule_part, rest = body.split("@", 1)
            path_part, term_part = rest.split("->", 1)
        except ValueError as exc:
            raise TraceError(f"malformed step line {line!r}") from exc
        rule_name = rule_part.strip()
        if rule_name not in by_name:
            raise TraceError(f"unknown rule {rule_name!r}")
        steps.append(
            Step(by_name[rule_name], parse_path(path_part), parse(term_part))
        )
    trace = Trace(start, tuple(steps))
    trace.validate()
    return trace

"""Standard-sequence checking, sequentialization and standardization.

A standard head sequence runs head betav steps, then head sigma steps.
Standard (inner) sequences extend this left-to-right through subterms by
the mutual rules: a head phase followed by an inner phase; singletons;
peeling a common outer binder; a fun phase over values followed by an arg
phase; a fun phase over non-values followed by an arg phase.  Strict
variants additionally require each head phase to run to head-betav-normal
and then head-v-normal form.

Sequentialization rearranges any v-reduction into head betav*, head
sigma*, then internal steps; standardization recurses that decomposition
structurally into the subterms.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .reduction import (
    FULL_V,
    INTERNAL_V,
    Rule,
    Step,
    Trace,
    TraceError,
    head_redexes,
    head_successors,
    step_head_betav,
    successors,
)
from .parallel import head_betav_prefix, head_sigma_closure
from .terms import (
    Abs,
    App,
    Term,
    Var,
    canon,
    free_vars,
    fresh_name,
    is_value,
    pretty,
    substitute,
)


class StdKind(enum.Enum):
    STANDARD_HEAD = "STANDARD-HEAD"
    STANDARD = "STANDARD"
    STANDARD_INNER = "STANDARD-INNER"
    STRICT_STANDARD_HEAD = "STRICT-STANDARD-HEAD"
    STRICT_STANDARD = "STRICT-STANDARD"
    NOT_STANDARD = "NOT-STANDARD"


@dataclass(frozen=True)
class StdVerdict:
    kind: StdKind
    split: Optional[int] = None
    witness: Optional[int] = None
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.kind is not StdKind.NOT_STANDARD

    def __str__(self) -> str:
        if self.kind is StdKind.STANDARD_HEAD:
            return f"STANDARD-HEAD k={self.split}"
        if self.kind is StdKind.NOT_STANDARD:
            return f"NOT-STANDARD @ step {self.witness}: {self.reason}"
        return self.kind.value


# ---------------------------------------------------------------------------
# Pair-level step classification (memoized)

_PAIR_MEMO: dict = {}


def _pair_kinds(t: Term, u: Term) -> tuple:
    """(is head betav pair, is head sigma pair) for the pair (t, u)."""
    key = (canon(t), canon(u))
    hit = _PAIR_MEMO.get(key)
    if hit is not None:
        return hit
    bv = step_head_betav(t)
    is_bv = bv is not None and bv == u
    is_sg = any(
        s.rule is not Rule.BETA_V and s.result == u for s in head_successors(t)
    )
    _PAIR_MEMO[key] = (is_bv, is_sg)
    return is_bv, is_sg


def _head_split(seq: list) -> Optional[int]:
    """Least split k making ``seq`` a standard head sequence, pair-level."""
    n = len(seq)
    kinds = [_pair_kinds(seq[i], seq[i + 1]) for i in range(n - 1)]
    bv_prefix = 0
    while bv_prefix < n - 1 and kinds[bv_prefix][0]:
        bv_prefix += 1
    sigma_from = n - 1
    while sigma_from > 0 and kinds[sigma_from - 1][1]:
        sigma_from -= 1
    if sigma_from <= bv_prefix:
        return sigma_from
    return None


def _strict_head_split(seq: list) -> Optional[int]:
    k = _head_split(seq)
    if k is None:
        return None
    # every split in [k, bv_prefix] is valid; the endpoint conditions need
    # seq[k'] head betav-normal, so only k' = full betav prefix can work
    # unless intermediate terms are already betav-normal (they are not,
    # except at the end of the betav phase).
    n = len(seq)
    bv_prefix = 0
    while bv_prefix < n - 1 and _pair_kinds(seq[bv_prefix], seq[bv_prefix + 1])[0]:
        bv_prefix += 1
    for split in range(k, bv_prefix + 1):
        if step_head_betav(seq[split]) is not None:
            continue
        if all(_pair_kinds(seq[i], seq[i + 1])[1] for i in range(split, n - 1)):
            if not head_redexes(seq[-1]):
                return split
    return None


# ---------------------------------------------------------------------------
# The mutual standard / standard-inner decision

_SEQ_MEMO: dict = {}


def _seq_key(kind: str, seq: list) -> tuple:
    return (kind,) + tuple(canon(t) for t in seq)


def _peel_abs(seq: list) -> Optional[list]:
    if not all(isinstance(t, Abs) for t in seq):
        return None
    avoid = set()
    for t in seq:
        avoid |= free_vars(t) | {t.binder}
    z = fresh_name(seq[0].binder, avoid)
    return [substitute(t.body, t.binder, Var(z)) for t in seq]


def _is_inner(seq: list, strict: bool) -> bool:
    if len(seq) == 1:
        return True
    key = _seq_key("inner-strict" if strict else "inner", seq)
    hit = _SEQ_MEMO.get(key)
    if hit is not None:
        return hit
    _SEQ_MEMO[key] = False  # cycles in the search count as failure
    result = False
    bodies = _peel_abs(seq)
    if bodies is not None:
        result = _is_std(bodies, strict)
    elif all(isinstance(t, App) for t in seq):
        funs = [t.fun for t in seq]
        args = [t.arg for t in seq]
        n = len(seq)
        if all(is_value(f) for f in funs):
            # fun phase over values (standard), then arg phase (inner)
            for s in range(n):
                if any(args[i] != args[0] for i in range(s + 1)):
                    break
                if all(funs[j] == funs[s] for j in range(s, n)) and _is_std(
                    funs[: s + 1], strict
                ) and _is_inner(args[s:], strict):
                    result = True
                    break
        elif not is_value(funs[0]):
            # fun phase over non-values (inner), then arg phase (standard)
            for s in range(n):
                if any(args[i] != args[0] for i in range(s + 1)):
                    break
                if all(funs[j] == funs[s] for j in range(s, n)) and _is_inner(
                    funs[: s + 1], strict
                ) and _is_std(args[s:], strict):
                    result = True
                    break
    _SEQ_MEMO[key] = result
    return result


def _is_std(seq: list, strict: bool) -> bool:
    key = _seq_key("std-strict" if strict else "std", seq)
    hit = _SEQ_MEMO.get(key)
    if hit is not None:
        return hit
    _SEQ_MEMO[key] = False
    split_of = _strict_head_split if strict else _head_split
    result = False
    for m in range(len(seq)):
        if split_of(seq[: m + 1]) is not None and _is_inner(seq[m:], strict):
            result = True
            break
    _SEQ_MEMO[key] = result
    return result


# ---------------------------------------------------------------------------
# Public checkers

def _terms_of(trace: Trace) -> list:
    trace.validate()
    return trace.terms()


def _first_violation(seq: list, accept) -> int:
    """First step index i such that seq[0..i+1] is rejected.

    Prefixes of accepted sequences are accepted, so the scan is sound.
    """
    for i in range(1, len(seq)):
        if not accept(seq[: i + 1]):
            return i - 1
    return len(seq) - 1


def check_standard_head(trace: Trace) -> StdVerdict:
    """Head betav steps, then head sigma steps; each step must be a head
    occurrence of its rule."""
    seq = _terms_of(trace)
    for i, step in enumerate(trace.steps):
        if (step.path, step.rule) not in head_redexes(seq[i]):
            return StdVerdict(
                StdKind.NOT_STANDARD,
                witness=i,
                reason=f"step {i} is not a head {step.rule} step",
            )
    rules = [s.rule for s in trace.steps]
    k = 0
    while k < len(rules) and rules[k] is Rule.BETA_V:
        k += 1
    for i in range(k, len(rules)):
        if rules[i] is Rule.BETA_V:
            return StdVerdict(
                StdKind.NOT_STANDARD,
                witness=i,
                reason="head betav step after a head sigma step",
            )
    return StdVerdict(StdKind.STANDARD_HEAD, split=k)


def check_standard(trace: Trace) -> StdVerdict:
    seq = _terms_of(trace)
    if _is_std(seq, strict=False):
        return StdVerdict(StdKind.STANDARD)
    w = _first_violation(seq, lambda s: _is_std(s, strict=False))
    return StdVerdict(
        StdKind.NOT_STANDARD, witness=w, reason="no standard decomposition"
    )


def check_standard_inner(trace: Trace) -> StdVerdict:
    seq = _terms_of(trace)
    if _is_inner(seq, strict=False):
        return StdVerdict(StdKind.STANDARD_INNER)
    w = _first_violation(seq, lambda s: _is_inner(s, strict=False))
    return StdVerdict(
        StdKind.NOT_STANDARD, witness=w, reason="no standard inner decomposition"
    )


def check_strict_standard(trace: Trace) -> StdVerdict:
    """As check_standard, but every head phase must run to head-betav-normal
    and then to head-v-normal form."""
    seq = _terms_of(trace)
    if _is_std(seq, strict=True):
        return StdVerdict(StdKind.STRICT_STANDARD)
    w = _first_violation(seq, lambda s: _is_std(s, strict=True))
    return StdVerdict(
        StdKind.NOT_STANDARD, witness=w, reason="no strict standard decomposition"
    )


def check_strict_standard_head(trace: Trace) -> StdVerdict:
    seq = _terms_of(trace)
    base = check_standard_head(trace)
    if not base:
        return base
    split = _strict_head_split(seq)
    if split is None:
        return StdVerdict(
            StdKind.NOT_STANDARD,
            witness=len(seq) - 1,
            reason="head phases do not reach their normal forms",
        )
    return StdVerdict(StdKind.STRICT_STANDARD_HEAD, split=split)


# ---------------------------------------------------------------------------
# Sequentialization

def _internal_bfs(start: Term, target: Term, depth: int, fuel: int) -> Optional[Trace]:
    """Breadth-first search for an internal v-path start ->int* target."""
    goal = canon(target)
    if canon(start) == goal:
        return Trace(start)
    parents = {canon(start): None}
    queue = deque([(start, 0)])
    expanded = 0

    def path_to(u: Term) -> Trace:
        chain = []
        key = canon(u)
        while parents[key] is not None:
            src, step = parents[key]
            chain.append(step)
            key = canon(src)
        chain.reverse()
        return Trace(start, tuple(chain))

    while queue:
        u, d = queue.popleft()
        if d >= depth:
            continue
        if expanded >= fuel:
            return None
        expanded += 1
        for s in successors(u, INTERNAL_V):
            key = canon(s.result)
            if key in parents:
                continue
            parents[key] = (u, s)
            if key == goal:
                return path_to(s.result)
            queue.append((s.result, d + 1))
    return None


def sequentialize(
    m: Term, m2: Term, len_bound: int = 4, fuel: int = 20000
) -> Optional[tuple]:
    """Factor a v-reduction from ``m`` to ``m2`` as (head betav trace,
    head sigma trace, internal trace), by bounded search.

    Returns None when the bound is exhausted; that never asserts
    nonexistence beyond the bound.
    """
    depth = max(4 * len_bound, 4)
    prefixes, _ = head_betav_prefix(m, fuel)
    for bv in prefixes:
        closure, _ = head_sigma_closure(bv.end, fuel)
        for sg in closure:
            inner = _internal_bfs(sg.end, m2, depth, fuel)
            if inner is not None:
                return bv, sg, inner
    return None


def _find_step(t: Term, u: Term) -> Optional[Step]:
    for s in successors(t, FULL_V):
        if s.result == u:
            return s
    return None


def _steps_for(seq: list) -> Optional[Trace]:
    steps = []
    for i in range(len(seq) - 1):
        s = _find_step(seq[i], seq[i + 1])
        if s is None:
            return None
        steps.append(s)
    return Trace(seq[0], tuple(steps))


# ---------------------------------------------------------------------------
# Standardization

def _std_sequence(m: Term, m2: Term, bound: int, fuel: int) -> Optional[list]:
    fact = sequentialize(m, m2, bound, fuel)
    if fact is None:
        return None
    bv, sg, inner_trace = fact
    head_part = bv.terms() + sg.terms()[1:]
    inner_part = _inner_sequence(sg.end, m2, bound, fuel)
    if inner_part is None:
        return None
    return head_part + inner_part[1:]


def _inner_sequence(n: Term, m2: Term, bound: int, fuel: int) -> Optional[list]:
    """A standard inner sequence from ``n`` to ``m2``, built by structural
    recursion on ``m2``; requires n ->int* m2."""
    if n == m2:
        return [n]
    if isinstance(m2, Var):
        return [n] if n == m2 else None
    if isinstance(m2, Abs):
        if not isinstance(n, Abs):
            return None
        # keep the original binder when it cannot capture in m2's body
        if n.binder == m2.binder or n.binder not in free_vars(m2.body) - {m2.binder}:
            z = n.binder
        else:
            z = fresh_name(
                n.binder, free_vars(n.body) | free_vars(m2.body) | {n.binder}
            )
        nb = substitute(n.body, n.binder, Var(z))
        mb = substitute(m2.body, m2.binder, Var(z))
        inner = _std_sequence(nb, mb, bound, fuel)
        if inner is None:
            return None
        return [Abs(z, b) for b in inner]
    if not isinstance(n, App):
        return None
    fun_seq = _inner_sequence(n.fun, m2.fun, bound, fuel)
    if fun_seq is None:
        return None
    if is_value(n.fun):
        arg_seq = _inner_sequence(n.arg, m2.arg, bound, fuel)
    else:
        arg_seq = _std_sequence(n.arg, m2.arg, bound, fuel)
    if arg_seq is None:
        return None
    return [App(f, n.arg) for f in fun_seq] + [
        App(fun_seq[-1], a) for a in arg_seq[1:]
    ]


def standardize(trace: Trace, fuel: int = 20000) -> Optional[Trace]:
    """Rearrange a v-reduction trace into a standard trace with the same
    endpoints; None when the bounded internal searches fail."""
    trace.validate()
    bound = max(len(trace), 1)
    seq = _std_sequence(trace.start, trace.end, bound, fuel)
    if seq is None:
        return None
    return _steps_for(seq)


# ---------------------------------------------------------------------------
# Strict-standard normalization

def normalize_strict(m: Term, fuel: int = 10000):
    """Deterministic strict-standard strategy: head betav to head-betav
    normal form, head sigma to head-v normal form, then left-to-right
    recursion into subterms.  Emits a strict standard trace on success.
    """
    from .reduction import CycleDetected, FuelExhausted, NormalForm
    from .terms import replace_at

    steps: list = []
    budget = fuel

    def spend(n: int) -> bool:
        nonlocal budget
        if budget < n:
            return False
        budget -= n
        return True

    def run(t: Term, prefix: tuple, whole: Term):
        """Returns (final whole term, None) or (whole term, failure outcome)."""
        nonlocal steps
        # head betav phase
        seen = {canon(t)}
        cur = t
        while True:
            nxt = step_head_betav(cur)
            if nxt is None:
                break
            if not spend(1):
                return whole, FuelExhausted(Trace(m, tuple(steps)))
            occ = [s for s in head_successors(cur) if s.rule is Rule.BETA_V][0]
            whole = replace_at(whole, prefix, occ.result)
            steps.append(Step(occ.rule, prefix + occ.path, whole))
            cur = occ.result
            if canon(cur) in seen:
                return whole, CycleDetected(
                    Trace(m, tuple(steps)), replace_at(whole, prefix, cur)
                )
            seen.add(canon(cur))
        # head sigma phase (strongly normalizing)
        while True:
            sigma = [s for s in head_successors(cur) if s.rule is not Rule.BETA_V]
            if not sigma:
                break
            if not spend(1):
                return whole, FuelExhausted(Trace(m, tuple(steps)))
            s = sigma[0]
            whole = replace_at(whole, prefix, s.result)
            steps.append(Step(s.rule, prefix + s.path, whole))
            cur = s.result
        # recurse left-to-right on subterms
        if isinstance(cur, Var):
            return whole, None
        if isinstance(cur, Abs):
            return run(cur.body, prefix + (0,), whole)
        whole, failure = run(cur.fun, prefix + (0,), whole)
        if failure is not None:
            return whole, failure
        from .terms import subterm_at

        return run(subterm_at(whole, prefix + (1,)), prefix + (1,), whole)

    whole, failure = run(m, (), m)
    if failure is not None:
        return failure
    return NormalForm(whole, Trace(m, tuple(steps)))

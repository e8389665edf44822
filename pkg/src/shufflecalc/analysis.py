"""Halting, observational-equivalence sampling, and the semi-decisions of
potential valuability and solvability.

Halting is termination of the deterministic head betav evaluation on a
value.  Potential valuability and solvability are semi-decided by running
the weak and stratified closures: for those reductions normalizability
and strong normalizability coincide, so one cycling path already
disproves.  Brute-force betav-side oracles cross-check both analyses by
enumerating closed value substitutions and closed argument tuples.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .enumeration import gen_closed_terms, gen_closed_values, gen_contexts
from .reduction import (
    FULL_BETAV,
    HEAD_BETAV,
    HEAD_V,
    STRATIFIED,
    WEAK,
    CycleDetected,
    NormalForm,
    Strategy,
    Trace,
    normalize,
    successors,
)
from .terms import (
    Abs,
    App,
    Term,
    Var,
    canon,
    free_vars,
    is_value,
    pretty,
    replace_at,
    size,
    substitute,
)


class ConsistencyError(Exception):
    """Head-v evaluation and head betav evaluation disagreed on the value
    reached; that would falsify the engine, not the theory."""


class VerdictKind(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict3:
    kind: VerdictKind
    witness: object = None  # Trace, Term, context description, ...
    fuel_spent: int = 0

    def __bool__(self) -> bool:
        return self.kind is VerdictKind.YES

    @property
    def decided(self) -> bool:
        return self.kind is not VerdictKind.UNKNOWN


def _yes(witness=None, fuel=0):
    return Verdict3(VerdictKind.YES, witness, fuel)


def _no(witness=None, fuel=0):
    return Verdict3(VerdictKind.NO, witness, fuel)


def _unknown(fuel=0):
    return Verdict3(VerdictKind.UNKNOWN, None, fuel)


_SIZE_GUARD = 1500  # terms past this are treated as resource exhaustion


def halts(m: Term, fuel: int = 2000) -> Verdict3:
    """Does head betav evaluation of ``m`` reach a value?

    No on a stuck head-betav-normal non-value or on an alpha-cycle;
    Unknown on fuel exhaustion (including runaway term growth).
    """
    trace = Trace(m)
    seen = {canon(m)}
    cur = m
    for spent in range(fuel):
        steps = successors(cur, HEAD_BETAV)
        if not steps:
            if is_value(cur):
                return _yes(trace, spent)
            return _no(trace, spent)
        step = steps[0]
        trace = trace.extend(step)
        key = canon(step.result)
        if key in seen:
            return _no(CycleDetected(trace, step.result), spent + 1)
        seen.add(key)
        cur = step.result
        if size(cur) > _SIZE_GUARD:
            return _unknown(spent + 1)
    if not successors(cur, HEAD_BETAV) and is_value(cur):
        return _yes(trace, fuel)
    return _unknown(fuel)


def head_v_eval(m: Term, fuel: int = 2000) -> Verdict3:
    """Breadth-first head-v evaluation; Yes iff some branch reaches a value.

    On Yes, cross-asserts that head betav evaluation reaches the same
    value (raising ConsistencyError otherwise).
    """
    parents = {canon(m): None}
    queue = deque([m])
    expanded = 0

    def path_to(u: Term) -> Trace:
        chain = []
        key = canon(u)
        while parents[key] is not None:
            src, step = parents[key]
            chain.append(step)
            key = canon(src)
        chain.reverse()
        return Trace(m, tuple(chain))

    pruned = False
    while queue and expanded < fuel:
        u = queue.popleft()
        expanded += 1
        if is_value(u):
            hb = halts(m, max(fuel, 2000))
            if not (hb and hb.witness.end == u):
                raise ConsistencyError(
                    f"head-v reaches {pretty(u)} but head betav evaluation "
                    f"of {pretty(m)} does not reach the same value"
                )
            return _yes(path_to(u), expanded)
        for s in successors(u, HEAD_V):
            key = canon(s.result)
            if key in parents:
                continue
            if size(s.result) > _SIZE_GUARD:
                pruned = True
                continue
            parents[key] = (u, s)
            queue.append(s.result)
    if not queue and not pruned:
        return _no(None, expanded)
    return _unknown(expanded)


def obs_equiv_sample(
    m: Term,
    n: Term,
    contexts: int = 200,
    size: int = 5,
    fuel: int = 500,
    pool=("x", "y"),
) -> Verdict3:
    """Search for a context distinguishing ``m`` and ``n`` by halting.

    No(context) when a distinguishing context is found with both sides
    decided; never Yes (observational equivalence quantifies over all
    contexts), so Unknown reports an exhausted sample.
    """
    tried = 0
    for template, hole in gen_contexts(size, pool):
        if tried >= contexts:
            break
        tried += 1
        hm = halts(replace_at(template, hole, m), fuel)
        hn = halts(replace_at(template, hole, n), fuel)
        if hm.decided and hn.decided and hm.kind is not hn.kind:
            return _no(
                {
                    "context": pretty(template),
                    "hole": hole,
                    "left": hm.kind.value,
                    "right": hn.kind.value,
                },
                tried,
            )
    return _unknown(tried)


def potentially_valuable(m: Term, fuel: int = 2000) -> Verdict3:
    """Semi-decide potential valuability via weak-context normalization.

    Weak normalizability coincides with strong weak normalizability, so a
    cycle on the leftmost weak path is a disproof.
    """
    out = normalize(m, WEAK, Strategy.LEFTMOST, fuel)
    if isinstance(out, NormalForm):
        return _yes(out.trace, len(out.trace))
    if isinstance(out, CycleDetected):
        return _no(out, len(out.trace))
    return _unknown(fuel)


def solvable(m: Term, fuel: int = 2000) -> Verdict3:
    """Semi-decide solvability via stratified-context normalization."""
    out = normalize(m, STRATIFIED, Strategy.LEFTMOST, fuel)
    if isinstance(out, NormalForm):
        return _yes(out.trace, len(out.trace))
    if isinstance(out, CycleDetected):
        return _no(out, len(out.trace))
    return _unknown(fuel)


def _value_tuples(count: int, max_size: int):
    values = list(gen_closed_values(max_size))
    if count == 0:
        yield ()
        return
    from itertools import product

    yield from product(values, repeat=count)


def betav_pv_oracle(m: Term, val_size: int = 5, fuel: int = 2000) -> Verdict3:
    """Brute-force betav-side check of potential valuability: substitute
    closed values for the free variables and evaluate.

    Yes on the first witness; No only for closed terms whose own
    evaluation cycles; Unknown when the enumeration bounds exhaust.
    """
    xs = sorted(free_vars(m))
    if not xs:
        h = halts(m, fuel)
        if h:
            return _yes(h.witness, h.fuel_spent)
        if h.kind is VerdictKind.NO and isinstance(h.witness, CycleDetected):
            return _no(h.witness, h.fuel_spent)
        # a closed stuck form cannot occur; keep the honest fallback
        return _unknown(h.fuel_spent)
    tried = 0
    for tup in _value_tuples(len(xs), val_size):
        inst = m
        for x, v in zip(xs, tup):
            inst = substitute(inst, x, v)
        tried += 1
        h = halts(inst, fuel)
        if h:
            return _yes({"values": [pretty(v) for v in tup]}, tried)
    return _unknown(tried)


def _reaches_betav(t: Term, target: Term, fuel: int) -> bool:
    """Bounded breadth-first search of the full betav graph for target.

    Search states larger than a fixed size are pruned; the caller only
    turns a hit into Yes, so pruning keeps the semi-decision honest.
    """
    goal = canon(target)
    if canon(t) == goal:
        return True
    seen = {canon(t)}
    queue = deque([t])
    expanded = 0
    while queue and expanded < fuel:
        u = queue.popleft()
        expanded += 1
        for s in successors(u, FULL_BETAV):
            key = canon(s.result)
            if key == goal:
                return True
            if key not in seen and size(s.result) <= 150:
                seen.add(key)
                queue.append(s.result)
    return False


def betav_solv_oracle(
    m: Term, arg_count: int = 2, arg_size: int = 5, fuel: int = 2000
) -> Verdict3:
    """Brute-force betav-side check of solvability: close ``m`` over its
    free variables and search for closed arguments driving it to the
    identity."""
    identity = Abs("x", Var("x"))
    xs = sorted(free_vars(m))
    closed = m
    for x in reversed(xs):
        closed = Abs(x, closed)
    if not xs:
        h = halts(m, fuel)
        if h.kind is VerdictKind.NO and isinstance(h.witness, CycleDetected):
            return _no(h.witness, h.fuel_spent)
    args_pool = list(gen_closed_terms(arg_size))
    tried = 0
    from itertools import product

    for n in range(arg_count + 1):
        for tup in product(args_pool, repeat=n):
            applied = closed
            for a in tup:
                applied = App(applied, a)
            tried += 1
            if _reaches_betav(applied, identity, fuel):
                return _yes({"args": [pretty(a) for a in tup]}, tried)
    return _unknown(tried)

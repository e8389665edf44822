"""Term generation, reduction graphs, and the executable property suite.

Each catalog property is the literal quantified statement of one of the
calculus's laws restricted to a finite corpus; failures are replayable
counterexamples and fail the build.  Fixture properties instead assert
the existence of a specific counterexample (a non-joinable parallel pair,
the impossibility of reordering the two commutation rules) by exhaustive
search.
"""

from __future__ import annotations

import json
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from . import analysis
from .enumeration import gen_random_terms, gen_terms
from .parallel import (
    head_factorization,
    par_check,
    par_int_check,
    par_int_reducts,
    par_reducts,
    strong_par_check,
)
from .reduction import (
    FULL_SIGMA,
    FULL_V,
    HEAD_BETAV,
    HEAD_SIGMA,
    HEAD_V,
    INTERNAL_V,
    Rule,
    Step,
    Strategy,
    Trace,
    FuelExhausted,
    NormalForm,
    head_redexes,
    head_successors,
    normalize,
    step_head_betav,
    successors,
)
from .standardization import (
    StdKind,
    check_standard,
    normalize_strict,
    sequentialize,
    standardize,
)
from .terms import (
    Abs,
    App,
    Term,
    Var,
    canon,
    is_value,
    parse,
    pretty,
    size,
)


class GuardError(ValueError):
    """Exhaustive enumeration requested beyond the size guard."""


@dataclass(frozen=True)
class TermGen:
    max_size: int = 7
    free_var_pool: tuple = ("x", "y", "z")
    mode: str = "exhaustive"  # or "random"
    seed: int = 0
    count: int = 1000  # stream length in random mode


def enumerate_terms(gen: TermGen) -> Iterator[Term]:
    """Deterministic stream of terms: complete alpha-canonical
    enumeration in exhaustive mode, a seeded stream in random mode."""
    if gen.mode == "exhaustive":
        if gen.max_size > 12:
            raise GuardError("exhaustive enumeration capped at size 12")
        yield from gen_terms(gen.max_size, gen.free_var_pool)
    elif gen.mode == "random":
        stream = gen_random_terms(gen.max_size, gen.free_var_pool, gen.seed)
        for _, t in zip(range(gen.count), stream):
            yield t
    else:
        raise ValueError(f"unknown generation mode {gen.mode!r}")


# ---------------------------------------------------------------------------
# Reduction graphs

@dataclass
class ReductionGraph:
    root: Term
    nodes: list = field(default_factory=list)  # Terms, discovery order
    edges: list = field(default_factory=list)  # (src idx, Step, dst idx, is_head)
    truncated: bool = False

    def node_index(self, t: Term) -> Optional[int]:
        key = canon(t)
        for i, n in enumerate(self.nodes):
            if canon(n) == key:
                return i
        return None


def reduction_graph(m: Term, rel=FULL_V, node_cap: int = 200) -> ReductionGraph:
    graph = ReductionGraph(root=m)
    index = {canon(m): 0}
    graph.nodes.append(m)
    queue = deque([m])
    while queue:
        u = queue.popleft()
        ui = index[canon(u)]
        head_occurrences = set(head_redexes(u))
        for s in successors(u, rel):
            key = canon(s.result)
            vi = index.get(key)
            if vi is None:
                if len(graph.nodes) >= node_cap:
                    graph.truncated = True
                    continue
                vi = len(graph.nodes)
                index[key] = vi
                graph.nodes.append(s.result)
                queue.append(s.result)
            graph.edges.append((ui, s, vi, (s.path, s.rule) in head_occurrences))
    return graph


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def graph_to_dot(graph: ReductionGraph, unicode: bool = False) -> str:
    lines = ["digraph reduction {"]
    for i, n in enumerate(graph.nodes):
        lines.append(f'  n{i} [label="{_dot_escape(pretty(n, unicode=unicode))}"];')
    for src, step, dst, is_head in graph.edges:
        style = "solid" if is_head else "dashed"
        label = f"{step.rule}@{'.'.join(map(str, step.path)) or 'e'}"
        lines.append(f'  n{src} -> n{dst} [label="{label}", style={style}];')
    if graph.truncated:
        lines.append('  truncated [label="(truncated)", shape=plaintext];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Property reports

@dataclass
class PropertyReport:
    property_id: str
    corpus_size: int
    failures: list
    elapsed: float
    seed: Optional[int] = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> str:
        return json.dumps(
            {
                "property": self.property_id,
                "corpus": self.corpus_size,
                "failures": self.failures,
                "elapsed": round(self.elapsed, 3),
                "seed": self.seed,
            }
        )


def _fail(failures: list, **payload) -> None:
    failures.append(payload)


# ---------------------------------------------------------------------------
# Search helpers

def _reachable(start: Term, rel, target: Term, depth: int, fuel: int) -> bool:
    goal = canon(target)
    if canon(start) == goal:
        return True
    seen = {canon(start)}
    queue = deque([(start, 0)])
    expanded = 0
    while queue and expanded < fuel:
        u, d = queue.popleft()
        if d >= depth:
            continue
        expanded += 1
        for s in successors(u, rel):
            key = canon(s.result)
            if key == goal:
                return True
            if key not in seen:
                seen.add(key)
                queue.append((s.result, d + 1))
    return False


def _joinable(a: Term, b: Term, fuel: int) -> bool:
    seen_a = {canon(a): a}
    seen_b = {canon(b): b}
    frontier_a = [a]
    frontier_b = [b]
    while frontier_a or frontier_b:
        if set(seen_a) & set(seen_b):
            return True
        if len(seen_a) > fuel and len(seen_b) > fuel:
            return False
        next_a = []
        if len(seen_a) <= fuel:
            for u in frontier_a:
                for s in successors(u, FULL_V):
                    key = canon(s.result)
                    if key not in seen_a:
                        seen_a[key] = s.result
                        next_a.append(s.result)
        next_b = []
        if len(seen_b) <= fuel:
            for u in frontier_b:
                for s in successors(u, FULL_V):
                    key = canon(s.result)
                    if key not in seen_b:
                        seen_b[key] = s.result
                        next_b.append(s.result)
        if not next_a and not next_b:
            return bool(set(seen_a) & set(seen_b))
        frontier_a, frontier_b = next_a, next_b
    return bool(set(seen_a) & set(seen_b))


def reachable_pairs(m: Term, max_len: int, node_cap: int = 2000) -> list:
    """Endpoint terms reachable from ``m`` by v-paths of length <= max_len,
    each with one witnessing trace (breadth-first, so shortest)."""
    out = []
    seen = {canon(m)}
    frontier = [Trace(m)]
    for _ in range(max_len):
        nxt = []
        for tr in frontier:
            for s in successors(tr.end, FULL_V):
                key = canon(s.result)
                if key in seen:
                    continue
                seen.add(key)
                ext = tr.extend(s)
                out.append(ext)
                nxt.append(ext)
                if len(seen) > node_cap:
                    return out
        frontier = nxt
    return out


# ---------------------------------------------------------------------------
# Catalog properties

def _prop_head_commutation(corpus, fuel):
    failures = []
    for t in corpus:
        sigma_steps = [s for s in head_successors(t) if s.rule is not Rule.BETA_V]
        for s in sigma_steps:
            l = s.result
            n = step_head_betav(l)
            if n is None:
                continue
            lp = step_head_betav(t)
            if lp is None:
                _fail(
                    failures,
                    term=pretty(t),
                    via=pretty(l),
                    reason="no head betav step before the sigma step",
                )
                continue
            candidates = {canon(lp)} | {
                canon(x.result)
                for x in head_successors(lp)
                if x.rule is not Rule.BETA_V
            }
            if canon(n) not in candidates:
                _fail(
                    failures,
                    term=pretty(t),
                    sigma_then_betav=pretty(n),
                    betav_first=pretty(lp),
                    reason="no single sigma step closes the square",
                )
    return failures


def _prop_internal_postponement(corpus, fuel):
    failures = []
    for m in corpus:
        for l in par_int_reducts(m):
            for s in head_successors(l):
                n = s.result
                min_bv = 1 if s.rule is Rule.BETA_V else 0
                verdict = head_factorization(m, n, fuel, min_betav_steps=min_bv)
                if not verdict:
                    _fail(
                        failures,
                        term=pretty(m),
                        internal=pretty(l),
                        head_step=pretty(n),
                        rule=str(s.rule),
                        verdict=verdict.kind.value,
                    )
    return failures


def _prop_strong_factorization(corpus, fuel):
    failures = []
    for m in corpus:
        for n in par_reducts(m):
            verdict = strong_par_check(m, n, fuel)
            if not verdict:
                _fail(
                    failures,
                    term=pretty(m),
                    reduct=pretty(n),
                    verdict=verdict.kind.value,
                )
    return failures


def _prop_value_laws(corpus, fuel):
    failures = []
    fresh_binder = "w"
    for t in corpus:
        head = head_successors(t)
        if is_value(t) and head:
            _fail(failures, term=pretty(t), reason="value has a head step")
        for s in head:
            if s.rule is not Rule.BETA_V and is_value(s.result):
                _fail(
                    failures,
                    term=pretty(t),
                    result=pretty(s.result),
                    reason="head sigma step produced a value",
                )
        for n in par_int_reducts(t):
            if isinstance(n, Var) and t != n:
                _fail(failures, term=pretty(t), reason="internal step changed a variable")
            if isinstance(n, Abs) and not isinstance(t, Abs):
                _fail(
                    failures,
                    term=pretty(t),
                    result=pretty(n),
                    reason="internal step created an abstraction",
                )
        if is_value(t):
            pr = par_reducts(t)
            pi = par_int_reducts(t)
            if pr != pi:
                _fail(failures, term=pretty(t), reason="value: parallel != internal parallel")
            for n in pr:
                if not strong_par_check(t, n, fuel):
                    _fail(
                        failures,
                        term=pretty(t),
                        reduct=pretty(n),
                        reason="value reduct not strongly parallel",
                    )
                wrapped_src = Abs(fresh_binder, t)
                wrapped_dst = Abs(fresh_binder, n)
                if par_check(wrapped_src, wrapped_dst) is None or par_int_check(
                    wrapped_src, wrapped_dst
                ) is None:
                    _fail(
                        failures,
                        term=pretty(t),
                        reduct=pretty(n),
                        reason="abstraction closure of parallel step failed",
                    )
    return failures


def _prop_onestep_vs_parallel(corpus, fuel):
    failures = []
    for m in corpus:
        reducts = par_reducts(m)
        for s in successors(m, FULL_V):
            if s.result not in reducts:
                _fail(
                    failures,
                    term=pretty(m),
                    step=pretty(s.result),
                    reason="one-step reduct is not a parallel reduct",
                )
        for n in reducts:
            if not _reachable(m, FULL_V, n, depth=size(m) + 2, fuel=fuel):
                _fail(
                    failures,
                    term=pretty(m),
                    reduct=pretty(n),
                    reason="parallel reduct unreachable by bounded v-search",
                )
    return failures


def _prop_internal_vs_parallel(corpus, fuel):
    failures = []
    for m in corpus:
        reducts = par_int_reducts(m)
        for s in successors(m, INTERNAL_V):
            if s.result not in reducts:
                _fail(
                    failures,
                    term=pretty(m),
                    step=pretty(s.result),
                    reason="internal step is not an internal parallel reduct",
                )
        for n in reducts:
            if not _reachable(m, INTERNAL_V, n, depth=size(m) + 2, fuel=fuel):
                _fail(
                    failures,
                    term=pretty(m),
                    reduct=pretty(n),
                    reason="internal parallel reduct unreachable by bounded int-search",
                )
    return failures


def _prop_sequentialization(corpus, fuel, max_len: int = 4):
    failures = []
    for m in corpus:
        for tr in reachable_pairs(m, max_len):
            fact = sequentialize(m, tr.end, max_len, fuel)
            if fact is None:
                _fail(failures, term=pretty(m), target=pretty(tr.end))
                continue
            bv, sg, it = fact
            whole = Trace(m, bv.steps + sg.steps + it.steps)
            try:
                whole.validate()
            except Exception as exc:  # pragma: no cover - engine bug guard
                _fail(failures, term=pretty(m), target=pretty(tr.end), reason=str(exc))
                continue
            if whole.end != tr.end:
                _fail(failures, term=pretty(m), target=pretty(tr.end), reason="endpoint mismatch")
            if any(s.rule is not Rule.BETA_V for s in bv.steps) or any(
                s.rule is Rule.BETA_V for s in sg.steps
            ):
                _fail(failures, term=pretty(m), target=pretty(tr.end), reason="phase rules mixed")
    return failures


def _prop_standardization(corpus, fuel, max_len: int = 4):
    failures = []
    for m in corpus:
        for tr in reachable_pairs(m, max_len):
            out = standardize(tr, fuel)
            if out is None:
                _fail(failures, term=pretty(m), target=pretty(tr.end), reason="not found")
                continue
            if out.start != tr.start or out.end != tr.end:
                _fail(failures, term=pretty(m), target=pretty(tr.end), reason="endpoint mismatch")
                continue
            if check_standard(out).kind is not StdKind.STANDARD:
                _fail(
                    failures,
                    term=pretty(m),
                    target=pretty(tr.end),
                    trace=[pretty(t) for t in out.terms()],
                    reason="output not standard",
                )
    return failures


def _prop_local_confluence(corpus, fuel):
    failures = []
    for t in corpus:
        steps = successors(t, FULL_V)
        for i in range(len(steps)):
            for j in range(i + 1, len(steps)):
                a, b = steps[i].result, steps[j].result
                if a == b:
                    continue
                if not _joinable(a, b, fuel):
                    _fail(failures, term=pretty(t), left=pretty(a), right=pretty(b))
    return failures


def _prop_sigma_termination(corpus, fuel_unused):
    failures = []
    for t in corpus:
        out = normalize(t, FULL_SIGMA, Strategy.EXHAUSTIVE, 10 * size(t) ** 2)
        if isinstance(out, FuelExhausted):
            _fail(failures, term=pretty(t), reason="sigma normalization exhausted fuel")
    return failures


def _prop_value_preservation(corpus, fuel):
    failures = []
    for t in corpus:
        for s in successors(t, FULL_V):
            if is_value(t) and not isinstance(s.result, Abs):
                _fail(failures, term=pretty(t), result=pretty(s.result),
                      reason="value reduced to a non-abstraction")
            if s.rule is not Rule.BETA_V and is_value(s.result) and not is_value(t):
                _fail(failures, term=pretty(t), result=pretty(s.result),
                      reason="sigma expansion of a value is not a value")
    return failures


def _prop_head_determinism(corpus, fuel):
    failures = []
    for t in corpus:
        bv = [s for s in head_successors(t) if s.rule is Rule.BETA_V]
        if len(bv) > 1:
            _fail(failures, term=pretty(t), reason="several head betav redexes")
        direct = step_head_betav(t)
        if (direct is None) != (not bv) or (bv and direct != bv[0].result):
            _fail(failures, term=pretty(t), reason="head betav step mismatch")
    return failures


def _prop_diamond_failure(corpus_unused, fuel):
    failures = []
    start = parse(r"(\x.a) ((\y.b) (z z)) c")
    m1 = parse(r"(\x.a c) ((\y.b) (z z))")
    m2 = parse(r"(\y.(\x.a) b) (z z) c")
    reducts = par_reducts(start)
    if m1 not in reducts or m2 not in reducts:
        _fail(failures, reason="expected parallel reducts missing", term=pretty(start))
        return failures
    join = par_reducts(m1) & par_reducts(m2)
    if join:
        _fail(
            failures,
            reason="one-step parallel join exists",
            join=[pretty(t) for t in sorted(join, key=pretty)],
        )
    return failures


def _closure_under(t: Term, rule_filter) -> set:
    """All terms reachable by head sigma steps of the given rule(s)."""
    seen = {canon(t): t}
    queue = deque([t])
    while queue:
        u = queue.popleft()
        for s in head_successors(u):
            if s.rule is Rule.BETA_V or s.rule not in rule_filter:
                continue
            key = canon(s.result)
            if key not in seen:
                seen[key] = s.result
                queue.append(s.result)
    return set(seen.values())


def _prop_sigma_ordering(corpus_unused, fuel):
    failures = []
    # First bullet: only sigma3-then-sigma1 works.
    m = parse(r"x ((\y.z') (z I)) D")
    n = parse(r"(\y.x z' D) (z I)")
    step1 = parse(r"(\y.x z') (z I) D")
    if not any(
        s.rule is Rule.SIGMA3 and s.result == step1 for s in head_successors(m)
    ) or not any(
        s.rule is Rule.SIGMA1 and s.result == n for s in head_successors(step1)
    ):
        _fail(failures, term=pretty(m), reason="sigma3-then-sigma1 path missing")
    sigma1_first = set()
    for l in _closure_under(m, {Rule.SIGMA1}):
        sigma1_first |= _closure_under(l, {Rule.SIGMA3})
    if n in sigma1_first:
        _fail(failures, term=pretty(m), reason="sigma1-before-sigma3 order unexpectedly reaches target")
    # Second bullet: only sigma1-then-sigma3 works.
    m2 = parse(r"x ((\y.z') (z I) D)")
    n2 = parse(r"(\y.x (z' D)) (z I)")
    mid = parse(r"x ((\y.z' D) (z I))")
    if not any(
        s.rule is Rule.SIGMA1 and s.result == mid for s in head_successors(m2)
    ) or not any(
        s.rule is Rule.SIGMA3 and s.result == n2 for s in head_successors(mid)
    ):
        _fail(failures, term=pretty(m2), reason="sigma1-then-sigma3 path missing")
    sigma3_first = set()
    for l in _closure_under(m2, {Rule.SIGMA3}):
        sigma3_first |= _closure_under(l, {Rule.SIGMA1})
    if n2 in sigma3_first:
        _fail(failures, term=pretty(m2), reason="sigma3-before-sigma1 order unexpectedly reaches target")
    return failures


def _prop_halting_adequacy(corpus, fuel):
    failures = []
    for t in corpus:
        ht = analysis.halts(t, fuel)
        if not ht.decided:
            continue
        for s in successors(t, FULL_V):
            hu = analysis.halts(s.result, fuel)
            if hu.decided and hu.kind is not ht.kind:
                _fail(
                    failures,
                    term=pretty(t),
                    reduct=pretty(s.result),
                    before=ht.kind.value,
                    after=hu.kind.value,
                )
    return failures


def _prop_value_reduction_agreement(corpus, fuel):
    failures = []
    for t in corpus:
        # part 1: a value reachable by full v-reduction implies halting
        value_reachable = None
        seen = {canon(t)}
        queue = deque([t])
        expanded = 0
        while queue and expanded < fuel:
            u = queue.popleft()
            expanded += 1
            if is_value(u):
                value_reachable = u
                break
            for s in successors(u, FULL_V):
                key = canon(s.result)
                if key not in seen:
                    seen.add(key)
                    queue.append(s.result)
        ht = analysis.halts(t, fuel)
        if value_reachable is not None and ht.decided and not ht:
            _fail(
                failures,
                term=pretty(t),
                value=pretty(value_reachable),
                reason="v-reduction reaches a value but head betav does not halt",
            )
        # part 2: head-v evaluation agrees with head betav on the value
        hv = analysis.head_v_eval(t, fuel)  # raises ConsistencyError on mismatch
        if hv.decided and ht.decided and (hv.kind is not ht.kind):
            _fail(
                failures,
                term=pretty(t),
                head_v=hv.kind.value,
                head_betav=ht.kind.value,
            )
    return failures


def _head_v_normalizable(t: Term, fuel: int):
    """Bounded: does some head-v path end in a head-v-normal form?"""
    seen = {canon(t)}
    queue = deque([t])
    expanded = 0
    while queue and expanded < fuel:
        u = queue.popleft()
        expanded += 1
        succ = successors(u, HEAD_V)
        if not succ:
            return True
        for s in succ:
            key = canon(s.result)
            if key not in seen:
                seen.add(key)
                queue.append(s.result)
    if not queue:
        return False
    return None


def _strongly_head_v_normalizable(t: Term, fuel: int):
    """Bounded: no infinite head-v path. None when fuel runs out."""
    # Explore the reachable graph; a reachable cycle means an infinite path.
    index = {canon(t): t}
    queue = deque([t])
    edges = {}
    expanded = 0
    while queue:
        if expanded >= fuel:
            return None
        u = queue.popleft()
        expanded += 1
        ukey = canon(u)
        targets = []
        for s in successors(u, HEAD_V):
            key = canon(s.result)
            targets.append(key)
            if key not in index:
                index[key] = s.result
                queue.append(s.result)
        edges[ukey] = targets
    # cycle detection on the finite explored graph
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {k: WHITE for k in edges}
    def has_cycle(k):
        stack = [(k, iter(edges[k]))]
        color[k] = GRAY
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color.get(nxt, WHITE) == GRAY:
                    return True
                if color.get(nxt, WHITE) == WHITE:
                    color[nxt] = GRAY
                    stack.append((nxt, iter(edges[nxt])))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                stack.pop()
        return False
    for k in list(edges):
        if color[k] == WHITE and has_cycle(k):
            return False
    return True


def _prop_head_normalization(corpus, fuel):
    failures = []
    for t in corpus:
        hv = _head_v_normalizable(t, fuel)
        # head betav normalizable = the deterministic chain terminates
        out = normalize(t, HEAD_BETAV, Strategy.LEFTMOST, fuel)
        if isinstance(out, NormalForm):
            hbv = True
        elif isinstance(out, FuelExhausted):
            hbv = None
        else:
            hbv = False
        strong = _strongly_head_v_normalizable(t, fuel)
        decided = [x for x in (hv, hbv, strong) if x is not None]
        if len(set(decided)) > 1:
            _fail(
                failures,
                term=pretty(t),
                head_v=hv,
                head_betav=hbv,
                strong_head_v=strong,
            )
    return failures


def _prop_conservativity(corpus, fuel, val_size=5, arg_count=2, arg_size=5):
    failures = []
    for t in corpus:
        pv = analysis.potentially_valuable(t, fuel)
        opv = analysis.betav_pv_oracle(t, val_size=val_size, fuel=fuel)
        if pv.decided and opv.decided and pv.kind is not opv.kind:
            _fail(
                failures,
                term=pretty(t),
                query="potential-valuability",
                sigma_side=pv.kind.value,
                betav_oracle=opv.kind.value,
            )
        sv = analysis.solvable(t, fuel)
        osv = analysis.betav_solv_oracle(
            t, arg_count=arg_count, arg_size=arg_size, fuel=fuel
        )
        if sv.decided and osv.decided and sv.kind is not osv.kind:
            _fail(
                failures,
                term=pretty(t),
                query="solvability",
                sigma_side=sv.kind.value,
                betav_oracle=osv.kind.value,
            )
    return failures


PROPERTIES: dict = {
    "head-commutation": _prop_head_commutation,
    "internal-postponement": _prop_internal_postponement,
    "strong-factorization": _prop_strong_factorization,
    "value-laws": _prop_value_laws,
    "onestep-vs-parallel": _prop_onestep_vs_parallel,
    "internal-vs-parallel": _prop_internal_vs_parallel,
    "sequentialization": _prop_sequentialization,
    "standardization": _prop_standardization,
    "local-confluence": _prop_local_confluence,
    "sigma-termination": _prop_sigma_termination,
    "value-preservation": _prop_value_preservation,
    "head-betav-determinism": _prop_head_determinism,
    "diamond-failure": _prop_diamond_failure,
    "sigma-ordering": _prop_sigma_ordering,
    "halting-adequacy": _prop_halting_adequacy,
    "value-reduction-agreement": _prop_value_reduction_agreement,
    "head-normalization": _prop_head_normalization,
    "conservativity": _prop_conservativity,
}

# per-property default corpus sizes and fuels for the CLI entry point;
# doubly-quantified searches run on smaller corpora
DEFAULTS: dict = {
    "head-commutation": (7, 1000),
    "internal-postponement": (6, 1000),
    "strong-factorization": (7, 1000),
    "value-laws": (7, 1000),
    "onestep-vs-parallel": (7, 4000),
    "internal-vs-parallel": (7, 4000),
    "sequentialization": (5, 20000),
    "standardization": (5, 20000),
    "local-confluence": (6, 50),
    "sigma-termination": (7, 0),
    "value-preservation": (7, 0),
    "head-betav-determinism": (7, 0),
    "diamond-failure": (1, 0),
    "sigma-ordering": (1, 0),
    "halting-adequacy": (6, 500),
    "value-reduction-agreement": (6, 400),
    "head-normalization": (6, 400),
    "conservativity": (5, 2000),
}


def run_property(prop_id: str, gen: TermGen, fuel: int) -> PropertyReport:
    if prop_id not in PROPERTIES:
        raise KeyError(f"unknown property {prop_id!r}")
    corpus = list(enumerate_terms(gen))
    started = time.perf_counter()
    failures = PROPERTIES[prop_id](corpus, fuel)
    elapsed = time.perf_counter() - started
    return PropertyReport(
        property_id=prop_id,
        corpus_size=len(corpus),
        failures=failures,
        elapsed=elapsed,
        seed=gen.seed if gen.mode == "random" else None,
    )

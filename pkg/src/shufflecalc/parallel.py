"""Parallel reduction, internal parallel reduction, and the strong variant.

The parallel relation simultaneously contracts any number of betav,
sigma1 and sigma3 redexes; it is decided by structural recursion on the
applicative spine, trying each applicable inference rule.  The internal
variant never touches a head redex.  The strong variant additionally
factors through a head-betav phase and a head-sigma phase; it is searched
by enumerating the deterministic head-betav prefix (finite up to a cycle)
and the head-sigma closure (finite, since sigma is strongly normalizing).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .reduction import (
    Rule,
    Step,
    Trace,
    head_successors,
    step_head_betav,
)
from .terms import (
    Abs,
    App,
    Term,
    Var,
    apply_spine,
    canon,
    decompose_applicative,
    free_vars,
    fresh_name,
    is_value,
    pretty,
    substitute,
)


class CapExceeded(Exception):
    """Parallel-reduct enumeration hit its output cap."""


@dataclass(frozen=True)
class ParDerivation:
    """One inference-rule instance; conclusion is the (source, target) pair."""

    rule: str
    premises: tuple
    conclusion: tuple

    def pretty_tree(self, indent: int = 0) -> str:
        src, dst = self.conclusion
        lines = [f"{'  ' * indent}{self.rule}: {pretty(src)} => {pretty(dst)}"]
        for p in self.premises:
            lines.append(p.pretty_tree(indent + 1))
        return "\n".join(lines)


_PAR_MEMO: dict = {}
_PAR_INT_MEMO: dict = {}


def clear_caches() -> None:
    _PAR_MEMO.clear()
    _PAR_INT_MEMO.clear()


def _rename_binder(binder: str, body: Term, avoid) -> tuple:
    if binder in avoid:
        fresh = fresh_name(binder, set(avoid) | free_vars(body))
        return fresh, substitute(body, binder, Var(fresh))
    return binder, body


def _alternatives(m: Term) -> dict:
    """Map canon(n) -> (n, derivation) over all n with m => n.

    Built by structural recursion over the spine decomposition of m,
    trying the rules in the order betav, sigma1, sigma3, lambda, var and
    keeping the first derivation per alpha-class.
    """
    key = canon(m)
    hit = _PAR_MEMO.get(key)
    if hit is not None:
        return hit
    head, args = decompose_applicative(m)
    results: dict = {}

    def add(term: Term, deriv: ParDerivation) -> None:
        results.setdefault(canon(term), (term, deriv))

    def alts(t: Term) -> list:
        return list(_alternatives(t).values())

    rest_alts = None  # computed lazily per rule arity

    if isinstance(head, Abs) and args and is_value(args[0]):
        # betav: premises V, M0, M1..Mm
        v, rest = args[0], args[1:]
        for (vp, dv) in alts(v):
            for (m0p, d0) in alts(head.body):
                for combo in itertools.product(*(alts(r) for r in rest)):
                    target = apply_spine(
                        substitute(m0p, head.binder, vp),
                        [c[0] for c in combo],
                    )
                    deriv = ParDerivation(
                        "betav",
                        (dv, d0) + tuple(c[1] for c in combo),
                        (m, target),
                    )
                    add(target, deriv)

    if isinstance(head, Abs) and len(args) >= 2:
        # sigma1: premises N, L, M0, M1..Mm
        n0, l0, rest = args[0], args[1], args[2:]
        binder, body = _rename_binder(head.binder, head.body, free_vars(l0))
        for (np, dn) in alts(n0):
            for (lp, dl) in alts(l0):
                for (m0p, d0) in alts(body):
                    for combo in itertools.product(*(alts(r) for r in rest)):
                        target = apply_spine(
                            App(Abs(binder, App(m0p, lp)), np),
                            [c[0] for c in combo],
                        )
                        deriv = ParDerivation(
                            "sigma1",
                            (dn, dl, d0) + tuple(c[1] for c in combo),
                            (m, target),
                        )
                        add(target, deriv)

    if (
        args
        and isinstance(args[0], App)
        and isinstance(args[0].fun, Abs)
    ):
        # sigma3: premises V, N, L, M1..Mm
        inner, rest = args[0], args[1:]
        n0 = inner.arg
        binder, body = _rename_binder(
            inner.fun.binder, inner.fun.body, free_vars(head)
        )
        for (vp, dv) in alts(head):
            for (np, dn) in alts(n0):
                for (lp, dl) in alts(body):
                    for combo in itertools.product(*(alts(r) for r in rest)):
                        target = apply_spine(
                            App(Abs(binder, App(vp, lp)), np),
                            [c[0] for c in combo],
                        )
                        deriv = ParDerivation(
                            "sigma3",
                            (dv, dn, dl) + tuple(c[1] for c in combo),
                            (m, target),
                        )
                        add(target, deriv)

    if isinstance(head, Abs):
        # lambda: premises M0, M1..Mm
        for (m0p, d0) in alts(head.body):
            for combo in itertools.product(*(alts(r) for r in args)):
                target = apply_spine(
                    Abs(head.binder, m0p), [c[0] for c in combo]
                )
                deriv = ParDerivation(
                    "lambda",
                    (d0,) + tuple(c[1] for c in combo),
                    (m, target),
                )
                add(target, deriv)
    else:
        # var: premises M1..Mm (no premises when m = 0: the base case)
        for combo in itertools.product(*(alts(r) for r in args)):
            target = apply_spine(head, [c[0] for c in combo])
            deriv = ParDerivation(
                "var", tuple(c[1] for c in combo), (m, target)
            )
            add(target, deriv)

    _PAR_MEMO[key] = results
    return results


def par_reducts(m: Term, cap: int = 100000) -> set:
    """The set of all parallel reducts of ``m``; raises CapExceeded when
    the set would exceed ``cap``."""
    alternatives = _alternatives(m)
    if len(alternatives) > cap:
        raise CapExceeded(f"{len(alternatives)} parallel reducts exceed cap {cap}")
    return {term for term, _ in alternatives.values()}


def par_check(m: Term, n: Term) -> Optional[ParDerivation]:
    """A derivation of m => n, or None."""
    hit = _alternatives(m).get(canon(n))
    return hit[1] if hit is not None else None


def _int_alternatives(m: Term) -> dict:
    key = canon(m)
    hit = _PAR_INT_MEMO.get(key)
    if hit is not None:
        return hit
    results: dict = {}

    def add(term: Term, deriv: ParDerivation) -> None:
        results.setdefault(canon(term), (term, deriv))

    if isinstance(m, Var):
        add(m, ParDerivation("var-int", (), (m, m)))
    elif isinstance(m, Abs):
        for (bp, db) in _alternatives(m.body).values():
            add(Abs(m.binder, bp), ParDerivation("lambda-int", (db,), (m, Abs(m.binder, bp))))
    else:
        head, args = decompose_applicative(m)
        n0, rest = args[0], args[1:]
        for (vp, dv) in _alternatives(head).values():
            for (np, dn) in _int_alternatives(n0).values():
                for combo in itertools.product(
                    *(list(_alternatives(r).values()) for r in rest)
                ):
                    target = apply_spine(
                        App(vp, np), [c[0] for c in combo]
                    )
                    deriv = ParDerivation(
                        "right-int",
                        (dv, dn) + tuple(c[1] for c in combo),
                        (m, target),
                    )
                    add(target, deriv)
    _PAR_INT_MEMO[key] = results
    return results


def par_int_reducts(m: Term, cap: int = 100000) -> set:
    alternatives = _int_alternatives(m)
    if len(alternatives) > cap:
        raise CapExceeded(
            f"{len(alternatives)} internal parallel reducts exceed cap {cap}"
        )
    return {term for term, _ in alternatives.values()}


def par_int_check(m: Term, n: Term) -> Optional[ParDerivation]:
    """A derivation of the internal parallel step m =>int n, or None.

    Decided directly: the last rule is forced by the shape of ``m`` and
    the spine decompositions must align arity by arity.
    """
    if isinstance(m, Var):
        if isinstance(n, Var) and m == n:
            return ParDerivation("var-int", (), (m, n))
        return None
    if isinstance(m, Abs):
        if not isinstance(n, Abs):
            return None
        z = fresh_name(m.binder, free_vars(m.body) | free_vars(n.body))
        mb = substitute(m.body, m.binder, Var(z))
        nb = substitute(n.body, n.binder, Var(z))
        inner = par_check(mb, nb)
        if inner is None:
            return None
        return ParDerivation("lambda-int", (inner,), (m, n))
    vh, margs = decompose_applicative(m)
    nh, nargs = decompose_applicative(n)
    if len(margs) != len(nargs) or not margs:
        return None
    dv = par_check(vh, nh)
    if dv is None:
        return None
    dn = par_int_check(margs[0], nargs[0])
    if dn is None:
        return None
    drest = []
    for a, b in zip(margs[1:], nargs[1:]):
        d = par_check(a, b)
        if d is None:
            return None
        drest.append(d)
    return ParDerivation("right-int", (dv, dn) + tuple(drest), (m, n))


# ---------------------------------------------------------------------------
# Strong parallel reduction

class StrongKind(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class StrongParVerdict:
    kind: StrongKind
    betav_trace: Optional[Trace] = None
    sigma_trace: Optional[Trace] = None
    inner: Optional[ParDerivation] = None

    def __bool__(self) -> bool:
        return self.kind is StrongKind.YES


def head_betav_prefix(m: Term, fuel: int) -> tuple:
    """The deterministic head-betav chain from ``m`` as a list of Traces
    (one per prefix point), plus a completeness flag (normal form or
    alpha-cycle reached within ``fuel``)."""
    prefixes = [Trace(m)]
    seen = {canon(m)}
    cur = m
    for _ in range(fuel):
        nxt = step_head_betav(cur)
        if nxt is None:
            return prefixes, True
        key = canon(nxt)
        step_list = [
            s for s in head_successors(cur) if s.rule is Rule.BETA_V
        ]
        prefixes.append(prefixes[-1].extend(step_list[0]))
        if key in seen:
            return prefixes[:-1], True  # the repeat adds no new prefix point
        seen.add(key)
        cur = nxt
    return prefixes, step_head_betav(cur) is None


def head_sigma_closure(m: Term, fuel: int) -> tuple:
    """Breadth-first closure of ``m`` under head sigma steps, as a list of
    Traces in discovery order, plus a completeness flag."""
    start = Trace(m)
    order = [start]
    seen = {canon(m)}
    frontier = [start]
    expanded = 0
    while frontier:
        nxt = []
        for tr in frontier:
            if expanded >= fuel:
                return order, False
            expanded += 1
            for s in head_successors(tr.end):
                if s.rule is Rule.BETA_V:
                    continue
                key = canon(s.result)
                if key in seen:
                    continue
                seen.add(key)
                extended = tr.extend(s)
                order.append(extended)
                nxt.append(extended)
        frontier = nxt
    return order, True


def head_factorization(
    m: Term, n: Term, fuel: int = 1000, min_betav_steps: int = 0
) -> StrongParVerdict:
    """Search for M ->>hbv M' ->>hs M'' =>int N with at least
    ``min_betav_steps`` head betav steps."""
    prefixes, bv_complete = head_betav_prefix(m, fuel)
    complete = bv_complete
    for bv in prefixes:
        if len(bv) < min_betav_steps:
            continue
        closure, sigma_complete = head_sigma_closure(bv.end, fuel)
        complete = complete and sigma_complete
        for sg in closure:
            inner = par_int_check(sg.end, n)
            if inner is not None:
                return StrongParVerdict(StrongKind.YES, bv, sg, inner)
    return StrongParVerdict(StrongKind.NO if complete else StrongKind.UNKNOWN)


def strong_par_check(m: Term, n: Term, fuel: int = 1000) -> StrongParVerdict:
    """Decide m =>> n (strong parallel reduction), with bounded search for
    the head factorization."""
    if par_check(m, n) is None:
        return StrongParVerdict(StrongKind.NO)
    return head_factorization(m, n, fuel)

"""Exhaustive and seeded-random generation of small terms and contexts.

Size is the number of AST nodes.  Exhaustive generation emits each
alpha-equivalence class exactly once: binder names are assigned by depth
from an alphabet disjoint from the free-variable pool, so distinct
generated terms are never alpha-equal.
"""

from __future__ import annotations

import random
from typing import Iterator

from .terms import Abs, App, Path, Term, Var, is_value

_BINDER_ALPHABET = "abcdefghijklmnopqrstuvw"

HOLE = "HOLE"  # reserved context-hole variable; never in any pool


def _binder_names(pool) -> list:
    return [c for c in _BINDER_ALPHABET if c not in pool]


class _Exhaustive:
    def __init__(self, pool):
        self.pool = tuple(pool)
        self.binders = _binder_names(self.pool)
        self.memo = {}

    def exact(self, n: int, names: tuple, depth: int) -> list:
        key = (n, names)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        out = []
        if n == 1:
            out = [Var(v) for v in names]
        else:
            binder = self.binders[depth]
            out.extend(
                Abs(binder, body)
                for body in self.exact(n - 1, names + (binder,), depth + 1)
            )
            for i in range(1, n - 1):
                funs = self.exact(i, names, depth)
                args = self.exact(n - 1 - i, names, depth)
                out.extend(App(f, a) for f in funs for a in args)
        self.memo[key] = out
        return out


_EXHAUSTIVE_CACHE = {}


def _engine(pool) -> _Exhaustive:
    key = tuple(pool)
    engine = _EXHAUSTIVE_CACHE.get(key)
    if engine is None:
        engine = _Exhaustive(key)
        _EXHAUSTIVE_CACHE[key] = engine
    return engine


def terms_of_size(n: int, pool) -> list:
    engine = _engine(pool)
    return engine.exact(n, engine.pool, 0)


def gen_terms(max_size: int, pool) -> Iterator[Term]:
    """All alpha-canonical terms of size <= max_size, size-ascending."""
    for n in range(1, max_size + 1):
        yield from terms_of_size(n, pool)


def gen_closed_terms(max_size: int) -> Iterator[Term]:
    yield from gen_terms(max_size, ())


def gen_closed_values(max_size: int) -> Iterator[Term]:
    for t in gen_closed_terms(max_size):
        if is_value(t):
            yield t


def gen_random_terms(max_size: int, pool, seed: int) -> Iterator[Term]:
    """Reproducible infinite stream of terms of size <= max_size."""
    rng = random.Random(seed)
    pool = tuple(pool)
    binders = _binder_names(pool)

    def build(budget: int, names: tuple, depth: int) -> Term:
        choices = ["var"]
        if budget >= 2:
            choices.append("abs")
        if budget >= 3:
            choices.extend(["app", "app"])
        kind = rng.choice(choices)
        if kind == "var":
            return Var(rng.choice(names))
        if kind == "abs":
            binder = binders[depth]
            return Abs(binder, build(budget - 1, names + (binder,), depth + 1))
        left = rng.randint(1, budget - 2)
        return App(
            build(left, names, depth),
            build(budget - 1 - left, names, depth),
        )

    while True:
        yield build(rng.randint(1, max_size), pool, 0)


def gen_contexts(max_size: int, pool) -> Iterator[tuple]:
    """One-hole contexts of size <= max_size as (template, hole path).

    The hole is the reserved variable ``HOLE`` and counts one node;
    plugging is capture-allowing grafting at the returned path.
    """
    engine = _engine(pool)

    def exact(n: int, names: tuple, depth: int) -> Iterator[tuple]:
        if n == 1:
            yield Var(HOLE), ()
            return
        binder = engine.binders[depth]
        for ctx, p in exact(n - 1, names + (binder,), depth + 1):
            yield Abs(binder, ctx), (0,) + p
        for i in range(1, n - 1):
            for ctx, p in exact(i, names, depth):
                for t in engine.exact(n - 1 - i, names, depth):
                    yield App(ctx, t), (0,) + p
            for t in engine.exact(i, names, depth):
                for ctx, p in exact(n - 1 - i, names, depth):
                    yield App(t, ctx), (1,) + p

    for n in range(1, max_size + 1):
        yield from exact(n, engine.pool, 0)

"""Seeded random formulas and sequents for property tests and the selftest."""

from __future__ import annotations

import random

from .sequent import Sequent
from .syntax import And, Bot, Box, Cond, Imp, Language, Or, Var

__all__ = ["random_formula", "random_sequent", "formulas_of_weight", "make_rng"]


def random_formula(rng, w, atoms=("p", "q", "r"), lang=Language.MODAL, bot=True):
    """A random formula of weight exactly w."""
    if w == 0:
        leaves = list(atoms) + (["false"] if bot else [])
        x = rng.choice(leaves)
        return Bot() if x == "false" else Var(x)
    ops = ["and", "or", "imp", "imp", "mod"]
    op = rng.choice(ops)
    if op == "mod" and lang is Language.MODAL:
        return Box(random_formula(rng, w - 1, atoms, lang, bot))
    k = rng.randint(0, w - 1)
    a = random_formula(rng, k, atoms, lang, bot)
    b = random_formula(rng, w - 1 - k, atoms, lang, bot)
    if op == "mod":
        return Cond(a, b)
    return {"and": And, "or": Or, "imp": Imp}[op](a, b)


def random_sequent(rng, max_weight=5, atoms=("p", "q", "r"), lang=Language.MODAL,
                   max_formulas=3):
    """A random sequent of weight at most max_weight."""
    w = rng.randint(0, max_weight)
    n = rng.randint(1, max_formulas)
    cuts = sorted(rng.randint(0, w) for _ in range(n - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [w])]
    ante, succ = [], []
    for part in parts:
        f = random_formula(rng, part, atoms, lang)
        (ante if rng.random() < 0.5 else succ).append(f)
    return Sequent(ante, succ)


def formulas_of_weight(w, atoms, lang=Language.MODAL, bot=True):
    """Every formula of weight exactly w over the atoms, in a fixed order."""
    memo = {}

    def go(k):
        if k in memo:
            return memo[k]
        out = []
        if k == 0:
            out = ([Bot()] if bot else []) + [Var(a) for a in atoms]
        else:
            for i in range(k):
                for a in go(i):
                    for b in go(k - 1 - i):
                        out += [And(a, b), Or(a, b), Imp(a, b)]
                        if lang is Language.CONDITIONAL:
                            out.append(Cond(a, b))
            if lang is Language.MODAL:
                out += [Box(a) for a in go(k - 1)]
        memo[k] = out
        return out

    return go(w)


def make_rng(seed, *tags):
    """An independent deterministic stream for (seed, tags)."""
    return random.Random(f"{seed}:" + ":".join(str(t) for t in tags))

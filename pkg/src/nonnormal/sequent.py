"""Multiset sequents Γ ⇒ Δ.

A Sequent stores both sides as tuples sorted by the fixed formula order, so
two sequents with equal multisets compare and hash equal and `key` can be
used directly as a memo key.
"""

from __future__ import annotations

from .syntax import (BOT_F, Formula, Language, LanguageError, ParseError,
                     _Parser, print_formula, weight)

__all__ = ["Sequent", "seq", "compose", "seq_weight", "seq_signed_vars",
           "normal_form", "parse_sequent", "print_sequent", "EMPTY"]


def _sorted(fs):
    return tuple(sorted(fs, key=lambda f: f.order))


class Sequent:
    __slots__ = ("ante", "succ", "_hash", "_weight", "_pos", "_neg", "mods")

    def __init__(self, ante=(), succ=()):
        ante = _sorted(ante)
        succ = _sorted(succ)
        mods = 0
        for f in ante + succ:
            if not isinstance(f, Formula):
                raise TypeError(f"not a formula: {f!r}")
            mods |= f.mods
        if mods == 3:
            raise LanguageError("sequent mixes box and conditional formulas")
        self.ante, self.succ, self.mods = ante, succ, mods
        self._hash = hash((ante, succ))
        self._weight = None
        self._pos = self._neg = None

    @property
    def key(self):
        return (self.ante, self.succ)

    def __eq__(self, other):
        return isinstance(other, Sequent) and self.ante == other.ante and self.succ == other.succ

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return ([f.order for f in self.ante], [f.order for f in self.succ]) < \
               ([f.order for f in other.ante], [f.order for f in other.succ])

    def __repr__(self):
        return f"Sequent({print_sequent(self)!r})"

    def __str__(self):
        return print_sequent(self)

    def __reduce__(self):
        return (Sequent, (self.ante, self.succ))

    @property
    def weight(self):
        if self._weight is None:
            self._weight = sum(f.weight for f in self.ante) + sum(f.weight for f in self.succ)
        return self._weight

    def _vars(self):
        if self._pos is None:
            pos, neg = set(), set()
            for f in self.ante:
                pos |= f.neg
                neg |= f.pos
            for f in self.succ:
                pos |= f.pos
                neg |= f.neg
            self._pos, self._neg = frozenset(pos), frozenset(neg)
        return self._pos, self._neg

    @property
    def pos(self):
        return self._vars()[0]

    @property
    def neg(self):
        return self._vars()[1]

    @property
    def formulas(self):
        return self.ante + self.succ

    def add(self, ante=(), succ=()):
        return Sequent(self.ante + tuple(ante), self.succ + tuple(succ))

    def remove_ante(self, i):
        return Sequent(self.ante[:i] + self.ante[i + 1:], self.succ)

    def remove_succ(self, i):
        return Sequent(self.ante, self.succ[:i] + self.succ[i + 1:])


EMPTY = Sequent()


def seq(ante=(), succ=()):
    return Sequent(ante, succ)


def compose(s, t):
    """S · T: componentwise multiset union."""
    if (s.mods | t.mods) == 3:
        raise LanguageError("sequents use different languages")
    return Sequent(s.ante + t.ante, s.succ + t.succ)


def seq_weight(s):
    return s.weight


def seq_signed_vars(s):
    """(V+(S), V-(S)) with V+(S) = V-(antecedent) ∪ V+(succedent)."""
    return s._vars()


def normal_form(s):
    return s.key


def print_sequent(s):
    left = ", ".join(print_formula(f) for f in s.ante)
    right = ", ".join(print_formula(f) for f in s.succ)
    return f"{left} => {right}".strip() if left else f"=> {right}".rstrip()


def _side(ps):
    out = []
    if ps.peek() in ("=>", "<end>"):
        return out
    out.append(ps.formula())
    while ps.peek() == ",":
        ps.take()
        out.append(ps.formula())
    return out


def parse_sequent(text, lang=Language.MODAL):
    """Parse `F, F => F, F`; either side may be empty."""
    ps = _Parser(text, lang)
    ante = _side(ps)
    ps.take("=>")
    succ = _side(ps)
    if ps.peek() != "<end>":
        raise ParseError(f"unexpected {ps.peek()!r}", ps.pos())
    return Sequent(ante, succ)


def sequent_language(s):
    if s.mods & 1:
        return Language.MODAL
    if s.mods & 2:
        return Language.CONDITIONAL
    return None


def has_bot_left(s):
    return BOT_F in s.ante


def total_weight(fs):
    return sum(weight(f) for f in fs)

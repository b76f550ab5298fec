"""Formulas for the modal and conditional languages.

Formulas are hash-consed: building the same tree twice returns the same
object, so equality is identity and hashing is cheap.  This matters because
the prover and the interpolation code key large memo tables on formulas.

Only the seven constructors Bot, Var, And, Or, Imp, Box and Cond exist.
Top and Not are shorthands producing Imp(Bot, Bot) and Imp(A, Bot).
"""

from __future__ import annotations

import enum
import re
import threading

__all__ = [
    "Language", "Polarity", "Formula", "LanguageError", "ParseError",
    "Bot", "Var", "And", "Or", "Imp", "Box", "Cond", "Top", "Not",
    "conj", "disj", "weight", "signed_vars", "variables", "is_free",
    "substitute", "parse_formula", "print_formula", "language_of",
    "ATOM_RE",
]

ATOM_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")


class Language(enum.Enum):
    MODAL = "Modal"
    CONDITIONAL = "Conditional"


class Polarity(enum.Enum):
    POS = "+"
    NEG = "-"

    @property
    def dual(self):
        return Polarity.NEG if self is Polarity.POS else Polarity.POS


class LanguageError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, msg, pos=None):
        self.pos = pos
        if pos is not None:
            msg = f"{msg} at position {pos}"
        super().__init__(msg)


# tag codes; the numeric value is the constructor rank used by the total order
BOT, VAR, AND, OR, IMP, BOX, COND = range(7)
_TAG_NAMES = ("Bot", "Var", "And", "Or", "Imp", "Box", "Cond")

# bit flags recording which modal connective a formula uses
_USES_BOX, _USES_COND = 1, 2

_table = {}
_lock = threading.Lock()


class Formula:
    """An immutable, interned formula node.

    `order` is the sort key of the fixed total order: weight first, then the
    constructor rank, then the children (or the atom name) left to right.
    """

    __slots__ = ("tag", "a", "b", "name", "weight", "order", "pos", "neg",
                 "mods", "__weakref__")

    def __new__(cls, *args, **kwargs):
        raise TypeError("use the constructor functions Bot, Var, And, ...")

    @property
    def is_atom(self):
        return self.tag == VAR

    @property
    def is_modal(self):
        return self.tag == BOX or self.tag == COND

    @property
    def children(self):
        if self.tag in (BOT, VAR):
            return ()
        if self.tag == BOX:
            return (self.a,)
        return (self.a, self.b)

    def __lt__(self, other):
        return self.order < other.order

    def __repr__(self):
        if self.tag == BOT:
            return "Bot"
        if self.tag == VAR:
            return f"Var({self.name!r})"
        if self.tag == BOX:
            return f"Box({self.a!r})"
        return f"{_TAG_NAMES[self.tag]}({self.a!r}, {self.b!r})"

    def __str__(self):
        return print_formula(self)

    def __reduce__(self):
        # pickling goes through the constructors so interning survives
        if self.tag == BOT:
            return (_bot, ())
        if self.tag == VAR:
            return (Var, (self.name,))
        if self.tag == BOX:
            return (Box, (self.a,))
        return (_MAKERS[self.tag], (self.a, self.b))


def _intern(key, build):
    f = _table.get(key)
    if f is not None:
        return f
    with _lock:
        f = _table.get(key)
        if f is None:
            f = build()
            _table[key] = f
    return f


def _new(tag, a=None, b=None, name=None):
    f = object.__new__(Formula)
    f.tag, f.a, f.b, f.name = tag, a, b, name
    return f


def _bot():
    return BOT_F


def _make_bot():
    f = _new(BOT)
    f.weight = 0
    f.order = (0, BOT)
    f.pos = f.neg = frozenset()
    f.mods = 0
    return f


BOT_F = _make_bot()


def Bot():
    return BOT_F


def Var(name):
    if not isinstance(name, str) or not ATOM_RE.match(name) or name in ("true", "false"):
        raise ValueError(f"bad atom name {name!r}")

    def build():
        f = _new(VAR, name=name)
        f.weight = 0
        f.order = (0, VAR, name)
        f.pos = frozenset((name,))
        f.neg = frozenset()
        f.mods = 0
        return f

    return _intern((VAR, name), build)


def _binary(tag, a, b):
    mods = a.mods | b.mods
    if mods == _USES_BOX | _USES_COND:
        raise LanguageError("box and conditional cannot occur in one formula")

    def build():
        f = _new(tag, a, b)
        f.weight = a.weight + b.weight + 1
        f.order = (f.weight, tag, a.order, b.order)
        if tag == IMP or tag == COND:
            f.pos = a.neg | b.pos
            f.neg = a.pos | b.neg
        else:
            f.pos = a.pos | b.pos
            f.neg = a.neg | b.neg
        f.mods = mods | (_USES_COND if tag == COND else 0)
        return f

    return _intern((tag, a, b), build)


def And(a, b):
    return _binary(AND, a, b)


def Or(a, b):
    return _binary(OR, a, b)


def Imp(a, b):
    return _binary(IMP, a, b)


def Cond(a, b):
    if (a.mods | b.mods) & _USES_BOX:
        raise LanguageError("box and conditional cannot occur in one formula")
    return _binary(COND, a, b)


def Box(a):
    if a.mods & _USES_COND:
        raise LanguageError("box and conditional cannot occur in one formula")

    def build():
        f = _new(BOX, a)
        f.weight = a.weight + 1
        f.order = (f.weight, BOX, a.order)
        f.pos, f.neg = a.pos, a.neg
        f.mods = a.mods | _USES_BOX
        return f

    return _intern((BOX, a), build)


_MAKERS = {AND: And, OR: Or, IMP: Imp, COND: Cond}


def Top():
    return Imp(BOT_F, BOT_F)


def Not(a):
    return Imp(a, BOT_F)


def is_top(f):
    return f.tag == IMP and f.a is BOT_F and f.b is BOT_F


def is_neg(f):
    return f.tag == IMP and f.b is BOT_F


def conj(fs):
    """Left-nested conjunction; the empty conjunction is Top."""
    fs = list(fs)
    if not fs:
        return Top()
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


def disj(fs):
    """Left-nested disjunction; the empty disjunction is Bot."""
    fs = list(fs)
    if not fs:
        return BOT_F
    out = fs[0]
    for f in fs[1:]:
        out = Or(out, f)
    return out


def rebuild(f, a, b=None):
    """Same constructor as f over new children."""
    if f.tag == BOX:
        return Box(a)
    return _MAKERS[f.tag](a, b)


def weight(f):
    return f.weight


def signed_vars(f):
    """(positive atoms, negative atoms) as frozensets of names."""
    return f.pos, f.neg


def variables(f):
    return f.pos | f.neg


def is_free(f, p, pol):
    """True iff atom p does not occur in f with polarity pol."""
    p = p.name if isinstance(p, Formula) else p
    return p not in (f.pos if pol is Polarity.POS else f.neg)


def language_of(f):
    """Modal, Conditional, or None for purely propositional formulas."""
    if f.mods & _USES_BOX:
        return Language.MODAL
    if f.mods & _USES_COND:
        return Language.CONDITIONAL
    return None


def substitute(f, p, g):
    """Replace every occurrence of atom p in f by g."""
    p = p.name if isinstance(p, Formula) else p
    if (f.mods | g.mods) == _USES_BOX | _USES_COND:
        raise LanguageError("formula and substituted formula use different languages")
    memo = {}

    def go(h):
        if p not in h.pos and p not in h.neg:
            return h
        r = memo.get(h)
        if r is None:
            if h.tag == VAR:
                r = g
            elif h.tag == BOX:
                r = Box(go(h.a))
            else:
                r = _MAKERS[h.tag](go(h.a), go(h.b))
            memo[h] = r
        return r

    return go(f)


# ---------------------------------------------------------------- printing

_PREC_IMP, _PREC_COND, _PREC_OR, _PREC_AND, _PREC_UNARY, _PREC_ATOM = range(1, 7)


def _prec(f):
    if f.tag in (BOT, VAR) or is_top(f):
        return _PREC_ATOM
    if f.tag == BOX or is_neg(f):
        return _PREC_UNARY
    return {AND: _PREC_AND, OR: _PREC_OR, IMP: _PREC_IMP, COND: _PREC_COND}[f.tag]


def print_formula(f):
    """ASCII text that parse_formula reads back to the identical tree."""
    return _show(f)


def _wrap(f, need):
    s = _show(f)
    return s if _prec(f) >= need else f"({s})"


def _show(f):
    t = f.tag
    if t == BOT:
        return "false"
    if t == VAR:
        return f.name
    if is_top(f):
        return "true"
    if is_neg(f):
        return "~" + _wrap(f.a, _PREC_UNARY)
    if t == BOX:
        return "[]" + _wrap(f.a, _PREC_UNARY)
    if t == AND:
        return f"{_wrap(f.a, _PREC_AND)} & {_wrap(f.b, _PREC_UNARY)}"
    if t == OR:
        return f"{_wrap(f.a, _PREC_OR)} | {_wrap(f.b, _PREC_AND)}"
    if t == IMP:
        return f"{_wrap(f.a, _PREC_COND)} -> {_wrap(f.b, _PREC_IMP)}"
    # conditional operands are parenthesised unless atomic
    return f"{_wrap(f.a, _PREC_ATOM)} > {_wrap(f.b, _PREC_ATOM)}"


# ----------------------------------------------------------------- parsing

_TOKEN_RE = re.compile(r"\s*(?:(->)|(=>)|(\[\])|([A-Za-z][A-Za-z0-9_]*)|([~&|>(),]))")


def tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        m = _TOKEN_RE.match(text, i)
        if m is None or m.end() == i:
            if text[i:].strip() == "":
                break
            j = i
            while j < n and text[j].isspace():
                j += 1
            raise ParseError(f"unexpected character {text[j]!r}", j)
        tok = next(g for g in m.groups() if g is not None)
        toks.append((tok, m.start(m.lastindex)))
        i = m.end()
    toks.append(("<end>", n))
    return toks


class _Parser:
    def __init__(self, text, lang):
        self.toks = tokenize(text)
        self.i = 0
        self.lang = lang

    def peek(self):
        return self.toks[self.i][0]

    def pos(self):
        return self.toks[self.i][1]

    def take(self, tok=None):
        t, p = self.toks[self.i]
        if tok is not None and t != tok:
            raise ParseError(f"expected {tok!r} but found {t!r}", p)
        self.i += 1
        return t

    def formula(self):
        left = self.cond()
        if self.peek() == "->":
            self.take()
            return Imp(left, self.formula())
        return left

    def cond(self):
        left = self.disj()
        if self.peek() == ">":
            p = self.pos()
            if self.lang is Language.MODAL:
                raise ParseError("'>' is not part of the modal language", p)
            self.take()
            right = self.disj()
            if self.peek() == ">":
                raise ParseError("'>' is non-associative; add parentheses", self.pos())
            return Cond(left, right)
        return left

    def disj(self):
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self):
        t, p = self.toks[self.i]
        if t == "~":
            self.take()
            return Not(self.unary())
        if t == "[]":
            if self.lang is Language.CONDITIONAL:
                raise ParseError("'[]' is not part of the conditional language", p)
            self.take()
            return Box(self.unary())
        if t == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        if t == "false":
            self.take()
            return BOT_F
        if t == "true":
            self.take()
            return Top()
        if ATOM_RE.match(t) and t != "<end>":
            self.take()
            return Var(t)
        raise ParseError(f"unexpected {t!r}", p)


def parse_formula(text, lang=Language.MODAL):
    """Parse the ASCII grammar into a Formula of the given language."""
    ps = _Parser(text, lang)
    f = ps.formula()
    if ps.peek() != "<end>":
        raise ParseError(f"unexpected {ps.peek()!r}", ps.pos())
    return f

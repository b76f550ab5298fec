"""Uniform (Lyndon) interpolants for sequents and formulas.

`forall_sequent` realises the general construction: ⊤ for provable
sequents, otherwise the disjunction of

  * for every backward-applicable G3W instance (propositional rules and
    both weakenings), the conjunction of the premises' interpolants,
  * the axiom interpolant of the sequent, and
  * the modal interpolant, a per-logic clause on the exact shape of S.

The recursion always descends to sequents of smaller weight, so the
memoized recursion plays the role of the assumption that every lower
sequent already has an interpolant.

A polarity of None selects plain uniform interpolation (p-freeness instead
of polarity-freeness), which is the only mode for CKCEM and CKCEMID.
"""

from __future__ import annotations

import threading

from . import calculus as C
from .calculus import ULIP_LOGICS, UIP_ONLY_LOGICS, logic
from .prover import implies, provable
from .sequent import Sequent
from .syntax import (AND, BOT_F, BOX, COND, IMP, OR, And, Box, Cond, Formula,
                     Imp, Language, Not, Or, Polarity, Top, conj, disj, is_neg,
                     is_top, language_of)

__all__ = [
    "ModeError", "forall_sequent", "axiom_interpolant", "modal_interpolant",
    "forall_formula", "exists_formula", "plain_forall", "plain_exists",
    "lyndon_interpolant", "translate_t", "translate_s", "simplify",
    "search_craig_interpolant", "check_mode", "is_p_free", "clear_caches",
    "set_debug",
]

POS, NEG = Polarity.POS, Polarity.NEG
_DEBUG = False


def set_debug(flag):
    """Check every simplification and guard against the prover."""
    global _DEBUG
    _DEBUG = bool(flag)


class ModeError(ValueError):
    pass


def check_mode(name, pol):
    """Lyndon polarities need a ULIP logic; plain mode needs UIP."""
    lg = logic(name)
    if pol is None:
        if lg.name not in ULIP_LOGICS + UIP_ONLY_LOGICS:
            raise ModeError(f"{lg.name} has no uniform interpolation")
    elif lg.name not in ULIP_LOGICS:
        if lg.name in UIP_ONLY_LOGICS:
            raise ModeError(f"{lg.name} lacks uniform Lyndon interpolation: it would make "
                            "(p > r) | (q > ~r) a theorem, which it is not; use --pol plain")
        raise ModeError(f"{lg.name} has no uniform interpolation")
    return lg


def _name(p):
    return p.name if isinstance(p, Formula) else p


def is_p_free(f, p, pol):
    """p°-freeness of a formula; pol None means plain p-freeness."""
    if pol is None:
        return p not in f.pos and p not in f.neg
    return p not in (f.pos if pol is POS else f.neg)


def _dual(pol):
    return None if pol is None else pol.dual


# ------------------------------------------------------------- simplifier

_simp_memo = {}


def simplify(name, f):
    """An equivalent formula with no new atoms, usually much smaller.

    Flattens ∧/∨, absorbs ⊤ and ⊥, drops duplicates, removes double
    negation, replaces provably true or false parts and drops disjuncts
    (conjuncts) that provably imply (follow from) another one.
    """
    lg = logic(name)
    out = _simp(lg, f)
    if _DEBUG:
        assert implies(lg, f, out) and implies(lg, out, f), f"simplifier broke {f}"
        assert out.pos <= f.pos and out.neg <= f.neg
    return out


def _simp(lg, f):
    key = (lg.name, f)
    r = _simp_memo.get(key)
    if r is None:
        r = _simp1(lg, f)
        _simp_memo[key] = r
    return r


def _flatten(f, tag, out):
    if f.tag == tag:
        _flatten(f.a, tag, out)
        _flatten(f.b, tag, out)
    else:
        out.append(f)


def _simp1(lg, f):
    if f.tag in (0, 1) or is_top(f):
        return f
    if is_neg(f):
        a = _simp(lg, f.a)
        if is_neg(a):
            return a.a
        if a is BOT_F:
            return Top()
        if is_top(a):
            return BOT_F
        return _const(lg, Not(a))
    if f.tag == IMP:
        a, b = _simp(lg, f.a), _simp(lg, f.b)
        if a is BOT_F or is_top(b):
            return Top()
        if is_top(a):
            return b
        if b is BOT_F:
            return _simp(lg, Not(a))
        return _const(lg, Imp(a, b))
    if f.tag == BOX:
        return _const(lg, Box(_simp(lg, f.a)))
    if f.tag == COND:
        return _const(lg, Cond(_simp(lg, f.a), _simp(lg, f.b)))
    parts = []
    _flatten(f, f.tag, parts)
    return _junction(lg, f.tag, [_simp(lg, g) for g in parts])


def _const(lg, f):
    if provable(lg, Sequent((), (f,))):
        return Top()
    if provable(lg, Sequent((f,), ())):
        return BOT_F
    return f


def _junction(lg, tag, items):
    unit, zero = (Top(), BOT_F) if tag == AND else (BOT_F, Top())
    flat = []
    for g in items:
        if g.tag == tag:
            _flatten(g, tag, flat)
        else:
            flat.append(g)
    kept = []
    for g in sorted(set(flat), key=lambda h: h.order):
        if g is unit or (tag == AND and is_top(g)):
            continue
        if g is zero or (tag == OR and is_top(g)):
            return zero
        g = _const(lg, g)
        if g is zero or (tag == OR and is_top(g)):
            return zero
        if g is unit or (tag == AND and is_top(g)):
            continue
        kept.append(g)
    # subsumption: in a disjunction drop d when d ⊢ e for another kept e;
    # in a conjunction drop c when e ⊢ c.  Ties keep the earlier formula.
    out = []
    for i, g in enumerate(kept):
        redundant = False
        for j, h in enumerate(kept):
            if i == j:
                continue
            weaker = implies(lg, g, h) if tag == OR else implies(lg, h, g)
            if weaker:
                both = implies(lg, h, g) if tag == OR else implies(lg, g, h)
                if not both or j < i:
                    redundant = True
                    break
        if not redundant:
            out.append(g)
    if not out:
        return unit
    res = conj(out) if tag == AND else disj(out)
    return _const(lg, res) if len(out) > 1 else res


# --------------------------------------------------------- interpolants

_memo = {}
_raw = {}
_lock = threading.Lock()


def clear_caches():
    with _lock:
        _memo.clear()
        _raw.clear()
        _simp_memo.clear()


def axiom_interpolant(pol, p, s, name):
    """⊤ if s is provable, else the disjunction of the p°-free succedent
    formulas and the negations of the p⋄-free antecedent formulas."""
    lg = logic(name)
    p = _name(p)
    if provable(lg, s):
        return Top()
    parts = [f for f in C._distinct(s.succ) if is_p_free(f, p, pol)]
    parts += [Not(f) for f in C._distinct(s.ante) if is_p_free(f, p, _dual(pol))]
    return disj(parts)


def forall_sequent(name, pol, p, s, mode=None):
    """The uniform interpolant ∀°p S (pol None: plain ∀p S)."""
    if mode == "plain":
        pol = None
    lg = check_mode(name, pol)
    return _forall(lg, pol, _name(p), s)


def _forall(lg, pol, p, s):
    key = (lg.name, pol, p, s.key)
    r = _memo.get(key)
    if r is not None:
        return r
    if provable(lg, s):
        r = Top()
        raw = r
    else:
        parts = []
        one, two = C.prop_instances(s)
        for inst in one + two + C.weakening_instances(s):
            parts.append(conj(_forall(lg, pol, p, q) for q in inst.premises))
        parts.append(axiom_interpolant(pol, p, s, lg))
        parts.append(_modal(lg, pol, p, s))
        raw = disj(parts)
        r = _simp(lg, raw)
    _check_var(r, pol, p, s)
    with _lock:
        _memo[key] = r
        if _DEBUG:
            _raw[key] = raw
    return r


def _check_var(r, pol, p, s):
    assert is_p_free(r, p, pol), f"interpolant {r} not free for {p}"
    assert r.pos <= s.pos and r.neg <= s.neg, f"interpolant {r} leaks variables of {s}"


def modal_interpolant(name, pol, p, s, recurse=None):
    """The per-logic clause for the exact shape of s (⊥ when none fits)."""
    lg = logic(name)
    return _modal(lg, pol, _name(p), s, recurse)


def _equiv(lg, a, b):
    return a is b or (implies(lg, a, b) and implies(lg, b, a))


def _guard(lg, key, value, target, negate=False):
    """⊢ value ⇔ target (¬value with negate); under debug also on the
    unsimplified value."""
    ok = _equiv(lg, Not(value) if negate else value, target)
    if _DEBUG and key is not None:
        raw = _raw.get(key)
        if raw is not None:
            raw = Not(raw) if negate else raw
            assert _equiv(lg, raw, target) == ok, "guard differs on raw value"
    return ok


def _modal(lg, pol, p, s, recurse=None):
    if recurse is None:
        def recurse(t):
            return _forall(lg, pol, p, t)

    def rkey(t):
        return (lg.name, pol, p, t.key)

    if provable(lg, s):
        return Top()
    a, d = s.ante, s.succ
    r = lg.rules
    all_box = all(f.tag == BOX for f in a + d)
    all_cond = all(f.tag == COND for f in a + d)

    if r & {"RuleM", "RuleE"} and all_box:
        guarded = "RuleE" in r
        if len(a) == 1 and not d:
            t = Sequent((a[0].a,), ())
            x = recurse(t)
            if not guarded or _guard(lg, rkey(t), x, a[0].a, negate=True):
                return Not(Box(Not(x)))
        if not a and len(d) == 1:
            t = Sequent((), (d[0].a,))
            x = recurse(t)
            if not guarded or _guard(lg, rkey(t), x, d[0].a):
                return Box(x)
        return BOT_F

    if "RuleMC" in r and all_box:
        if a and not d:
            return Not(Box(Not(recurse(Sequent(tuple(f.a for f in a), ())))))
        if len(d) == 1:
            return Box(recurse(Sequent(tuple(f.a for f in a), (d[0].a,))))
        return BOT_F

    if r & {"RuleCE", "RuleCM"} and all_cond:
        full = "RuleCE" in r
        if len(a) == 1 and not d:
            c = a[0]
            t1, s1 = Sequent((), (c.a,)), Sequent((c.b,), ())
            x, y = recurse(t1), recurse(s1)
            if _guard(lg, rkey(t1), x, c.a) and (not full or _guard(lg, rkey(s1), y, c.b, negate=True)):
                return Not(Cond(x, Not(y)))
        if not a and len(d) == 1:
            c = d[0]
            t2, s2 = Sequent((c.a,), ()), Sequent((), (c.b,))
            x, y = recurse(t2), recurse(s2)
            if _guard(lg, rkey(t2), x, c.a, negate=True) and (not full or _guard(lg, rkey(s2), y, c.b)):
                return Cond(Not(x), y)
        return BOT_F

    if r & {"RuleCMC", "RuleCKID"} and all_cond:
        with_id = "RuleCKID" in r
        if a and not d:
            chi = _chi(lg, pol, p, a, recurse)
            if chi is not None:
                return Not(Cond(chi, Not(recurse(Sequent(tuple(c.b for c in a), ())))))
            return BOT_F
        if len(d) == 1:
            c0 = d[0]
            t2 = Sequent((c0.a,), ())
            x = recurse(t2)
            if _guard(lg, rkey(t2), x, c0.a, negate=True) and all(_equiv(lg, c0.a, c.a) for c in a):
                left = ((c0.a,) if with_id else ()) + tuple(c.b for c in a)
                return Cond(Not(x), recurse(Sequent(left, (c0.b,))))
        return BOT_F

    if r & {"RuleCKCEM", "RuleCKCEMID"} and all_cond:
        with_id = "RuleCKCEMID" in r
        if a and not d:
            chi = _chi(lg, pol, p, a, recurse)
            if chi is not None:
                return Not(Cond(chi, Not(recurse(Sequent(tuple(c.b for c in a), ())))))
            return BOT_F
        if d:
            chi = _chi(lg, pol, p, a + d, recurse)
            if chi is not None:
                left = tuple(c.b for c in a)
                if with_id:
                    # the designated antecedent φ_l0 joins the ψ premise
                    left = (d[0].a,) + left
                return Cond(chi, recurse(Sequent(left, tuple(c.b for c in d))))
        return BOT_F
    return BOT_F


def _chi(lg, pol, p, conds, recurse):
    """A p°-free χ within the variables of the conditionals and provably
    equivalent to every antecedent φ, or None.  Candidates are ∀°p(⇒ φ)
    in the fixed order; if any χ exists, each candidate is one."""
    for c in C._distinct(conds):
        cand = recurse(Sequent((), (c.a,)))
        if all(_equiv(lg, cand, k.a) for k in conds):
            assert is_p_free(cand, p, pol)
            return cand
    return None


# ------------------------------------------------------- formula level

def forall_formula(name, pol, p, f, mode=None):
    """∀°p A = ∀°p(⇒ A)."""
    return forall_sequent(name, pol, p, Sequent((), (f,)), mode)


def exists_formula(name, pol, p, f, mode=None):
    """∃°p A = ¬∀⋄p(⇒ ¬A), simplified."""
    if mode == "plain":
        pol = None
    check_mode(name, pol)
    inner = forall_sequent(name, _dual(pol), p, Sequent((), (Not(f),)))
    return simplify(name, Not(inner))


def plain_forall(name, p, f):
    """∀p φ: ∀⁺p ∀⁻p φ for ULIP logics, the plain construction otherwise."""
    lg = logic(name)
    if lg.name in ULIP_LOGICS:
        inner = forall_formula(lg, NEG, p, f)
        return forall_formula(lg, POS, p, inner)
    return forall_formula(lg, None, p, f)


def plain_exists(name, p, f):
    lg = logic(name)
    return simplify(lg, Not(plain_forall(lg, p, Not(f))))


def lyndon_interpolant(name, phi, psi):
    """θ = ∃⁺P⁺ ∃⁻P⁻ φ where P† are the †-variables of φ missing from ψ."""
    lg = check_mode(name, POS)
    if not implies(lg, phi, psi):
        raise ValueError("the implication is not provable")
    p_neg = sorted(phi.neg - psi.neg)
    p_pos = sorted(phi.pos - psi.pos)
    theta = phi
    for q in p_neg:
        theta = exists_formula(lg, NEG, q, theta)
    for q in p_pos:
        theta = exists_formula(lg, POS, q, theta)
    if not (implies(lg, phi, theta) and implies(lg, theta, psi)):
        raise AssertionError("interpolant failed its check")
    for side in ("pos", "neg"):
        if not getattr(theta, side) <= getattr(phi, side) & getattr(psi, side):
            raise AssertionError("interpolant has extra variables")
    return theta


# --------------------------------------------------------- translations

def translate_t(f):
    """□φ ↦ ⊤ ▷ φᵗ, homomorphic elsewhere."""
    if f.tag in (0, 1):
        return f
    if f.tag == BOX:
        return Cond(Top(), translate_t(f.a))
    if f.tag == COND:
        raise ValueError("translate_t expects a modal formula")
    return _rebuild(f, translate_t(f.a), translate_t(f.b))


def translate_s(f):
    """(θ ▷ ψ) ↦ □ψˢ, homomorphic elsewhere."""
    if f.tag in (0, 1):
        return f
    if f.tag == COND:
        return Box(translate_s(f.b))
    if f.tag == BOX:
        raise ValueError("translate_s expects a conditional formula")
    return _rebuild(f, translate_s(f.a), translate_s(f.b))


def _rebuild(f, a, b):
    return {AND: And, OR: Or, IMP: Imp}[f.tag](a, b)


# ----------------------------------------------------- Craig search

def search_craig_interpolant(name, phi, psi, alphabet, bound):
    """First θ over the alphabet, by weight then formula order, with
    ⊢ φ → θ and ⊢ θ → ψ; None if there is none up to the bound."""
    from .gen import formulas_of_weight
    from .semantics import refutes

    lg = logic(name)
    lang = lg.language
    atoms = sorted(_name(a) for a in alphabet)
    for w in range(bound + 1):
        for theta in formulas_of_weight(w, atoms, lang):
            s1 = Sequent((phi,), (theta,))
            if refutes(lg, s1):
                continue
            s2 = Sequent((theta,), (psi,))
            if refutes(lg, s2):
                continue
            if provable(lg, s1) and provable(lg, s2):
                return theta
    return None

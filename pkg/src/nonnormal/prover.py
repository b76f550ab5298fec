"""Backward proof search, proof objects and the proof checker.

Every rule strictly lowers sequent weight, so plain memoized backward
search terminates without loop checks.  Propositional rules are invertible
in all calculi here, so search applies the first one it finds and commits.
Irreducible sequents contain only atoms, ⊥ on the right and modal
formulas.  Axioms have already been ruled out for them, and the only
remaining way to close them is a modal or conditional rule on some
sub-multiset, reached through weakening when the calculus has it.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass

from . import calculus as C
from .calculus import RuleInstance, axiom_match, logic, prop_instance
from .sequent import Sequent, parse_sequent, print_sequent
from .syntax import AND, BOT_F, BOX, COND, IMP, OR, VAR, Language

__all__ = ["Proof", "prove", "provable", "check_proof", "proof_to_dict",
           "proof_from_dict", "admissible_contraction", "admissible_bot_elim",
           "clear_caches", "equivalent", "implies"]


@dataclass(frozen=True, eq=False)
class Proof:
    rule: str
    sequent: Sequent
    premises: tuple = ()

    @property
    def height(self):
        # a single-node branch has height 1
        return 1 + max((p.height for p in self.premises), default=0)

    @property
    def size(self):
        return 1 + sum(p.size for p in self.premises)

    def nodes(self):
        stack = [self]
        while stack:
            n = stack.pop()
            yield n
            stack.extend(n.premises)

    def has_cut(self):
        return any(n.rule == "Cut" for n in self.nodes())


def proof_to_dict(pf):
    return {"rule": pf.rule, "sequent": print_sequent(pf.sequent),
            "premises": [proof_to_dict(p) for p in pf.premises]}


def proof_from_dict(d, lang=Language.MODAL):
    return Proof(d["rule"], parse_sequent(d["sequent"], lang),
                 tuple(proof_from_dict(p, lang) for p in d.get("premises", [])))


def proof_to_json(pf):
    return json.dumps(proof_to_dict(pf), sort_keys=True)


# ------------------------------------------------------------------ search

# logic name -> {sequent key: witness or None}; a witness is a RuleInstance,
# or ("weak", core_instance) for a weakening chain down to a modal core
_memo = {}
_memo_lock = threading.Lock()
_proofs = {}


def clear_caches():
    with _memo_lock:
        _memo.clear()
        _proofs.clear()


def _table(name):
    t = _memo.get(name)
    if t is None:
        with _memo_lock:
            t = _memo.setdefault(name, {})
    return t


_INVERT_ORDER = (("L", AND), ("R", OR), ("R", IMP), ("R", AND), ("L", OR), ("L", IMP))


def first_invertible(s):
    for side, tag in _INVERT_ORDER:
        for f in (s.ante if side == "L" else s.succ):
            if f.tag == tag:
                return prop_instance(s, side, f)
    return None


def provable(name, s):
    return _witness(logic(name), s) is not None


def _witness(lg, s):
    table = _table(lg.name)
    key = s.key
    if key in table:
        return table[key]
    w = _search(lg, s)
    table[key] = w
    return w


def _search(lg, s):
    ax = axiom_match(s)
    if ax is not None:
        prin = BOT_F if ax == "LBot" else next(f for f in s.succ if f.tag == VAR and f in s.ante)
        return RuleInstance(ax, s, (), (prin,))
    inst = first_invertible(s)
    if inst is not None:
        if all(_witness(lg, p) is not None for p in inst.premises):
            return inst
        return None
    return _modal_search(lg, s)


def _distinct(fs):
    return C._distinct(fs)


def _eqv(lg, a, b):
    return a is b or (_witness(lg, Sequent((a,), (b,))) is not None
                      and _witness(lg, Sequent((b,), (a,))) is not None)


def _imp(lg, a, b):
    return a is b or _witness(lg, Sequent((a,), (b,))) is not None


def _closes(lg, inst):
    return all(_witness(lg, p) is not None for p in inst.premises)


def _core(lg, s, ante, succ, maker):
    """Instance on the core ante ⇒ succ, if all of its premises close."""
    inst = maker(Sequent(ante, succ))
    if _closes(lg, inst):
        return ("weak", inst) if inst.conclusion != s else inst
    return None


def _modal_search(lg, s):
    r = lg.rules
    if s.mods == 0:
        return None
    lbox = _distinct(f for f in s.ante if f.tag == BOX)
    rbox = _distinct(f for f in s.succ if f.tag == BOX)
    lcond = _distinct(f for f in s.ante if f.tag == COND)
    rcond = _distinct(f for f in s.succ if f.tag == COND)
    if "RuleEC" in r or "RuleNW" in r:
        for t in rbox:
            if "RuleEC" in r:
                ks = tuple(f for f in lbox if _imp(lg, t.a, f.a))
                if ks:
                    inst = C.inst_EC(s, ks, t)
                    if _closes(lg, inst):
                        return inst
            if "RuleNW" in r:
                inst = C.inst_NW(s, t)
                if _closes(lg, inst):
                    return inst
        return None
    if "RuleCEC" in r or "RuleCNW" in r:
        for t in rcond:
            if "RuleCEC" in r:
                ks = tuple(f for f in lcond if _eqv(lg, t.a, f.a) and _imp(lg, t.b, f.b))
                if ks:
                    inst = C.inst_CEC(s, ks, t)
                    if _closes(lg, inst):
                        return inst
            if "RuleCNW" in r:
                inst = C.inst_CNW(s, t)
                if _closes(lg, inst):
                    return inst
        return None
    # calculi with weakening: search for a core sub-multiset
    for t in rbox:
        for a in lbox:
            for name, maker in (("RuleM", C.inst_M), ("RuleE", C.inst_E)):
                if name in r:
                    w = _core(lg, s, (a,), (t,), maker)
                    if w is not None:
                        return w
        if "RuleMC" in r and lbox:
            w = _core(lg, s, tuple(lbox), (t,), C.inst_MC)
            if w is not None:
                return w
        if "RuleN" in r:
            w = _core(lg, s, (), (t,), C.inst_N)
            if w is not None:
                return w
    for t in rcond:
        for c in lcond:
            for name, maker in (("RuleCM", C.inst_CM), ("RuleCE", C.inst_CE)):
                if name in r:
                    w = _core(lg, s, (c,), (t,), maker)
                    if w is not None:
                        return w
        eq_l = tuple(c for c in lcond if _eqv(lg, t.a, c.a))
        if "RuleCMC" in r and eq_l:
            w = _core(lg, s, eq_l, (t,), C.inst_CMC)
            if w is not None:
                return w
        if "RuleCN" in r:
            w = _core(lg, s, (), (t,), C.inst_CN)
            if w is not None:
                return w
        if "RuleCKID" in r:
            w = _core(lg, s, eq_l, (t,), C.inst_CKID)
            if w is not None:
                return w
        for name, flag in (("RuleCKCEM", False), ("RuleCKCEMID", True)):
            if name in r:
                eq_r = tuple(c for c in rcond if c is not t and _eqv(lg, t.a, c.a))
                w = _core(lg, s, eq_l, (t,) + eq_r, lambda q, t=t, flag=flag: C.inst_CKCEM(q, t, flag))
                if w is not None:
                    return w
    return None


# --------------------------------------------------------- reconstruction

def prove(name, s):
    """A cut-free proof of s in the logic, or None."""
    lg = logic(name)
    if _witness(lg, s) is None:
        return None
    return _build(lg, s)


def _build(lg, s):
    cache = _proofs.setdefault(lg.name, {})
    pf = cache.get(s.key)
    if pf is not None:
        return pf
    w = _witness(lg, s)
    assert w is not None
    if isinstance(w, tuple):
        core = w[1]
        pf = Proof(core.rule, core.conclusion, tuple(_build(lg, p) for p in core.premises))
        pf = weaken_chain(pf, s)
    else:
        pf = Proof(w.rule, s, tuple(_build(lg, p) for p in w.premises))
    cache[s.key] = pf
    return pf


def weaken_chain(pf, target):
    """Lw/Rw nodes from target down to pf's sequent (a sub-multiset)."""
    extra_a = list(target.ante)
    for f in pf.sequent.ante:
        extra_a.remove(f)
    extra_s = list(target.succ)
    for f in pf.sequent.succ:
        extra_s.remove(f)
    cur = pf
    # innermost first, so that the root removes the first extra formula
    steps = [("L", f) for f in extra_a] + [("R", f) for f in extra_s]
    seqs = []
    a, d = list(pf.sequent.ante), list(pf.sequent.succ)
    for side, f in reversed(steps):
        if side == "L":
            a.append(f)
        else:
            d.append(f)
        seqs.append((side, Sequent(a, d)))
    for side, sq in seqs:
        cur = Proof("Lw" if side == "L" else "Rw", sq, (cur,))
    return cur


def implies(name, a, b):
    return provable(name, Sequent((a,), (b,)))


def equivalent(name, a, b):
    return a is b or (implies(name, a, b) and implies(name, b, a))


# ------------------------------------------------------------------ checker

def cut_formula(pf):
    """The cut formula of a Cut node, or None if the node is malformed."""
    if len(pf.premises) != 2:
        return None
    l, r = pf.premises[0].sequent, pf.premises[1].sequent
    for f in _distinct(l.succ):
        if f in r.ante:
            g1, d1 = l.ante, C._without(l.succ, f)
            g2, d2 = C._without(r.ante, f), r.succ
            if Sequent(g1 + g2, d1 + d2) == pf.sequent:
                return f
    return None


def check_proof(name, pf, allow_cut=False):
    """True iff every node is an instance of a rule of the logic."""
    try:
        lg = logic(name)
    except ValueError:
        return False
    lang = lg.language
    seen = {}
    stack = [pf]
    while stack:
        n = stack.pop()
        if id(n) in seen:
            continue
        seen[id(n)] = True
        if not isinstance(n, Proof) or not isinstance(n.sequent, Sequent):
            return False
        other = Language.CONDITIONAL if lang is Language.MODAL else Language.MODAL
        if n.sequent.mods & (1 if other is Language.MODAL else 2):
            return False
        if n.rule == "Cut":
            if not allow_cut or cut_formula(n) is None:
                return False
        else:
            if n.rule not in lg.rules:
                return False
            prem = tuple(p.sequent for p in n.premises)
            if not any(i.rule == n.rule and i.premises == prem
                       for i in C.backward_instances(lg, n.sequent)):
                return False
        stack.extend(n.premises)
    return True


# ------------------------------------------------------ admissible rules

def admissible_contraction(name, s):
    """Proof of s with one duplicated formula contracted, by re-search.

    Accepts either a sequent with a duplicate (contracted at the first
    duplicate found, antecedent first) and returns the proof of the result.
    """
    for side in ("L", "R"):
        fs = s.ante if side == "L" else s.succ
        for f in _distinct(fs):
            if fs.count(f) > 1:
                t = s.remove_ante(fs.index(f)) if side == "L" else s.remove_succ(fs.index(f))
                return prove(name, t)
    return prove(name, s)


def admissible_bot_elim(name, s):
    """From a sequent Γ ⇒ ⊥, Δ, a proof of Γ ⇒ Δ, by re-search."""
    if BOT_F not in s.succ:
        return prove(name, s)
    return prove(name, s.remove_succ(s.succ.index(BOT_F)))

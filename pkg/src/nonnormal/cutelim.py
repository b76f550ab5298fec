"""Cut elimination by proof transformation.

Topmost cuts go first.  A single cut between cut-free D1 ⊢ Γ1 ⇒ A, Δ1 and
D2 ⊢ A, Γ2 ⇒ Δ2 is reduced by induction on the weight of A, with a
subinduction on the sum of the heights of D1 and D2: axiom and weakening
cases are closed directly, a cut on a non-principal formula moves up into
the premises, and a cut on a formula principal on both sides becomes cuts
on its immediate subformulas.  Contraction and ⊥-elimination, both
admissible, are carried out by re-running proof search on the target.
"""

from __future__ import annotations

from . import calculus as C
from .calculus import logic
from .prover import Proof, check_proof, cut_formula, prove, weaken_chain
from .sequent import Sequent
from .syntax import BOT_F, BOX, COND

__all__ = ["eliminate_cut", "cut", "CutError"]


class CutError(ValueError):
    pass


def eliminate_cut(name, pf):
    """A cut-free proof of the same end sequent."""
    lg = logic(name)
    if not check_proof(lg, pf, allow_cut=True):
        raise CutError("input is not a proof in this logic")
    return _elim(lg, pf, {})


def _elim(lg, pf, memo):
    if id(pf) in memo:
        return memo[id(pf)]
    prem = tuple(_elim(lg, p, memo) for p in pf.premises)
    if pf.rule == "Cut":
        out = cut(lg, cut_formula(pf), prem[0], prem[1])
        assert out.sequent == pf.sequent
    elif prem == pf.premises:
        out = pf
    else:
        out = Proof(pf.rule, pf.sequent, prem)
    memo[id(pf)] = out
    return out


# ------------------------------------------------------------- utilities

def _minus1(fs, f):
    return C._without(tuple(fs), f)


def _cut_end(a, d1, d2):
    l, r = d1.sequent, d2.sequent
    return Sequent(l.ante + _minus1(r.ante, a), _minus1(l.succ, a) + r.succ)


def _extras(small, big):
    ea, es = list(big.ante), list(big.succ)
    for f in small.ante:
        ea.remove(f)
    for f in small.succ:
        es.remove(f)
    return ea, es


def weaken(lg, pf, target):
    """A proof of target, a super-multiset of pf's end sequent."""
    if pf.sequent == target:
        return pf
    if lg.weakening:
        return weaken_chain(pf, target)
    # no weakening rule: push the extra context up to the axioms and to
    # the contexts of the modal rules
    ea, es = _extras(pf.sequent, target)
    return _push(lg, pf, tuple(ea), tuple(es))


def _push(lg, pf, ea, es):
    s = pf.sequent.add(ea, es)
    if pf.rule in ("Ax", "LBot", "RuleEC", "RuleNW", "RuleCEC", "RuleCNW"):
        return Proof(pf.rule, s, pf.premises)
    prem = tuple(_push(lg, p, ea, es) for p in pf.premises)
    return Proof(pf.rule, s, prem)


def contract(lg, pf, target):
    """Contraction to target (a sub-multiset), realised by re-search."""
    if pf.sequent == target:
        return pf
    out = prove(lg, target)
    if out is None:
        raise AssertionError(f"contraction failed for {target}")
    return out


def _assemble(lg, rule, concl, proofs):
    """A node for rule at concl using the given premise proofs."""
    by_seq = {}
    for p in proofs:
        by_seq.setdefault(p.sequent, p)
    for inst in C.backward_instances(lg, concl):
        if inst.rule == rule and all(q in by_seq for q in inst.premises):
            return Proof(rule, concl, tuple(by_seq[q] for q in inst.premises))
    raise AssertionError(f"no {rule} instance at {concl}")


def _principal_right(pf, a):
    """Is A principal in the succedent of pf's last rule?"""
    r, s = pf.rule, pf.sequent
    if r in C.PROP_RULES:
        return r[0] == "R" and _prop_main(pf) is a
    if r in ("Ax", "LBot", "Lw"):
        return False
    if r == "Rw":
        return False
    if r in ("RuleEC", "RuleNW"):
        return a.tag == BOX and _ec_target(pf) is a
    if r in ("RuleCEC", "RuleCNW"):
        return a.tag == COND and _ec_target(pf) is a
    # the context-free modal and conditional rules
    return a in s.succ


def _principal_left(pf, a):
    r, s = pf.rule, pf.sequent
    if r in C.PROP_RULES:
        return r[0] == "L" and _prop_main(pf) is a
    if r in ("Ax", "LBot", "Lw", "Rw"):
        return False
    if r in ("RuleNW", "RuleCNW"):
        return False
    if r in ("RuleEC", "RuleCEC"):
        return a in _ec_boxes(pf)
    return a in s.ante


def _prop_main(pf):
    """The principal formula of a propositional node."""
    s = pf.sequent
    side = pf.rule[0]
    for f in C._distinct(s.ante if side == "L" else s.succ):
        inst = C.prop_instance(s, side, f)
        if inst is not None and inst.rule == pf.rule and \
                inst.premises == tuple(p.sequent for p in pf.premises):
            return f
    raise AssertionError("bad propositional node")


def _ec_match(pf):
    s = pf.sequent
    prem = tuple(p.sequent for p in pf.premises)
    for inst in C.modal_instances(C.LOGICS["CECN" if pf.rule in ("RuleCEC", "RuleCNW") else "ECN"], s):
        if inst.rule == pf.rule and inst.premises == prem:
            return inst
    raise AssertionError("bad EC node")


def _ec_target(pf):
    return _ec_match(pf).principal[-1]


def _ec_boxes(pf):
    return _ec_match(pf).principal[:-1]


def _weakened(pf):
    s, (p,) = pf.sequent, pf.premises
    ea, es = _extras(p.sequent, s)
    return (ea + es)[0], ("L" if ea else "R")


# ------------------------------------------------------------- reduction

def cut(lg, a, d1, d2):
    """Cut-free proof of Γ1, Γ2 ⇒ Δ1, Δ2 from cut-free d1, d2 on A."""
    lg = logic(lg)
    end = _cut_end(a, d1, d2)
    s1, s2 = d1.sequent, d2.sequent

    # axioms
    if d1.rule in ("Ax", "LBot"):
        ax = C.axiom_match(end)
        if ax is not None:
            return Proof(ax, end)
        # A is the atom of the axiom and is in Γ1, so end ⊇ d2's sequent
        return weaken(lg, d2, end)
    if d2.rule in ("Ax", "LBot"):
        ax = C.axiom_match(end)
        if ax is not None:
            return Proof(ax, end)
        if d2.rule == "LBot":
            # A is ⊥: drop it from d1 by ⊥-elimination
            g = prove(lg, Sequent(s1.ante, _minus1(s1.succ, BOT_F)))
            return weaken(lg, g, end)
        return weaken(lg, d1, end)

    # A introduced by weakening
    if d1.rule == "Rw":
        f, _ = _weakened(d1)
        if f is a:
            return weaken(lg, d1.premises[0], end)
    if d2.rule == "Lw":
        f, _ = _weakened(d2)
        if f is a:
            return weaken(lg, d2.premises[0], end)

    # A not principal on the left: move the cut into d1's premises
    if not _principal_right(d1, a):
        return _permute_left(lg, a, d1, d2, end)
    if not _principal_left(d2, a):
        return _permute_right(lg, a, d1, d2, end)
    return _principal(lg, a, d1, d2, end)


def _permute_left(lg, a, d1, d2, end):
    r = d1.rule
    if r in ("RuleEC", "RuleNW", "RuleCEC", "RuleCNW"):
        # A sits in the right context Λ: extend the context instead
        return Proof(r, end, d1.premises)
    new = [cut(lg, a, p, d2) for p in d1.premises]
    if r in ("Lw", "Rw"):
        return weaken(lg, new[0], end)
    return _assemble(lg, r, end, new)


def _permute_right(lg, a, d1, d2, end):
    r = d2.rule
    if r in ("RuleEC", "RuleNW", "RuleCEC", "RuleCNW"):
        return Proof(r, end, d2.premises)
    new = [cut(lg, a, d1, p) for p in d2.premises]
    if r in ("Lw", "Rw"):
        return weaken(lg, new[0], end)
    return _assemble(lg, r, end, new)


def _seq(a, s):
    return Sequent(a, s)


def _by_seq(pf):
    return {p.sequent: p for p in pf.premises}


def _get(pf, ante, succ):
    return _by_seq(pf)[Sequent(ante, succ)]


def _chain(lg, x, y, z, pxy, pyz):
    """From proofs of x ⇒ y and y ⇒ z, a proof of x ⇒ z (cut on y)."""
    if x is y:
        return pyz
    if y is z:
        return pxy
    return cut(lg, y, pxy, pyz)


def _principal(lg, a, d1, d2, end):
    r1, r2 = d1.rule, d2.rule
    s1, s2 = d1.sequent, d2.sequent

    # propositional principal cases; duplicated context is contracted
    if r1 == "RAnd" and r2 == "LAnd":
        pa, pb = d1.premises
        (q,) = d2.premises
        e1 = cut(lg, a.b, pb, q)
        e2 = cut(lg, a.a, pa, e1)
        return contract(lg, e2, end)
    if r1 == "ROr" and r2 == "LOr":
        (q,) = d1.premises
        pa, pb = d2.premises
        e1 = cut(lg, a.a, q, pa)
        e2 = cut(lg, a.b, e1, pb)
        return contract(lg, e2, end)
    if r1 == "RImp" and r2 == "LImp":
        (q,) = d1.premises          # Γ1, A ⇒ B, Δ1
        pa, pb = d2.premises        # Γ2 ⇒ A, Δ2 and Γ2, B ⇒ Δ2
        e1 = cut(lg, a.a, pa, q)    # Γ2, Γ1 ⇒ Δ2, B, Δ1
        e2 = cut(lg, a.b, e1, pb)
        return contract(lg, e2, end)

    # modal principal cases.  Only the conditional cases are worked out in
    # the cut elimination argument this follows; the cases for E, M, MC, N
    # and EC below are derived by analogy with them.
    if r1 in ("RuleM", "RuleE", "RuleMC") and r2 in ("RuleM", "RuleE", "RuleMC") \
            or r1 == "RuleN":
        return _modal_principal(lg, a, d1, d2, end)
    if r1 in ("RuleEC", "RuleNW") and r2 == "RuleEC":
        return _ec_principal(lg, a, d1, d2, end)

    # conditional principal cases
    if r1 in ("RuleCEC", "RuleCNW") and r2 == "RuleCEC":
        return _cec_principal(lg, a, d1, d2, end)
    if r1 == "RuleCN":
        return _cn_left(lg, a, d1, d2, end)
    if r1 == r2 and r1 in ("RuleCE", "RuleCM"):
        return _ce_cm(lg, a, d1, d2, end)
    if r1 == r2 and r1 in ("RuleCMC", "RuleCKID"):
        return _cmc(lg, a, d1, d2, end)
    if r1 == r2 and r1 in ("RuleCKCEM", "RuleCKCEMID"):
        return _ckcem(lg, a, d1, d2, end)
    raise AssertionError(f"unexpected principal pair {r1}/{r2}")


def _modal_principal(lg, a, d1, d2, end):
    # by analogy with the conditional cases
    b = a.a
    r1, r2 = d1.rule, d2.rule
    s2 = d2.sequent
    c = s2.succ[0]                       # □d, the box on the right of d2
    others = _minus1(s2.ante, a)         # remaining boxes of d2
    if r1 == "RuleN":
        (pb,) = d1.premises              # ⇒ b
        if r2 == "RuleE":
            q = cut(lg, b, pb, _get(d2, (b,), (c.a,)))
            return Proof("RuleN", end, (q,))
        if r2 == "RuleM":
            q = cut(lg, b, pb, d2.premises[0])
            return Proof("RuleN", end, (q,))
        # MC: □b, □c⃗ ⇒ □d from b, c⃗ ⇒ d
        q = cut(lg, b, pb, d2.premises[0])
        if others:
            return _assemble(lg, "RuleMC", end, [q])
        return Proof("RuleN", end, (q,))
    a1 = d1.sequent.ante
    if r1 == "RuleE" and r2 == "RuleE":
        x = a1[0].a
        p_xb, p_bx = _get(d1, (x,), (b,)), _get(d1, (b,), (x,))
        p_bd, p_db = _get(d2, (b,), (c.a,)), _get(d2, (c.a,), (b,))
        q1 = _chain(lg, x, b, c.a, p_xb, p_bd)
        q2 = _chain(lg, c.a, b, x, p_db, p_bx)
        return _assemble(lg, "RuleE", end, [q1, q2])
    if r1 == "RuleM" and r2 == "RuleM":
        x = a1[0].a
        q = _chain(lg, x, b, c.a, d1.premises[0], d2.premises[0])
        return Proof("RuleM", end, (q,))
    if r1 == "RuleMC" and r2 == "RuleMC":
        q = cut(lg, b, d1.premises[0], d2.premises[0])
        return Proof("RuleMC", end, (q,))
    raise AssertionError(f"unexpected modal pair {r1}/{r2}")


def _ec_principal(lg, a, d1, d2, end):
    # by analogy with the conditional cases
    b = a.a
    m2 = _ec_match(d2)
    boxes2, t2 = m2.principal[:-1], m2.principal[-1]
    rest2 = _minus1(boxes2, a)
    d = t2.a
    p_main2 = _get(d2, tuple(f.a for f in boxes2), (d,))
    if d1.rule == "RuleNW":
        (pb,) = d1.premises
        q = cut(lg, b, pb, p_main2)
        if not rest2:
            return Proof("RuleNW", end, (q,))
        prem = [q] + [_get(d2, (d,), (f.a,)) for f in rest2]
        return _ec_node(lg, "RuleEC", end, rest2, t2, prem)
    m1 = _ec_match(d1)
    boxes1 = m1.principal[:-1]
    p_main1 = _get(d1, tuple(f.a for f in boxes1), (b,))
    q = cut(lg, b, p_main1, p_main2)
    p_db = _get(d2, (d,), (b,))
    prem = [q]
    for f in boxes1:
        prem.append(_chain(lg, d, b, f.a, p_db, _get(d1, (b,), (f.a,))))
    for f in rest2:
        prem.append(_get(d2, (d,), (f.a,)))
    return _ec_node(lg, "RuleEC", end, tuple(boxes1) + tuple(rest2), t2, prem)


def _ec_node(lg, rule, end, boxes, target, proofs):
    maker = C.inst_EC if rule == "RuleEC" else C.inst_CEC
    inst = maker(end, tuple(sorted(boxes, key=lambda f: f.order)), target)
    by = {}
    for p in proofs:
        by.setdefault(p.sequent, p)
    return Proof(rule, end, tuple(by[q] for q in inst.premises))


def _cec_principal(lg, a, d1, d2, end):
    a0, b0 = a.a, a.b
    m2 = _ec_match(d2)
    conds2, t2 = m2.principal[:-1], m2.principal[-1]
    rest2 = _minus1(conds2, a)
    e, f = t2.a, t2.b
    p_main2 = _get(d2, tuple(c.b for c in conds2), (f,))
    if d1.rule == "RuleCNW":
        (pb,) = d1.premises
        q = cut(lg, b0, pb, p_main2)
        if not rest2:
            return Proof("RuleCNW", end, (q,))
        prem = [q] + [_get(d2, (f,), (c.b,)) for c in rest2]
        prem += [_get(d2, (e,), (c.a,)) for c in rest2] + [_get(d2, (c.a,), (e,)) for c in rest2]
        return _ec_node(lg, "RuleCEC", end, rest2, t2, prem)
    m1 = _ec_match(d1)
    conds1 = m1.principal[:-1]
    p_main1 = _get(d1, tuple(c.b for c in conds1), (b0,))
    prem = [cut(lg, b0, p_main1, p_main2)]
    p_ea0, p_a0e = _get(d2, (e,), (a0,)), _get(d2, (a0,), (e,))
    p_fb0 = _get(d2, (f,), (b0,))
    for c in conds1:
        prem.append(_chain(lg, e, a0, c.a, p_ea0, _get(d1, (a0,), (c.a,))))
        prem.append(_chain(lg, c.a, a0, e, _get(d1, (c.a,), (a0,)), p_a0e))
        prem.append(_chain(lg, f, b0, c.b, p_fb0, _get(d1, (b0,), (c.b,))))
    for c in rest2:
        prem += [_get(d2, (e,), (c.a,)), _get(d2, (c.a,), (e,)), _get(d2, (f,), (c.b,))]
    return _ec_node(lg, "RuleCEC", end, tuple(conds1) + tuple(rest2), t2, prem)


def _cn_left(lg, a, d1, d2, end):
    """d1 is ⇒ φ0▷ψ0 by CN; d2 has φ0▷ψ0 principal on the left."""
    b0 = a.b
    (pb,) = d1.premises
    r2 = d2.rule
    t = d2.sequent.succ[0]
    if r2 in ("RuleCE", "RuleCM"):
        q = cut(lg, b0, pb, _get(d2, (b0,), (t.b,)))
        return Proof("RuleCN", end, (q,))
    if r2 == "RuleCMC":
        rest = _minus1(d2.sequent.ante, a)
        q = cut(lg, b0, pb, _get(d2, tuple(c.b for c in d2.sequent.ante), (t.b,)))
        if rest:
            return _assemble(lg, "RuleCMC", end, [q] + list(d2.premises))
        return Proof("RuleCN", end, (q,))
    raise AssertionError(f"unexpected CN pair with {r2}")


def _ce_cm(lg, a, d1, d2, end):
    a0, b0 = a.a, a.b
    (c1,) = d1.sequent.ante
    (c2,) = d2.sequent.succ
    a1, b1, a2, b2 = c1.a, c1.b, c2.a, c2.b
    prem = [
        _chain(lg, a2, a0, a1, _get(d2, (a2,), (a0,)), _get(d1, (a0,), (a1,))),
        _chain(lg, a1, a0, a2, _get(d1, (a1,), (a0,)), _get(d2, (a0,), (a2,))),
        _chain(lg, b1, b0, b2, _get(d1, (b1,), (b0,)), _get(d2, (b0,), (b2,))),
    ]
    if d1.rule == "RuleCE":
        prem.append(_chain(lg, b2, b0, b1, _get(d2, (b2,), (b0,)), _get(d1, (b0,), (b1,))))
    return _assemble(lg, d1.rule, end, prem)


def _cmc(lg, a, d1, d2, end):
    """CMC/CMC and CKID/CKID: d1 ⊢ I ⇒ φ0▷ψ0, d2 ⊢ φ0▷ψ0, J ⇒ e▷f."""
    a0, b0 = a.a, a.b
    I = d1.sequent.ante
    J = _minus1(d2.sequent.ante, a)
    (t,) = d2.sequent.succ
    e, f = t.a, t.b
    idr = d1.rule == "RuleCKID"
    p_ea0, p_a0e = _get(d2, (e,), (a0,)), _get(d2, (a0,), (e,))
    prem = []
    for c in I:
        prem.append(_chain(lg, e, a0, c.a, p_ea0, _get(d1, (a0,), (c.a,))))
        prem.append(_chain(lg, c.a, a0, e, _get(d1, (c.a,), (a0,)), p_a0e))
    for c in J:
        prem += [_get(d2, (e,), (c.a,)), _get(d2, (c.a,), (e,))]
    bI = tuple(c.b for c in I)
    bJ = tuple(c.b for c in J)
    if idr:
        m1 = _get(d1, (a0,) + bI, (b0,))                 # φ0, ψ_I ⇒ ψ0
        m2 = _get(d2, (e, b0) + bJ, (f,))                # e, ψ0, ψ_J ⇒ f
        m1e = m1 if e is a0 else cut(lg, a0, p_ea0, m1)  # e, ψ_I ⇒ ψ0
        q = cut(lg, b0, m1e, m2)
        prem.append(contract(lg, q, Sequent((e,) + bI + bJ, (f,))))
    else:
        m1 = _get(d1, bI, (b0,))
        m2 = _get(d2, (b0,) + bJ, (f,))
        prem.append(cut(lg, b0, m1, m2))
    return _assemble(lg, d1.rule, end, prem)


def _ckcem(lg, a, d1, d2, end):
    """CKCEM(ID) on both sides; every conditional of both nodes is principal."""
    idr = d1.rule == "RuleCKCEMID"
    i1 = _ckcem_match(d1)
    i2 = _ckcem_match(d2)
    x0, y0 = i1.principal[0], i2.principal[0]   # designated conditionals
    a0, e = x0.a, y0.a
    g, h = a.a, a.b
    # e ⇔ g from d2 and g ⇔ a0 from d1, so e ⇔ a0 by cut
    if g is e:
        p_eg = p_ge = None
    else:
        p_eg, p_ge = _get(d2, (e,), (g,)), _get(d2, (g,), (e,))
    if g is a0:
        p_ga0 = p_a0g = None
    else:
        p_ga0, p_a0g = _get(d1, (g,), (a0,)), _get(d1, (a0,), (g,))

    def e_to_a0():
        if e is a0:
            return None
        left = p_eg if p_ga0 is None else (p_ga0 if p_eg is None else cut(lg, g, p_eg, p_ga0))
        return left

    def a0_to_e():
        if e is a0:
            return None
        return p_ge if p_a0g is None else (p_a0g if p_ge is None else cut(lg, g, p_a0g, p_ge))

    p_ea0, p_a0e = e_to_a0(), a0_to_e()
    if p_ea0 is None:
        p_ea0 = p_a0e = prove(lg, Sequent((e,), (e,)))
    prem = []
    side1 = d1.sequent.ante + _minus1(d1.sequent.succ, a)
    for c in side1:
        if c is x0:
            prem += [p_ea0, p_a0e]
            continue
        prem.append(_chain(lg, e, a0, c.a, p_ea0, _get(d1, (a0,), (c.a,))))
        prem.append(_chain(lg, c.a, a0, e, _get(d1, (c.a,), (a0,)), p_a0e))
    side2 = _minus1(d2.sequent.ante, a) + _minus1(d2.sequent.succ, y0)
    for c in side2:
        prem += [_get(d2, (e,), (c.a,)), _get(d2, (c.a,), (e,))]
    m1 = d1.premises[-1]          # [φ0,] ψ_I1 ⇒ ψ0, ψ_J1
    m2 = d2.premises[-1]          # [e,] h, ψ_I2 ⇒ f, ψ_J2
    if idr and e is not a0:
        m1 = cut(lg, a0, p_ea0, m1)   # e, ψ_I1 ⇒ ψ0, ψ_J1
    q = cut(lg, h, m1, m2)
    target = C.inst_CKCEM(end, y0, idr).premises[-1]
    prem.append(contract(lg, q, target))
    return _assemble(lg, d1.rule, end, prem)


def _ckcem_match(pf):
    prem = tuple(p.sequent for p in pf.premises)
    flag = pf.rule == "RuleCKCEMID"
    for c0 in C._distinct(pf.sequent.succ):
        inst = C.inst_CKCEM(pf.sequent, c0, flag)
        if inst.premises == prem:
            return inst
    raise AssertionError("bad CKCEM node")

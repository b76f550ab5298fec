"""Rule tables and backward rule instances for every calculus.

Each logic id names one calculus: G3cp (the propositional core), optionally
the weakening rules Lw/Rw, plus its modal or conditional rules.  The
functions here are pure; `backward_instances` lists every instance whose
conclusion is a given sequent, with premises in a fixed canonical order.
The prover builds its proofs from the same instance constructors, so a
proof node is valid exactly when its (rule, premises) pair shows up here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .sequent import Sequent
from .syntax import AND, BOT_F, BOX, COND, IMP, OR, VAR, Language

__all__ = [
    "RULES", "LOGICS", "ULIP_LOGICS", "UIP_ONLY_LOGICS", "EXTRA_LOGICS",
    "Logic", "RuleInstance", "calculus_for", "logic", "axiom_match",
    "backward_instances", "rule_registry", "G3CP", "PROP_RULES",
]

PROP_RULES = ("LAnd", "RAnd", "LOr", "ROr", "LImp", "RImp")
G3CP = ("Ax", "LBot") + PROP_RULES
WEAK = ("Lw", "Rw")
MODAL_RULES = ("RuleE", "RuleM", "RuleMC", "RuleN", "RuleNW", "RuleEC")
COND_RULES = ("RuleCE", "RuleCM", "RuleCMC", "RuleCN", "RuleCKID",
              "RuleCKCEM", "RuleCKCEMID", "RuleCEC", "RuleCNW")
RULES = G3CP + WEAK + MODAL_RULES + COND_RULES + ("Cut",)


@dataclass(frozen=True)
class Logic:
    name: str
    language: Language
    rules: frozenset
    weakening: bool

    def has(self, rule):
        return rule in self.rules


def _mk(name, lang, extra, weak=True):
    rules = set(G3CP) | set(extra)
    if weak:
        rules |= set(WEAK)
    return Logic(name, lang, frozenset(rules), weak)


_M, _C = Language.MODAL, Language.CONDITIONAL

LOGICS = {l.name: l for l in [
    _mk("E", _M, ["RuleE"]),
    _mk("M", _M, ["RuleM"]),
    _mk("EN", _M, ["RuleE", "RuleN"]),
    _mk("MN", _M, ["RuleM", "RuleN"]),
    _mk("MC", _M, ["RuleMC"]),
    _mk("K", _M, ["RuleMC", "RuleN"]),
    _mk("EC", _M, ["RuleEC"], weak=False),
    _mk("ECN", _M, ["RuleEC", "RuleNW"], weak=False),
    _mk("CE", _C, ["RuleCE"]),
    _mk("CM", _C, ["RuleCM"]),
    _mk("CEN", _C, ["RuleCE", "RuleCN"]),
    _mk("CMN", _C, ["RuleCM", "RuleCN"]),
    _mk("CMC", _C, ["RuleCMC"]),
    _mk("CK", _C, ["RuleCMC", "RuleCN"]),
    _mk("CKID", _C, ["RuleCKID"]),
    _mk("CKCEM", _C, ["RuleCKCEM"]),
    _mk("CKCEMID", _C, ["RuleCKCEMID"]),
    # conditional counterparts of EC and ECN, used by the translation bridge
    _mk("CEC", _C, ["RuleCEC"], weak=False),
    _mk("CECN", _C, ["RuleCEC", "RuleCNW"], weak=False),
]}

ULIP_LOGICS = ("E", "M", "EN", "MN", "MC", "K", "CE", "CM", "CEN", "CMN",
               "CMC", "CK", "CKID")
UIP_ONLY_LOGICS = ("CKCEM", "CKCEMID")
EXTRA_LOGICS = ("CEC", "CECN")
MAIN_LOGICS = ULIP_LOGICS[:6] + ("EC", "ECN") + ULIP_LOGICS[6:] + UIP_ONLY_LOGICS


def logic(name):
    if isinstance(name, Logic):
        return name
    try:
        return LOGICS[name]
    except KeyError:
        raise ValueError(f"unknown logic {name!r}") from None


def calculus_for(name):
    return logic(name).rules


@dataclass(frozen=True)
class RuleInstance:
    rule: str
    conclusion: Sequent
    premises: tuple
    principal: tuple = field(default=(), compare=False)


def axiom_match(s):
    """Ax if an atom occurs on both sides, LBot if ⊥ is on the left."""
    succ_atoms = {f for f in s.succ if f.tag == VAR}
    if any(f in succ_atoms for f in s.ante):
        return "Ax"
    if BOT_F in s.ante:
        return "LBot"
    return None


def _distinct(fs):
    seen = []
    for f in fs:
        if f not in seen:
            seen.append(f)
    return seen


def _without(fs, f):
    i = fs.index(f)
    return fs[:i] + fs[i + 1:]


def _sub_multisets(fs, nonempty=True):
    """Every sub-multiset of the sorted tuple fs, smallest first."""
    groups = [(f, fs.count(f)) for f in _distinct(fs)]
    out = []
    for counts in itertools.product(*[range(c + 1) for _, c in groups]):
        sub = tuple(f for (f, _), c in zip(groups, counts) for _ in range(c))
        if sub or not nonempty:
            out.append(sub)
    out.sort(key=lambda t: (len(t), [f.order for f in t]))
    return out


def _minus(fs, sub):
    rest = list(fs)
    for f in sub:
        rest.remove(f)
    return tuple(rest)


def _equiv(a, b):
    return [Sequent((a,), (b,)), Sequent((b,), (a,))]


# ------------------------------------------------------ propositional rules

def prop_instance(s, side, f):
    """The instance of the propositional rule for formula f on a side."""
    if side == "L":
        g = _without(s.ante, f)
        d = s.succ
        if f.tag == AND:
            return RuleInstance("LAnd", s, (Sequent(g + (f.a, f.b), d),), (f,))
        if f.tag == OR:
            return RuleInstance("LOr", s, (Sequent(g + (f.a,), d), Sequent(g + (f.b,), d)), (f,))
        if f.tag == IMP:
            return RuleInstance("LImp", s, (Sequent(g, d + (f.a,)), Sequent(g + (f.b,), d)), (f,))
    else:
        g = s.ante
        d = _without(s.succ, f)
        if f.tag == AND:
            return RuleInstance("RAnd", s, (Sequent(g, d + (f.a,)), Sequent(g, d + (f.b,))), (f,))
        if f.tag == OR:
            return RuleInstance("ROr", s, (Sequent(g, d + (f.a, f.b)),), (f,))
        if f.tag == IMP:
            return RuleInstance("RImp", s, (Sequent(g + (f.a,), d + (f.b,)),), (f,))
    return None


def prop_instances(s):
    one, two = [], []
    for side, fs in (("L", s.ante), ("R", s.succ)):
        for f in _distinct(fs):
            inst = prop_instance(s, side, f)
            if inst is not None:
                (one if len(inst.premises) == 1 else two).append(inst)
    return one, two


def weakening_instances(s):
    out = []
    for f in _distinct(s.ante):
        out.append(RuleInstance("Lw", s, (s.remove_ante(s.ante.index(f)),), (f,)))
    for f in _distinct(s.succ):
        out.append(RuleInstance("Rw", s, (s.remove_succ(s.succ.index(f)),), (f,)))
    return out


# -------------------------------------------------- modal rule constructors

def inst_E(s):
    (a,), (b,) = s.ante, s.succ
    return RuleInstance("RuleE", s, (Sequent((a.a,), (b.a,)), Sequent((b.a,), (a.a,))), (a, b))


def inst_M(s):
    (a,), (b,) = s.ante, s.succ
    return RuleInstance("RuleM", s, (Sequent((a.a,), (b.a,)),), (a, b))


def inst_MC(s):
    (b,) = s.succ
    return RuleInstance("RuleMC", s, (Sequent(tuple(f.a for f in s.ante), (b.a,)),), s.ante + s.succ)


def inst_N(s):
    (b,) = s.succ
    return RuleInstance("RuleN", s, (Sequent((), (b.a,)),), (b,))


def inst_EC(s, boxes, target):
    """Σ, □a1..□an ⇒ □b, Λ from a1..an ⇒ b and b ⇒ ai for each i."""
    prem = [Sequent(tuple(f.a for f in boxes), (target.a,))]
    prem += [Sequent((target.a,), (f.a,)) for f in boxes]
    return RuleInstance("RuleEC", s, tuple(prem), tuple(boxes) + (target,))


def inst_NW(s, target):
    return RuleInstance("RuleNW", s, (Sequent((), (target.a,)),), (target,))


# -------------------------------------------- conditional rule constructors

def inst_CE(s):
    (c1,), (c0,) = s.ante, s.succ
    prem = _equiv(c0.a, c1.a) + [Sequent((c0.b,), (c1.b,)), Sequent((c1.b,), (c0.b,))]
    return RuleInstance("RuleCE", s, tuple(prem), (c1, c0))


def inst_CM(s):
    (c1,), (c0,) = s.ante, s.succ
    prem = _equiv(c0.a, c1.a) + [Sequent((c1.b,), (c0.b,))]
    return RuleInstance("RuleCM", s, tuple(prem), (c1, c0))


def _cond_equivs(a0, conds):
    out = []
    for c in conds:
        out += _equiv(a0, c.a)
    return out


def inst_CMC(s):
    (c0,) = s.succ
    prem = _cond_equivs(c0.a, s.ante) + [Sequent(tuple(c.b for c in s.ante), (c0.b,))]
    return RuleInstance("RuleCMC", s, tuple(prem), s.ante + s.succ)


def inst_CN(s):
    (c0,) = s.succ
    return RuleInstance("RuleCN", s, (Sequent((), (c0.b,)),), (c0,))


def inst_CKID(s):
    (c0,) = s.succ
    prem = _cond_equivs(c0.a, s.ante) + [Sequent((c0.a,) + tuple(c.b for c in s.ante), (c0.b,))]
    return RuleInstance("RuleCKID", s, tuple(prem), s.ante + s.succ)


def inst_CKCEM(s, c0, with_id=False):
    """{φi▷ψi}_I ⇒ c0, {φj▷ψj}_J from the equivalences and the ψ premise."""
    rest = _without(s.succ, c0)
    prem = _cond_equivs(c0.a, s.ante + rest)
    left = tuple(c.b for c in s.ante)
    if with_id:
        left = (c0.a,) + left
    prem.append(Sequent(left, (c0.b,) + tuple(c.b for c in rest)))
    return RuleInstance("RuleCKCEMID" if with_id else "RuleCKCEM", s, tuple(prem), (c0,) + s.ante + rest)


def inst_CEC(s, conds, target):
    """Σ, {φi▷ψi} ⇒ φ0▷ψ0, Λ from φ0 ⇔ φi, ψ1..ψn ⇒ ψ0 and ψ0 ⇒ ψi."""
    prem = _cond_equivs(target.a, conds)
    prem.append(Sequent(tuple(c.b for c in conds), (target.b,)))
    prem += [Sequent((target.b,), (c.b,)) for c in conds]
    return RuleInstance("RuleCEC", s, tuple(prem), tuple(conds) + (target,))


def inst_CNW(s, target):
    return RuleInstance("RuleCNW", s, (Sequent((), (target.b,)),), (target,))


def _all(fs, tag):
    return all(f.tag == tag for f in fs)


def modal_instances(lg, s):
    """Every modal or conditional rule instance with conclusion s."""
    out = []
    r = lg.rules
    a, d = s.ante, s.succ
    if "RuleE" in r and len(a) == 1 and len(d) == 1 and _all(a + d, BOX):
        out.append(inst_E(s))
    if "RuleM" in r and len(a) == 1 and len(d) == 1 and _all(a + d, BOX):
        out.append(inst_M(s))
    if "RuleMC" in r and len(a) >= 1 and len(d) == 1 and _all(a + d, BOX):
        out.append(inst_MC(s))
    if "RuleN" in r and not a and len(d) == 1 and d[0].tag == BOX:
        out.append(inst_N(s))
    if "RuleEC" in r:
        boxes_l = tuple(f for f in a if f.tag == BOX)
        for t in _distinct(f for f in d if f.tag == BOX):
            for sub in _sub_multisets(boxes_l):
                out.append(inst_EC(s, sub, t))
    if "RuleNW" in r:
        for t in _distinct(f for f in d if f.tag == BOX):
            out.append(inst_NW(s, t))
    if "RuleCE" in r and len(a) == 1 and len(d) == 1 and _all(a + d, COND):
        out.append(inst_CE(s))
    if "RuleCM" in r and len(a) == 1 and len(d) == 1 and _all(a + d, COND):
        out.append(inst_CM(s))
    if "RuleCMC" in r and len(a) >= 1 and len(d) == 1 and _all(a + d, COND):
        out.append(inst_CMC(s))
    if "RuleCN" in r and not a and len(d) == 1 and d[0].tag == COND:
        out.append(inst_CN(s))
    if "RuleCKID" in r and len(d) == 1 and _all(a + d, COND):
        out.append(inst_CKID(s))
    for name, flag in (("RuleCKCEM", False), ("RuleCKCEMID", True)):
        if name in r and d and _all(a + d, COND):
            seen = set()
            for c0 in _distinct(d):
                inst = inst_CKCEM(s, c0, flag)
                if inst.premises not in seen:
                    seen.add(inst.premises)
                    out.append(inst)
    if "RuleCEC" in r:
        conds_l = tuple(f for f in a if f.tag == COND)
        for t in _distinct(f for f in d if f.tag == COND):
            for sub in _sub_multisets(conds_l):
                out.append(inst_CEC(s, sub, t))
    if "RuleCNW" in r:
        for t in _distinct(f for f in d if f.tag == COND):
            out.append(inst_CNW(s, t))
    return out


def backward_instances(name, s):
    """All rule instances of the logic whose conclusion is s.

    Order: axioms, one-premise propositional rules, branching propositional
    rules, modal/conditional rules, then single-formula weakenings.
    """
    lg = logic(name)
    out = []
    succ_atoms = _distinct(f for f in s.succ if f.tag == VAR)
    for p in succ_atoms:
        if p in s.ante:
            out.append(RuleInstance("Ax", s, (), (p,)))
    if BOT_F in s.ante:
        out.append(RuleInstance("LBot", s, (), (BOT_F,)))
    one, two = prop_instances(s)
    out += one + two
    out += modal_instances(lg, s)
    if lg.weakening:
        out += weakening_instances(s)
    return out


def rule_registry():
    """Machine-readable description of every rule, for documentation."""
    return {
        "Ax": {"premises": [], "conclusion": "G, p => p, D", "side": "p atomic"},
        "LBot": {"premises": [], "conclusion": "G, false => D"},
        "LAnd": {"premises": ["G, A, B => D"], "conclusion": "G, A & B => D"},
        "RAnd": {"premises": ["G => A, D", "G => B, D"], "conclusion": "G => A & B, D"},
        "LOr": {"premises": ["G, A => D", "G, B => D"], "conclusion": "G, A | B => D"},
        "ROr": {"premises": ["G => A, B, D"], "conclusion": "G => A | B, D"},
        "LImp": {"premises": ["G => A, D", "G, B => D"], "conclusion": "G, A -> B => D"},
        "RImp": {"premises": ["G, A => B, D"], "conclusion": "G => A -> B, D"},
        "Lw": {"premises": ["G => D"], "conclusion": "G, A => D"},
        "Rw": {"premises": ["G => D"], "conclusion": "G => A, D"},
        "RuleE": {"premises": ["a => b", "b => a"], "conclusion": "[]a => []b"},
        "RuleM": {"premises": ["a => b"], "conclusion": "[]a => []b"},
        "RuleMC": {"premises": ["a1..an => b"], "conclusion": "[]a1..[]an => []b", "side": "n >= 1"},
        "RuleN": {"premises": ["=> b"], "conclusion": "=> []b"},
        "RuleNW": {"premises": ["=> b"], "conclusion": "S => []b, L"},
        "RuleEC": {"premises": ["a1..an => b", "b => ai (each i)"],
                   "conclusion": "S, []a1..[]an => []b, L", "side": "n >= 1"},
        "RuleCE": {"premises": ["a0 => a1", "a1 => a0", "b0 => b1", "b1 => b0"],
                   "conclusion": "a1 > b1 => a0 > b0"},
        "RuleCM": {"premises": ["a0 => a1", "a1 => a0", "b1 => b0"],
                   "conclusion": "a1 > b1 => a0 > b0"},
        "RuleCMC": {"premises": ["a0 => ai", "ai => a0 (each i)", "b1..bn => b0"],
                    "conclusion": "a1 > b1..an > bn => a0 > b0", "side": "n >= 1"},
        "RuleCN": {"premises": ["=> b0"], "conclusion": "=> a0 > b0"},
        "RuleCKID": {"premises": ["a0 => ai", "ai => a0 (each i)", "a0, b1..bn => b0"],
                     "conclusion": "a1 > b1..an > bn => a0 > b0", "side": "n >= 0"},
        "RuleCKCEM": {"premises": ["a0 => ar", "ar => a0 (r in I, J)", "b_I => b0, b_J"],
                      "conclusion": "{ai > bi}_I => a0 > b0, {aj > bj}_J"},
        "RuleCKCEMID": {"premises": ["a0 => ar", "ar => a0 (r in I, J)", "a0, b_I => b0, b_J"],
                        "conclusion": "{ai > bi}_I => a0 > b0, {aj > bj}_J"},
        "RuleCEC": {"premises": ["a0 => ai", "ai => a0 (each i)", "b1..bn => b0", "b0 => bi (each i)"],
                    "conclusion": "S, a1 > b1..an > bn => a0 > b0, L", "side": "n >= 1"},
        "RuleCNW": {"premises": ["=> b0"], "conclusion": "S => a0 > b0, L"},
        "Cut": {"premises": ["G1 => A, D1", "A, G2 => D2"], "conclusion": "G1, G2 => D1, D2"},
    }

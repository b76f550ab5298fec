"""Rule tables and backward rule instances."""

import pytest

from nonnormal.calculus import (G3CP, LOGICS, MAIN_LOGICS, axiom_match, backward_instances,
                                calculus_for, logic, rule_registry)
from nonnormal.gen import make_rng, random_sequent
from nonnormal.sequent import Sequent, compose, parse_sequent, seq_signed_vars, seq_weight
from nonnormal.syntax import Language

C = Language.CONDITIONAL
WEAK = {"Lw", "Rw"}


def seq(text, lang=None):
    return parse_sequent(text, lang) if lang else parse_sequent(text)


def table(insts):
    return sorted((i.rule, tuple(str(p) for p in i.premises)) for i in insts)


# ---------------------------------------------------------------- rule sets

@pytest.mark.parametrize("name, extra", [
    ("M", WEAK | {"RuleM"}),
    ("K", WEAK | {"RuleMC", "RuleN"}),
    ("EC", {"RuleEC"}),
    ("ECN", {"RuleEC", "RuleNW"}),
    ("CE", WEAK | {"RuleCE"}),
    ("CK", WEAK | {"RuleCMC", "RuleCN"}),
    ("CKID", WEAK | {"RuleCKID"}),
    ("CKCEM", WEAK | {"RuleCKCEM"}),
    ("CKCEMID", WEAK | {"RuleCKCEMID"}),
])
def test_rule_sets(name, extra):
    assert calculus_for(name) == set(G3CP) | extra


def test_every_main_logic_is_defined():
    assert len(MAIN_LOGICS) == 17
    for name in MAIN_LOGICS:
        assert name in LOGICS
        assert "Cut" not in calculus_for(name)


def test_unknown_logic():
    with pytest.raises(ValueError):
        logic("S5")


def test_registry_covers_every_rule():
    reg = rule_registry()
    for lg in LOGICS.values():
        assert lg.rules <= set(reg)


# ---------------------------------------------------------------- axioms

def test_axiom_match():
    assert axiom_match(seq("p, q => p")) == "Ax"
    assert axiom_match(seq("false =>")) == "LBot"
    assert axiom_match(seq("p & q => p & q")) is None
    assert axiom_match(seq("[]p => []p")) is None


# ---------------------------------------------------------------- instances

def test_k_box_reflexivity():
    got = table(backward_instances("K", seq("[]p => []p")))
    assert got == sorted([("RuleMC", ("p => p",)), ("Lw", ("=> []p",)), ("Rw", ("[]p =>",))])


def test_ckcem_two_instances():
    s = seq("=> p > r, q > ~r", C)
    insts = [i for i in backward_instances("CKCEM", s) if i.rule == "RuleCKCEM"]
    assert len(insts) == 2
    for i in insts:
        # equivalence of antecedents, then the consequent premise
        assert set(map(str, i.premises[:2])) == {"p => q", "q => p"}
        assert str(i.premises[2]) == "=> r, ~r"


def test_ecn_context():
    s = seq("s, []a => []b, t")
    got = table(backward_instances("ECN", s))
    assert got == sorted([("RuleEC", ("a => b", "b => a")), ("RuleNW", ("=> b",))])


def test_ec_selects_every_nonempty_sub_multiset():
    s = seq("[]a, []b => []c")
    ec = [i for i in backward_instances("EC", s) if i.rule == "RuleEC"]
    # {a}, {b}, {a, b}
    assert len(ec) == 3
    assert not any(i.rule in WEAK for i in backward_instances("EC", s))


def test_mc_needs_a_boxed_antecedent():
    assert not any(i.rule == "RuleMC" for i in backward_instances("K", seq("=> []p")))
    assert [i.rule for i in backward_instances("K", seq("=> []p"))] == ["RuleN", "Rw"]


def test_modal_rules_need_exact_shape():
    assert not any(i.rule == "RuleM" for i in backward_instances("M", seq("q, []p => []p")))


def test_enumeration_is_duplicate_free():
    s = seq("[]p, []p => []p")
    insts = backward_instances("K", s)
    keys = [(i.rule, i.premises) for i in insts]
    assert len(keys) == len(set(keys))


# ---------------------------------------------------------------- properties

def _drop(fs, gs):
    out = list(fs)
    for g in gs:
        out.remove(g)
    return tuple(out)


def _forward(inst):
    """Rebuild the conclusion of a propositional instance from its premises."""
    r, ps, (f,) = inst.rule, inst.premises, inst.principal
    p0 = ps[0]
    if r == "LAnd":
        return Sequent(_drop(p0.ante, (f.a, f.b)) + (f,), p0.succ)
    if r == "ROr":
        return Sequent(p0.ante, _drop(p0.succ, (f.a, f.b)) + (f,))
    if r == "RImp":
        return Sequent(_drop(p0.ante, (f.a,)), _drop(p0.succ, (f.b,)) + (f,))
    if r == "RAnd":
        return Sequent(p0.ante, _drop(p0.succ, (f.a,)) + (f,))
    if r == "LOr":
        return Sequent(_drop(p0.ante, (f.a,)) + (f,), p0.succ)
    if r == "LImp":
        p1 = ps[1]
        return Sequent(_drop(p1.ante, (f.b,)) + (f,), p1.succ)
    return None


def test_weight_decrease_and_variable_preservation():
    rng = make_rng(0, "calc")
    n = 0
    while n < 10000:
        name = rng.choice(MAIN_LOGICS)
        lg = logic(name)
        s = random_sequent(rng, 6, lang=lg.language)
        pos, neg = seq_signed_vars(s)
        for inst in backward_instances(name, s):
            n += 1
            assert inst.conclusion == s
            for prem in inst.premises:
                if inst.rule in WEAK:
                    # removing a weight-0 formula keeps the weight; the size drops
                    assert seq_weight(prem) <= seq_weight(s)
                    assert len(prem.formulas) == len(s.formulas) - 1
                else:
                    assert seq_weight(prem) < seq_weight(s), (name, s, inst)
                pp, pn = seq_signed_vars(prem)
                if lg.language is Language.MODAL or inst.rule not in (
                        "RuleCE", "RuleCM", "RuleCMC", "RuleCKID", "RuleCKCEM",
                        "RuleCKCEMID", "RuleCEC"):
                    # the equivalence premises of ▷ rules move antecedents to both sides
                    assert pp <= pos | neg and pn <= pos | neg
                if inst.rule in G3CP or inst.rule in WEAK:
                    assert pp <= pos and pn <= neg, (name, s, inst)


def test_forward_replay_of_propositional_instances():
    rng = make_rng(1, "replay")
    done = 0
    while done < 2000:
        s = random_sequent(rng, 5)
        for inst in backward_instances("K", s):
            if inst.rule in ("LAnd", "ROr", "RImp", "RAnd", "LOr", "LImp"):
                assert _forward(inst) == s, (s, inst)
                done += 1

"""The bounded check of (var), (i) and (ii)."""

import json

import pytest

from nonnormal.calculus import logic
from nonnormal.gen import make_rng, random_formula, random_sequent
from nonnormal.interpolation import forall_sequent
from nonnormal.prover import check_proof, proof_from_dict
from nonnormal.sequent import Sequent, parse_sequent
from nonnormal.syntax import Bot, Language, Polarity, Top, Var, parse_formula
from nonnormal.verify import formula_key, verify_brute, verify_interpolant

POS, NEG = Polarity.POS, Polarity.NEG


def seq(text):
    return parse_sequent(text)


def test_bot_for_q_violates_ii():
    rep = verify_interpolant("K", POS, "p", seq("=> q"), Bot())
    assert not rep.ok
    tests = [v["test"] for v in rep.violations if v["condition"] == "ii"]
    assert "q =>" in tests
    assert verify_brute("K", POS, "p", seq("=> q"), Bot(), bound=1)


def test_top_for_unprovable_violates_i():
    rep = verify_interpolant("K", POS, "p", seq("=> q"), Top())
    assert [v["condition"] for v in rep.violations] == ["i"]
    assert rep.proof_of_i is None


def test_var_violation():
    rep = verify_interpolant("K", POS, "p", seq("=> p"), Var("p"))
    assert rep.violations[0]["condition"] == "var"
    assert not rep.var_check["free"]
    # a variable not in S leaks
    rep = verify_interpolant("K", NEG, "p", seq("=> p"), parse_formula("p | r"))
    assert not rep.var_check["posSubset"]


def test_report_format():
    s = seq("[](p & q) => []q, p")
    cand = forall_sequent("K", POS, "p", s)
    rep = verify_interpolant("K", POS, "p", s, cand)
    assert rep.ok and rep.counterexamples == []
    d = json.loads(json.dumps(rep.to_dict()))
    assert set(d) == {"query", "interpolant", "varCheck", "proofOfI", "iiBound", "violations"}
    assert d["iiBound"]["weight"] == 3 and d["iiBound"]["maxFormulas"] == 2
    assert d["iiBound"]["alphabet"] == ["p", "q"]
    pf = proof_from_dict(d["proofOfI"])
    assert pf.sequent == s.add(ante=(cand,)) and check_proof("K", pf)


def test_alphabet_limit():
    atoms = "abcdefg"
    s = Sequent((), tuple(Var(a) for a in atoms))
    with pytest.raises(ValueError):
        verify_interpolant("K", POS, "p", s, Bot())


def test_congruence_keys():
    f = parse_formula
    assert formula_key(f("[](p & q)")) == formula_key(f("[](q & p)"))
    assert formula_key(f("[](p | ~p)")) == formula_key(f("[]true"))
    assert formula_key(f("[]p & (q | ~q)")) == formula_key(f("[]p"))
    assert formula_key(f("[]p")) != formula_key(f("[]q"))
    assert formula_key(f("[](p -> q)")) != formula_key(f("[](q -> p)"))


@pytest.mark.parametrize("name", ["E", "K", "CM", "CKID", "CKCEM"])
def test_leaf_check_agrees_with_brute_force(name):
    lg = logic(name)
    pols = (None,) if name == "CKCEM" else (POS, NEG)
    rng = make_rng(0, "brute", name)
    agree = 0
    for _ in range(12):
        s = random_sequent(rng, 3, ("p", "q"), lg.language)
        for pol in pols:
            good = forall_sequent(name, pol, "p", s)
            # the interpolant and a few corruptions of it
            for cand in (good, Bot(), random_formula(rng, 1, ("q",), lg.language)):
                rep = verify_interpolant(name, pol, "p", s, cand, bound=2, alphabet=("p", "q"),
                                         with_proof=False)
                leaf_bad = any(v["condition"] == "ii" for v in rep.violations)
                brute_bad = bool(verify_brute(name, pol, "p", s, cand, bound=2))
                assert leaf_bad == brute_bad, (str(s), pol, str(cand))
                agree += 1
    assert agree >= 36


def test_conditional_language():
    s = parse_sequent("p > q => r > q", Language.CONDITIONAL)
    cand = forall_sequent("CM", POS, "p", s)
    assert verify_interpolant("CM", POS, "p", s, cand).ok

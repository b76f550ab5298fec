"""Cut elimination."""

import pytest

from nonnormal.calculus import LOGICS, logic
from nonnormal.cutelim import CutError, eliminate_cut
from nonnormal.gen import make_rng, random_formula, random_sequent
from nonnormal.prover import Proof, check_proof, prove, provable
from nonnormal.sequent import Sequent, parse_sequent
from nonnormal.syntax import Language, Var, parse_formula

C = Language.CONDITIONAL


def seq(text, lang=None):
    return parse_sequent(text, lang) if lang else parse_sequent(text)


def cut_of(name, a, left, right):
    """A Cut node on a from search proofs of the two premises."""
    d1, d2 = prove(name, left), prove(name, right)
    assert d1 is not None and d2 is not None
    end = Sequent(left.ante + tuple(_drop(right.ante, a)), tuple(_drop(left.succ, a)) + right.succ)
    return Proof("Cut", end, (d1, d2))


def _drop(fs, a):
    out = list(fs)
    out.remove(a)
    return out


def assert_clean(name, pf, out):
    assert out.sequent == pf.sequent
    assert not out.has_cut()
    assert check_proof(name, out)


def test_axiom_case():
    p = Var("p")
    pf = cut_of("K", p, seq("q, p => p, r"), seq("p, s => p"))
    out = eliminate_cut("K", pf)
    assert_clean("K", pf, out)
    assert out.sequent == seq("q, p, s => p, r")


def test_ce_against_ce():
    a = parse_formula("(q & p) > r", C)
    pf = cut_of("CE", a, seq("(p & q) > r => (q & p) > r", C),
                seq("(q & p) > r => (p & q) > (r | r)", C))
    out = eliminate_cut("CE", pf)
    assert_clean("CE", pf, out)
    assert out.rule == "RuleCE"


def test_cmc_composition():
    a = parse_formula("p > (q & r)", C)
    pf = cut_of("CMC", a, seq("p > q, p > r => p > (q & r)", C),
                seq("p > (q & r), p > s => p > ((q & r) & s)", C))
    out = eliminate_cut("CMC", pf)
    assert_clean("CMC", pf, out)
    assert provable("CMC", out.sequent)


def test_ec_principal_cut():
    a = parse_formula("[](p & q)")
    pf = cut_of("EC", a, seq("[]p, []q => [](p & q)"), seq("[](p & q), [](~q & r) => []false"))
    out = eliminate_cut("EC", pf)
    assert_clean("EC", pf, out)


def test_nested_cuts():
    a = parse_formula("[](p & q)")
    inner = cut_of("K", a, seq("[]p, []q => [](p & q)"), seq("[](p & q) => []p"))
    d3 = prove("K", seq("[]p, [](p -> r) => []r"))
    end = Sequent(inner.sequent.ante + (parse_formula("[](p -> r)"),), (parse_formula("[]r"),))
    pf = Proof("Cut", end, (inner, d3))
    assert check_proof("K", pf, allow_cut=True)
    out = eliminate_cut("K", pf)
    assert_clean("K", pf, out)


@pytest.mark.parametrize("name", sorted(LOGICS))
def test_random_cuts(name):
    lg = logic(name)
    rng = make_rng(11, "cut", name)
    done = 0
    while done < 40:
        w = rng.randint(0, 3)
        a = random_formula(rng, w, lang=lg.language)
        s1 = random_sequent(rng, 5 - w, lang=lg.language, max_formulas=2)
        s2 = random_sequent(rng, 5 - w, lang=lg.language, max_formulas=2)
        left, right = Sequent(s1.ante, s1.succ + (a,)), Sequent(s2.ante + (a,), s2.succ)
        if not (provable(name, left) and provable(name, right)):
            continue
        done += 1
        pf = cut_of(name, a, left, right)
        assert_clean(name, pf, eliminate_cut(name, pf))


def test_cut_free_input_is_returned_unchanged():
    pf = prove("K", seq("[]p, [](p -> q) => []q"))
    assert eliminate_cut("K", pf) is pf


def test_malformed_input():
    good = prove("K", seq("p => p"))
    # wrong end sequent for a cut
    with pytest.raises(CutError):
        eliminate_cut("K", Proof("Cut", seq("p => q"), (good, good)))
    # a non-rule node
    with pytest.raises(CutError):
        eliminate_cut("K", Proof("RuleM", seq("[]p => []p"), (good,)))
    # a node of the wrong logic
    pf = prove("K", seq("=> []true"))
    with pytest.raises(CutError):
        eliminate_cut("MC", pf)

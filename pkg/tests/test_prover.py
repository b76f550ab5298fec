"""Proof search, proof checking and the admissible rules."""

import itertools
import threading
from functools import lru_cache

import pytest

from nonnormal.calculus import LOGICS, MAIN_LOGICS, logic
from nonnormal.gen import make_rng, random_formula, random_sequent
from nonnormal.prover import (Proof, admissible_bot_elim, admissible_contraction,
                              check_proof, clear_caches, proof_from_dict, proof_to_dict,
                              proof_to_json, prove, provable)
from nonnormal.semantics import refutes
from nonnormal.sequent import Sequent, parse_sequent
from nonnormal.syntax import AND, BOT, BOX, COND, IMP, OR, VAR, Bot, Box, Language, Top

C = Language.CONDITIONAL


def seq(text, lang=None):
    return parse_sequent(text, lang) if lang else parse_sequent(text)


# ------------------------------------------------- independent naive oracle
#
# Set-based search written straight from the rule shapes: propositional rules
# are applied eagerly (they are invertible), contraction is built in, and at a
# leaf any sub-collection of the boxed or conditional formulas may be chosen,
# which stands in for weakening.

def _subsets(xs, nonempty):
    xs = sorted(xs, key=lambda f: f.order)
    for k in range(0 if not nonempty else 1, len(xs) + 1):
        yield from itertools.combinations(xs, k)


@lru_cache(maxsize=None)
def oracle(name, ante, succ):
    for f in sorted(ante, key=lambda f: f.order):
        if f.tag in (AND, OR, IMP):
            g = ante - {f}
            if f.tag == AND:
                return oracle(name, g | {f.a, f.b}, succ)
            if f.tag == OR:
                return oracle(name, g | {f.a}, succ) and oracle(name, g | {f.b}, succ)
            return oracle(name, g, succ | {f.a}) and oracle(name, g | {f.b}, succ)
    for f in sorted(succ, key=lambda f: f.order):
        if f.tag in (AND, OR, IMP):
            d = succ - {f}
            if f.tag == AND:
                return oracle(name, ante, d | {f.a}) and oracle(name, ante, d | {f.b})
            if f.tag == OR:
                return oracle(name, ante, d | {f.a, f.b})
            return oracle(name, ante | {f.a}, d | {f.b})
    if any(f.tag == BOT for f in ante):
        return True
    if any(f.tag == VAR and f in succ for f in ante):
        return True
    return _leaf(name, ante, succ)


def _d(name, a, b):
    return oracle(name, frozenset(a), frozenset(b))


def _eq(name, a, b):
    return _d(name, [a], [b]) and _d(name, [b], [a])


def _leaf(name, ante, succ):
    L = [f for f in ante if f.tag in (BOX, COND)]
    R = [f for f in succ if f.tag in (BOX, COND)]
    d = lambda a, b: _d(name, a, b)
    eq = lambda a, b: _eq(name, a, b)
    for b in R:
        if name in ("EN", "MN", "K", "ECN") and d([], [b.a]):
            return True
        if name in ("CEN", "CMN", "CK") and d([], [b.b]):
            return True
        for a in L:
            if name in ("E", "EN") and eq(a.a, b.a):
                return True
            if name in ("M", "MN") and d([a.a], [b.a]):
                return True
            if name in ("CE", "CEN") and eq(a.a, b.a) and eq(a.b, b.b):
                return True
            if name in ("CM", "CMN") and eq(a.a, b.a) and d([a.b], [b.b]):
                return True
        for xs in _subsets(L, nonempty=name in ("MC", "EC", "ECN", "CMC")):
            if name in ("MC", "K") and xs and d([x.a for x in xs], [b.a]):
                return True
            if name in ("EC", "ECN") and d([x.a for x in xs], [b.a]) \
                    and all(d([b.a], [x.a]) for x in xs):
                return True
            if name in ("CMC", "CK") and all(eq(x.a, b.a) for x in xs) \
                    and d([x.b for x in xs], [b.b]):
                return True
            if name == "CKID" and all(eq(x.a, b.a) for x in xs) \
                    and d([b.a] + [x.b for x in xs], [b.b]):
                return True
    if name in ("CKCEM", "CKCEMID"):
        for ys in _subsets(R, nonempty=True):
            a0 = ys[0].a
            for xs in _subsets(L, nonempty=False):
                if not all(eq(a0, c.a) for c in xs + ys):
                    continue
                extra = [a0] if name == "CKCEMID" else []
                if d(extra + [x.b for x in xs], [y.b for y in ys]):
                    return True
    return False


ORACLE_LOGICS = [n for n in MAIN_LOGICS]


@pytest.mark.parametrize("name", ORACLE_LOGICS)
def test_prover_agrees_with_naive_oracle(name):
    lg = logic(name)
    rng = make_rng(0, "oracle", name)
    yes = 0
    for _ in range(300):
        s = random_sequent(rng, 5, lang=lg.language)
        want = oracle(name, frozenset(s.ante), frozenset(s.succ))
        assert provable(name, s) == want, (name, str(s))
        yes += want
    assert 0 < yes < 300


# ------------------------------------------------- examples

def test_ec_example():
    pf = prove("EC", seq("[](p & q), [](~q & r) => []false"))
    assert pf.rule == "RuleEC"
    assert {str(p.sequent) for p in pf.premises} == {
        "p & q, ~q & r => false", "false => p & q", "false => ~q & r"}
    assert check_proof("EC", pf)


def test_ce_reflexivity():
    pf = prove("CE", seq("p > q => p > q", C))
    assert pf.rule == "RuleCE"
    assert len(pf.premises) == 4
    assert all(p.rule == "Ax" for p in pf.premises)


def test_k_does_not_prove_box_p():
    assert prove("K", seq("=> []p")) is None


@pytest.mark.parametrize("name, text, lang", [
    ("M", "=> [](p & q) -> []p & []q", None),
    ("MC", "=> []p & []q -> [](p & q)", None),
    ("EN", "=> []true", None),
    ("CKCEM", "=> (p > q) | (p > ~q)", C),
    ("CKID", "=> p > p", C),
    ("K", "[]p, [](p -> q) => []q", None),
])
def test_soundness_regressions(name, text, lang):
    pf = prove(name, seq(text, lang))
    assert pf is not None and check_proof(name, pf)


@pytest.mark.parametrize("name, text", [
    ("M", "=> []p & []q -> [](p & q)"),
    ("E", "=> []true"),
    ("EC", "=> [](p & q) -> []p & []q"),
])
def test_distinctness_regressions(name, text):
    assert prove(name, seq(text)) is None


# ------------------------------------------------- checker

def _top_proof():
    # ⇒ ⊤ from ⊥ ⇒ ⊥
    return Proof("RImp", Sequent((), (Top(),)), (Proof("LBot", Sequent((Bot(),), (Bot(),))),))


def test_rule_n_is_rejected_outside_its_logics():
    pf = Proof("RuleN", Sequent((), (Box(Top()),)), (_top_proof(),))
    assert check_proof("EN", pf)
    assert not check_proof("E", pf)


def test_mc_with_no_boxed_antecedent_is_rejected():
    pf = Proof("RuleMC", Sequent((), (Box(Top()),)), (_top_proof(),))
    assert not check_proof("K", pf)
    assert not check_proof("MC", pf)


def test_checker_rejects_cut_and_wrong_premises():
    good = prove("K", seq("[]p, [](p -> q) => []q"))
    assert check_proof("K", good)
    bad = Proof(good.rule, good.sequent, good.premises[:0])
    assert not check_proof("K", bad)
    assert not check_proof("E", good)
    assert not check_proof("S5", good)


def test_proof_shape():
    pf = prove("K", seq("p => p"))
    assert pf.rule == "Ax" and pf.height == 1 and pf.size == 1


@pytest.mark.parametrize("name", ["K", "CKCEMID", "ECN"])
def test_every_search_result_checks(name):
    lg = logic(name)
    rng = make_rng(3, "check", name)
    for _ in range(200):
        s = random_sequent(rng, 6, lang=lg.language)
        pf = prove(name, s)
        if pf is not None:
            assert pf.sequent == s and not pf.has_cut()
            assert check_proof(name, pf)


def test_serialization_round_trip():
    pf = prove("CK", seq("p > q, p > r => p > (q & r)", C))
    back = proof_from_dict(proof_to_dict(pf), C)
    assert proof_to_json(back) == proof_to_json(pf)
    assert check_proof("CK", back)


def test_search_is_deterministic():
    s = seq("[](p & q), [](~q & r) => []false, []p")
    first = proof_to_json(prove("EC", s))
    clear_caches()
    assert proof_to_json(prove("EC", s)) == first


def test_concurrent_search_agrees_with_sequential():
    rng = make_rng(4, "threads")
    todo = [random_sequent(rng, 6) for _ in range(60)]
    clear_caches()
    want = [provable("MC", s) for s in todo]
    clear_caches()
    got = [[None] * len(todo) for _ in range(4)]

    def work(k):
        for i, s in enumerate(todo):
            got[k][i] = provable("MC", s)
    threads = [threading.Thread(target=work, args=(k,)) for k in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(g == want for g in got)


# ------------------------------------------------- admissible rules

def test_contraction_examples():
    assert admissible_contraction("K", seq("p, p => p")) is not None
    pf = admissible_bot_elim("K", seq("=> false, p, ~p"))
    assert pf is not None and pf.sequent == seq("=> p, ~p")


@pytest.mark.parametrize("name", ["E", "K", "EC", "CMC", "CKCEM"])
def test_contraction_property(name):
    lg = logic(name)
    rng = make_rng(5, "contract", name)
    done = 0
    while done < 200:
        s = random_sequent(rng, 5, lang=lg.language)
        if not s.formulas or len(set(s.ante)) < len(s.ante) or len(set(s.succ)) < len(s.succ):
            continue
        f = rng.choice(s.ante + s.succ)
        dup = Sequent(s.ante + (f,), s.succ) if f in s.ante else Sequent(s.ante, s.succ + (f,))
        if not provable(name, dup):
            continue
        done += 1
        pf = admissible_contraction(name, dup)
        assert pf is not None and pf.sequent == s and check_proof(name, pf)


@pytest.mark.parametrize("name", MAIN_LOGICS)
def test_cut_is_admissible(name):
    lg = logic(name)
    rng = make_rng(6, "cutadm", name)
    done = 0
    while done < 60:
        phi = random_formula(rng, rng.randint(0, 3), lang=lg.language)
        s1 = random_sequent(rng, 3, lang=lg.language, max_formulas=2)
        s2 = random_sequent(rng, 3, lang=lg.language, max_formulas=2)
        if provable(name, Sequent(s1.ante, s1.succ + (phi,))) and \
                provable(name, Sequent(s2.ante + (phi,), s2.succ)):
            done += 1
            assert provable(name, Sequent(s1.ante + s2.ante, s1.succ + s2.succ))


# ------------------------------------------------- semantic cross-check

@pytest.mark.parametrize("name", sorted(LOGICS))
def test_provable_sequents_are_never_refuted(name):
    lg = logic(name)
    rng = make_rng(7, "sem", name)
    for _ in range(300):
        s = random_sequent(rng, 6, lang=lg.language)
        if provable(name, s):
            assert not refutes(name, s, count=16), (name, str(s))


def test_propositional_sequents_match_truth_tables():
    rng = make_rng(8, "prop")
    atoms = ("p", "q", "r")
    for _ in range(500):
        s = random_sequent(rng, 6)
        if s.mods:
            continue
        rows = itertools.product([False, True], repeat=3)
        valid = all(_holds(s, dict(zip(atoms, row))) for row in rows)
        assert provable("E", s) == valid, str(s)


def _ev(f, v):
    t = f.tag
    if t == BOT:
        return False
    if t == VAR:
        return v[f.name]
    a, b = _ev(f.a, v), _ev(f.b, v)
    return {AND: a and b, OR: a or b, IMP: (not a) or b}[t]


def _holds(s, v):
    return not all(_ev(f, v) for f in s.ante) or any(_ev(f, v) for f in s.succ)

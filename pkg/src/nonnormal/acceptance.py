"""The acceptance suite behind `nonnormal selftest` and tests/test_acceptance.py.

Every check is split into independent cases (one per logic where that makes
sense) so that the CLI can run them in parallel.  Cases return plain data;
the report is assembled in a fixed order and contains no timings, so two
runs with the same seed print byte-identical reports.  Runtime budgets are
still enforced: a criterion with a budget fails when the CPU time of its
cases exceeds it.
"""

from __future__ import annotations

import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .calculus import LOGICS, MAIN_LOGICS, UIP_ONLY_LOGICS as UIP_ONLY, ULIP_LOGICS, logic
from .cutelim import _cut_end, eliminate_cut
from .gen import make_rng, random_formula, random_sequent
from .interpolation import (forall_sequent, lyndon_interpolant,
                            search_craig_interpolant, translate_s, translate_t)
from .prover import Proof, check_proof, implies, prove, provable
from .sequent import Sequent, parse_sequent
from .syntax import (Language, Polarity, conj, disj, parse_formula, print_formula)
from .verify import verify_interpolant

__all__ = ["CRITERIA", "run_selftest", "run_case", "cases"]

ATOMS = ("p", "q", "r")
M, C = Language.MODAL, Language.CONDITIONAL


@dataclass
class CaseResult:
    criterion: int
    label: str
    ok: bool
    detail: str
    seconds: float = 0.0


CRITERIA = {
    1: ("axiom regression matrix", 5.0),
    2: ("ULIP suite", 600.0),
    3: ("UIP suite for CKCEM and CKCEMID", None),
    4: ("cut admissibility", None),
    5: ("EC/ECN Craig interpolation failure", 60.0),
    6: ("CKCEM Lyndon interpolation failure", None),
    7: ("translation bridge", None),
    8: ("Lyndon interpolation", None),
}


# ------------------------------------------------------- 1. axioms

_MODAL_AXIOMS = {
    "M": "[](p & q) -> []p & []q",
    "C": "[]p & []q -> [](p & q)",
    "N": "[]true",
}
_COND_AXIOMS = {
    "CM": "(p > (q & r)) -> (p > q) & (p > r)",
    "CC": "(p > q) & (p > r) -> (p > (q & r))",
    "CN": "p > true",
    "CEM": "(p > q) | (p > ~q)",
    "ID": "p > p",
}
# which of the axioms each logic proves
_THEOREMS = {
    "E": "", "M": "M", "EN": "N", "MN": "M N", "MC": "M C", "K": "M C N",
    "EC": "C", "ECN": "C N",
    "CE": "", "CM": "CM", "CEN": "CN", "CMN": "CM CN", "CMC": "CM CC",
    "CK": "CM CC CN", "CKID": "CM CC CN ID", "CKCEM": "CM CC CN CEM",
    "CKCEMID": "CM CC CN CEM ID",
}
# further sequents: (logic, text, expected provable)
_EXTRA = [
    ("E", "[]p => []p", True),
    ("E", "[](p & q) => [](q & p)", True),
    ("EC", "[](~q & r), [](p & q) => []false", True),
    ("EC", "[]p, [](p -> q) => []q", False),
    ("K", "[]p, [](p -> q) => []q", True),
    ("MN", "[]p, [](p -> q) => []q", False),
    ("K", "=> []p", False),
    ("CE", "p > q => p > q", True),
    ("CE", "(p & q) > r => (q & p) > r", True),
    ("CKCEM", "=> (q > r) | (q > ~r)", True),
    ("CKCEM", "=> (p > r) | (q > ~r)", False),
    ("CKID", "=> (p & q) > p", True),
    ("CK", "=> (p & q) > p", False),
]


def case_axioms(name):
    lg = logic(name)
    axioms = _MODAL_AXIOMS if lg.language is M else _COND_AXIOMS
    expected = set(_THEOREMS[name].split())
    rows, ok = [], True
    for ax, text in axioms.items():
        f = parse_formula(text, lg.language)
        got = provable(lg, Sequent((), (f,)))
        pf = prove(lg, Sequent((), (f,))) if got else None
        good = got == (ax in expected) and (pf is None or check_proof(lg, pf))
        ok &= good
        rows.append(f"{ax}{'+' if got else '-'}")
    for lname, text, want in _EXTRA:
        if lname == name:
            got = provable(lg, parse_sequent(text, lg.language))
            ok &= got == want
            rows.append(f"[{text}]{'+' if got else '-'}")
    return CaseResult(1, name, ok, " ".join(rows))


# ------------------------------------------------------- 2, 3. interpolation

def case_interp(name, seed, count=200, crit=2):
    lg = logic(name)
    rng = make_rng(seed, f"c{crit}", name)
    pols = (Polarity.POS, Polarity.NEG) if crit == 2 else (None,)
    n = bad = leaves = 0
    first = ""
    for _ in range(count):
        s = random_sequent(rng, 5, ATOMS, lg.language)
        for pol in pols:
            cand = forall_sequent(lg, pol, "p", s)
            rep = verify_interpolant(lg, pol, "p", s, cand, bound=3, alphabet=ATOMS,
                                     with_proof=False)
            n += 1
            leaves += rep.ii_bound["leavesChecked"]
            if not rep.ok:
                bad += 1
                if not first:
                    first = f" first: {s} -> {print_formula(cand)} {rep.violations[0]}"
    return CaseResult(crit, name, bad == 0,
                      f"{n - bad}/{n} verified, {leaves} leaves checked{first}")


# ------------------------------------------------------- 4. cut

def _cut_pair(rng, lg):
    while True:
        w = rng.randint(0, 4)
        phi = random_formula(rng, w, ATOMS, lg.language)
        s1 = random_sequent(rng, 5 - w, ATOMS, lg.language, max_formulas=2)
        s2 = random_sequent(rng, 5 - w, ATOMS, lg.language, max_formulas=2)
        p1 = prove(lg, Sequent(s1.ante, s1.succ + (phi,)))
        if p1 is None:
            continue
        p2 = prove(lg, Sequent(s2.ante + (phi,), s2.succ))
        if p2 is not None:
            return phi, p1, p2


def case_cut(name, seed, count=300):
    lg = logic(name)
    rng = make_rng(seed, "c4", name)
    good = 0
    first = ""
    for _ in range(count):
        phi, p1, p2 = _cut_pair(rng, lg)
        end = _cut_end(phi, p1, p2)
        pf = Proof("Cut", end, (p1, p2))
        try:
            out = eliminate_cut(lg, pf)
            ok = (provable(lg, end) and out.sequent == end and not out.has_cut()
                  and check_proof(lg, out))
        except Exception as e:  # report, do not abort the suite
            ok = False
            first = first or f" first: {end} ({type(e).__name__})"
        if ok:
            good += 1
        elif not first:
            first = f" first: {end}"
    return CaseResult(4, name, good == count, f"{good}/{count} eliminated{first}")


# ------------------------------------------------------- 5. Craig

def case_craig():
    phi = parse_formula("[](~q & r)")
    psi = parse_formula("[](p & q) -> []false")
    rows, ok = [], True
    ok &= provable("EC", parse_sequent("[](~q & r), [](p & q) => []false"))
    for name in ("EC", "ECN", "K"):
        found = provable(name, Sequent((phi,), (psi,))) and \
            search_craig_interpolant(name, phi, psi, ["q"], 4)
        if name == "K":
            good = bool(found) and implies(name, phi, found) and implies(name, found, psi) \
                and found.pos | found.neg <= {"q"}
            rows.append(f"K: {print_formula(found) if found else 'none'}")
        else:
            good = found is None
            rows.append(f"{name}: {'none' if found is None else print_formula(found)}")
        ok &= bool(good)
    return CaseResult(5, "EC ECN K", ok, "; ".join(rows))


# ------------------------------------------------------- 6. CKCEM

def case_cem():
    good_f = parse_formula("(q > r) | (q > ~r)", C)
    bad_f = parse_formula("(p > r) | (q > ~r)", C)
    rows, ok = [], True
    for name in UIP_ONLY:
        a = provable(name, Sequent((), (good_f,)))
        b = provable(name, Sequent((), (bad_f,)))
        ok &= a and not b
        rows.append(f"{name}: {'+' if a else '-'}/{'+' if b else '-'}")
    return CaseResult(6, "CKCEM CKCEMID", ok, "; ".join(rows))


# ------------------------------------------------------- 7. translations

def case_translation(seed, modal_logic="EC", cond_logic="CEC", theorems=50, trips=1000):
    rng = make_rng(seed, "c7", modal_logic)
    found = tries = 0
    ok = True
    while found < theorems:
        tries += 1
        s = random_sequent(rng, 5, ATOMS, M)
        f = _as_formula(s)
        if f.mods == 0 or not provable(modal_logic, Sequent((), (f,))):
            continue
        found += 1
        ok &= provable(cond_logic, Sequent((), (translate_t(f),)))
    trip_ok = 0
    for _ in range(trips):
        f = random_formula(rng, rng.randint(0, 8), ATOMS, M)
        t = translate_t(f)
        if translate_s(t) is f and t.pos | t.neg == f.pos | f.neg:
            trip_ok += 1
    ok &= trip_ok == trips
    return CaseResult(7, f"{modal_logic}/{cond_logic}", ok,
                      f"{found} theorems translated, {trip_ok}/{trips} round trips")


def _as_formula(s):
    return parse_formula("false") if not s.ante and not s.succ else \
        _imp(conj(s.ante), disj(s.succ))


def _imp(a, b):
    from .syntax import Imp
    return Imp(a, b)


# ------------------------------------------------------- 8. Lyndon

def case_lyndon(name, seed, count=100):
    lg = logic(name)
    rng = make_rng(seed, "c8", name)
    good = quantified = 0
    first = ""
    for _ in range(count):
        while True:
            s = random_sequent(rng, 5, ATOMS, lg.language)
            if not (s.ante and s.succ):
                continue
            phi, psi = conj(s.ante), disj(s.succ)
            # something must be quantified away
            if (phi.pos - psi.pos or phi.neg - psi.neg) and provable(lg, s):
                break
        quantified += len(phi.pos - psi.pos) + len(phi.neg - psi.neg)
        try:
            theta = lyndon_interpolant(lg, phi, psi)
            ok = implies(lg, phi, theta) and implies(lg, theta, psi) and \
                theta.pos <= phi.pos & psi.pos and theta.neg <= phi.neg & psi.neg
        except Exception as e:  # report, do not abort the suite
            ok = False
            first = first or f" first: {s} ({type(e).__name__})"
        if ok:
            good += 1
        elif not first:
            first = f" first: {s}"
    return CaseResult(8, name, good == count, f"{good}/{count} interpolants, {quantified} quantified variables{first}")


# ------------------------------------------------------- runner

def cases(seed):
    """The selftest cases in report order, as (function name, args)."""
    out = [("case_axioms", (n,)) for n in MAIN_LOGICS]
    out += [("case_interp", (n, seed, 200, 2)) for n in ULIP_LOGICS]
    out += [("case_interp", (n, seed, 200, 3)) for n in UIP_ONLY]
    out += [("case_cut", (n, seed)) for n in LOGICS]
    out += [("case_craig", ()), ("case_cem", ())]
    out += [("case_translation", (seed, "EC", "CEC")), ("case_translation", (seed, "ECN", "CECN"))]
    out += [("case_lyndon", (n, seed)) for n in ULIP_LOGICS]
    return out


def run_case(fname, args):
    # CPU time, so that budgets mean the same with or without --jobs
    t = time.process_time()
    r = globals()[fname](*args)
    r.seconds = time.process_time() - t
    return r


def run_selftest(seed=0, jobs=1, out=sys.stdout, err=None, only=None, as_json=False):
    """Run the suite and print the report; returns {criterion: passed}."""
    todo = [c for c in cases(seed) if only is None or _crit_of(c) in only]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(run_case, *zip(*todo)))
    else:
        results = [run_case(f, a) for f, a in todo]
    emit = (lambda rec, line: print(json.dumps(rec, sort_keys=True), file=out)) if as_json \
        else (lambda rec, line: print(line, file=out))
    emit({"selftest": True, "seed": seed}, f"selftest seed={seed}")
    verdict = {}
    for crit, (title, budget) in CRITERIA.items():
        rs = [r for r in results if r.criterion == crit]
        if not rs:
            continue
        for r in rs:
            emit({"criterion": crit, "case": r.label, "ok": r.ok, "detail": r.detail},
                 f"  [{crit}] {r.label:<14} {'pass' if r.ok else 'FAIL'}  {r.detail}")
            if err is not None:
                print(f"  [{crit}] {r.label} {r.seconds:.2f}s", file=err)
        total = sum(r.seconds for r in rs)
        ok = all(r.ok for r in rs)
        note = ""
        if budget is not None and total > budget:
            ok = False
            note = f" (over the {budget:.0f}s budget)"
        verdict[crit] = ok
        emit({"criterion": crit, "title": title, "ok": ok, "note": note.strip(" ()")},
             f"criterion {crit} {title}: {'PASS' if ok else 'FAIL'}{note}")
    return verdict


_CRIT = {"case_axioms": 1, "case_cut": 4, "case_craig": 5, "case_cem": 6,
         "case_translation": 7, "case_lyndon": 8}


def _crit_of(case):
    fname, args = case
    if fname == "case_interp":
        return args[3]
    return _CRIT[fname]

"""Bounded check of the three interpolant conditions.

(var) and (i) are checked exactly.  Condition (ii) quantifies over all
sequents Γ ⇒ Δ with p ∉ V⋄(Γ ⇒ Δ); here it is checked for every such test
sequent with at most two formulas over the alphabet and total weight at
most the bound.

Checking every test sequent one by one is far too slow, so the check works
on leaves.  A leaf is what remains of a test sequent after applying
propositional rules until only atoms and modal formulas are left.  These
rules are invertible and preserve variables, so if a test sequent violates
(ii), one of its leaves violates it as well, and that leaf is itself free
for p.  Checking all leaves of all bounded test sequents is therefore at
least as strong as checking the test sequents.

Modal formulas inside leaves are identified up to a congruence key (a
truth table over their top-level literals, recursively).  Equal keys mean
provably equivalent arguments, and every calculus here allows replacing
equivalents, so one representative per class suffices.

For a given S most leaves cannot make S·L provable.  Each leaf carries its
falsifying rows in the sound finite models of `semantics`, and S·L can
only be provable when those rows are disjoint from the rows falsifying S
in every model.
"""

from __future__ import annotations

import threading

import numpy as np
from dataclasses import dataclass, field

from .calculus import logic
from .gen import formulas_of_weight
from .prover import proof_to_dict, prove, provable
from .semantics import _atom_masks, falsifying_rows, models_for, truth_table
from .sequent import Sequent, print_sequent
from .syntax import BOT, BOX, COND, VAR, Polarity, print_formula

__all__ = ["InterpolantReport", "verify_interpolant", "verify_brute",
           "leaf_universe", "formula_key"]

POS, NEG = Polarity.POS, Polarity.NEG


@dataclass
class InterpolantReport:
    query: dict
    interpolant: object
    var_check: dict
    proof_of_i: object
    ii_bound: dict
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    @property
    def counterexamples(self):
        return self.violations

    def to_dict(self):
        return {
            "query": self.query,
            "interpolant": print_formula(self.interpolant),
            "varCheck": self.var_check,
            "proofOfI": proof_to_dict(self.proof_of_i) if self.proof_of_i else None,
            "iiBound": self.ii_bound,
            "violations": self.violations,
        }


# ------------------------------------------------------- congruence keys

_key_memo = {}


def _top_literals(f, out):
    if f.tag in (VAR, BOX, COND):
        out.append(f)
    elif f.tag != BOT:
        _top_literals(f.a, out)
        _top_literals(f.b, out)


def literal_id(f):
    if f.tag == VAR:
        return f.name
    if f.tag == BOX:
        return ("B", formula_key(f.a))
    return ("C", formula_key(f.a), formula_key(f.b))


def formula_key(f):
    """Truth table over the essential top-level literals, recursively."""
    k = _key_memo.get(f)
    if k is not None:
        return k
    lits = []
    _top_literals(f, lits)
    ids = sorted({literal_id(g) for g in lits}, key=repr)
    idx = {i: n for n, i in enumerate(ids)}
    n = len(ids)

    def ev(g, row):
        t = g.tag
        if t == BOT:
            return False
        if t in (VAR, BOX, COND):
            return bool(row >> idx[literal_id(g)] & 1)
        a, b = ev(g.a, row), ev(g.b, row)
        if t == 2:
            return a and b
        if t == 3:
            return a or b
        return (not a) or b

    tab = [ev(f, r) for r in range(1 << n)]
    ess = [i for i in range(n) if any(tab[r] != tab[r ^ (1 << i)] for r in range(1 << n))]
    small = tuple(tab[sum(((r >> j) & 1) << i for j, i in enumerate(ess))]
                  for r in range(1 << len(ess)))
    k = (tuple(ids[i] for i in ess), small)
    _key_memo[f] = k
    return k


# ----------------------------------------------------------- leaf universe

@dataclass
class Leaf:
    lits: frozenset       # {(side, literal id)}
    seq: Sequent
    pos: frozenset
    neg: frozenset
    size: int


class LeafUniverse:
    def __init__(self, lang, alphabet, bound):
        self.lang, self.atoms, self.bound = lang, tuple(sorted(alphabet)), bound
        self.rep = {}
        memo = {}
        weight_of = {}
        for w in range(bound + 1):
            for f in formulas_of_weight(w, self.atoms, lang):
                for side in ("L", "R"):
                    for leaf in self._leaves(f, side, memo):
                        if leaf not in weight_of:
                            weight_of[leaf] = w
        universe = set(weight_of)
        by_w = {}
        for leaf, w in weight_of.items():
            by_w.setdefault(w, []).append(leaf)
        # leaves of two-formula test sequents are unions of single leaves
        for w1 in range(bound + 1):
            for w2 in range(w1, bound + 1 - w1):
                for l1 in by_w.get(w1, ()):
                    for l2 in by_w.get(w2, ()):
                        u = l1 | l2
                        if not _axiomatic(u):
                            universe.add(u)
        out = []
        for lits in universe:
            ante = [self.rep[i] for s, i in lits if s == "L"]
            succ = [self.rep[i] for s, i in lits if s == "R"]
            seq = Sequent(ante, succ)
            out.append(Leaf(lits, seq, seq.pos, seq.neg, len(lits)))
        out.sort(key=lambda l: (l.size, l.seq.weight, tuple(f.order for f in l.seq.ante),
                                tuple(f.order for f in l.seq.succ)))
        self.leaves = out
        # literal columns: index of each (side, id), padded with -1
        self.lit_index = {}
        for leaf in out:
            for sl in sorted(leaf.lits, key=repr):
                self.lit_index.setdefault(sl, len(self.lit_index))
        width = max((l.size for l in out), default=0) or 1
        cols = np.full((len(out), width), -1, dtype=np.int64)
        for n, leaf in enumerate(out):
            for k, sl in enumerate(sorted(leaf.lits, key=repr)):
                cols[n, k] = self.lit_index[sl]
        self.cols = cols
        self._masks = {}
        self._lock = threading.Lock()

    def masks(self, name, count=None):
        """Falsifying rows of every leaf in every model of the logic."""
        lg = logic(name)
        key = (lg.name, count or MODELS)
        m = self._masks.get(key)
        if m is not None:
            return m
        with self._lock:
            m = self._masks.get(key)
            if m is None:
                m = self._compute_masks(lg, count or MODELS)
                self._masks[key] = m
        return m

    def _compute_masks(self, lg, count):
        models = models_for(lg, count)
        masks, full = _atom_masks(list(self.atoms))
        dtype = _dtype(full)
        # one extra row for the padding column, neutral under AND
        table = np.zeros((len(self.lit_index) + 1, len(models)), dtype=dtype)
        table[-1, :] = full
        for k, model in enumerate(models):
            memo = {}
            for (side, i), j in self.lit_index.items():
                t = truth_table(self.rep[i], masks, full, model, memo)
                table[j, k] = t if side == "L" else full & ~t
        return np.bitwise_and.reduce(table[self.cols], axis=1)

    def _lit(self, f):
        i = literal_id(f)
        if i not in self.rep:
            self.rep[i] = f
        return i

    def _leaves(self, f, side, memo):
        k = (f, side)
        r = memo.get(k)
        if r is not None:
            return r
        t = f.tag
        if t == BOT:
            r = frozenset() if side == "L" else frozenset([frozenset()])
        elif t in (VAR, BOX, COND):
            r = frozenset([frozenset([(side, self._lit(f))])])
        else:
            def A(s):
                return self._leaves(f.a, s, memo)

            def B(s):
                return self._leaves(f.b, s, memo)
            if t == 2:
                r = _prod(A("L"), B("L")) if side == "L" else A("R") | B("R")
            elif t == 3:
                r = A("L") | B("L") if side == "L" else _prod(A("R"), B("R"))
            else:
                r = A("R") | B("L") if side == "L" else _prod(A("L"), B("R"))
        memo[k] = r
        return r


MODELS = 64
MAX_ATOMS = 6


def _dtype(full):
    n = full.bit_length()
    for bits, dt in ((8, np.uint8), (16, np.uint16), (32, np.uint32), (64, np.uint64)):
        if n <= bits:
            return dt
    raise ValueError("alphabet too large for the bounded check")


def _axiomatic(lits):
    left = {i for s, i in lits if s == "L" and isinstance(i, str)}
    return any(s == "R" and i in left for s, i in lits)


def _prod(xs, ys):
    out = set()
    for a in xs:
        for b in ys:
            u = a | b
            if not _axiomatic(u):
                out.add(u)
    return frozenset(out)


_universes = {}
_ulock = threading.Lock()


def leaf_universe(lang, alphabet, bound):
    key = (lang, tuple(sorted(alphabet)), bound)
    u = _universes.get(key)
    if u is None:
        with _ulock:
            u = _universes.get(key)
            if u is None:
                u = LeafUniverse(lang, alphabet, bound)
                _universes[key] = u
    return u


def _seq_masks(lg, s, atoms, count):
    models = models_for(lg, count)
    masks, full = _atom_masks(list(atoms))
    return np.array([falsifying_rows(s, masks, full, m) for m in models], dtype=_dtype(full))


# ------------------------------------------------------------------ checks

def _free_test(leaf, p, pol):
    """p ∉ V⋄(L) for the dual polarity ⋄ of pol."""
    if pol is None:
        return p not in leaf.pos and p not in leaf.neg
    return p not in (leaf.neg if pol is POS else leaf.pos)


def _var_check(cand, p, pol, s):
    if pol is None:
        free = p not in cand.pos and p not in cand.neg
    else:
        free = p not in (cand.pos if pol is POS else cand.neg)
    return {"free": free, "posSubset": cand.pos <= s.pos, "negSubset": cand.neg <= s.neg}


def _pol_text(pol):
    return "plain" if pol is None else ("pos" if pol is POS else "neg")


def verify_interpolant(name, pol, p, s, cand, bound=3, alphabet=None, with_proof=True,
                       models=None):
    """Report on (var), (i) and bounded (ii) for the candidate ∀°p S.

    The test alphabet always contains p and the variables of S and of the
    candidate.  `models`
    sets how many finite models prefilter the test sequents; more models
    cost more up front and save proof search per query.
    """
    lg = logic(name)
    p = getattr(p, "name", p)
    # a candidate leaking other atoms fails (var); they still need a truth table
    alphabet = tuple(sorted(set(alphabet or ()) | s.pos | s.neg | cand.pos | cand.neg | {p}))
    if len(alphabet) > MAX_ATOMS:
        raise ValueError(f"bounded check supports at most {MAX_ATOMS} atoms")
    query = {"logic": lg.name, "atom": p, "pol": _pol_text(pol), "sequent": print_sequent(s)}
    var = _var_check(cand, p, pol, s)
    violations = []
    if not all(var.values()):
        violations.append({"condition": "var", "detail": var})
    s_i = s.add(ante=(cand,))
    ok_i = provable(lg, s_i)
    proof_i = prove(lg, s_i) if (ok_i and with_proof) else None
    if not ok_i:
        violations.append({"condition": "i", "sequent": print_sequent(s_i)})
    checked, found = _check_ii(lg, pol, p, s, cand, bound, alphabet, models or MODELS)
    for leaf in found:
        violations.append({"condition": "ii", "test": print_sequent(leaf)})
    bound_info = {"weight": bound, "maxFormulas": 2, "alphabet": list(alphabet),
                  "leavesChecked": checked}
    return InterpolantReport(query, cand, var, proof_i, bound_info, violations)


def _check_ii(lg, pol, p, s, cand, bound, alphabet, count):
    top_goal = Sequent((), (cand,))
    if provable(lg, top_goal):
        return 0, []
    if provable(lg, s):
        # the empty test sequent already demands ⊢ cand
        return 1, [Sequent()]
    uni = leaf_universe(lg.language, alphabet, bound)
    lm = uni.masks(lg, count)
    s_rows = _seq_masks(lg, s, alphabet, count)
    i_rows = _seq_masks(lg, top_goal, alphabet, count)
    cands = np.nonzero(np.all((lm & s_rows) == 0, axis=1))[0]
    i_ok = np.all((lm[cands] & i_rows) == 0, axis=1)
    good = set()
    found = []
    checked = 0
    for n, maybe in zip(cands.tolist(), i_ok.tolist()):
        leaf = uni.leaves[n]
        if not _free_test(leaf, p, pol):
            continue
        if leaf.size > 1 and any(sub in good for sub in _proper_subsets(leaf.lits)):
            continue
        checked += 1
        if maybe and provable(lg, leaf.seq.add(succ=(cand,))):
            good.add(leaf.lits)
            continue
        if provable(lg, Sequent(s.ante + leaf.seq.ante, s.succ + leaf.seq.succ)):
            found.append(leaf.seq)
    return checked, found


def _proper_subsets(lits):
    items = sorted(lits, key=repr)
    n = len(items)
    for m in range((1 << n) - 1):
        yield frozenset(items[i] for i in range(n) if m >> i & 1)


def verify_brute(name, pol, p, s, cand, bound=2, alphabet=("p", "q"), max_formulas=2):
    """Condition (ii) by literal enumeration of the bounded test sequents.

    Slow; used to cross-check the leaf-based check on small bounds.
    Returns the list of violating test sequents.
    """
    lg = logic(name)
    p = getattr(p, "name", p)
    fs = [(w, f) for w in range(bound + 1) for f in formulas_of_weight(w, tuple(alphabet), lg.language)]
    tests = [Sequent()]
    for w, f in fs:
        tests += [Sequent((f,), ()), Sequent((), (f,))]
    if max_formulas >= 2:
        for i, (w1, f) in enumerate(fs):
            for w2, g in fs[i:]:
                if w1 + w2 <= bound:
                    tests += [Sequent((f, g), ()), Sequent((), (f, g))]
        for w1, f in fs:
            for w2, g in fs:
                if w1 + w2 <= bound:
                    tests.append(Sequent((f,), (g,)))
    bad = []
    for t in tests:
        dual_vars = (t.pos | t.neg) if pol is None else (t.neg if pol is POS else t.pos)
        if p in dual_vars:
            continue
        if provable(lg, Sequent(s.ante + t.ante, s.succ + t.succ)) and \
                not provable(lg, t.add(succ=(cand,))):
            bad.append(t)
    return bad

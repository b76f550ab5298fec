"""Small finite models used as a cheap refutation filter.

The worlds of a model are the rows of a truth table over some atoms, and
a formula denotes the set of rows where it holds, encoded as a bitmask.  □
and ▷ are read through a function on truth sets: N(X) for □A with X = ‖A‖,
and N(X, Y) for A ▷ B.  Each logic gets functions shaped so that every rule
of its calculus preserves validity, so a sequent falsified at some row of
some model is unprovable.

  erase   N(X) = X, N(X, Y) = ¬X ∪ Y        every calculus here
  top     N = all rows                        every calculus here
  bot     N = no rows                         calculi without a rule that
                                              concludes ⇒ □B or ⇒ A ▷ B alone

The remaining models are pseudo-random but fixed by a seed.  By family:

  E, CE        arbitrary N
  M, CM        N monotone in its last argument
  MC, K        N(X) = {w ∈ D : R(w) ⊆ X}
  CMC, CK      N(X, Y) = {w ∈ D(X) : f(w, X) ⊆ Y}
  CKID         as CK with f(w, X) ⊆ X
  CKCEM(ID)    as CK(ID) with at most one selected row
  EC, CEC      w ∈ N iff the argument meets a row-specific pattern, a family
               closed under intersection but not monotone

Rules with ⇒ □B or ⇒ A ▷ B from ⇒ B force N(all rows) = all rows.
"""

from __future__ import annotations

from .calculus import logic
from .syntax import AND, BOT, BOX, COND, IMP, OR, VAR

__all__ = ["Model", "models_for", "readings_for", "truth_table", "refutes"]

_EMPTY_LEFT = {"RuleN", "RuleNW", "RuleCN", "RuleCNW", "RuleCKID", "RuleCKCEM", "RuleCKCEMID"}
_M64 = (1 << 64) - 1


def _mix(*xs):
    """Deterministic 64-bit hash of small integers (splitmix64 rounds)."""
    z = 0x9E3779B97F4A7C15
    for x in xs:
        z = (z ^ (x & _M64)) & _M64
        z = (z + 0x9E3779B97F4A7C15) & _M64
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
        z ^= z >> 31
    return z


def _rows(full):
    return full.bit_length()


def _rand_set(seed, full, *key):
    """A pseudo-random subset of the rows, with varying density."""
    h = _mix(seed, *key)
    d = h & 7
    a = _mix(h, 1) & full
    if d == 0:
        return 0
    if d == 1:
        return full
    if d in (2, 3):
        return 1 << (_mix(h, 3) % _rows(full))
    if d == 4:
        return a & _mix(h, 2)
    if d == 5:
        return a | _mix(h, 2) & full
    return a


class Model:
    """A reading of □ and ▷ as functions on truth sets."""

    def __init__(self, kind, seed=0, normal=False):
        self.kind, self.seed, self.normal = kind, seed, normal
        self._cache = {}

    def __repr__(self):
        return f"Model({self.kind!r}, {self.seed})"

    def box(self, x, full):
        key = (x, full)
        r = self._cache.get(key)
        if r is None:
            r = self._box(x, full)
            if self.normal and x == full:
                r = full
            self._cache[key] = r
        return r

    def cond(self, x, y, full):
        key = (x, y, full)
        r = self._cache.get(key)
        if r is None:
            r = self._cond(x, y, full)
            if self.normal and y == full:
                r = full
            self._cache[key] = r
        return r

    def _each(self, full, test):
        r = 0
        for w in range(_rows(full)):
            if test(w):
                r |= 1 << w
        return r

    def _box(self, x, full):
        k, s = self.kind, self.seed
        if k == "erase":
            return x
        if k == "top":
            return full
        if k == "bot":
            return 0
        if k == "arbitrary":
            return _mix(s, x, full) & full
        if k == "monotone":
            return self._each(full, lambda w: any(
                g & ~x == 0 for g in self._gens(full, w, 0)))
        if k == "relational":
            dom = full if self.normal else _rand_set(s, full, 7)
            return self._each(full, lambda w: dom >> w & 1 and
                              _rand_set(s, full, 8, w) & ~x == 0)
        if k == "intersection":
            return self._each(full, lambda w: self._pattern(full, w, 0, x))
        raise ValueError(k)

    def _cond(self, x, y, full):
        k, s = self.kind, self.seed
        if k == "erase":
            return (full & ~x) | y
        if k == "top":
            return full
        if k == "bot":
            return 0
        if k == "arbitrary":
            return _mix(s, x, y, full) & full
        if k == "monotone":
            return self._each(full, lambda w: any(
                g & ~y == 0 for g in self._gens(full, w, x + 1)))
        if k == "intersection":
            return self._each(full, lambda w: self._pattern(full, w, x + 1, y))
        if k in ("selection", "selection-id", "cem", "cem-id"):
            def sel(w):
                f = _rand_set(s, full, 9, w, x)
                if k.endswith("-id"):
                    f &= x
                if k.startswith("cem") and f:
                    # keep a single row
                    rows = [i for i in range(_rows(full)) if f >> i & 1]
                    f = 1 << rows[_mix(s, 10, w, x) % len(rows)]
                return f

            def test(w):
                if not self.normal and not _rand_set(s, full, 11, x) >> w & 1:
                    return False
                return sel(w) & ~y == 0
            return self._each(full, test)
        raise ValueError(k)

    def _gens(self, full, w, x):
        h = _mix(self.seed, 12, w, x)
        n = h % 3 + (1 if self.normal else 0)
        return [_rand_set(self.seed, full, 13, w, x, i) for i in range(n)]

    def _pattern(self, full, w, x, y):
        if self.normal and y == full:
            return True
        a = _rand_set(self.seed, full, 14, w, x)
        b = _rand_set(self.seed, full, 15, w, x) & a
        return y & a == b


def _family(rules):
    if rules & {"RuleEC", "RuleCEC"}:
        return "intersection"
    if rules & {"RuleCKCEMID"}:
        return "cem-id"
    if rules & {"RuleCKCEM"}:
        return "cem"
    if rules & {"RuleCKID"}:
        return "selection-id"
    if rules & {"RuleCMC"}:
        return "selection"
    if rules & {"RuleMC"}:
        return "relational"
    if rules & {"RuleM", "RuleCM"}:
        return "monotone"
    return "arbitrary"


_model_cache = {}


def models_for(name, count=16):
    """Sound models for the logic: the fixed readings, then random ones."""
    lg = logic(name)
    key = (lg.name, count)
    r = _model_cache.get(key)
    if r is not None:
        return r
    normal = bool(lg.rules & _EMPTY_LEFT)
    out = [Model("erase"), Model("top")]
    if not normal:
        out.append(Model("bot"))
    fam = _family(lg.rules)
    seed = 0
    while len(out) < count:
        seed += 1
        out.append(Model(fam, _mix(seed, len(lg.name), *map(ord, lg.name)), normal))
    r = tuple(out[:count])
    _model_cache[key] = r
    return r


def readings_for(name):
    """The fixed readings sound for the logic."""
    return tuple(m for m in models_for(name) if m.kind in ("erase", "top", "bot"))


def _atom_masks(atoms):
    n = len(atoms)
    rows = 1 << n
    masks = {}
    for i, a in enumerate(atoms):
        m = 0
        for row in range(rows):
            if row >> i & 1:
                m |= 1 << row
        masks[a] = m
    return masks, (1 << rows) - 1


def truth_table(f, masks, full, model, memo=None):
    """Bitmask of the rows where f is true in the model."""
    if memo is None:
        memo = {}
    r = memo.get(f)
    if r is not None:
        return r
    t = f.tag
    if t == BOT:
        r = 0
    elif t == VAR:
        r = masks[f.name]
    elif t == BOX:
        r = model.box(truth_table(f.a, masks, full, model, memo), full)
    elif t == COND:
        r = model.cond(truth_table(f.a, masks, full, model, memo),
                       truth_table(f.b, masks, full, model, memo), full)
    else:
        a = truth_table(f.a, masks, full, model, memo)
        b = truth_table(f.b, masks, full, model, memo)
        if t == AND:
            r = a & b
        elif t == OR:
            r = a | b
        else:
            r = (full & ~a) | b
    memo[f] = r
    return r


def falsifying_rows(s, masks, full, model, memo=None):
    """Rows of the model where every antecedent holds and no succedent does."""
    if memo is None:
        memo = {}
    bad = full
    for f in s.ante:
        bad &= truth_table(f, masks, full, model, memo)
    for f in s.succ:
        bad &= full & ~truth_table(f, masks, full, model, memo)
    return bad


def refutes(name, s, models=None, count=8):
    """True if some sound model falsifies s, so s is unprovable."""
    atoms = sorted(s.pos | s.neg)
    masks, full = _atom_masks(atoms)
    for model in models or models_for(name, count):
        if falsifying_rows(s, masks, full, model):
            return True
    return False

"""Command-line front end.

    nonnormal prove    --logic K "[]p, [](p -> q) => []q"
    nonnormal interp   --logic K --atom p --pol pos --quant exists "[](p & q)"
    nonnormal craig    --logic K --alphabet q "[](~q & r) => [](p & q) -> []false"
    nonnormal check    --logic K proof.json
    nonnormal cutelim  --logic K proof.json
    nonnormal selftest --seed 0

Input comes from the positional argument or, when it is omitted, from
stdin.  Exit status: 0 success, 1 a negative answer (unprovable, no
interpolant found, verification or selftest failures), 2 usage or input
errors.  With --json every output record is one line of JSON.
"""

from __future__ import annotations

import argparse
import json
import sys

from .calculus import LOGICS, logic
from .cutelim import CutError, eliminate_cut
from .interpolation import (ModeError, check_mode, exists_formula, forall_formula,
                            forall_sequent, plain_forall, plain_exists,
                            search_craig_interpolant)
from .prover import check_proof, proof_from_dict, proof_to_dict, prove
from .sequent import Sequent, parse_sequent, print_sequent
from .syntax import (LanguageError, Not, ParseError, Polarity, parse_formula,
                     print_formula)
from .verify import verify_interpolant

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    pass


def build_parser():
    ap = argparse.ArgumentParser(prog="nonnormal", description=__doc__.split("\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="line-delimited JSON output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_logic(p):
        p.add_argument("--logic", required=True, choices=list(LOGICS))
        p.add_argument("text", nargs="?", help="input (default: stdin)")
        return p

    with_logic(sub.add_parser("prove", parents=[common], help="search for a cut-free proof"))
    p = with_logic(sub.add_parser("interp", parents=[common],
                                  help="uniform interpolant of a formula or sequent"))
    p.add_argument("--atom", required=True)
    p.add_argument("--pol", choices=["pos", "neg", "plain"], default="pos")
    p.add_argument("--quant", choices=["forall", "exists"], default="forall")
    p.add_argument("--bound", type=int, default=3, help="weight bound for checking (ii)")
    p.add_argument("--no-verify", action="store_true", help="skip the bounded check")
    p = with_logic(sub.add_parser("craig", parents=[common],
                                  help="bounded search for a Craig interpolant of A => B"))
    p.add_argument("--alphabet", help="comma-separated atoms (default: shared atoms)")
    p.add_argument("--bound", type=int, default=4)
    p = with_logic(sub.add_parser("check", parents=[common], help="check a JSON proof"))
    p.add_argument("--allow-cut", action="store_true")
    with_logic(sub.add_parser("cutelim", parents=[common], help="eliminate cuts from a JSON proof"))
    p = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.add_argument("--timing", action="store_true", help="print case timings to stderr")
    return ap


def _read(args):
    text = args.text if args.text is not None else sys.stdin.read()
    text = text.strip()
    if not text:
        raise UsageError("empty input")
    return text


def _emit(args, record, lines):
    if args.json:
        print(json.dumps(record, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _proof_lines(pf, depth=0):
    out = [f"{'  ' * depth}{pf.rule}: {print_sequent(pf.sequent)}"]
    for p in pf.premises:
        out += _proof_lines(p, depth + 1)
    return out


def cmd_prove(args):
    lg = logic(args.logic)
    s = parse_sequent(_read(args), lg.language)
    pf = prove(lg, s)
    if pf is None:
        _emit(args, {"logic": lg.name, "sequent": print_sequent(s), "result": "unprovable"},
              ["unprovable"])
        return 1
    _emit(args, {"logic": lg.name, "sequent": print_sequent(s), "result": "provable",
                 "proof": proof_to_dict(pf)}, _proof_lines(pf))
    return 0


def _pol(text):
    return {"pos": Polarity.POS, "neg": Polarity.NEG, "plain": None}[text]


def cmd_interp(args):
    lg = logic(args.logic)
    pol = _pol(args.pol)
    check_mode(lg, pol)
    text = _read(args)
    p = args.atom
    if "=>" in text:
        if args.quant == "exists":
            raise UsageError("--quant exists takes a formula, not a sequent")
        s = parse_sequent(text, lg.language)
        cand = forall_sequent(lg, pol, p, s)
        target, vpol, vcand = s, pol, cand
    else:
        f = parse_formula(text, lg.language)
        if args.quant == "forall":
            cand = forall_formula(lg, pol, p, f) if pol is not None else plain_forall(lg, p, f)
            target, vpol, vcand = Sequent((), (f,)), pol, cand
        else:
            cand = exists_formula(lg, pol, p, f) if pol is not None else plain_exists(lg, p, f)
            # ∃°p A is checked as ¬∃°p A = ∀⋄p(⇒ ¬A)
            target = Sequent((), (Not(f),))
            vpol, vcand = (None if pol is None else pol.dual), Not(cand)
    lines = [print_formula(cand)]
    record = {"logic": lg.name, "atom": p, "pol": args.pol, "quant": args.quant,
              "input": text, "interpolant": print_formula(cand)}
    status = 0
    if not args.no_verify:
        rep = verify_interpolant(lg, vpol, p, target, vcand, bound=args.bound, models=16)
        d = rep.to_dict()
        d["interpolant"] = print_formula(cand)
        if args.quant == "exists":
            d["checkedAs"] = f"~interpolant against {print_sequent(target)}"
        record["report"] = d
        b = rep.ii_bound
        lines.append(f"verified (var), (i) and (ii) up to weight {b['weight']} over "
                     f"{{{', '.join(b['alphabet'])}}}: "
                     + ("ok" if rep.ok else f"{len(rep.violations)} violation(s)"))
        for v in rep.violations:
            lines.append(f"  violation {json.dumps(v, sort_keys=True)}")
        status = 0 if rep.ok else 1
    _emit(args, record, lines)
    return status


def cmd_craig(args):
    lg = logic(args.logic)
    s = parse_sequent(_read(args), lg.language)
    if len(s.ante) != 1 or len(s.succ) != 1:
        raise UsageError("craig expects exactly one formula on each side of =>")
    phi, psi = s.ante[0], s.succ[0]
    if args.alphabet:
        alphabet = sorted(a.strip() for a in args.alphabet.split(",") if a.strip())
    else:
        alphabet = sorted((phi.pos | phi.neg) & (psi.pos | psi.neg))
    record = {"logic": lg.name, "input": print_sequent(s), "alphabet": alphabet,
              "bound": args.bound}
    if prove(lg, s) is None:
        record["result"] = "implication unprovable"
        _emit(args, record, ["implication unprovable"])
        return 1
    theta = search_craig_interpolant(lg, phi, psi, alphabet, args.bound)
    if theta is None:
        record["result"] = "none"
        _emit(args, record, [f"no interpolant over {{{', '.join(alphabet)}}} "
                             f"up to weight {args.bound}"])
        return 1
    record["result"] = "found"
    record["interpolant"] = print_formula(theta)
    _emit(args, record, [print_formula(theta)])
    return 0


def _load_proof(args, lg):
    try:
        data = json.loads(_read(args))
    except json.JSONDecodeError as e:
        raise UsageError(f"invalid JSON: {e}") from None
    if isinstance(data, dict) and "proof" in data and "rule" not in data:
        data = data["proof"]
    try:
        return proof_from_dict(data, lg.language)
    except (KeyError, TypeError) as e:
        raise UsageError(f"malformed proof record: {e}") from None


def cmd_check(args):
    lg = logic(args.logic)
    pf = _load_proof(args, lg)
    ok = check_proof(lg, pf, allow_cut=args.allow_cut)
    _emit(args, {"logic": lg.name, "sequent": print_sequent(pf.sequent), "valid": ok},
          ["valid" if ok else "invalid"])
    return 0 if ok else 1


def cmd_cutelim(args):
    lg = logic(args.logic)
    pf = _load_proof(args, lg)
    try:
        out = eliminate_cut(lg, pf)
    except CutError as e:
        raise UsageError(str(e)) from None
    _emit(args, {"logic": lg.name, "sequent": print_sequent(out.sequent),
                 "proof": proof_to_dict(out)}, _proof_lines(out))
    return 0


def cmd_selftest(args):
    from .acceptance import run_selftest
    only = None
    if args.only:
        only = {int(x) for x in args.only.split(",")}
    verdict = run_selftest(args.seed, jobs=args.jobs, out=sys.stdout,
                           err=sys.stderr if args.timing else None, only=only,
                           as_json=args.json)
    return 0 if all(verdict.values()) else 1


COMMANDS = {"prove": cmd_prove, "interp": cmd_interp, "craig": cmd_craig,
            "check": cmd_check, "cutelim": cmd_cutelim, "selftest": cmd_selftest}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ParseError, LanguageError, ModeError) as e:
        print(f"error: {e}", file=sys.stderr)
        if getattr(args, "json", False):
            print(json.dumps({"error": str(e)}))
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

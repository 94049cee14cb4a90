"""
Command line interface.  Every command prints one JSON document.

Exit codes: 0 success, 1 verification failed, 2 invalid input.

    k3fm partners 6
    k3fm count --rank1 30 | --rank2 229 | --general input.json
    k3fm verify lemma23 --n 6 | lemma25 --n 6 --bound 10 | nseq --n 6 | all --nmax 60
    k3fm lattice disc L.json | signature L.json | genus-check A.json B.json
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import bqf, counting, rank1
from .discform import (
    BoundExceeded,
    enumerate_isometries,
    is_isomorphic,
    same_genus,
)
from .lattice import LatticeError, discriminant_form, signature, standard_lattice
from .serialize import (
    counting_input_from_json,
    dumps,
    form_to_json,
    frac_str,
    load_lattice,
)

SUCCESS, VERIFICATION_FAILED, INVALID_INPUT = "success", "verification_failed", "invalid_input"
EXIT_CODES = {SUCCESS: 0, VERIFICATION_FAILED: 1, INVALID_INPUT: 2}


@dataclass
class CommandResult:
    status: str
    payload: dict

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]


class InvalidInput(Exception):
    pass


def _ok(payload, passed=True):
    return CommandResult(SUCCESS if passed else VERIFICATION_FAILED, payload)


# -- commands ------------------------------------------------------------

def cmd_partners(n: int) -> CommandResult:
    if n < 1:
        raise InvalidInput(f"n must be positive, got {n}")
    parts = rank1.enumerate_partners(n)
    expected = rank1.expected_partner_count(n)
    return _ok({
        "n": n,
        "count": len(parts),
        "expected_2_pow_tau_minus_1": expected,
        "pairs": [[p.r, p.s] for p in parts],
        "partners": [{"r": p.r, "s": p.s, "mukai_vector": [p.r, 1, p.s]} for p in parts],
    }, passed=len(parts) == expected)


def cmd_count(rank1_n=None, rank2_p=None, general=None) -> CommandResult:
    if rank1_n is not None:
        if rank1_n < 2:
            raise InvalidInput(f"rank-1 counting needs n >= 2, got {rank1_n}")
        total = counting.rank1_fm_count(rank1_n)
        return _ok({"mode": "rank1", "n": rank1_n, "count": total, "breakdown": [total]})
    if rank2_p is not None:
        try:
            total = counting.rank2_fm_count(rank2_p)
        except ValueError as e:
            raise InvalidInput(str(e)) from None
        h = bqf.wide_class_number(rank2_p)
        return _ok({"mode": "rank2", "p": rank2_p, "count": total, "class_number": h,
                    "narrow_class_number": bqf.narrow_class_number(rank2_p)})
    try:
        with open(general) as fh:
            inp = counting_input_from_json(json.load(fh))
        res = counting.fm_count(inp)
    except (OSError, KeyError, TypeError, ValueError) as e:
        raise InvalidInput(f"{general}: {e}") from None
    return _ok({
        "mode": "general",
        "count": res.total,
        "breakdown": [
            {"label": rep.label, "count": c} for rep, c in zip(inp.genus_reps, res.breakdown)
        ],
    })


def verify_lemma23(n: int) -> CommandResult:
    if n < 1:
        raise InvalidInput(f"n must be positive, got {n}")
    checks = rank1.check_lemma23(n)
    return _ok({
        "target": "lemma23",
        "n": n,
        "checked": len(checks),
        "checks": [
            {"r": c.r, "s": c.s, "u": list(c.u) if c.u else None,
             "pi": list(c.pi) if c.pi else None, "ok": c.ok}
            for c in checks
        ],
    }, passed=all(c.ok for c in checks))


def verify_lemma25(n: int, bound: int, signed: bool = False) -> CommandResult:
    if n < 1 or bound < 1:
        raise InvalidInput("n and bound must be positive")
    sols = rank1.hyperbolic_solutions(n, bound, signed)
    bad = rank1.search_lemma25_counterexamples(n, bound, signed)
    payload = {
        "target": "lemma25",
        "n": n,
        "bound": bound,
        "domain": "signed" if signed else "naturals",
        "solutions": len(sols),
        "counterexamples": [
            {"case": c.case, "sol": list(c.sol), "sol2": list(c.sol2)} for c in bad
        ],
    }
    # the signed sweep is diagnostic: report, never fail
    return _ok(payload, passed=signed or not bad)


def verify_nseq(n: int) -> CommandResult:
    if n < 2:
        raise InvalidInput(f"n must be at least 2, got {n}")
    A = discriminant_form(standard_lattice("lambda_n", n))
    order = len(enumerate_isometries(A))
    quotient = counting.gamma_quotient_order(n)
    expected = 2 ** (rank1.tau(n) - 1)
    return _ok({
        "target": "nseq",
        "n": n,
        "discriminant_form": form_to_json(A),
        "isometry_group_order": order,
        "quotient_order": quotient,
        "expected": expected,
    }, passed=quotient == expected and order == 2 * expected)


def verify_all(nmax: int) -> CommandResult:
    """Regenerate every acceptance table up to nmax."""
    if nmax < 2:
        raise InvalidInput(f"nmax must be at least 2, got {nmax}")
    checks = []

    def record(name, passed, **info):
        checks.append({"name": name, "passed": bool(passed), **info})

    bad = [n for n in range(2, nmax + 1)
           if not (len(rank1.enumerate_partners(n)) == counting.rank1_fm_count(n)
                   == counting.gamma_quotient_order(n) == 2 ** (rank1.tau(n) - 1))]
    record("triple_agreement", not bad, failures=bad)

    record("tau_values", rank1.tau(12) == rank1.tau(6) == 2 and rank1.tau(8) == rank1.tau(2) == 1)

    bad = [[c.n, c.r, c.s] for n in range(1, nmax + 1) for c in rank1.check_lemma23(n) if not c.ok]
    record("lemma23", not bad, failures=bad)

    bad = [[c.n, c.case, list(c.sol), list(c.sol2)]
           for n in range(1, min(nmax, 20) + 1) for c in rank1.search_lemma25_counterexamples(n, 12)]
    record("lemma25", not bad, failures=bad)

    bad = []
    for n in range(2, nmax + 1):
        want = 2 ** rank1.tau(n)
        a = len(enumerate_isometries(discriminant_form(standard_lattice("rank1", 2 * n))))
        b = len(enumerate_isometries(discriminant_form(standard_lattice("lambda_n", n))))
        if a != want or b != want:
            bad.append([n, a, b, want])
    record("isometry_orders", not bad, failures=bad)

    got = {p: counting.rank2_fm_count(p) for p in (5, 13, 229)}
    hs = {p: bqf.wide_class_number(p) for p in (5, 13, 229)}
    record("rank2_counts", got == {5: 1, 13: 1, 229: 2} and hs == {5: 1, 13: 1, 229: 3},
           counts={str(k): v for k, v in got.items()}, class_numbers={str(k): v for k, v in hs.items()})

    f = bqf.BinaryQuadraticForm(1, 15, -1)
    g = bqf.BinaryQuadraticForm(3, 13, -5)
    sg = same_genus(bqf.form_to_lattice(f), bqf.form_to_lattice(g))
    iso = bqf.brute_equiv_oracle(f, g, 20, proper=False)
    record("genus_with_two_classes", sg and iso is None)

    passed = all(c["passed"] for c in checks)
    return _ok({"target": "all", "nmax": nmax, "checks": checks}, passed=passed)


def cmd_lattice(action: str, files) -> CommandResult:
    try:
        lats = [load_lattice(p) for p in files]
    except OSError as e:
        raise InvalidInput(str(e)) from None
    if action == "disc":
        (L,) = lats
        F = discriminant_form(L)
        return _ok({"order": F.order, **form_to_json(F),
                    "q_values": [frac_str(F.q_gram[i][i]) for i in range(F.rank)]})
    if action == "signature":
        (L,) = lats
        sig = signature(L)
        return _ok({"pos": sig.positive, "neg": sig.negative})
    if action == "genus-check":
        L1, L2 = lats
        s1, s2 = signature(L1), signature(L2)
        F1, F2 = discriminant_form(L1), discriminant_form(L2)
        same, w = (False, None) if s1 != s2 else is_isomorphic(F1, F2)
        return _ok({
            "same_genus": same,
            "signatures": [[s1.positive, s1.negative], [s2.positive, s2.negative]],
            "witness": [list(r) for r in w.matrix] if w is not None else None,
        })
    raise InvalidInput(f"unknown lattice action {action!r}")


# -- argument parsing ----------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="indent JSON output")
    p = argparse.ArgumentParser(prog="k3fm", parents=[common],
                                description=__doc__.split("\n\n")[0].strip())
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("partners", parents=[common], help="list FM partners of a degree-2n K3 of Picard number 1")
    sp.add_argument("n", type=int)

    sp = sub.add_parser("count", parents=[common], help="count FM partners")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--rank1", type=int, metavar="N")
    g.add_argument("--rank2", type=int, metavar="P")
    g.add_argument("--general", metavar="FILE")

    sp = sub.add_parser("verify", parents=[common], help="run exhaustive checks")
    vs = sp.add_subparsers(dest="target", required=True)
    v = vs.add_parser("lemma23", parents=[common])
    v.add_argument("--n", type=int, required=True)
    v = vs.add_parser("lemma25", parents=[common])
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--bound", type=int, required=True)
    v.add_argument("--signed", action="store_true", help="diagnostic search over signed integers")
    v = vs.add_parser("nseq", parents=[common])
    v.add_argument("--n", type=int, required=True)
    v = vs.add_parser("all", parents=[common])
    v.add_argument("--nmax", type=int, default=60)

    sp = sub.add_parser("lattice", parents=[common], help="lattice invariants from JSON Gram files")
    sp.add_argument("action", choices=["disc", "signature", "genus-check"])
    sp.add_argument("files", nargs="+")
    return p


def run(argv=None) -> CommandResult:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "partners":
            return cmd_partners(args.n)
        if args.command == "count":
            return cmd_count(args.rank1, args.rank2, args.general)
        if args.command == "verify":
            if args.target == "lemma23":
                return verify_lemma23(args.n)
            if args.target == "lemma25":
                return verify_lemma25(args.n, args.bound, args.signed)
            if args.target == "nseq":
                return verify_nseq(args.n)
            return verify_all(args.nmax)
        if args.command == "lattice":
            want = 2 if args.action == "genus-check" else 1
            if len(args.files) != want:
                raise InvalidInput(f"lattice {args.action} takes {want} file(s)")
            return cmd_lattice(args.action, args.files)
    except (InvalidInput, LatticeError, BoundExceeded) as e:
        return CommandResult(INVALID_INPUT, {"error": str(e)})
    raise AssertionError("unreachable")


def main(argv=None) -> int:
    try:
        pretty = "--pretty" in (sys.argv[1:] if argv is None else argv)
        res = run(argv)
    except SystemExit as e:  # argparse errors
        return 2 if e.code else 0
    print(dumps({"status": res.status, **res.payload}, pretty=pretty))
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())

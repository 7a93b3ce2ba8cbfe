"""``abelcone`` command line.

Exit codes: 0 success / Member, 1 NonMember, 3 Unknown, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import canring, cm, fourier, positivity, reproduce
from .certificates import Status, _jsonable
from .documents import DocumentError, dumps, load, to_document

EXIT = {Status.MEMBER: 0, Status.NONMEMBER: 1, Status.UNKNOWN: 3}
CONES = ("semi", "nef", "weak", "psef1", "psef-curve", "sym2")


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("ABELCONE_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"ABELCONE_SEED must be an integer, got {raw!r}") from None


def _number(x, as_float: bool) -> str:
    return repr(float(x)) if as_float else str(x)


def _floatify(obj):
    if isinstance(obj, dict):
        return {k: _floatify(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_floatify(v) for v in obj]
    if isinstance(obj, str):
        try:
            return float(Fraction(obj))
        except (ValueError, ZeroDivisionError):
            return obj
    return obj


def _emit(obj, as_float: bool):
    if as_float:
        obj = _floatify(obj)
    print(json.dumps(obj, indent=2, sort_keys=False))


def _parse_grid(raw: str | None):
    """``"3"`` -> default grid with denominator bound 3; ``"-1,0,1/2"`` -> that list."""
    if raw is None:
        return None
    try:
        if "," not in raw and "/" not in raw:
            return positivity.default_grid(denominator=int(raw))
        return [Fraction(p) for p in raw.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"bad --grid {raw!r}") from None


def cmd_product(args) -> int:
    x, y = load(args.x), load(args.y)
    if x.g != y.g:
        raise UsageError(f"classes live on different g ({x.g} vs {y.g})")
    z = canring.mul(x, y)
    if z.overflow:
        print("note: total degree exceeds 2g, product is zero", file=sys.stderr)
        print("0")
        return 0
    if z.degree == 2 * z.g:
        value = z.scalar
        if args.json:
            _emit({"g": z.g, "degree": z.degree, "value": str(value)}, args.float)
        else:
            print(_number(value, args.float))
        return 0
    if args.float:
        _emit(to_document(z), True)
    else:
        print(dumps(z))
    return 0


def _run_cone(cone: str, x, args):
    needs = {"semi": 2, "nef": 2, "weak": 2, "sym2": 2, "psef1": 1, "psef-curve": 2 * x.g - 1}
    if x.degree != needs[cone]:
        raise UsageError(f"cone {cone!r} needs a class of degree {needs[cone]}, got {x.degree}")
    if cone in ("nef",) and x.g != 2:
        raise UsageError("the nef test is implemented for g = 2")
    if cone == "semi":
        return positivity.is_semipositive(x)
    if cone == "nef":
        return positivity.is_nef_canonical(x)
    if cone == "weak":
        return positivity.weak_positivity_oracle(x, restarts=args.restarts, seed=args.seed, tol=args.tol)
    if cone == "psef1":
        return positivity.psef_divisor_test(x)
    if cone == "psef-curve":
        return positivity.psef_curve_test(x)
    lp_mode = "float" if args.float_lp else "exact"
    return positivity.decompose_sym2(x, grid=_parse_grid(args.grid), lp_mode=lp_mode)


def _print_verdict(verdict, args):
    if args.json:
        _emit(verdict.to_dict(), args.float)
        return
    line = verdict.status.value
    if verdict.is_member and verdict.supported:
        line += " (supported)"
    print(line)
    print(f"rule: {verdict.rule}")
    if verdict.certificate is not None:
        cert = _jsonable(verdict.certificate)
        print("certificate: " + json.dumps(_floatify(cert) if args.float else cert))


def cmd_member(args) -> int:
    x = load(args.x)
    try:
        verdict = _run_cone(args.cone, x, args)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _print_verdict(verdict, args)
    return EXIT[verdict.status]


def cmd_decompose(args) -> int:
    x = load(args.x)
    if x.degree != 2:
        raise UsageError("decompose needs a degree-2 class")
    try:
        verdict = positivity.decompose_sym2(x, grid=_parse_grid(args.grid), lp_mode="float" if args.float_lp else "exact")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _print_verdict(verdict, args)
    return EXIT[verdict.status]


def cmd_verify_paper(args) -> int:
    try:
        items = reproduce.run(seed=args.seed, only=args.only, g=args.g, restarts=args.restarts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = reproduce.report(items, args.seed)
    if args.json:
        print(json.dumps(rep, indent=2))
    else:
        width = max((len(it.name) for it in items), default=10)
        for it in items:
            mark = "PASS" if it.passed else "FAIL"
            print(f"{mark}  {it.group:<10} {it.name:<{width}}  {it.detail}")
        print(f"{sum(it.passed for it in items)}/{len(items)} passed")
    return 0 if rep["all_passed"] else 1


def cmd_fourier_check(args) -> int:
    import random

    rng = random.Random(args.seed)
    ns = [args.n] if args.n else [1, 2, 3]
    results = []
    for n in ns:
        ks = [args.k] if args.k is not None else range(n + 1)
        for k in ks:
            if not 0 <= k <= n:
                raise UsageError("need 0 <= k <= n")
            ok = sum(fourier.check_prodform(n, k, reproduce._random_two_form(rng, n)) for _ in range(args.samples))
            results.append({"n": n, "k": k, "passed": ok, "samples": args.samples})
    if args.json:
        print(json.dumps(results, indent=2))
    else:
        for r in results:
            print(f"n={r['n']} k={r['k']}: {r['passed']}/{r['samples']}")
    return 0 if all(r["passed"] == r["samples"] for r in results) else 1


def cmd_cm_witness(args) -> int:
    if args.archived:
        doc = cm.load_archived_witness()
    else:
        try:
            verdict = cm.semi_not_strong_witness(args.n, args.k)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if not verdict.is_nonmember:
            print("Unknown")
            return 3
        doc = verdict.extra["witness"]
    checks = cm.validate_witness(doc)
    if args.json:
        print(json.dumps({"witness": doc, "checks": checks}, indent=2))
    else:
        print(f"n={doc['n']} k={doc['k']} phi={doc['phi']} pairing={doc['pairing']}")
        for name, ok in checks.items():
            print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return 0 if all(checks.values()) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="abelcone", description="Positivity cones of canonical classes on A x A.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=False):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--float", action="store_true", help="print numbers as floats")
        if seed:
            sp.add_argument("--seed", type=int, default=None, help="random seed (default: $ABELCONE_SEED or 0)")

    sp = sub.add_parser("product", help="multiply two classes")
    sp.add_argument("x")
    sp.add_argument("y")
    common(sp)
    sp.set_defaults(func=cmd_product)

    sp = sub.add_parser("member", help="cone membership with a certificate")
    sp.add_argument("cone", choices=CONES)
    sp.add_argument("x")
    sp.add_argument("--restarts", type=int, default=64)
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--grid", default=None, help="denominator bound or comma-separated rationals")
    sp.add_argument("--float-lp", action="store_true", help="float-assisted LP (exact re-solve)")
    common(sp, seed=True)
    sp.set_defaults(func=cmd_member)

    sp = sub.add_parser("decompose", help="nonnegative decomposition into boundary-divisor products")
    sp.add_argument("x")
    sp.add_argument("--grid", default=None)
    sp.add_argument("--float-lp", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("verify-paper", help="run the reproduction suite")
    sp.add_argument("--only", choices=reproduce.GROUPS, default=None)
    sp.add_argument("--g", type=int, default=None, help="restrict ring relations to one g")
    sp.add_argument("--restarts", type=int, default=64)
    common(sp, seed=True)
    sp.set_defaults(func=cmd_verify_paper)

    sp = sub.add_parser("fourier-check", help="check the Pontryagin product formulas")
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--samples", type=int, default=5)
    common(sp, seed=True)
    sp.set_defaults(func=cmd_fourier_check)

    sp = sub.add_parser("cm-witness", help="semipositive but not strongly positive class on E^n")
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--archived", action="store_true", help="re-validate the shipped n=4, k=2 certificate")
    common(sp)
    sp.set_defaults(func=cmd_cm_witness)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        if getattr(args, "g", None) is not None and not 1 <= args.g <= canring.MAX_G:
            raise UsageError(f"--g must be in 1..{canring.MAX_G}")
        if getattr(args, "restarts", 1) < 1:
            raise UsageError("--restarts must be >= 1")
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

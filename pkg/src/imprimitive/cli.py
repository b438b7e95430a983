"""imprimitive-lab: command-line frontend.

Exit codes: 0 ok, 1 suite or cross-check failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import density as dn
from . import families as fam
from . import records
from . import verify
from .algebra import Q
from .classify import classify
from .curves import NonCurve, NotOnCurve, WeierstrassCurve
from .lmfdb import LmfdbClient, cross_check
from .rational_points import TorsionPointError, torsion_subgroup
from .reduction import MAX_PRIME
from .scans import (
    scan_cyclic_reduction,
    scan_elliptic_index,
    scan_elliptic_primitive,
    scan_multiplicative,
    verify_example_31,
)

log = logging.getLogger("imprimitive")

# primes per streamed segment; each segment is flushed before the next starts
SEGMENT = 20000

# labels of the registry that name actual LMFDB curves
LMFDB_LABELS = ("5835.c2", "20622.j1", "12100.j1")


class InputError(ValueError):
    pass


# -- argument parsing ---------------------------------------------------------


def _rationals(text: str, count: int | None = None, what: str = "value") -> list[Fraction]:
    try:
        vals = [Q(v) for v in text.split(",") if v.strip()]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad {what}: {text!r}") from None
    if count is not None and len(vals) != count:
        raise InputError(f"{what} needs {count} comma-separated rationals, got {text!r}")
    return vals


def _ells(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        out = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise InputError(f"bad --ell {text!r}") from None
    if not out or any(l < 2 for l in out):
        raise InputError(f"bad --ell {text!r}")
    return out


def _params(values: list[str] | None) -> list[Fraction]:
    out = []
    for v in values or []:
        out += _rationals(v, what="--param")
    return out


def resolve_target(args) -> tuple[WeierstrassCurve, object, tuple | None, str]:
    """(E, P or None, default ells, name) from --registry, --family or --curve."""
    given = [n for n in ("registry", "family", "curve") if getattr(args, n, None)]
    if len(given) != 1:
        raise InputError("give exactly one of --registry, --family, --curve")
    try:
        if args.registry:
            inst = fam.registry_entry(args.registry)
            return inst.curve, inst.point, inst.ells, inst.label
        if args.family:
            inst = fam.family(args.family, *_params(args.param))
            name = f"{inst.family}({','.join(str(v) for v in inst.params.values())})"
            return inst.curve, inst.point, inst.ells, name
        E = WeierstrassCurve(*_rationals(args.curve, 5, "--curve"))
        P = None
        if args.point:
            x, y = _rationals(args.point, 2, "--point")
            P = E.point(x, y)
        return E, P, None, f"curve({args.curve})"
    except (KeyError, TypeError) as exc:
        raise InputError(str(exc).strip("'\"")) from None
    except (NonCurve, NotOnCurve, fam.BadParameter) as exc:
        raise InputError(str(exc)) from None


def _check_common(args):
    if getattr(args, "bound", None) is not None and not 2 <= args.bound <= MAX_PRIME:
        raise InputError(f"--bound must be between 2 and {MAX_PRIME}")
    if getattr(args, "workers", 1) < 1:
        raise InputError("--workers must be >= 1")


# -- scan ---------------------------------------------------------------------


def _scan_plan(args):
    """(kind, config, run(start, stop) -> ScanReport, ok(rec) -> bool)."""
    w = args.workers
    if args.mult is not None:
        x = _rationals(args.mult, 1, "--mult")[0]
        if x in (0, 1, -1):
            raise InputError("--mult needs x other than 0, 1, -1")
        cfg = {"kind": "multiplicative", "x": records.qstr(x)}
        return "multiplicative", cfg, lambda a, b: scan_multiplicative(x, b, w, a), lambda r: r.index == 1
    if args.quad:
        cfg = {"kind": "quad-field"}

        def run(a, b):
            # inert primes count up to the overall bound (their norm is p^2)
            rep = verify_example_31(args.bound)
            rep.records = [r for r in rep.records if a <= r.p <= b]
            rep.bad_primes = [p for p in rep.bad_primes if a <= p <= b]
            return rep

        return "quad-field", cfg, run, lambda r: r.index == 1

    E, P, default_ells, name = resolve_target(args)
    base = {"curve": [records.qstr(c) for c in E.ainvs], "target": name}
    if args.cyclic:
        cfg = dict(base, kind="cyclic-reduction")
        return "cyclic-reduction", cfg, lambda a, b: scan_cyclic_reduction(E, b, w, a), lambda r: bool(r.cyclic)
    if P is None:
        raise InputError("this scan needs a point (--point, --registry or --family)")
    base["point"] = [records.qstr(c) for c in P.xy()] if not P.is_zero() else None
    if args.primitive:
        cfg = dict(base, kind="elliptic-primitive")
        return "elliptic-primitive", cfg, lambda a, b: scan_elliptic_primitive(E, P, b, w, a), lambda r: r.index == 1
    ells = _ells(args.ell) or default_ells
    if not ells:
        raise InputError("--ell is required for an index scan of an inline curve")
    cfg = dict(base, kind="elliptic-index", ells=list(ells))

    def ok(r):
        return any(r.index % l == 0 for l in ells)

    return "elliptic-index", cfg, lambda a, b: scan_elliptic_index(E, P, ells, b, w, a), ok


def _segments(start: int, bound: int):
    lo = start
    while lo <= bound:
        hi = min(bound, lo + SEGMENT - 1)
        yield lo, hi
        lo = hi + 1


def cmd_scan(args) -> int:
    _check_common(args)
    kind, cfg, run, ok = _scan_plan(args)
    cfg["bound"] = args.bound
    job = records.job_id(cfg)
    start = 2
    lines: list[dict] = []
    if args.resume_from_prime is not None:
        if not args.out:
            raise InputError("--resume-from-prime needs --out")
        start = max(2, args.resume_from_prime)
        lines = records.truncate_for_resume(args.out, job, start)
    elif args.out:
        # a fresh run replaces earlier output of the same job
        records.truncate_for_resume(args.out, job, 0)
    ts = args.timestamps
    stream = None if args.out else sys.stdout
    with records.JsonlWriter(args.out, stream) as out:
        for a, b in _segments(start, args.bound):
            rep = run(a, b)
            bad = [(p, None) for p in rep.bad_primes]
            good = [(r.p, r) for r in rep.records]
            for p, r in sorted(bad + good, key=lambda t: t[0]):
                line = records.bad_line(job, kind, p, ts) if r is None else records.prime_line(job, kind, r, ok(r), ts)
                out.write(line)
                lines.append(line)
        summary = records.summarize(job, kind, args.bound, lines, ts)
        summary["config"] = cfg
        out.write(summary)
    if args.out:
        print(json.dumps({k: summary[k] for k in ("scan", "bound", "scanned", "successes", "density", "counterexamples", "first_witness")}))
    return 0


# -- classify -----------------------------------------------------------------


def cmd_classify(args) -> int:
    E, P, default_ells, name = resolve_target(args)
    if P is None:
        raise InputError("classify needs a point")
    ells = _ells(args.ell) or default_ells
    if not ells:
        raise InputError("--ell is required for an inline curve")
    if any(l not in (2, 3, 5, 7) for l in ells):
        raise InputError("classify supports l in {2, 3, 5, 7}")
    job = records.job_id({"cmd": "classify", "target": name, "curve": [str(c) for c in E.ainvs], "ells": list(ells)})
    try:
        results = [classify(E, P, l) for l in ells]
    except TorsionPointError as exc:
        raise InputError(str(exc)) from None
    with records.JsonlWriter(args.out, sys.stdout) as out:
        for c in results:
            out.write(records.make(job, "classification", args.timestamps, target=name, **c.to_dict()))
    return 0


# -- family -------------------------------------------------------------------


def cmd_family(args) -> int:
    if not args.family:
        raise InputError("--family is required")
    try:
        inst = fam.family(args.family, *_params(args.param))
    except (KeyError, TypeError) as exc:
        raise InputError(str(exc).strip("'\"")) from None
    except fam.BadParameter as exc:
        raise InputError(str(exc)) from None
    payload = inst.describe()
    if args.family == "twist2":
        payload["identities"] = fam.twist2_identities(*_params(args.param))
    job = records.job_id({"cmd": "family", **payload["params"], "family": args.family})
    with records.JsonlWriter(args.out, sys.stdout) as out:
        out.write(records.make(job, "family", args.timestamps, **payload))
    return 0


# -- density ------------------------------------------------------------------

GROUPS = {
    "unipotent": (dn.unipotent_group, 1),
    "g2": (dn.g2_group, 1),
    "g3": (dn.g3_group, 1),
    "level6": (dn.level6_group, 1),
}


def _group(name: str):
    if name in GROUPS:
        fn, r = GROUPS[name]
        return fn(), r
    head, _, ell = name.partition(":")
    if head in ("affine", "aff1") and ell.isdigit():
        ell = int(ell)
        if ell not in (2, 3, 5, 7):
            raise InputError("affine groups are enumerated for l in {2, 3, 5, 7}")
        return (dn.affine_group(ell), 1) if head == "affine" else (dn.aff1_group(ell), 0)
    raise InputError(f"unknown group {name!r}; known: {', '.join(GROUPS)}, affine:L, aff1:L")


def cmd_density(args) -> int:
    payload: dict = {}
    if args.artin:
        a = dn.artin_constant(args.cutoff)
        payload = {"artin_partial": f"{a.value:.6f}", "artin_lower": f"{a.lower:.6f}", "cutoff": args.cutoff}
    elif args.mult is not None:
        x = _rationals(args.mult, 1, "--mult")[0]
        if x.denominator != 1:
            raise InputError("the density preset takes an integer x")
        try:
            payload = {"x": int(x), "density": f"{dn.multiplicative_density_preset(int(x)):.6f}"}
        except ValueError as exc:
            raise InputError(str(exc)) from None
    elif args.lemma41:
        res = dn.lemma41_suite(tuple(_ells(args.ell) or (2, 3, 5)), args.count, args.seed)
        payload = {"lemma41": {str(k): v for k, v in res.items()}}
    else:
        G, r = _group(args.group or "unipotent")
        rep = dn.truncated_density(G, args.cutoff, r)
        payload = {"group": args.group or "unipotent", "order": G.order, **rep.to_dict()}
    job = records.job_id({"cmd": "density", **{k: str(v) for k, v in payload.items() if k in ("group", "x", "cutoff")}})
    with records.JsonlWriter(args.out, sys.stdout) as out:
        out.write(records.make(job, "density", args.timestamps, **payload))
    if args.lemma41:
        return 1 if any(v["violations"] for v in payload["lemma41"].values()) else 0
    return 0


# -- verify-paper -------------------------------------------------------------


def _lmfdb_checks(url) -> list:
    client = LmfdbClient(url)
    out = []
    for label in LMFDB_LABELS:
        inst = fam.registry_entry(label)
        out.append(cross_check(label, inst.curve, torsion_subgroup(inst.curve).structure, client))
    return out


def cmd_verify_paper(args) -> int:
    _check_common(args)
    only = None
    if args.only:
        try:
            only = sorted({int(v) for v in args.only.split(",")})
        except ValueError:
            raise InputError(f"bad --only {args.only!r}") from None
        if any(n not in verify.CRITERIA for n in only):
            raise InputError(f"criteria are numbered 1 to {len(verify.CRITERIA)}")
    cfg = verify.config(bound=args.bound, workers=args.workers)
    results = []
    job = records.job_id({"cmd": "verify-paper", **cfg})
    with records.JsonlWriter(args.out) as out:
        for n in only or sorted(verify.CRITERIA):
            res = verify.run_criterion(n, cfg)
            print(res.line(), flush=True)
            for c in res.checks:
                if not c.passed:
                    print(f"      {c.name}: {c.detail}")
            out.write(records.make(job, "criterion", args.timestamps, **res.to_dict()))
            results.append(res)
        checks = []
        if args.lmfdb:
            checks = _lmfdb_checks(args.lmfdb_url)
            for c in checks:
                print(f"[LMFDB {c.status}] {c.label}: {c.detail}")
                out.write(records.make(job, "lmfdb", args.timestamps, label=c.label, status=c.status, detail=c.detail))
    failed = [r.number for r in results if not r.passed] + [c.label for c in checks if c.failed]
    print(f"{len(results) - sum(1 for r in results if not r.passed)}/{len(results)} criteria passed")
    if failed:
        print("failures: " + ", ".join(str(f) for f in failed))
        return 1
    return 0


# -- lmfdb --------------------------------------------------------------------


def cmd_lmfdb(args) -> int:
    labels = args.labels or list(LMFDB_LABELS)
    client = LmfdbClient(args.lmfdb_url)
    code = 0
    for label in labels:
        try:
            inst = fam.registry_entry(label)
        except KeyError:
            raise InputError(f"no registry entry {label!r}") from None
        c = cross_check(label, inst.curve, torsion_subgroup(inst.curve).structure, client)
        print(records.dumps({"label": c.label, "status": c.status, "detail": c.detail}))
        code = max(code, 1 if c.failed else 0)
    return code


# -- main ---------------------------------------------------------------------


def _target_flags(p):
    p.add_argument("--curve", help="a1,a2,a3,a4,a6 as rationals")
    p.add_argument("--point", help="x,y as rationals")
    p.add_argument("--registry", metavar="LABEL", help="named example, e.g. 5835.c2")
    p.add_argument("--family", metavar="NAME", help=f"one of {', '.join(fam.FAMILIES)}")
    p.add_argument("--param", action="append", metavar="Q", help="family parameter(s); repeat or comma-separate")
    p.add_argument("--ell", metavar="L[,L...]")


def _output_flags(p):
    p.add_argument("--out", metavar="PATH", help="append JSONL records to PATH")
    p.add_argument("--timestamps", action="store_true", help="add a timestamp to every record")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="imprimitive-lab", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("scan", help="prime-by-prime scan, JSONL output")
    _target_flags(p)
    _output_flags(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--primitive", action="store_true", help="is P a generator mod p")
    mode.add_argument("--cyclic", action="store_true", help="is E(F_p) cyclic")
    mode.add_argument("--mult", metavar="X", help="is X a primitive root mod p")
    mode.add_argument("--quad", action="store_true", help="the Q(sqrt 5) primitive-root example")
    p.add_argument("--bound", type=int, default=10**4)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--resume-from-prime", type=int, metavar="P")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("classify", help="conditions A, B, C for (E, P, l)")
    _target_flags(p)
    _output_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("family", help="build a family instance")
    p.add_argument("--family", metavar="NAME", help=f"one of {', '.join(fam.FAMILIES)}")
    p.add_argument("--param", action="append", metavar="Q")
    _output_flags(p)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("density", help="truncated densities, Artin constant, fixed-space lemma")
    p.add_argument("--group", help="unipotent, g2, g3, level6, affine:L or aff1:L")
    p.add_argument("--cutoff", type=int, default=1000)
    p.add_argument("--artin", action="store_true")
    p.add_argument("--mult", metavar="X", help="standard density preset for integer X")
    p.add_argument("--lemma41", action="store_true")
    p.add_argument("--ell", metavar="L[,L...]")
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    _output_flags(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("verify-paper", help="run the acceptance suite")
    p.add_argument("--bound", type=int, default=10**4, help="bound for the elliptic scans")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--only", metavar="N[,N...]", help="run only these criteria")
    p.add_argument("--lmfdb", action="store_true", help="also cross-check named curves with LMFDB")
    p.add_argument("--lmfdb-url", metavar="URL")
    _output_flags(p)
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("lmfdb", help="cross-check registry curves with LMFDB")
    p.add_argument("labels", nargs="*")
    p.add_argument("--lmfdb-url", metavar="URL")
    p.set_defaults(func=cmd_lmfdb)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"imprimitive-lab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 all checks pass, 2 a mathematical check failed, 1 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from gmpy2 import mpq

from . import CONVENTION_VERSION, __version__
from .cache import InvariantCache
from .exactring import LaurentQT, Q, RationalQT
from .lmov import (
    PartitionFunctionData,
    apply_perturbation,
    build_partition_function,
    free_energy,
    run_pipeline,
)
from .partitions import format_vector, parse_vector
from .skein.braids import BraidWord, closure_analysis, parse_braid
from .skein.invariants import MAX_LEVEL, colored_invariant
from .skein.oracle import homfly_skein
from .skein.registry import load_registry, lookup
from .symfun import Cap

log = logging.getLogger("lmovkit")

EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2


class UsageError(Exception):
    pass


# ----------------------------------------------------------------------------
# argument helpers
# ----------------------------------------------------------------------------


def parse_cap(text: str, L: int, total: int | None = None) -> Cap:
    parts = [int(x) for x in str(text).replace(" ", "").split(",") if x]
    if len(parts) == 1:
        parts = parts * L
    if len(parts) != L:
        raise UsageError(f"cap {text!r} does not match {L} components")
    if any(p < 0 or p > MAX_LEVEL for p in parts):
        raise UsageError(f"cap entries must lie in 0..{MAX_LEVEL}")
    return Cap(tuple(parts), total)


def parse_primes(text: str) -> tuple:
    import gmpy2

    out = tuple(int(x) for x in text.split(",") if x.strip())
    for p in out:
        if not gmpy2.is_prime(p):
            raise UsageError(f"{p} is not prime")
    return out


def _exp(text: str) -> int:
    """Doubled exponent of a power like '2', '-1', '(1/2)', '-3/2'."""
    e = Q(text.strip("() "))
    return int(e * 2)


def parse_scalar(text: str) -> LaurentQT:
    """Parse sums of terms like '+q', '-1/2*t^(1/2)', '+3*q^-1*t'."""
    text = text.strip()
    if not text:
        raise UsageError("empty scalar")
    if text[0] not in "+-":
        text = "+" + text
    out = LaurentQT()
    pos = 0
    for m in re.finditer(r"([+-])((?:[^+\-^]|\^\(?-?[\d/]+\)?)+)", text):
        if m.start() != pos:
            raise UsageError(f"cannot parse scalar {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coef = mpq(sign)
        qh = th = 0
        for fac in m.group(2).split("*"):
            fac = fac.strip()
            if not fac:
                continue
            if fac[0] in "qt":
                e = _exp(fac[2:]) if fac[1:2] == "^" else 2
                if len(fac) > 1 and fac[1] != "^":
                    raise UsageError(f"bad factor {fac!r}")
                if fac[0] == "q":
                    qh += e
                else:
                    th += e
            else:
                coef *= Q(fac)
        out = out + LaurentQT({(qh, th): coef})
    if pos != len(text):
        raise UsageError(f"cannot parse scalar {text!r}")
    return out


def parse_perturb(text: str, L: int) -> tuple:
    """'(2):+q' or '[1|1]:-t^(1/2)' -> (vector partition, LaurentQT)."""
    if ":" not in text:
        raise UsageError("perturbation must look like COLOR:DELTA")
    color, delta = text.split(":", 1)
    color = color.strip()
    if color.startswith("(") and color.endswith(")"):
        color = color[1:-1]
    A = parse_vector(color)
    if len(A) != L:
        raise UsageError(f"perturbed color {text!r} needs {L} components")
    return A, parse_scalar(delta)


def read_config(path: str) -> dict:
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"bad config line {raw!r}")
        k, v = line.split("=", 1)
        out[k.strip().replace("-", "_")] = v.strip()
    return out


def resolve_link(args) -> tuple[str, BraidWord]:
    if args.braid is not None:
        b = parse_braid(args.braid, args.strands)
        return args.link or f"braid[{b}]", b
    if not args.link:
        raise UsageError("give --link NAME or --braid WORD")
    try:
        reg = load_registry(args.registry) if args.registry else None
        return args.link, lookup(args.link, reg)
    except KeyError as exc:
        raise UsageError(str(exc).strip("'\"")) from exc


# ----------------------------------------------------------------------------
# W computation with cache and optional parallelism
# ----------------------------------------------------------------------------


def _compute_one(payload):
    strands, letters, colors = payload
    return colored_invariant(BraidWord(strands, letters), colors).to_json()


def compute_W(braid: BraidWord, cap: Cap, jobs: int = 1, cache: InvariantCache | None = None) -> dict:
    keys = [A for A in cap.keys() if any(A)]
    W = {A: RationalQT(1) for A in cap.keys() if not any(A)}
    todo = []
    for A in keys:
        hit = None
        if cache is not None:
            try:
                hit = cache.get(braid, A)
            except OSError as exc:
                log.warning("ignoring cache entry: %s", exc)
        if hit is None:
            todo.append(A)
        else:
            W[A] = hit
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_compute_one, [(braid.strands, braid.letters, A) for A in todo]))
        fresh = {A: RationalQT.from_json(r) for A, r in zip(todo, results)}
    else:
        fresh = {A: colored_invariant(braid, A) for A in todo}
    for A, v in fresh.items():
        W[A] = v
        if cache is not None:
            cache.put(braid, A, v)
    return {A: W[A] for A in cap.keys()}


def _pf(args, name: str, braid: BraidWord) -> PartitionFunctionData:
    L = closure_analysis(braid).L
    cap = parse_cap(args.cap, L, args.total)
    cache = None if args.no_cache else InvariantCache(args.cache_dir)
    W = compute_W(braid, cap, args.jobs, cache)
    return PartitionFunctionData(name, braid, cap, W)


def _emit(args, filename: str, text: str) -> None:
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / filename).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


# ----------------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------------


def cmd_invariant(args) -> int:
    name, braid = resolve_link(args)
    pf = _pf(args, name, braid)
    doc = {
        "link": name,
        "braid": {"strands": braid.strands, "word": str(braid)},
        "cap": list(pf.cap.per),
        "convention": CONVENTION_VERSION,
        "W": [{"A": format_vector(A), "value": v.to_json()} for A, v in pf.W.items()],
    }
    _emit(args, "invariant.json", _dumps(doc))
    return EXIT_OK


def cmd_partition_function(args) -> int:
    name, braid = resolve_link(args)
    pf = _pf(args, name, braid)
    tau = None
    if args.framings:
        tau = tuple(int(x) for x in args.framings.split(","))
        if len(tau) != pf.L:
            raise UsageError("need one framing per component")
    fe = free_energy(pf, tau)
    doc = {
        "link": name,
        "cap": list(pf.cap.per),
        "framings": list(tau) if tau else None,
        "Z": pf.schur_series().to_json(),
        "F": fe.F.to_json(),
    }
    _emit(args, "partition_function.json", _dumps(doc))
    return EXIT_OK


def cmd_lmov(args) -> int:
    name, braid = resolve_link(args)
    pf = _pf(args, name, braid)
    reference = pf.W
    if args.perturb:
        A, delta = parse_perturb(args.perturb, pf.L)
        if A not in pf.W:
            raise UsageError(f"perturbed color {format_vector(A)} is outside the cap")
        pf = PartitionFunctionData(name, braid, pf.cap, apply_perturbation(pf.W, A, RationalQT(delta)))
    primes = parse_primes(args.primes)
    res = run_pipeline(pf, primes, W_reference=reference)
    report = {
        "link": name,
        "cap": list(pf.cap.per),
        "total": pf.cap.total,
        "perturb": args.perturb,
        "ok": res.ok,
        "checks": [r.to_json() for r in res.reports],
    }
    _emit(args, "report.json", _dumps(report))
    _emit(args, "ntable.csv", res.N.to_csv())
    for r in res.reports:
        log.info("%-40s %s", r.name, "pass" if r.status else "FAIL")
    return EXIT_OK if res.ok else EXIT_CHECK


def _selftest_cases():
    from .symfun import unknot_invariant
    from .skein.invariants import homfly

    unknot = BraidWord(1, ())
    yield "unknot normalization", homfly(unknot) == unknot_invariant((1,))
    for nm in ("hopf", "trefoil", "torus(2,4)", "torus(2,5)", "figure8"):
        b = lookup(nm)
        yield f"hecke == skein oracle ({nm})", homfly(b) == homfly_skein(b)
    for nm, cap in (("unknot", Cap((3,))), ("trefoil", Cap((2,))), ("hopf", Cap((1, 1)))):
        pf = build_partition_function(lookup(nm), cap, nm)
        res = run_pipeline(pf, (2, 3), W_reference=pf.W)
        yield f"lmov checks ({nm}, cap {cap})", res.ok
    pf = build_partition_function(lookup("trefoil"), Cap((2,)), "trefoil")
    bad = PartitionFunctionData("trefoil", pf.braid, pf.cap, apply_perturbation(pf.W, ((2,),), RationalQT(LaurentQT({(2, 0): 1}))))
    yield "mutation detected", not run_pipeline(bad, (2,), W_reference=pf.W).ok


def cmd_selftest(args) -> int:
    ok = True
    for label, passed in _selftest_cases():
        ok &= bool(passed)
        print(f"{'PASS' if passed else 'FAIL'}  {label}")
    return EXIT_OK if ok else EXIT_CHECK


def cmd_bench(args) -> int:
    name, braid = resolve_link(args)
    L = closure_analysis(braid).L
    cap = parse_cap(args.cap, L, args.total)
    t0 = time.perf_counter()
    W = compute_W(braid, cap, args.jobs, None)
    t1 = time.perf_counter()
    res = run_pipeline(PartitionFunctionData(name, braid, cap, W), parse_primes(args.primes), W_reference=W)
    t2 = time.perf_counter()
    print(f"link={name} cap={cap} colors={len(W)} invariants={t1 - t0:.3f}s pipeline={t2 - t1:.3f}s ok={res.ok}")
    return EXIT_OK


# ----------------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------------

_DEFAULTS = {
    "link": None,
    "braid": None,
    "strands": None,
    "cap": "2",
    "total": None,
    "framings": None,
    "primes": "2,3,5",
    "out": None,
    "jobs": 1,
    "no_cache": False,
    "cache_dir": None,
    "registry": None,
    "perturb": None,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lmovkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"lmovkit {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key=value file; command-line flags take precedence")
        p.add_argument("--link", help="registry name, e.g. trefoil or torus(2,5)")
        p.add_argument("--braid", help='braid word such as "s1 s1 -s2"')
        p.add_argument("--strands", type=int, help="strand count for --braid")
        p.add_argument("--registry", help="JSON link registry replacing the built-in one")
        p.add_argument("--cap", help="degree cap per component, e.g. 3 or 2,2")
        p.add_argument("--total", type=int, help="bound on the total degree")
        p.add_argument("--framings", help="integer framing per component, e.g. 1 or 1,-1")
        p.add_argument("--primes", help="primes for the p-adic checks, e.g. 2,3,5")
        p.add_argument("--out", help="output directory (default: stdout)")
        p.add_argument("--jobs", type=int, help="worker processes for invariant evaluation")
        p.add_argument("--no-cache", action="store_true", default=None, help="bypass the on-disk cache")
        p.add_argument("--cache-dir", help="cache directory (default: $LMOVKIT_CACHE_DIR or ~/.cache/lmovkit)")
        return p

    common(sub.add_parser("invariant", help="colored invariants W_A")).set_defaults(func=cmd_invariant)
    common(sub.add_parser("partition-function", help="Z and F = log Z")).set_defaults(func=cmd_partition_function)
    p = common(sub.add_parser("lmov", help="N table and the full check report"))
    p.add_argument("--perturb", help="test hook: add DELTA to one W, e.g. '(2):+q'")
    p.set_defaults(func=cmd_lmov)
    sub.add_parser("selftest", help="quick consistency battery").set_defaults(func=cmd_selftest)
    common(sub.add_parser("bench", help="time invariant evaluation and checks")).set_defaults(func=cmd_bench)
    return parser


def _merge_config(args) -> None:
    cfg = read_config(args.config) if getattr(args, "config", None) else {}
    for key, default in _DEFAULTS.items():
        if getattr(args, key, None) is not None:
            continue
        if key in cfg:
            val = cfg[key]
            if key in ("strands", "jobs", "total"):
                val = int(val)
            elif key == "no_cache":
                val = val.lower() in ("1", "true", "yes")
            setattr(args, key, val)
        else:
            setattr(args, key, default)
    if args.jobs is not None and args.jobs < 1:
        raise UsageError("--jobs must be at least 1")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        _merge_config(args)
        return args.func(args)
    except (UsageError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

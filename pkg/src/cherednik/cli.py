"""Command-line surface: hilbert / check / sweep / selftest.

Exit codes: 0 success (verdicts included), 3 computed-vs-conjecture mismatch
(a finding, not an error), 2 usage or parse problems, 1 internal failure.
Machine-readable JSON goes to stdout; human summaries go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import json
import re
import sys
import time
from pathlib import Path

from . import FORMAT_VERSION, __version__
from .fields import CoeffDomain
from .poly import ParseError, ReducedPoly, format_poly, parse_poly
from .dunkl import DunklContext, check_commutators
from .kernel import (
    BudgetExceeded,
    compute_graded_kernel,
    gram_oracle_kernel,
    is_in_kernel,
    is_singular,
)
from .catalog import singular_catalog
from .series import (
    CongruenceData,
    Series,
    baby_verma_series,
    compare,
    computed_hilbert,
    conjectured_hilbert,
    shape_check_t1,
)
from .stability import StabilityInstance, is_stably_in_kernel
from .cache import RunCache, RunRecord

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_MISMATCH = 3

DEFAULT_VARIANT = "remark_consistent"


def _eprint(*args):
    print(*args, file=sys.stderr)


def _context(p: int, n: int, t: int, c: str, seed: int | None = None) -> DunklContext:
    if c == "generic":
        dom = CoeffDomain.generic(p)
    elif c == "fast-eval":
        dom = CoeffDomain.evaluated(p, seed or 0)
    else:
        dom = CoeffDomain.prime(p, int(c))
    return DunklContext(n=n, t=t, domain=dom)


def _default_c(t: int, args_c: str | None) -> str:
    if args_c is not None:
        return args_c
    return "1" if t == 0 else "generic"


def _run_cell(
    p: int,
    n: int,
    t: int,
    c: str,
    max_degree: int | None,
    fast_eval: bool,
    budget_seconds: float | None = None,
) -> RunRecord:
    """Compute one (p, n, t) cell and assemble its RunRecord."""
    start = time.monotonic()
    c_mode = c
    if fast_eval and c == "generic":
        c_mode = "fast-eval"
    key = RunRecord.make_key(p, n, t, c_mode)
    record = RunRecord(key=key)
    record.timing = {"timestamp": datetime.datetime.now().isoformat()}
    notes = record.notes
    try:
        if c_mode == "fast-eval":
            series, dims = _fast_eval_series(p, n, t, max_degree, budget_seconds)
            notes.append(
                "fast-eval: c evaluated at 3 independent random points of F_{p^k}; "
                "NOT a certified generic-c result"
            )
        else:
            ctx = _context(p, n, t, c)
            gk = compute_graded_kernel(
                ctx, max_degree=max_degree, budget_seconds=budget_seconds
            )
            series = computed_hilbert(gk)
            dims = gk.dims()
    except BudgetExceeded as exc:
        record.status = "exceeded_cap"
        record.notes.append(str(exc))
        record.timing["wall_time_s"] = round(time.monotonic() - start, 3)
        return record
    record.series = series.to_json()
    record.dims = {str(d): list(v) for d, v in dims.items()}
    cong = CongruenceData.of(n, p)
    record.conjecture = {}
    for variant in ("as_printed", "remark_consistent"):
        predicted = conjectured_hilbert(cong, t, variant)
        verdict = compare(series, predicted)
        record.conjecture[variant] = {
            "series": list(predicted.coeffs),
            "factored": predicted.factored,
            "match": verdict.equal,
            "verdict": verdict.to_json(),
        }
    nt = baby_verma_series(n, p, t)
    record.baby_verma_bound_ok = all(
        series[d] <= nt[d] for d in range(max(series.degree(), nt.degree()) + 1)
    )
    if t == 1:
        rep = shape_check_t1(series, n, p)
        record.shape_check = {
            "ok": rep.ok,
            "inner": list(rep.inner.coeffs) if rep.inner else None,
            "message": rep.message,
        }
    record.timing["wall_time_s"] = round(time.monotonic() - start, 3)
    return record


def _fast_eval_series(p, n, t, max_degree, budget_seconds):
    """Three independent random evaluations of c; they must agree."""
    runs = []
    for seed in (1, 2, 3):
        ctx = _context(p, n, t, "fast-eval", seed=seed)
        gk = compute_graded_kernel(
            ctx, max_degree=max_degree, budget_seconds=budget_seconds
        )
        runs.append((computed_hilbert(gk), gk.dims()))
    coeffs = {r[0].coeffs for r in runs}
    if len(coeffs) != 1:
        raise RuntimeError(
            f"fast-eval runs disagree: {sorted(coeffs)}; "
            "a random point hit a special locus, rerun or use exact mode"
        )
    series, dims = runs[0]
    return Series(series.coeffs, "computed-fast-eval"), dims


def _print_record(record: RunRecord) -> None:
    print(json.dumps(record.to_json(), sort_keys=True))
    k = record.key
    _eprint(f"p={k['p']} n={k['n']} t={k['t']} c={k['c_mode']}: {record.status}")
    if record.series:
        _eprint(f"  series    {record.series['coeffs']}")
        for variant, data in record.conjecture.items():
            tag = "match" if data["match"] else "MISMATCH"
            _eprint(f"  {variant:<18} {data['series']} [{tag}]")
        if record.shape_check:
            _eprint(
                f"  shape check: {record.shape_check['ok']}"
                f" inner={record.shape_check['inner']}"
            )


def cmd_hilbert(args) -> int:
    c = _default_c(args.t, args.c)
    if args.fast_eval and c != "generic":
        _eprint("note: --fast-eval only applies to generic-c runs; ignored")
    cache = RunCache(args.cache_dir)
    c_mode = "fast-eval" if (args.fast_eval and c == "generic") else c
    key = RunRecord.make_key(args.p, args.n, args.t, c_mode)
    record = None
    if not args.no_cache:
        record = cache.lookup(key)
        if record is not None:
            record.notes = list(record.notes) + ["cache hit"]
    if record is None:
        record = _run_cell(
            args.p, args.n, args.t, c, args.max_degree, args.fast_eval
        )
        cache.store(record)
    if args.dump_kernel and record.status == "ok" and c_mode not in ("fast-eval",):
        ctx = _context(args.p, args.n, args.t, c)
        gk = compute_graded_kernel(ctx, max_degree=args.max_degree)
        Path(args.dump_kernel).write_text(
            json.dumps(export_kernel_json(gk), sort_keys=True, indent=1)
        )
    _print_record(record)
    if record.status != "ok":
        return EXIT_INTERNAL
    return (
        EXIT_OK
        if record.conjecture[DEFAULT_VARIANT]["match"]
        else EXIT_MISMATCH
    )


def export_kernel_json(gk) -> dict:
    """Kernel bases as JSON arrays of formatted polynomials, keyed per degree."""
    ctx = gk.ctx
    out = {
        "format_version": FORMAT_VERSION,
        "p": ctx.p,
        "n": ctx.n,
        "t": ctx.t,
        "c_mode": ctx.domain.c_mode,
        "degrees": {},
    }
    for d in sorted(gk.degrees):
        dd = gk.degrees[d]
        out["degrees"][str(d)] = {
            "dim_m": dd.dim_m,
            "dim_kernel": dd.dim_kernel,
            "dim_l": dd.dim_l,
            "pivot_monomials": [
                format_poly(
                    ReducedPoly(ctx.domain, ctx.nvars, {m: ctx.domain.one})
                )
                for m in gk.pivot_monomials(d)
            ],
            "basis": [format_poly(b) for b in gk.basis_polys(d)],
        }
    return out


def _poly_nvars(text: str) -> int:
    ids = [int(t) for t in re.findall(r"x(\d+)", text)]
    return max(ids) if ids else 1


def cmd_check(args) -> int:
    try:
        if args.what == "stable":
            inst = StabilityInstance.from_text(args.poly, args.p)
            verdict = is_stably_in_kernel(
                inst,
                p=args.p,
                t=args.t if args.t is not None else 1,
                experimental=args.experimental,
                extra_above_bound=args.extra_above_bound,
            )
            out = {"check": "stable", **verdict.to_json()}
            print(json.dumps(out, sort_keys=True))
            _eprint(
                f"stable={verdict.stable} bound={verdict.bound} "
                f"checked n={[e.n for e in verdict.per_n]}"
            )
            return EXIT_OK
        t = args.t if args.t is not None else 0
        c = _default_c(t, args.c)
        ctx = _context(args.p, args.n, t, c)
        f = parse_poly(args.poly, ctx.nvars, ctx.domain)
        if args.what == "singular":
            res = is_singular(f, ctx)
            out = {
                "check": "singular",
                "polynomial": format_poly(f),
                "p": args.p,
                "n": args.n,
                "t": t,
                "c_mode": ctx.domain.c_mode,
                "result": res,
            }
            print(json.dumps(out, sort_keys=True))
            _eprint(f"singular: {res}")
            return EXIT_OK
        if args.what == "kernel":
            res = is_in_kernel(f, ctx)
            out = {
                "check": "kernel",
                "polynomial": format_poly(f),
                "p": args.p,
                "n": args.n,
                "t": t,
                "c_mode": ctx.domain.c_mode,
                "result": res.member,
                "method": res.method,
            }
            if res.witness is not None:
                out["witness"] = list(res.witness)
                out["witness_value"] = str(res.witness_value)
            print(json.dumps(out, sort_keys=True))
            _eprint(f"in kernel: {res.member}")
            return EXIT_OK
        raise AssertionError(args.what)
    except (ParseError, ValueError) as exc:
        _eprint(f"error: {exc}")
        return EXIT_USAGE


def cmd_sweep(args) -> int:
    ps = [int(x) for x in args.p_list.split(",") if x.strip()] if args.p_list else []
    ns = [int(x) for x in args.n_list.split(",") if x.strip()] if args.n_list else []
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    cache = RunCache(args.cache_dir)
    rows = []
    for p in ps:
        for n in ns:
            c = _default_c(args.t, args.c)
            c_mode = "fast-eval" if (args.fast_eval and c == "generic") else c
            key = RunRecord.make_key(p, n, args.t, c_mode)
            record = cache.lookup(key)
            if record is None:
                try:
                    record = _run_cell(
                        p,
                        n,
                        args.t,
                        c,
                        args.max_degree,
                        args.fast_eval,
                        budget_seconds=args.budget_seconds,
                    )
                except Exception as exc:  # record the failure, keep sweeping
                    record = RunRecord(
                        key=key, status="error", notes=[repr(exc)]
                    )
                cache.store(record)
            cell_path = out_dir / f"run_p{p}_n{n}_t{args.t}.json"
            cell_path.write_text(
                json.dumps(record.to_json(), sort_keys=True, indent=1)
            )
            rows.append(
                {
                    "p": p,
                    "n": n,
                    "r": n % p,
                    "series": (
                        " ".join(map(str, record.series["coeffs"]))
                        if record.series
                        else ""
                    ),
                    "variant_A_match": record.conjecture.get("as_printed", {}).get(
                        "match", ""
                    ),
                    "variant_B_match": record.conjecture.get(
                        "remark_consistent", {}
                    ).get("match", ""),
                    "status": record.status,
                }
            )
            _eprint(f"cell p={p} n={n}: {record.status}")
    csv_path = out_dir / "summary.csv"
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(
            fh,
            fieldnames=[
                "p",
                "n",
                "r",
                "series",
                "variant_A_match",
                "variant_B_match",
                "status",
            ],
        )
        writer.writeheader()
        writer.writerows(rows)
    _eprint(f"wrote {csv_path}")
    return EXIT_OK


def cmd_selftest(args) -> int:
    failures = []

    def report(name, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else "")
        print(line)
        if not ok:
            failures.append(line)

    for p, t, n in [(2, 0, 3), (3, 0, 4), (2, 1, 3), (3, 1, 4)]:
        ctx = DunklContext.make(n=n, p=p, t=t)
        rep = check_commutators(ctx, degree=3, trials=4, seed=11)
        detail = ""
        if not rep.ok:
            bad = rep.failures[0]
            detail = f"(i={bad.i}, j={bad.j}, a={bad.a}, f={format_poly(bad.f)})"
        report(f"commutators p={p} t={t} n={n} ({rep.checked} identities)", rep.ok, detail)

    for p, t, n, dmax in [(2, 0, 3, 5), (2, 1, 3, 6), (3, 0, 4, 5)]:
        ctx = DunklContext.make(n=n, p=p, t=t)
        gk = compute_graded_kernel(ctx)
        ok = True
        for d in range(1, min(dmax, max(gk.degrees)) + 1):
            data = gk.degrees.get(d) or gk.compute_degree(d)
            rows, pivots = gram_oracle_kernel(d, ctx)
            if rows != data.kernel_rows or pivots != data.kernel_pivots:
                ok = False
                break
        report(f"oracle equivalence p={p} t={t} n={n} d<={dmax}", ok)

    from .kernel import is_singular as _is_sing

    cat = [
        ("quad_pair", {"i": 1, "j": 2}, DunklContext.make(n=5, p=2, t=0), "singular"),
        ("skew_quad", {"i": 1, "j": 2, "k": 3}, DunklContext.make(n=4, p=3, t=0), "singular"),
        ("cubic_pair", {"i": 1, "j": 2}, DunklContext.make(n=4, p=3, t=0), "kernel"),
        ("power_pair", {"i": 1, "j": 2}, DunklContext.make(n=4, p=3, t=0), "kernel"),
        ("quartic_c_pair", {"i": 1, "j": 2}, DunklContext.make(n=5, p=2, t=1), "singular"),
        ("coeff_series", {"i": 1}, DunklContext.make(n=4, p=2, t=1), "singular"),
    ]
    for family, params, ctx, mode in cat:
        f = singular_catalog(family, params, ctx)
        ok = _is_sing(f, ctx) if mode == "singular" else is_in_kernel(f, ctx).member
        report(f"catalog {family} ({mode})", ok)

    if failures:
        _eprint(f"{len(failures)} self-test failures; first: {failures[0]}")
        return EXIT_INTERNAL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cherednik",
        description="Exact modular Dunkl-operator kernel and Hilbert-series engine",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hilbert", help="compute the quotient Hilbert series")
    h.add_argument("--p", type=int, required=True)
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--t", type=int, required=True, choices=(0, 1))
    h.add_argument("--c", type=str, default=None, help="'generic' or a residue mod p")
    h.add_argument("--max-degree", type=int, default=None)
    h.add_argument("--fast-eval", action="store_true")
    h.add_argument("--no-cache", action="store_true")
    h.add_argument("--cache-dir", type=str, default=None)
    h.add_argument("--dump-kernel", type=str, default=None)
    h.set_defaults(func=cmd_hilbert)

    ck = sub.add_parser("check", help="certify one polynomial")
    ck.add_argument("what", choices=("singular", "kernel", "stable"))
    ck.add_argument("--poly", type=str, required=True)
    ck.add_argument("--p", type=int, required=True)
    ck.add_argument("--n", type=int, default=None)
    ck.add_argument("--t", type=int, default=None, choices=(0, 1))
    ck.add_argument("--c", type=str, default=None)
    ck.add_argument("--experimental", action="store_true")
    ck.add_argument("--extra-above-bound", type=int, default=0)
    ck.set_defaults(func=cmd_check)

    sw = sub.add_parser("sweep", help="grid of hilbert runs with CSV summary")
    sw.add_argument("--p-list", type=str, default="")
    sw.add_argument("--n-list", type=str, default="")
    sw.add_argument("--t", type=int, required=True, choices=(0, 1))
    sw.add_argument("--c", type=str, default=None)
    sw.add_argument("--out", type=str, required=True)
    sw.add_argument("--max-degree", type=int, default=None)
    sw.add_argument("--fast-eval", action="store_true")
    sw.add_argument("--budget-seconds", type=float, default=None)
    sw.add_argument("--cache-dir", type=str, default=None)
    sw.set_defaults(func=cmd_sweep)

    st = sub.add_parser("selftest", help="run the built-in property suites")
    st.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "check" and args.what in ("singular", "kernel"):
        if args.n is None:
            ap.error("check singular/kernel needs --n")
    try:
        return args.func(args)
    except (ParseError,) as exc:
        _eprint(f"parse error: {exc}")
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK
    except Exception as exc:  # pragma: no cover - last-resort diagnostics
        _eprint(f"internal error: {exc!r}")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

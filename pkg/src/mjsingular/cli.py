"""Command-line interface: ``mj-singular <command> ...``.

Exit codes: 0 when a verdict (or value) was produced, 2 for INCONCLUSIVE,
1 on errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .classify import INCONCLUSIVE, classify_germ, cone_criterion, emb_dim_at_origin
from .groebner import GroebnerLimitExceeded, Ideal, local_dimension
from .jets import jet_fiber_dim, mld_mixed_upper_bound, mld_upper_bound
from .newton import newton_nonlc_certificate
from .normalforms import DEFAULT_ORDER
from .parser import InputDocument, ParseError, parse_document

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2


def _load(path: str) -> InputDocument:
    return parse_document(Path(path).read_text(), source=str(path))


def _echo(doc: InputDocument) -> dict:
    out = {
        "source": doc.source,
        "vars": list(doc.variables),
        "generators": [g.to_str() for g in doc.generators],
    }
    if doc.ideal_a:
        out["ideal_a"] = [g.to_str() for g in doc.ideal_a]
    if doc.t is not None:
        out["t"] = str(doc.t)
    return out


def _bound_json(b) -> dict:
    return {
        "value": str(b.value),
        "witness": list(b.witness) if isinstance(b.witness, tuple) else b.witness,
        "mode": b.mode,
        "terms": [
            {"level": list(c) if isinstance(c, tuple) else c, "fiber_dim": fd, "term": str(t)}
            for c, fd, t in b.terms
        ],
    }


def _random_change(n: int, rng: random.Random):
    from .linalg import det

    while True:
        M = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        if det(M) != 0:
            return M


def _self_check(I: Ideal, verdict: str, D: int, search_bound: int, seed: int, trials: int = 3) -> dict:
    from .poly import linear_change

    rng = random.Random(seed)
    agree = True
    seen = []
    for _ in range(trials):
        M = _random_change(I.nvars, rng)
        J = Ideal([linear_change(g, M) for g in I.generators], I.variables)
        v = classify_germ(J, D, search_bound=search_bound, seed=seed).verdict.value
        seen.append(v)
        agree = agree and v == verdict
    return {"trials": trials, "verdicts": seen, "agree": agree}


def classify_document(doc: InputDocument, opts: dict) -> tuple[dict, int]:
    start = time.perf_counter()
    D = opts.get("order") or doc.order or DEFAULT_ORDER
    I = Ideal(doc.generators, doc.variables)
    rep = classify_germ(I, D, levels=opts.get("levels") or doc.levels,
                        search_bound=opts.get("search_bound", 2), seed=opts.get("seed", 0))
    d = rep.dim
    out = {
        "tool": "mj-singular",
        "version": __version__,
        "input": _echo(doc),
        "options": {"order": D, "levels": None, "search_bound": opts.get("search_bound", 2),
                    "seed": opts.get("seed", 0)},
        "report": rep.to_dict(),
    }
    levels = opts.get("levels") or doc.levels or (5 if d == 1 else 3)
    out["options"]["levels"] = levels
    try:
        if d in (1, 2):
            out["jet_bound"] = _bound_json(mld_upper_bound(I, d, levels))
        if len(I.generators) == 1 and d is not None and I.nvars == d + 1:
            out["newton"] = newton_nonlc_certificate(I.generators[0]).value
        else:
            out["newton"] = "NOT_APPLICABLE"
    except GroebnerLimitExceeded as exc:
        out["jet_bound"] = {"error": str(exc)}
    if opts.get("self_check"):
        out["self_check"] = _self_check(I, rep.verdict.value, D, opts.get("search_bound", 2),
                                        opts.get("seed", 0))
    if not opts.get("no_timing"):
        out["timing_seconds"] = round(time.perf_counter() - start, 4)
    code = EXIT_INCONCLUSIVE if rep.verdict == INCONCLUSIVE else EXIT_OK
    return out, code


def _classify_path(args):
    path, opts = args
    try:
        return path, classify_document(_load(path), opts)
    except (ParseError, ValueError, OSError) as exc:
        return path, ({"source": path, "error": str(exc)}, EXIT_ERROR)


def _plain(report: dict) -> str:
    if "error" in report:
        return f"{report.get('source', '?')}: error: {report['error']}"
    r = report["report"]
    lines = [f"{report['input']['source']}: {r['verdict']}",
             f"  dim {r['dim']}, emb {r['emb_dim']}, mult {r['mult']}"]
    for c in r["certificate"]:
        lines.append(f"  - {c}")
    if "jet_bound" in report and "value" in report["jet_bound"]:
        lines.append(f"  jet bound: {report['jet_bound']['value']}")
    if "newton" in report:
        lines.append(f"  newton: {report['newton']}")
    return "\n".join(lines)


def _emit(obj, plain: bool, plain_text: str | None = None):
    if plain and plain_text is not None:
        print(plain_text)
    else:
        print(json.dumps(obj, indent=2, sort_keys=True))


def cmd_classify(args) -> int:
    opts = {
        "order": args.order, "levels": args.levels, "search_bound": args.search_bound,
        "seed": args.seed, "no_timing": args.no_timing, "self_check": args.self_check,
    }
    p = Path(args.file)
    if p.is_dir():
        files = sorted(str(f) for f in p.iterdir() if f.is_file() and not f.name.startswith("."))
        workers = max(1, min(len(files), os.cpu_count() or 1))
        tasks = [(f, opts) for f in files]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as ex:
                results = list(ex.map(_classify_path, tasks))
        else:
            results = [_classify_path(t) for t in tasks]
        reports = {path: rep for path, (rep, _c) in results}
        codes = [c for _p, (_r, c) in results]
        summary = {}
        for rep in reports.values():
            key = rep["report"]["verdict"] if "report" in rep else "ERROR"
            summary[key] = summary.get(key, 0) + 1
        if args.plain:
            print("\n".join(_plain(r) for r in reports.values()))
            print("summary: " + ", ".join(f"{k}={v}" for k, v in sorted(summary.items())))
        else:
            print(json.dumps({"reports": reports, "summary": summary}, indent=2, sort_keys=True))
        if EXIT_ERROR in codes:
            return EXIT_ERROR
        return EXIT_INCONCLUSIVE if EXIT_INCONCLUSIVE in codes else EXIT_OK
    report, code = classify_document(_load(args.file), opts)
    _emit(report, args.plain, _plain(report))
    return code


def cmd_jet_dim(args) -> int:
    doc = _load(args.file)
    I = Ideal(doc.generators, doc.variables)
    level = args.level or doc.levels or 1
    d = jet_fiber_dim(I, level)
    out = {"input": _echo(doc), "level": level, "fiber_dim": d}
    _emit(out, args.plain, f"level {level}: fiber dimension {d}")
    return EXIT_OK


def cmd_mld_bound(args) -> int:
    doc = _load(args.file)
    I = Ideal(doc.generators, doc.variables)
    levels = args.levels or doc.levels or 3
    if doc.ideal_a:
        c = I.nvars - local_dimension(I)
        a = Ideal(doc.ideal_a, doc.variables)
        t = doc.t if doc.t is not None else 0
        b = mld_mixed_upper_bound(I, c, a, t, levels, levels)
    else:
        b = mld_upper_bound(I, local_dimension(I), levels)
    out = {"input": _echo(doc), "bound": _bound_json(b)}
    _emit(out, args.plain, f"mld bound: {b.value} (witness {b.witness})")
    return EXIT_OK


def cmd_newton(args) -> int:
    doc = _load(args.file)
    if len(doc.generators) != 1:
        raise ValueError("newton needs exactly one generator")
    cert = newton_nonlc_certificate(doc.generators[0])
    out = {"input": _echo(doc), "certificate": cert.value}
    _emit(out, args.plain, cert.value)
    return EXIT_OK


def cmd_emb_dim(args) -> int:
    doc = _load(args.file)
    e = emb_dim_at_origin(Ideal(doc.generators, doc.variables))
    out = {"input": _echo(doc), "emb_dim": e}
    _emit(out, args.plain, f"emb {e}")
    return EXIT_OK


def cmd_cone(args) -> int:
    can, lc = cone_criterion(args.N, args.d, args.a)
    out = {"N": args.N, "d": args.d, "a": args.a, "canonical": can, "log_canonical": lc}
    _emit(out, args.plain, f"canonical: {can}, log_canonical: {lc}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mj-singular",
                                 description="Mather-Jacobian singularity classifier")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--plain", action="store_true", help="human-readable summary")

    p = sub.add_parser("classify", help="classify a germ (file or directory)")
    p.add_argument("file")
    p.add_argument("--levels", "--level", type=int, dest="levels")
    p.add_argument("--order", type=int, help="truncation order D")
    p.add_argument("--search-bound", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-timing", action="store_true")
    p.add_argument("--self-check", action="store_true",
                   help="re-classify after random linear changes of coordinates")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("jet-dim", help="fiber dimension of the jet scheme over the origin")
    p.add_argument("file")
    p.add_argument("--level", type=int)
    common(p)
    p.set_defaults(func=cmd_jet_dim)

    p = sub.add_parser("mld-bound", help="jet-dimension upper bound for mld")
    p.add_argument("file")
    p.add_argument("--levels", "--level", type=int, dest="levels")
    common(p)
    p.set_defaults(func=cmd_mld_bound)

    p = sub.add_parser("newton", help="Newton polyhedron certificate")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_newton)

    p = sub.add_parser("emb-dim", help="embedding dimension at the origin")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_emb_dim)

    p = sub.add_parser("cone", help="cone criterion")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_cone)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValueError, OSError, GroebnerLimitExceeded) as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True), file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

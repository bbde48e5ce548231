"""Command-line harness: census, verify, classify, walk, export.

Exit codes: 0 success, 1 verification failure (or unmet walk condition),
2 usage error, 3 resource limit or size breach.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from . import census as cs
from .claims import REGISTRY, Options, run_claims
from .errors import ConditionNotMet, InvalidWordError, ResourceLimitExceeded
from .export import to_dot, to_json
from .perm import format_perm, is_alternating, is_trivial, parse_perm
from .walks import (branching_condition_general, branching_condition_small_n, build_closed_walk,
                    closed_walk_condition, forbidden_by_lemma)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
CACHE_ENV = "PERMGRAPH_CACHE_DIR"
DOT_MAX_N, JSON_MAX_N, CENSUS_MAX_N = 6, 7, 9


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int | None
    ks: list[int]
    fmt: str
    threads: int
    limit: int | None
    out: str | None


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"1..4"`` or ``"2,3,5"``."""
    try:
        out: list[int] = []
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def parse_pairs(text: str) -> list[tuple[int, int]]:
    try:
        return [tuple(int(x) for x in p.split(":")) for p in text.split(",")]  # type: ignore[misc]
    except ValueError:
        raise UsageError(f"bad pair list {text!r}, expected n:k[,n:k...]") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV) or Path.home() / ".cache" / "permgraph")


def _cache_path(n: int, k: int) -> Path:
    key = f"census/{cs.SCHEMA_VERSION}/{__version__}/{n}/{k}"
    return _cache_dir() / f"{hashlib.sha256(key.encode()).hexdigest()[:24]}.json"


def _census_one(n: int, k: int, cfg: RunConfig, use_cache: bool) -> cs.CensusReport:
    path = _cache_path(n, k)
    if use_cache and path.exists():
        return cs.CensusReport.from_dict(json.loads(path.read_text()))
    rep = cs.census(n, k, workers=cfg.threads, limit=cfg.limit)
    if use_cache:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(rep.to_dict(), sort_keys=True))
    return rep


def render_census(n: int, ks: list[int], reports: list[cs.CensusReport], fmt: str, partial: bool) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "C", "v", "w", "walk_classes"])
        for r in reports:
            w.writerow([r.n, r.k, r.cycle_count, r.vertices_in_cycles, r.vertices_in_walks, r.walk_class_count])
        return buf.getvalue()
    if fmt == "text":
        lines = [f"{'n':>3} {'k':>3} {'C':>10} {'v':>8} {'w':>8} {'walks':>12}  checks"]
        for r in reports:
            checks = " ".join(f"{name}={'ok' if ok else 'FAIL'}" for name, ok in r.agreement.items())
            lines.append(f"{r.n:>3} {r.k:>3} {r.cycle_count:>10} {r.vertices_in_cycles:>8} "
                         f"{r.vertices_in_walks:>8} {r.walk_class_count:>12}  {checks}")
        if partial:
            lines.append("partial: resource limit reached")
        return "\n".join(lines) + "\n"
    doc = {"version": cs.SCHEMA_VERSION, "n": n, "k": ks,
           "results": [r.to_dict() for r in reports]}
    if partial:
        doc["partial"] = True
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def cmd_census(args, cfg: RunConfig) -> int:
    n = cfg.n
    if n is None or not 2 <= n <= CENSUS_MAX_N:
        raise UsageError(f"census needs 2 <= n <= {CENSUS_MAX_N}")
    ks = cfg.ks or list(range(1, n))
    if any(k < 1 for k in ks):
        raise UsageError("census lengths must be >= 1")
    reports, partial = [], False
    for k in ks:
        try:
            reports.append(_census_one(n, k, cfg, not args.no_cache))
        except ResourceLimitExceeded as exc:
            print(f"census stopped at k={k}: {exc}", file=sys.stderr)
            partial = True
            break
    _emit(render_census(n, ks, reports, cfg.fmt, partial), cfg.out)
    return EXIT_RESOURCE if partial else EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    ids = args.claims.split(",") if args.claims else list(REGISTRY)
    unknown = [c for c in ids if c not in REGISTRY]
    if unknown:
        raise UsageError(f"unknown claim ids {unknown}; known: {', '.join(REGISTRY)}")
    opt = Options(ns=parse_range(args.n) if args.n else None,
                  pairs=parse_pairs(args.pairs) if args.pairs else None,
                  workers=cfg.threads, limit=cfg.limit)
    records = run_claims(ids, opt)
    if cfg.fmt == "json":
        text = json.dumps({"version": cs.SCHEMA_VERSION, "records": [r.to_dict() for r in records]},
                          indent=2, sort_keys=True) + "\n"
    else:
        text = "".join(f"{r.status.upper():<17} {r.claim:<9} {json.dumps(r.params, sort_keys=True)} "
                       f"predicted={json.dumps(r.predicted)} computed={json.dumps(r.computed)}\n"
                       for r in records)
    _emit(text, cfg.out)
    return EXIT_FAIL if any(r.status == "fail" for r in records) else EXIT_OK


def _perm_arg(args):
    if not args.perm:
        raise UsageError("--perm is required")
    try:
        return parse_perm(args.perm)
    except InvalidWordError as exc:
        raise UsageError(str(exc)) from None


def classify_report(a, ks: list[int]) -> dict:
    n = len(a)
    rows = []
    for k in ks:
        cond = closed_walk_condition(a, k)
        small = branching_condition_small_n(a, k) if cond else None
        gen = branching_condition_general(a, k) if cond else None
        rows.append({
            "k": k,
            "condition": cond,
            "branching_small": small,
            "branching_general": None if gen is None else
            {"m": gen.m, "i": gen.i, "j": gen.j, "ells": list(gen.ells)},
            "obstruction": forbidden_by_lemma(a, k),
        })
    return {"perm": format_perm(a), "n": n, "trivial": is_trivial(a),
            "alternating": is_alternating(a) if n >= 2 else None, "by_k": rows}


def cmd_classify(args, cfg: RunConfig) -> int:
    a = _perm_arg(args)
    n = len(a)
    ks = cfg.ks or list(range(2, n))
    if any(not 2 <= k <= n - 1 for k in ks):
        raise UsageError(f"k must lie in 2..{n - 1}")
    rep = classify_report(a, ks)
    if cfg.fmt == "json":
        text = json.dumps(rep, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"{rep['perm']}  trivial={rep['trivial']}  alternating={rep['alternating']}"]
        for r in rep["by_k"]:
            g = r["branching_general"]
            lines.append(f"  k={r['k']}: condition={r['condition']} m_small={r['branching_small']} "
                         f"m_general={None if g is None else g['m']}"
                         + (f" (i={g['i']}, j={g['j']}, ells={tuple(g['ells'])})" if g else "")
                         + f" obstruction={r['obstruction']}")
        text = "\n".join(lines) + "\n"
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_walk(args, cfg: RunConfig) -> int:
    a = _perm_arg(args)
    n = len(a)
    if len(cfg.ks) != 1 or not 2 <= cfg.ks[0] <= n - 1:
        raise UsageError(f"walk needs a single --k in 2..{n - 1}")
    k = cfg.ks[0]
    if args.mode == "construct":
        try:
            w = build_closed_walk(a, k)
        except ConditionNotMet as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_FAIL
        doc = {"perm": format_perm(a), "k": k, "mode": "construct", "walk": w.to_dict()}
        text_lines = ["(" + ", ".join(doc["walk"]["vertices"]) + ")",
                      "edges: " + " ".join(doc["walk"]["edges"])]
    else:
        if n > CENSUS_MAX_N:
            print(f"exhaustive mode needs n <= {CENSUS_MAX_N}", file=sys.stderr)
            return EXIT_RESOURCE
        g = cs._graph(n, False)
        try:
            walks = cs.closed_walks_through(g, a, k, limit=cfg.limit)
        except ResourceLimitExceeded as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_RESOURCE
        ra = g.rank(a)
        classes = []
        for vr, mult in cs.vertex_sequence_classes(walks).items():
            i = vr.index(ra)
            seq = [format_perm(g.vertex(v)) for v in vr[i:] + vr[:i]]
            classes.append({"vertices": seq, "cycle": len(set(vr)) == k, "edge_realizations": mult})
        doc = {"perm": format_perm(a), "k": k, "mode": "exhaustive",
               "classes": classes, "edge_distinguished_classes": len(walks)}
        text_lines = [f"{len(classes)} classes ({len(walks)} counting parallel edges separately)"]
        text_lines += [f"({', '.join(c['vertices'])})  {'cycle' if c['cycle'] else 'walk'}"
                       f"  x{c['edge_realizations']}" for c in classes]
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n" if cfg.fmt == "json" else "\n".join(text_lines) + "\n"
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_export(args, cfg: RunConfig) -> int:
    n = cfg.n
    if n is None or n < 2:
        raise UsageError("export needs --n >= 2")
    fmt = cfg.fmt if cfg.fmt in ("dot", "json") else "dot"
    cap = DOT_MAX_N if fmt == "dot" else JSON_MAX_N
    if n > cap:
        print(f"{fmt} export is limited to n <= {cap}", file=sys.stderr)
        return EXIT_RESOURCE
    g = cs._graph(n, False)
    _emit(to_dot(g) if fmt == "dot" else to_json(g), cfg.out)
    return EXIT_OK


COMMANDS = {"census": cmd_census, "verify": cmd_verify, "classify": cmd_classify,
            "walk": cmd_walk, "export": cmd_export}
DEFAULT_FORMAT = {"census": "json", "verify": "text", "classify": "text", "walk": "text", "export": "dot"}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="permgraph", description="Cycles in the graph of overlapping permutations")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--n")
        s.add_argument("--k")
        s.add_argument("--format", choices=["json", "csv", "dot", "text"])
        s.add_argument("--out")
        s.add_argument("--threads", type=int, default=1)
        s.add_argument("--limit", type=int)
        if name in ("classify", "walk"):
            s.add_argument("--perm")
        if name == "walk":
            s.add_argument("--mode", choices=["construct", "exhaustive"], default="construct")
        if name == "verify":
            s.add_argument("--claims")
            s.add_argument("--pairs")
        if name == "census":
            s.add_argument("--no-cache", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        n = None
        if args.n is not None and args.command != "verify":
            try:
                n = int(args.n)
            except ValueError:
                raise UsageError(f"--n must be an integer for {args.command}") from None
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        cfg = RunConfig(args.command, n, parse_range(args.k) if args.k else [],
                        args.format or DEFAULT_FORMAT[args.command], args.threads, args.limit, args.out)
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"permgraph {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())

"""Command-line entry point.

    centrality-prune score   MANIFEST --method wdc --ratio 0.25 [--out report.json]
    centrality-prune oracle  MANIFEST --layer conv1 --ratio 0.5
    centrality-prune compare MANIFEST --ratio 0.5 --methods wdc,bc,l1,gm,cs

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__, kernels
from .centrality import check_ratio
from .errors import NotPrunable, PruneError, UnknownLayer
from .oracle import DEFAULT_LIMIT, optimal_subset, retained_similarity
from .pipeline import SCORING_METHODS, layer_similarity, score_layer
from .planner import build_plan
from .report import dumps, write_atomic
from .tensor_io import ModelManifest, read_manifest


class UsageError(Exception):
    pass


def _parse_layers(text: str | None) -> list[str] | None:
    if text is None:
        return None
    names = [s.strip() for s in text.split(",") if s.strip()]
    if not names:
        raise UsageError("--layers needs at least one layer name")
    return names


def parse_ratio_spec(text: str) -> dict[str, float]:
    """Parse ``"layerA=0.25,layerB=0.5"``."""
    out: dict[str, float] = {}
    for part in text.split(","):
        name, sep, value = part.partition("=")
        name = name.strip()
        if not sep or not name:
            raise UsageError(f"bad --ratio-per-layer entry {part!r}; expected name=ratio")
        try:
            out[name] = float(value)
        except ValueError:
            raise UsageError(f"bad ratio {value!r} for layer {name!r}") from None
    return out


def _methods(text: str) -> list[str]:
    methods = [m.strip() for m in text.split(",") if m.strip()]
    bad = [m for m in methods if m not in SCORING_METHODS]
    if bad or not methods:
        raise UsageError(f"unknown methods {bad}; choose from {','.join(SCORING_METHODS)}")
    return methods


def _resolve_targets(manifest: ModelManifest, layers: list[str] | None,
                     ratio: float | None, per_layer: dict[str, float] | None) -> dict[str, float]:
    """Ordered (manifest order) mapping of layer -> ratio."""
    if ratio is None and not per_layer:
        raise UsageError("one of --ratio or --ratio-per-layer is required")
    per_layer = per_layer or {}
    if layers is None:
        layers = list(per_layer) if ratio is None else [l.name for l in manifest.layers if l.is_conv]
    wanted = set(layers) | set(per_layer)
    for name in wanted:
        if name not in manifest:
            raise UnknownLayer(f"no layer named {name!r}")
        if not manifest[name].is_conv:
            raise NotPrunable(f"layer not prunable: {name!r} is {manifest[name].kind}")
    targets = {}
    for name in manifest.names:
        if name in wanted:
            p = per_layer.get(name, ratio)
            if p is None:
                raise UsageError(f"no ratio given for layer {name!r}")
            targets[name] = check_ratio(p)
    return targets


def _map(fn, items, jobs: int):
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _cost_block(plan) -> dict:
    return {
        "before": {"params": plan.before.params, "macs": plan.before.macs},
        "after": {"params": plan.after.params, "macs": plan.after.macs},
        "params_reduction_pct": plan.params_reduction_pct,
        "macs_reduction_pct": plan.macs_reduction_pct,
    }


def _layer_block(name, n, sel, scores=None, emit_scores=False, objective=None) -> dict:
    block = {"layer": name, "n": n, "p": sel.p}
    if emit_scores and scores is not None:
        block["scores"] = [float(s) for s in scores.scores]
    block["keep"] = list(sel.keep)
    block["prune"] = list(sel.prune)
    if objective is not None:
        block["objective"] = objective
    if sel.trace:
        block["trace"] = [{"pair": list(pair), "pruned": victim} for pair, victim in sel.trace]
    return block


def _header(raw: bytes, command: str) -> dict:
    return {
        "tool_version": __version__,
        "manifest_digest": hashlib.sha256(raw).hexdigest(),
        "command": command,
    }


def cmd_score(args) -> dict:
    manifest, raw = read_manifest(args.manifest)
    per_layer = parse_ratio_spec(args.ratio_per_layer) if args.ratio_per_layer else None
    targets = _resolve_targets(manifest, _parse_layers(args.layers), args.ratio, per_layer)

    def run(name):
        return score_layer(manifest.filters(name), args.method, targets[name], backend=args.backend)

    results = dict(zip(targets, _map(run, list(targets), args.jobs)))
    plan = build_plan(manifest, {k: r.selection for k, r in results.items()}, method=args.method)
    report = _header(raw, "score")
    report["method"] = args.method
    report["layers"] = [
        _layer_block(name, manifest[name].n, r.selection, r.scores, args.emit_scores)
        for name, r in results.items()
    ]
    report["cost"] = _cost_block(plan)
    return report


def cmd_oracle(args) -> dict:
    manifest, raw = read_manifest(args.manifest)
    targets = _resolve_targets(manifest, [args.layer], args.ratio, None)
    p = targets[args.layer]
    filters = manifest.filters(args.layer)
    W = layer_similarity(filters, args.backend)
    best = optimal_subset(W, p, limit=args.limit, backend=args.backend)
    report = _header(raw, "oracle")
    report.update({"layer": args.layer, "n": W.n, "p": p, "limit": args.limit})
    report["oracle"] = {
        "keep": list(best.keep),
        "objective": best.objective,
        "subsets_examined": best.subsets_examined,
    }
    report["heuristics"] = []
    for method in ("wdc", "bc"):
        sel = score_layer(filters, method, p, W=W, backend=args.backend).selection
        report["heuristics"].append({
            "method": method,
            "keep": list(sel.keep),
            "prune": list(sel.prune),
            "objective": retained_similarity(W.w, sel.keep),
        })
    return report


def cmd_compare(args) -> dict:
    manifest, raw = read_manifest(args.manifest)
    methods = _methods(args.methods)
    targets = _resolve_targets(manifest, _parse_layers(args.layers), args.ratio, None)
    names = list(targets)
    sims = dict(zip(names, _map(lambda nm: layer_similarity(manifest.filters(nm), args.backend),
                                names, args.jobs)))

    report = _header(raw, "compare")
    report["ratio"] = args.ratio
    report["methods"] = []
    for method in methods:
        def run(name, method=method):
            return score_layer(manifest.filters(name), method, targets[name], W=sims[name],
                               backend=args.backend)

        results = dict(zip(names, _map(run, names, args.jobs)))
        plan = build_plan(manifest, {k: r.selection for k, r in results.items()}, method=method)
        report["methods"].append({
            "method": method,
            "layers": [
                _layer_block(name, manifest[name].n, r.selection, r.scores, args.emit_scores,
                             objective=retained_similarity(sims[name].w, r.selection.keep))
                for name, r in results.items()
            ],
            "cost": _cost_block(plan),
        })
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="centrality-prune", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, jobs=True):
        p.add_argument("manifest", help="architecture manifest (JSON)")
        p.add_argument("--out", help="report path (default: stdout)")
        p.add_argument("--backend", choices=sorted(kernels.BACKENDS), default=None,
                       help="kernel implementation (default: compiled when available)")
        if jobs:
            p.add_argument("--jobs", type=int, default=1, help="layers scored concurrently")

    p = sub.add_parser("score", help="score filters and build a pruning plan")
    common(p)
    p.add_argument("--method", choices=SCORING_METHODS, default="wdc")
    p.add_argument("--layers", help="comma-separated conv layers (default: all conv layers)")
    g = p.add_argument_group("ratios")
    g.add_argument("--ratio", type=float, help="global pruning ratio p")
    g.add_argument("--ratio-per-layer", help='per-layer ratios, e.g. "conv1=0.25,conv2=0.5"')
    p.add_argument("--emit-scores", action="store_true", help="include raw scores in the report")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("oracle", help="exact subset search on one small layer")
    common(p, jobs=False)
    p.add_argument("--layer", required=True)
    p.add_argument("--ratio", type=float, required=True)
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="largest n searched exhaustively")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("compare", help="plans from several methods side by side")
    common(p)
    p.add_argument("--ratio", type=float, required=True)
    p.add_argument("--methods", default=",".join(SCORING_METHODS))
    p.add_argument("--layers")
    p.add_argument("--emit-scores", action="store_true")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "jobs", 1) < 1:
        parser.print_usage(sys.stderr)
        print("error: --jobs must be >= 1", file=sys.stderr)
        return 2
    try:
        report = args.func(args)
        text = dumps(report)
        if args.out:
            write_atomic(args.out, text)
        else:
            sys.stdout.write(text)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PruneError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

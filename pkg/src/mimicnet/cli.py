"""Command-line interface: ``mimicnet <command> ...``.

Exit codes: 0 success or verified, 1 verification failed or a bound was
violated, 2 input or usage error (nothing is printed on stdout then).
"""

from __future__ import annotations

import argparse
import json
import string
import sys
from pathlib import Path

from .bounds import bound_table, convex_combine, gadget_graph, resolve_subset
from .exceptions import GraphError, GuardError
from .graph import (contract, graph_to_dict, parse_graph, parse_partition,
                    serialize_graph, serialize_partition)
from .mimicking import (build_mimicking_network, min_contraction_size_bruteforce,
                        verify_mimicking)
from .mincut import is_unique_min_terminal_cut
from .terminal_cuts import brute_force_mtcv, canonical_subsets, mtcv, serialize_mtcv
from .trees import reduce_tree, tree_cactus


class UsageError(Exception):
    pass


def _read_graph(path):
    try:
        return parse_graph(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path, text):
    Path(path).write_text(text + "\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def cmd_sparsify(args):
    g = _read_graph(args.input)
    mn = build_mimicking_network(g)
    report = verify_mimicking(g, mn, oracle=args.oracle)
    if args.output:
        _write(args.output, serialize_graph(mn.h))
    if args.mapping:
        _write(args.mapping, serialize_partition(mn.mapping, g))
    if args.report:
        _write(args.report, report.to_json(g.terminals))
    out = {"cluster_count": mn.cluster_count, "report": report.to_dict(g.terminals)}
    if not args.output:
        out["sparsifier"] = graph_to_dict(mn.h)
    return (0 if report.passed else 1), out


def cmd_verify(args):
    g = _read_graph(args.graph)
    h = _read_graph(args.sparsifier)
    if g.terminals != h.terminals:
        raise GraphError(f"terminal set mismatch: {list(g.terminals)} vs {list(h.terminals)}")
    report = verify_mimicking(g, h, oracle=args.oracle)
    out = report.to_dict(g.terminals)
    ok = report.passed
    if args.mapping:
        try:
            part = parse_partition(Path(args.mapping).read_text())
        except OSError as exc:
            raise UsageError(f"cannot read {args.mapping}: {exc.strerror}") from None
        consistent = contract(g, part) == h
        out["mapping_consistent"] = consistent
        ok = ok and consistent
    out["failures"] = [{"index": i, "subset": [t for t in g.terminals if t in s],
                        "g_value": str(a), "h_value": str(b)}
                       for i, s, a, b in report.failures()]
    return (0 if ok else 1), out


def cmd_mtcv(args):
    g = _read_graph(args.input)
    values = brute_force_mtcv(g) if args.oracle else mtcv(g)
    return 0, json.loads(serialize_mtcv(values))


def cmd_tree_reduce(args):
    t = _read_graph(args.input)
    r = reduce_tree(t)
    ok = len(r) <= 2 * t.k - 1
    out = {"vertices": len(r), "size_bound": str(2 * t.k - 1)}
    if args.output:
        _write(args.output, serialize_graph(r))
    else:
        out["graph"] = graph_to_dict(r)
    return (0 if ok else 1), out


def cmd_tree_cactus(args):
    t = _read_graph(args.input)
    cn = tree_cactus(t, clamp=not args.no_clamp, strategy=args.strategy)
    meta = cn.metadata()
    if args.metadata:
        _write(args.metadata, _dump(meta))
    out = dict(meta)
    if args.output:
        _write(args.output, serialize_graph(cn.graph))
    else:
        out["graph"] = graph_to_dict(cn.graph)
    ok = cn.is_cactus and len(cn.graph) <= cn.size_bound
    return (0 if ok else 1), out


def _terminal_names(k, given):
    if given:
        names = [x.strip() for x in given.split(",") if x.strip()]
        if len(names) != k:
            raise UsageError(f"--terminals lists {len(names)} names, --k is {k}")
        return names
    if k <= 26:
        return list(string.ascii_lowercase[:k])
    return [f"v{j}" for j in range(1, k + 1)]


def cmd_gadget(args):
    if args.k < 2:
        raise UsageError("--k must be at least 2")
    terminals = _terminal_names(args.k, args.terminals)
    if (args.subset is None) == (args.index is None):
        raise UsageError("give exactly one of --subset or --index")
    if args.index is not None:
        subset = resolve_subset(terminals, args.index)
    else:
        names = [x.strip() for x in args.subset.split(",") if x.strip()]
        unknown = [x for x in names if x not in terminals]
        if unknown:
            raise GraphError(f"unknown terminal: {unknown[0]!r}")
        subset = resolve_subset(terminals, names)
    g = gadget_graph(terminals, subset, args.epsilon)
    if args.output:
        _write(args.output, serialize_graph(g))
        return 0, {"vertices": len(g), "mtcv": json.loads(serialize_mtcv(mtcv(g)))}
    return 0, graph_to_dict(g)


def cmd_combine(args):
    g = convex_combine(_read_graph(args.g1), _read_graph(args.g2), args.lam)
    if args.output:
        _write(args.output, serialize_graph(g))
        return 0, {"vertices": len(g), "mtcv": json.loads(serialize_mtcv(mtcv(g)))}
    return 0, graph_to_dict(g)


def cmd_bounds(args):
    ks = [args.k] if args.k is not None else range(2, 7)
    rows = bound_table(ks, samples=args.samples, seed=args.seed)
    bad = any(r["observed_N_max"] is not None and r["observed_N_max"] > r["Z"] for r in rows)
    return (1 if bad else 0), (rows[0] if args.k is not None else rows)


def cmd_optimality(args):
    g = _read_graph(args.input)
    best = min_contraction_size_bruteforce(g)
    built = build_mimicking_network(g).cluster_count
    unique = all(is_unique_min_terminal_cut(g, u) for u in canonical_subsets(g.terminals))
    ok = best <= built and (built == best or not unique)
    return (0 if ok else 1), {"builder": built, "bruteforce": best,
                             "unique_cuts": unique, "optimal": built == best}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mimicnet", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sparsify", help="build and verify a mimicking network")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.add_argument("--mapping")
    p.add_argument("--report")
    p.add_argument("--oracle", action="store_true", help="verify by exhaustive enumeration")
    p.set_defaults(func=cmd_sparsify)

    p = sub.add_parser("verify", help="compare all terminal cuts of two graphs")
    p.add_argument("--graph", required=True)
    p.add_argument("--sparsifier", required=True)
    p.add_argument("--mapping")
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mtcv", help="minimum terminal cut vector")
    p.add_argument("--input", required=True)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_mtcv)

    p = sub.add_parser("tree", help="tree constructions")
    tsub = p.add_subparsers(dest="tree_command", required=True)
    q = tsub.add_parser("reduce")
    q.add_argument("--input", required=True)
    q.add_argument("--output")
    q.set_defaults(func=cmd_tree_reduce)
    q = tsub.add_parser("cactus")
    q.add_argument("--input", required=True)
    q.add_argument("--output")
    q.add_argument("--metadata")
    q.add_argument("--no-clamp", action="store_true")
    q.add_argument("--strategy", choices=["maximum", "inorder"], default="maximum")
    q.set_defaults(func=cmd_tree_cactus)

    p = sub.add_parser("gadget", help="single-coordinate gadget graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--subset", help="comma-separated terminal names")
    p.add_argument("--index", type=int, help="canonical cut index")
    p.add_argument("--epsilon", required=True)
    p.add_argument("--terminals", help="comma-separated terminal names (default a, b, ...)")
    p.add_argument("--output")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("combine", help="convex combination of two graphs")
    p.add_argument("--g1", required=True)
    p.add_argument("--g2", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("bounds", help="antichain bounds on the cluster count")
    p.add_argument("--k", type=int)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("optimality", help="compare with the best contraction by search")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_optimality)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, out = args.func(args)
    except (GraphError, GuardError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(_dump(out))
    return code


if __name__ == "__main__":
    sys.exit(main())

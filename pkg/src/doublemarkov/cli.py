"""Command line front end.

Subcommands: analyze (full report for a graph pair), enumerate (count
inequivalent CI structures), verify (matrix membership), closure (Horn
closure of a relation file).

Exit codes: 0 success / member, 1 non-member or no verdict, 2 usage or
input errors, 3 resource exhaustion (path caps).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

import numpy as np

from . import ci, classify, geometry, graphs, ideal, matrices
from .errors import NotPositiveDefinite, PathCapExceeded, UniquePathRequired


@dataclasses.dataclass
class ModelReport:
    """Everything cmd_analyze computes, JSON-serializable and reproducible."""

    input: dict
    decomposition: dict
    dimension_bound: dict
    union_complete: bool
    transverse_at_identity: bool
    connectedness_certificate: dict
    ci: dict
    ideal: dict
    classification: dict | None
    model_point: dict | None

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), sort_keys=True, indent=2) + "\n"


def _edge_list(g: graphs.Graph) -> list[list[int]]:
    return [list(e) for e in g.edges]


def build_report(g, h, seed: int = 0, tol: float = 1e-8, want_point: bool = False,
                 cap: int = graphs.DEFAULT_PATH_CAP) -> ModelReport:
    dec = geometry.decompose(g, h)
    bounds = geometry.dimension_bound(g, h)
    union_complete = graphs.edge_union(g, h).num_edges == g.n * (g.n - 1) // 2
    transverse = geometry.is_transverse_at(np.eye(g.n), g, h)
    cert = geometry.connectedness_certificate(g, h)
    relation = ci.double_markov_relation(g, h)
    violations = ci.check_axioms(relation)
    ci_part = {
        "relation_size": len(relation),
        "gaussoid": not violations,
        "violations": [
            {"rule": v.rule,
             "premises": [repr(s) for s in v.premises],
             "missing": [repr(s) for s in v.missing]}
            for v in violations
        ],
    }
    unique = ideal.unique_path_hypothesis(g, h, cap=cap)
    ideal_part = {"unique_path": unique}
    if unique:
        gens = ideal.sci_monomial_generators(g, h, cap=cap)
        ideal_part["generators"] = gens.generator_strings()
    shared = graphs.edge_intersection(g, h)
    classification = None
    if shared.num_edges <= 3:
        try:
            desc = classify.classify_small_intersection(g, h)
            classification = {
                "case": desc.case,
                "support": list(desc.support),
                "swapped": desc.swapped,
                "dimension": desc.dimension,
                "component_count": desc.component_count,
                "families": [
                    {"name": f.name, "params": list(f.params),
                     "entries": {f"{i},{j}": e for (i, j), e in sorted(f.entries.items())},
                     "domain": f.domain}
                    for f in desc.families
                ],
            }
        except ValueError as e:
            classification = {"case": "unclassified", "reason": str(e)}
    point_part = None
    if want_point:
        res = geometry.find_model_point(g, h, seed=seed)
        point_part = {
            "converged": res.converged,
            "residual": res.residual,
            "seed": res.seed,
            "restarts_used": res.restarts_used,
        }
        if res.converged:
            point_part["matrix"] = [[repr(float(x)) for x in row] for row in res.matrix]
            point_part["local_tangent_dimension"] = geometry.local_tangent_dimension(
                res.matrix, g, h, correlation_mode=True)
    return ModelReport(
        input={"n": g.n, "G": _edge_list(g), "H": _edge_list(h)},
        decomposition={"blocks": [list(b) for b in dec.blocks]},
        dimension_bound={"model": bounds[0], "correlation": bounds[1]},
        union_complete=union_complete,
        transverse_at_identity=transverse,
        connectedness_certificate={"kind": cert.kind, "witness": cert.witness},
        ci=ci_part,
        ideal=ideal_part,
        classification=classification,
        model_point=point_part,
    )


def _print_report(rep: ModelReport, out=None):
    p = (out or sys.stdout).write
    inp = rep.input
    p(f"model of G, H on {inp['n']} vertices\n")
    p(f"  blocks: {' '.join('{' + ' '.join(map(str, b)) + '}' for b in rep.decomposition['blocks'])}\n")
    p(f"  dimension bound: model <= {rep.dimension_bound['model']}, "
      f"correlation <= {rep.dimension_bound['correlation']}\n")
    p(f"  union complete: {rep.union_complete}; "
      f"transverse at identity: {rep.transverse_at_identity}\n")
    cert = rep.connectedness_certificate
    witness = f"({cert['witness']})" if cert["witness"] is not None else ""
    p(f"  connectedness certificate: {cert['kind']}{witness}\n")
    p(f"  CI relation: {rep.ci['relation_size']} statements, "
      f"gaussoid: {rep.ci['gaussoid']}\n")
    for v in rep.ci["violations"][:10]:
        p(f"    violated {v['rule']}: {' & '.join(v['premises'])} "
          f"without {' , '.join(v['missing'])}\n")
    if rep.ideal.get("unique_path"):
        p("  ideal generators:\n")
        for s in rep.ideal["generators"]:
            p(f"    {s}\n")
    else:
        p("  unique-path hypothesis fails; no monomial ideal reported\n")
    if rep.classification:
        c = rep.classification
        if c.get("case") == "unclassified":
            p(f"  classification: {c['reason']}\n")
        else:
            p(f"  classification: {c['case']} on support {c['support']}"
              f"{' (graphs swapped)' if c['swapped'] else ''}, "
              f"dimension {c['dimension']}, {c['component_count']} component(s)\n")
    if rep.model_point:
        mp = rep.model_point
        p(f"  model point: converged={mp['converged']} residual={mp['residual']:.3e}\n")
        if mp["converged"]:
            p(f"    local tangent dimension (correlation): {mp['local_tangent_dimension']}\n")


def cmd_analyze(args) -> int:
    with open(args.pair_file) as fh:
        g, h = graphs.parse_pair_file(fh.read())
    rep = build_report(g, h, seed=args.seed, tol=args.tol,
                       want_point=args.point, cap=args.cap)
    _print_report(rep)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(rep.to_json())
    return 0


def cmd_enumerate(args) -> int:
    res = classify.enumerate_inequivalent(args.n, connected_only=args.connected)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("canonical_hex,n,rep_G_edges,rep_H_edges\n")
            for key, g, h in res.representatives:
                canon = key.hex() if isinstance(key, bytes) else format(key, "x")
                ge = " ".join(f"{i}-{j}" for i, j in g.edges)
                he = " ".join(f"{i}-{j}" for i, j in h.edges)
                fh.write(f"{canon},{res.n},{ge},{he}\n")
    print(f"count={res.count}")
    return 0


def cmd_verify(args) -> int:
    with open(args.matrix_file) as fh:
        a = matrices.parse_matrix(fh.read())
    with open(args.pair_file) as fh:
        g, h = graphs.parse_pair_file(fh.read())
    if a.shape[0] != g.n:
        raise ValueError(f"matrix size {a.shape[0]} does not match n={g.n}")
    if not matrices.is_pd(a):
        _non_pd_diagnostics(a)
        return 1
    res = matrices.membership_residual(a, g, h)
    rmax = 0.0 if res.size == 0 else float(np.abs(res.astype(float)).max())
    member = rmax <= args.tol
    print(f"max residual: {rmax:.6e}")
    print("member" if member else "not a member")
    return 0 if member else 1


def _non_pd_diagnostics(a):
    print("not positive definite")
    af = a.astype(float)
    n = af.shape[0]
    for k in range(n):
        if np.linalg.det(af[: k + 1, : k + 1]) <= 0:
            print(f"first failing leading principal minor: order {k + 1}")
            break
    print(f"determinant: {np.linalg.det(af):.17g}")
    if n <= 12:
        import itertools as it

        scale = max(1.0, float(np.abs(af).max())) ** n
        vanished = 0
        total = 0
        for r in range(1, n):
            for S in it.combinations(range(n), r):
                total += 1
                if abs(np.linalg.det(af[np.ix_(S, S)])) <= 1e-9 * scale:
                    vanished += 1
        kind = "all nonzero" if vanished == 0 else f"{vanished} vanish"
        print(f"proper principal minors: {total} checked, {kind}")


def cmd_closure(args) -> int:
    with open(args.relation_file) as fh:
        r = ci.parse_relation(fh.read())
    rules = tuple(args.rules.split(",")) if args.rules != "all" else ci.HORN_RULES
    closed, fired = ci.closure_report(r, rules)
    for s in closed.statements():
        print(repr(s))
    used = [name for name, k in fired.items() if k]
    print(f"# {len(closed)} statements; rules fired: {', '.join(used) if used else 'none'}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doublemarkov",
        description="Analyze Gaussian double Markovian models of a graph pair.")
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="full report for a graph pair file")
    pa.add_argument("pair_file")
    pa.add_argument("--json", metavar="PATH", help="also write the report as JSON")
    pa.add_argument("--seed", type=int, default=0)
    pa.add_argument("--tol", type=float, default=1e-8)
    pa.add_argument("--point", action="store_true",
                    help="search for a numerical model point")
    pa.add_argument("--cap", type=int, default=graphs.DEFAULT_PATH_CAP,
                    help="path enumeration cap")
    pa.set_defaults(func=cmd_analyze)

    pe = sub.add_parser("enumerate", help="count inequivalent CI structures")
    pe.add_argument("n", type=int)
    pe.add_argument("--connected", action="store_true",
                    help="restrict to pairs of connected graphs")
    pe.add_argument("--out", metavar="CSV", help="write representatives as CSV")
    pe.set_defaults(func=cmd_enumerate)

    pv = sub.add_parser("verify", help="check matrix membership in a model")
    pv.add_argument("matrix_file")
    pv.add_argument("pair_file")
    pv.add_argument("--tol", type=float, default=1e-8)
    pv.set_defaults(func=cmd_verify)

    pc = sub.add_parser("closure", help="Horn closure of a relation file")
    pc.add_argument("relation_file")
    pc.add_argument("--rules", default="semigraphoid",
                    help="comma list of semigraphoid,intersection,composition,rule17 or 'all'")
    pc.set_defaults(func=cmd_closure)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PathCapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (NotPositiveDefinite, UniquePathRequired, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

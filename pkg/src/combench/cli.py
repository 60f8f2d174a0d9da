"""Single entry point exposing every module as a subcommand.

Exit codes: 0 success, 1 domain error (with a JSON error object
``{"code", "message", "context"}``), 2 usage error.  Identical inputs and
seed produce byte-identical output.  ``--validate-only`` parses and checks
inputs without computing.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import asynchrony, elimination, express, forcing, graphs, hypercut, reversal, tda
from .errors import CombenchError, ParseError


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise ParseError(f"no such file: {path}", path=path) from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}", path=path) from exc


def _emit(args, payload: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _emit_json(args, obj) -> None:
    _emit(args, json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _fraction_json(x) -> dict:
    f = Fraction(x)
    return {"num": f.numerator, "den": f.denominator}


def _vertex_list(text: str, n: int) -> list[int]:
    if text.strip().lower() == "all":
        return list(range(n))
    if not text.strip():
        return []
    return [int(tok) for tok in text.split(",")]


def _load_graph(path: str) -> graphs.WeightedGraph:
    return graphs.WeightedGraph.from_json_dict(_load_json(path))


def _load_dag(path: str) -> elimination.LinearizedDag:
    return elimination.LinearizedDag.from_json_dict(_load_json(path))


# ---------------------------------------------------------------- graph

def _cmd_graph_generate(args):
    if args.spec:
        spec = _load_json(args.spec)
    else:
        try:
            params = json.loads(args.params)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in --params: {exc}") from exc
        spec = {"kind": args.kind, "params": params, "seed": args.seed}
    g = graphs.generate(spec)
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    _emit_json(args, g.to_json_dict())


def _cmd_graph_distances(args):
    g = _load_graph(args.graph)
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    dm = graphs.geodesic_distances(g, require_finite=args.require_finite)
    arr = dm.toarray()
    rows = [["inf" if not np.isfinite(x) else float(x) for x in row] for row in arr]
    _emit_json(args, {"n": g.n, "distances": rows})


def _cmd_graph_epsnet(args):
    g = _load_graph(args.graph)
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    net = graphs.epsilon_net_greedy(g, args.epsilon, args.seed)
    check = graphs.is_epsilon_net(g, net)
    _emit_json(args, {
        "landmarks": sorted(net.landmarks),
        "epsilon": net.epsilon,
        "is_sample": check.is_sample,
        "is_sparse": check.is_sparse,
        "is_net": check.is_net,
    })


# ---------------------------------------------------------------- tda

def _diagram_payload(pd: tda.PersistenceDiagram) -> list[dict]:
    return pd.to_json_list()


def _cmd_tda_vr(args):
    g = _load_graph(args.graph)
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    dm = graphs.geodesic_distances(g, require_finite=True)
    alpha = args.alpha_max if args.alpha_max is not None else dm.diameter()
    fc = tda.vietoris_rips(dm, alpha, args.max_dim)
    _emit_json(args, _diagram_payload(tda.persistence(fc)))


def _cmd_tda_dowker(args):
    g = _load_graph(args.graph)
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    dm = graphs.geodesic_distances(g, require_finite=True)
    W = _vertex_list(args.witnesses, g.n)
    L = _vertex_list(args.landmarks, g.n)
    fc = tda.dowker_complex(dm, W, L, args.max_dim)
    _emit_json(args, _diagram_payload(tda.persistence(fc)))


def _cmd_tda_witness(args):
    g = _load_graph(args.graph)
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    dm = graphs.geodesic_distances(g, require_finite=True)
    W = _vertex_list(args.witnesses, g.n)
    L = _vertex_list(args.landmarks, g.n)
    fc = tda.witness_complex(dm, W, L, args.alpha, args.max_dim)
    _emit_json(args, _diagram_payload(tda.persistence(fc)))


def _cmd_tda_bottleneck(args):
    pd1 = tda.PersistenceDiagram.from_json_list(_load_json(args.pd1))
    pd2 = tda.PersistenceDiagram.from_json_list(_load_json(args.pd2))
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    _emit_json(args, {"dim": args.dim,
                      "bottleneck": tda.bottleneck_distance(pd1, pd2, args.dim)})


def _cmd_tda_genus(args):
    g = _load_graph(args.graph)
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    _emit_json(args, {"genus": tda.genus(g)})


# ---------------------------------------------------------------- zf

def _cmd_zf_check(args):
    g = _load_graph(args.graph)
    Z = _vertex_list(args.set, g.n)
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    if args.leaky:
        verified = forcing.is_leaky_zfs(g, Z, args.k)
    else:
        verified = forcing.is_contingent_zfs(g, Z, args.k)
    _emit_json(args, {"set": sorted(Z), "size": len(set(Z)), "verified": verified})


def _cmd_zf_min(args):
    g = _load_graph(args.graph)
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    Z = forcing.min_contingent_zfs(g, args.k, cap=args.cap)
    _emit_json(args, {"set": sorted(Z), "size": len(Z), "verified": True})


# ---------------------------------------------------------------- hypercut

def _cmd_hypercut_solve(args):
    H = hypercut.Hypergraph.from_json_dict(_load_json(args.hypergraph))
    wdata = _load_json(args.weights) if args.weights else None
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    if args.method == "brute":
        if wdata is None:
            raise ParseError("brute method needs --weights")
        w = hypercut.CutWeights(tuple(Fraction(str(x)) for x in wdata["w"]))
        S, value = hypercut.brute_force_min_cut(H, w)
    elif args.method == "lawler":
        value, S = hypercut.lawler_min_cut(H)
    elif args.method == "gadget":
        if wdata is None:
            raise ParseError("gadget method needs --weights")
        w2 = Fraction(str(wdata["w"][2]))
        value, S = hypercut.gadget_min_cut_4uniform(H, w2)
    else:  # noeven
        value, S = hypercut.no_even_split_min(H)
        return _emit_json(args, {"method": args.method, "value": value,
                                 "set": sorted(S)})
    _emit_json(args, {"method": args.method, "value": _fraction_json(value),
                      "set": sorted(S)})


# ---------------------------------------------------------------- elim

def _parse_steps(data) -> list[elimination.EliminationStep]:
    steps = []
    for row in data:
        kind = row[0]
        if kind == "vertex":
            steps.append(elimination.EliminationStep.vertex(int(row[1]) - 1))
        else:
            steps.append(elimination.EliminationStep(
                kind, (int(row[1]) - 1, int(row[2]) - 1)))
    return steps


def _steps_payload(steps) -> list[list]:
    out = []
    for s in steps:
        if s.kind == "vertex":
            out.append(["vertex", s.target + 1])
        else:
            out.append([s.kind, s.target[0] + 1, s.target[1] + 1])
    return out


def _cmd_elim_run(args):
    g = _load_dag(args.dag)
    steps = _parse_steps(_load_json(args.steps))
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    final, cost, complete = elimination.run_sequence(g, steps)
    payload = {"cost": cost, "complete": complete}
    if complete and final.labels is not None:
        payload["jacobian"] = elimination.bipartite_jacobian(final).tolist()
    _emit_json(args, payload)


def _cmd_elim_greedy(args):
    g = _load_dag(args.dag)
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    steps, cost = elimination.greedy_vertex_sequence(g)
    _emit_json(args, {"cost": cost, "steps": _steps_payload(steps)})


def _cmd_elim_optimal(args):
    g = _load_dag(args.dag)
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    steps, cost = elimination.optimal_sequence(g, mode=args.mode)
    _emit_json(args, {"cost": cost, "mode": args.mode,
                      "steps": _steps_payload(steps)})


def _cmd_elim_jacobian(args):
    g = _load_dag(args.dag)
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    _emit_json(args, {"jacobian": elimination.path_sum_jacobian(g).tolist()})


# ---------------------------------------------------------------- reversal

def _cmd_reversal_simulate(args):
    g = _load_dag(args.dag)
    schedule = reversal.ReversalSchedule.from_json_list(_load_json(args.schedule))
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    report = reversal.simulate_reversal(g, schedule, args.memory)
    _emit_json(args, {"peak_persistent_memory": report.peak_persistent_memory,
                      "computational_cost": report.computational_cost})


def _cmd_reversal_schedule(args):
    g = _load_dag(args.dag)
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    if args.policy == "store_all":
        sched = reversal.store_all_schedule(g)
        budget = g.n + g.p
    else:
        sched = reversal.recompute_all_schedule(g)
        budget = g.n
    report = reversal.simulate_reversal(g, sched, budget)
    _emit_json(args, {"policy": args.policy,
                      "schedule": sched.to_json_list(),
                      "peak_persistent_memory": report.peak_persistent_memory,
                      "computational_cost": report.computational_cost})


def _cmd_reversal_revolve(args):
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    sched = reversal.chain_revolve(args.p, args.checkpoints)
    g = reversal.chain_dag(args.p)
    report = reversal.simulate_reversal(g, sched, 1 + args.checkpoints)
    _emit_json(args, {"p": args.p, "checkpoints": args.checkpoints,
                      "dp_cost": reversal.chain_revolve_cost(args.p, args.checkpoints),
                      "schedule": sched.to_json_list(),
                      "peak_persistent_memory": report.peak_persistent_memory,
                      "computational_cost": report.computational_cost})


def _cmd_reversal_optimal(args):
    g = _load_dag(args.dag)
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    sched, cost = reversal.optimal_reversal_bruteforce(g, args.memory)
    _emit_json(args, {"memory": args.memory, "cost": cost,
                      "schedule": sched.to_json_list()})


# ---------------------------------------------------------------- async

def _cmd_async_experiment(args):
    cfg = asynchrony.ExperimentConfig.from_json_dict(_load_json(args.config))
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    rows = asynchrony.run_experiment(cfg, workers=args.workers)
    _emit(args, asynchrony.rows_to_csv(rows))


def _cmd_async_verify(args):
    M = asynchrony.sample_ensemble(args.ensemble, args.n, args.ell, args.seed)
    if args.jacobi:
        M = asynchrony.block_jacobi_matrix(M, negate_offdiag=args.negate_offdiag)
    delta = asynchrony.DelayPattern("uniform", args.k).realize(
        args.ell, np.random.default_rng(args.seed))
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    kappa = delta.max_delay
    check = asynchrony.verify_lemmas(M, delta, kappa, kappa + 3)
    _emit_json(args, {
        "cospectral_ok": check.cospectral_ok,
        "uniform_ok": check.uniform_ok,
        "rho_delayed": check.rho_kappa,
        "rho_base": check.rho_base,
    })


# ---------------------------------------------------------------- express

def _cmd_express_prob(args):
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    if args.method == "brute":
        if args.A:
            A = express.BinaryMatrix.from_bitstrings(_load_json(args.A))
        elif args.n is not None:
            A = express.BinaryMatrix.full_nonzero(args.n)
        else:
            raise ParseError("brute method needs --A or --n")
        value = express.match_probability_bruteforce(A, args.t)
    elif args.method == "identity":
        value = express.closed_form_identity(args.n, args.t)
    elif args.method == "star":
        value = express.closed_form_star(args.n, args.t)
    else:  # maximal
        value = express.maximal_abelian_probability(args.n, args.t)
    _emit_json(args, _fraction_json(value))


def _cmd_express_phases(args):
    A = express.BinaryMatrix.from_bitstrings(_load_json(args.A))
    theta = _load_json(args.theta)
    if args.validate_only:
        return _emit_json(args, {"valid": True})
    _emit_json(args, {"phases": express.circuit_phases(A, theta).tolist()})


# ---------------------------------------------------------------- wiring

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="combench")
    top.add_argument("--seed", type=int, default=0)
    top.add_argument("--out", default=None, help="output path (default stdout)")
    top.add_argument("--workers", type=int, default=1)
    top.add_argument("--validate-only", action="store_true")
    # the same flags are accepted after the subcommand; SUPPRESS keeps the
    # top-level values when the inline form is absent
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS)
    common.add_argument("--validate-only", action="store_true",
                        default=argparse.SUPPRESS)
    sub = top.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graph").add_subparsers(dest="sub", required=True)
    p = g.add_parser("generate", parents=[common])
    p.add_argument("--spec", default=None)
    p.add_argument("--kind", default="cycle")
    p.add_argument("--params", default="{}")
    p.set_defaults(func=_cmd_graph_generate)
    p = g.add_parser("distances", parents=[common])
    p.add_argument("--graph", required=True)
    p.add_argument("--require-finite", action="store_true")
    p.set_defaults(func=_cmd_graph_distances)
    p = g.add_parser("epsnet", parents=[common])
    p.add_argument("--graph", required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.set_defaults(func=_cmd_graph_epsnet)

    t = sub.add_parser("tda").add_subparsers(dest="sub", required=True)
    p = t.add_parser("vr", parents=[common])
    p.add_argument("--graph", required=True)
    p.add_argument("--alpha-max", type=float, default=None)
    p.add_argument("--max-dim", type=int, default=2)
    p.set_defaults(func=_cmd_tda_vr)
    p = t.add_parser("dowker", parents=[common])
    p.add_argument("--graph", required=True)
    p.add_argument("--witnesses", default="all")
    p.add_argument("--landmarks", default="all")
    p.add_argument("--max-dim", type=int, default=2)
    p.set_defaults(func=_cmd_tda_dowker)
    p = t.add_parser("witness", parents=[common])
    p.add_argument("--graph", required=True)
    p.add_argument("--witnesses", default="all")
    p.add_argument("--landmarks", default="all")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--max-dim", type=int, default=2)
    p.set_defaults(func=_cmd_tda_witness)
    p = t.add_parser("bottleneck", parents=[common])
    p.add_argument("--pd1", required=True)
    p.add_argument("--pd2", required=True)
    p.add_argument("--dim", type=int, default=1)
    p.set_defaults(func=_cmd_tda_bottleneck)
    p = t.add_parser("genus", parents=[common])
    p.add_argument("--graph", required=True)
    p.set_defaults(func=_cmd_tda_genus)

    z = sub.add_parser("zf").add_subparsers(dest="sub", required=True)
    p = z.add_parser("check", parents=[common])
    p.add_argument("--graph", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--leaky", action="store_true")
    p.set_defaults(func=_cmd_zf_check)
    p = z.add_parser("min", parents=[common])
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--cap", type=int, default=12)
    p.set_defaults(func=_cmd_zf_min)

    h = sub.add_parser("hypercut").add_subparsers(dest="sub", required=True)
    p = h.add_parser("solve", parents=[common])
    p.add_argument("--hypergraph", required=True)
    p.add_argument("--weights", default=None)
    p.add_argument("--method", choices=["brute", "lawler", "gadget", "noeven"],
                   required=True)
    p.set_defaults(func=_cmd_hypercut_solve)

    e = sub.add_parser("elim").add_subparsers(dest="sub", required=True)
    p = e.add_parser("run", parents=[common])
    p.add_argument("--dag", required=True)
    p.add_argument("--steps", required=True)
    p.set_defaults(func=_cmd_elim_run)
    p = e.add_parser("greedy", parents=[common])
    p.add_argument("--dag", required=True)
    p.set_defaults(func=_cmd_elim_greedy)
    p = e.add_parser("optimal", parents=[common])
    p.add_argument("--dag", required=True)
    p.add_argument("--mode", choices=["vertex", "edge"], default="vertex")
    p.set_defaults(func=_cmd_elim_optimal)
    p = e.add_parser("jacobian", parents=[common])
    p.add_argument("--dag", required=True)
    p.set_defaults(func=_cmd_elim_jacobian)

    r = sub.add_parser("reversal").add_subparsers(dest="sub", required=True)
    p = r.add_parser("simulate", parents=[common])
    p.add_argument("--dag", required=True)
    p.add_argument("--schedule", required=True)
    p.add_argument("--memory", type=int, required=True)
    p.set_defaults(func=_cmd_reversal_simulate)
    p = r.add_parser("schedule", parents=[common])
    p.add_argument("--dag", required=True)
    p.add_argument("--policy", choices=["store_all", "recompute_all"], required=True)
    p.set_defaults(func=_cmd_reversal_schedule)
    p = r.add_parser("revolve", parents=[common])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--checkpoints", type=int, required=True)
    p.set_defaults(func=_cmd_reversal_revolve)
    p = r.add_parser("optimal", parents=[common])
    p.add_argument("--dag", required=True)
    p.add_argument("--memory", type=int, required=True)
    p.set_defaults(func=_cmd_reversal_optimal)

    a = sub.add_parser("async").add_subparsers(dest="sub", required=True)
    p = a.add_parser("experiment", parents=[common])
    p.add_argument("--config", required=True)
    p.set_defaults(func=_cmd_async_experiment)
    p = a.add_parser("verify", parents=[common])
    p.add_argument("--ensemble", choices=["iid", "goe", "wishart"], default="goe")
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--ell", type=int, default=4)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--jacobi", action="store_true")
    p.add_argument("--negate-offdiag", action="store_true")
    p.set_defaults(func=_cmd_async_verify)

    x = sub.add_parser("express").add_subparsers(dest="sub", required=True)
    p = x.add_parser("prob", parents=[common])
    p.add_argument("--A", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--method", choices=["brute", "identity", "star", "maximal"],
                   required=True)
    p.set_defaults(func=_cmd_express_prob)
    p = x.add_parser("phases", parents=[common])
    p.add_argument("--A", required=True)
    p.add_argument("--theta", required=True)
    p.set_defaults(func=_cmd_express_phases)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except CombenchError as exc:
        payload = {"code": exc.code, "message": str(exc), "context": exc.context}
        sys.stdout.write(json.dumps(payload, sort_keys=True, default=str) + "\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

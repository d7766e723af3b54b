"""Command-line frontend: JSON in, JSON out, scripting-friendly exit codes.

Exit codes: 0 success, 1 verification failures, 2 parse/usage errors,
3 invariant violations, 4 size-limit refusals.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import bell, pauli, qstate, theorem, wenplaquette
from .errors import BellqError, SizeLimitError


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_state(path: str) -> qstate.StateVector:
    return qstate.state_from_json(_load_json(path))


def _keep_set(raw: str):
    return sorted({int(part) for part in raw.split(",") if part.strip()})


def _emit(payload, out_path):
    text = json.dumps(payload)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _optimizer_config(args) -> bell.OptimizerConfig:
    cfg = bell.OptimizerConfig()
    cfg.seed = args.seed
    cfg.starts = args.starts
    cfg.tol = args.tol
    if getattr(args, "theorem_tol", None) is not None:
        cfg.theorem_tol = args.theorem_tol
    return cfg


def cmd_rmat(args):
    r = pauli.correlation_tensor(_load_state(args.state))
    _emit(r.to_json(), args.out)
    return 0


def cmd_bound(args):
    _emit({"bound": pauli.lemma_bound(_load_state(args.state))}, args.out)
    return 0


def cmd_maximize(args):
    result = bell.maximize(_load_state(args.state), _optimizer_config(args))
    _emit(
        {
            "gamma_hat": result.gamma_hat,
            "converged": result.converged,
            "settings": result.settings.to_json(),
        },
        args.out,
    )
    return 0


def cmd_concurrence(args):
    state = _load_state(args.state)
    split = qstate.Bipartition(state.n, frozenset(_keep_set(args.keep)))
    if args.delta is not None:
        value = qstate.generalized_concurrence(state, split, args.delta)
    else:
        value = qstate.concurrence_pure(state, split)
    _emit({"concurrence": value}, args.out)
    return 0


def cmd_entropy(args):
    state = _load_state(args.state)
    rho = qstate.partial_trace(state, _keep_set(args.keep))
    _emit({"S": qstate.von_neumann_entropy(rho)}, args.out)
    return 0


def cmd_verify_theorem(args):
    cfg = _optimizer_config(args)
    if args.sweep:
        payload = _load_json(args.sweep)
        specs = [theorem.spec_from_json(entry) for entry in payload["specs"]]
        file_cfg = payload.get("config", {})
        for key in ("starts", "seed", "tol", "max_iters", "theorem_tol"):
            if key in file_cfg:
                setattr(cfg, key, file_cfg[key])
    else:
        specs = theorem.default_sweep()
    reports = [theorem.verify(spec, cfg) for spec in specs]
    _emit([rep.to_json() for rep in reports], args.out)
    return 0 if all(rep.passed for rep in reports) else 1


def cmd_wen(args):
    _emit(wenplaquette.report(args.lambda_plus), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellq",
        description="Bell-violation and entanglement calculations for pure qubit states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, state=True):
        if state:
            p.add_argument("--state", required=True, help="state file (JSON)")
        p.add_argument("--out", default=None, help="write the JSON report here")

    def add_optimizer(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--starts", type=int, default=32)
        p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser("rmat", help="correlation tensor of a state")
    add_common(p)
    p.set_defaults(func=cmd_rmat)

    p = sub.add_parser("bound", help="spectral upper bound on the violation")
    add_common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("maximize", help="numerically maximize the violation")
    add_common(p)
    add_optimizer(p)
    p.set_defaults(func=cmd_maximize)

    p = sub.add_parser("concurrence", help="concurrence for a bipartition")
    add_common(p)
    p.add_argument("--keep", required=True, help="comma-separated qubits of subsystem A")
    p.add_argument("--delta", type=int, default=None, help="use the delta-case formula")
    p.set_defaults(func=cmd_concurrence)

    p = sub.add_parser("entropy", help="entanglement entropy for a bipartition")
    add_common(p)
    p.add_argument("--keep", required=True, help="comma-separated qubits of subsystem A")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("verify-theorem", help="run the closed-form verification sweep")
    add_common(p, state=False)
    p.add_argument("--sweep", default=None, help="sweep file (JSON), else built-in sweep")
    add_optimizer(p)
    p.add_argument("--theorem-tol", dest="theorem_tol", type=float, default=1e-4)
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser("wen", help="six-site plaquette report")
    add_common(p, state=False)
    p.add_argument("--lambda-plus", dest="lambda_plus", type=float, required=True)
    p.set_defaults(func=cmd_wen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "wen" and not 0.0 <= args.lambda_plus <= 1.0:
        parser.error("--lambda-plus must lie in [0, 1]")
    try:
        return args.func(args)
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except BellqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        print(f"error: cannot parse input ({exc})", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

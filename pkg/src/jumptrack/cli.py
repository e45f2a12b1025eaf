"""Command-line frontend: solve, entropy-curve, simulate, verify.

Outputs are deterministic functions of the flags (plus seed); every command
with a file output writes a run manifest alongside it.  Exit codes: 0 on
success, 1 on a failed verification, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__
from .algebra import project
from .dynamics import SystemParams, measurement_ops, steady_state
from .errors import JumptrackError, OmegaZeroError
from .schemes import (
    FAMILIES,
    find_schemes,
    mu_candidates,
    radical_residual,
    rate_based_occupation,
    verify_mu,
)
from .trajectory import (
    AdaptivePolicy,
    FixedPolicy,
    SimConfig,
    aggregate_records,
    simulate_one,
)


def _fmt(x: float) -> str:
    """Locale-independent float formatting, 17 significant digits."""
    return f"{x:.17g}"


class UsageError(Exception):
    pass


def _write_manifest(command: str, params: dict, outputs: list[str], t_start: float) -> None:
    if not outputs:
        return
    manifest = {
        "command": command,
        "params": params,
        "seed": params.get("seed"),
        "version": __version__,
        "outputs": outputs,
        "duration_s": time.time() - t_start,
    }
    path = outputs[0] + ".manifest.json"
    with open(path, "w", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _params(args) -> SystemParams:
    try:
        return SystemParams(gamma=args.gamma, omega=args.omega)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _scheme_dict(s) -> dict:
    return {
        "family": s.family,
        "mu_re": s.mu.real,
        "mu_im": s.mu.imag,
        "pair_signs": [s.pair.s1, s.pair.s2],
        "psi1": [[s.pair.psi1[0].real, s.pair.psi1[0].imag],
                 [s.pair.psi1[1].real, s.pair.psi1[1].imag]],
        "psi2": [[s.pair.psi2[0].real, s.pair.psi2[0].imag],
                 [s.pair.psi2[1].real, s.pair.psi2[1].imag]],
        "p1": s.p1,
        "p2": s.p2,
        "entropy_bits": s.entropy_bits,
        "pr_residual": s.pr_residual,
    }


def cmd_solve(args) -> int:
    t0 = time.time()
    p = _params(args)
    try:
        schemes = find_schemes(p)
    except OmegaZeroError as exc:
        raise UsageError(str(exc)) from exc
    payload = [_scheme_dict(s) for s in schemes]
    print(f"{'family':<12}{'mu':<24}{'pair':<8}{'p1':<12}{'p2':<12}{'h [bits]':<12}residual")
    for s in schemes:
        print(
            f"{s.family:<12}{s.mu.real:+.4f}{s.mu.imag:+.4f}i{'':<8}"
            f"({s.pair.s1},{s.pair.s2})  {s.p1:<12.6f}{s.p2:<12.6f}"
            f"{s.entropy_bits:<12.6f}{s.pr_residual:.2e}"
        )
    outputs = []
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        outputs.append(args.out)
    elif args.format == "json":
        json.dump(payload, sys.stdout, indent=2)
        print()
    _write_manifest("solve", {"gamma": args.gamma, "omega": args.omega}, outputs, t0)
    return 0


ENTROPY_HEADER = "omega_over_gamma,family,mu_re,mu_im,p1,p2,entropy_bits,pr_residual"


def cmd_entropy_curve(args) -> int:
    t0 = time.time()
    if args.gamma <= 0:
        raise UsageError("gamma must be positive")
    if not (0 < args.omega_min < args.omega_max):
        raise UsageError("need 0 < omega-min < omega-max")
    if args.steps < 2:
        raise UsageError("steps must be >= 2")
    grid = np.linspace(args.omega_min, args.omega_max, args.steps)
    lines = [ENTROPY_HEADER]
    for omega in grid:
        p = SystemParams(gamma=args.gamma, omega=float(omega))
        for s in sorted(find_schemes(p), key=lambda s: s.family):
            lines.append(
                ",".join(
                    [
                        _fmt(omega / args.gamma),
                        s.family,
                        _fmt(s.mu.real),
                        _fmt(s.mu.imag),
                        _fmt(s.p1),
                        _fmt(s.p2),
                        _fmt(s.entropy_bits),
                        _fmt(s.pr_residual),
                    ]
                )
            )
    with open(args.out, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    _write_manifest(
        "entropy-curve",
        {
            "gamma": args.gamma,
            "omega_min": args.omega_min,
            "omega_max": args.omega_max,
            "steps": args.steps,
        },
        [args.out],
        t0,
    )
    return 0


TRAJECTORY_HEADER = (
    "trajectory_id,t,re_ce,im_ce,re_cg,im_cg,"
    "bloch_x,bloch_y,bloch_z,active_mu_re,active_mu_im,jumps_so_far"
)


def _parse_policy(spec: str, p: SystemParams):
    kind, _, rest = spec.partition(":")
    if kind == "fixed":
        parts = rest.split(",")
        if len(parts) != 2:
            raise UsageError("fixed policy must be fixed:RE,IM")
        try:
            return FixedPolicy(complex(float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise UsageError(f"bad fixed mu: {rest}") from exc
    if kind == "adaptive":
        if rest not in FAMILIES:
            raise UsageError(f"adaptive family must be one of {'|'.join(FAMILIES)}")
        try:
            schemes = {s.family: s for s in find_schemes(p)}
        except OmegaZeroError as exc:
            raise UsageError(str(exc)) from exc
        if rest not in schemes:
            raise UsageError(f"family {rest} does not exist at omega/gamma={p.omega/p.gamma}")
        return AdaptivePolicy(schemes[rest])
    raise UsageError("policy must be fixed:RE,IM or adaptive:FAMILY")


def cmd_simulate(args) -> int:
    t0 = time.time()
    p = _params(args)
    policy = _parse_policy(args.policy, p)
    try:
        cfg = SimConfig(
            params=p,
            policy=policy,
            t_max=args.t_max,
            dt_record=args.dt_record,
            seed=args.seed,
            n_trajectories=args.n_traj,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    lines = [TRAJECTORY_HEADER]
    records = [simulate_one(cfg, traj_index=i) for i in range(cfg.n_trajectories)]
    for i, rec in enumerate(records):
        for k in range(len(rec.times)):
            ce, cg = rec.states[k]
            bx, by, bz = rec.bloch[k]
            mu = rec.active_mu[k]
            lines.append(
                ",".join(
                    [
                        str(i),
                        _fmt(rec.times[k]),
                        _fmt(ce.real),
                        _fmt(ce.imag),
                        _fmt(cg.real),
                        _fmt(cg.imag),
                        _fmt(bx),
                        _fmt(by),
                        _fmt(bz),
                        _fmt(mu.real),
                        _fmt(mu.imag),
                        str(int(rec.jumps_before[k])),
                    ]
                )
            )
    with open(args.out, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")

    stats = aggregate_records(cfg, records)
    stats_payload = {
        "times": [float(t) for t in stats.times],
        "mean_rho": [
            [[rho[0, 0].real, rho[0, 0].imag], [rho[0, 1].real, rho[0, 1].imag],
             [rho[1, 0].real, rho[1, 0].imag], [rho[1, 1].real, rho[1, 1].imag]]
            for rho in stats.mean_rho
        ],
        "occupancy": list(stats.occupancy) if stats.occupancy is not None else None,
        "jump_count_mean": stats.jump_count_mean,
        "n_trajectories": stats.n_trajectories,
    }
    stats_path = args.out + ".ensemble.json"
    with open(stats_path, "w", newline="\n") as fh:
        json.dump(stats_payload, fh, indent=2)
        fh.write("\n")
    _write_manifest(
        "simulate",
        {
            "gamma": args.gamma,
            "omega": args.omega,
            "policy": args.policy,
            "t_max": args.t_max,
            "dt_record": args.dt_record,
            "seed": args.seed,
            "n_traj": args.n_traj,
        },
        [args.out, stats_path],
        t0,
    )
    return 0


def cmd_verify(args) -> int:
    p = _params(args)
    if args.omega == 0:
        raise UsageError("undriven atom: tracking trivial")
    checks: list[tuple[str, bool]] = []
    rng = np.random.default_rng(0)

    # operator completeness over random mu
    worst = 0.0
    for _ in range(200):
        mu = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        ops = measurement_ops(p, mu)
        worst = max(worst, float(np.max(np.abs(ops.K + ops.K.conj().T - p.gamma * ops.J.conj().T @ ops.J))))
    checks.append((f"completeness K+K^dag = gamma J^dag J (max dev {worst:.2e})", worst < 1e-12))

    cands = mu_candidates(p)
    worst_rad = max(radical_residual(p, c.mu) for c in cands)
    worst_ver = max(verify_mu(p, c.mu) for c in cands)
    checks.append((f"mu roots satisfy radical-free condition ({worst_rad:.2e})", worst_rad < 1e-10))
    checks.append((f"mu roots satisfy adaptive consistency ({worst_ver:.2e})", worst_ver < 1e-10))

    schemes = find_schemes(p)
    checks.append((f"at least one jumping scheme found ({len(schemes)})", len(schemes) >= 1))
    rho_s = steady_state(p)
    worst_rec = 0.0
    worst_occ = 0.0
    for s in schemes:
        rec = float(np.linalg.norm(s.p1 * project(s.pair.psi1) + s.p2 * project(s.pair.psi2) - rho_s))
        worst_rec = max(worst_rec, rec)
        q1, _ = rate_based_occupation(s.pair, p, s.mu)
        worst_occ = max(worst_occ, abs(q1 - s.p1))
    checks.append((f"steady-state reconstruction ({worst_rec:.2e})", worst_rec < 1e-8))
    checks.append((f"occupation cross-check lsq vs rates ({worst_occ:.2e})", worst_occ < 1e-9))

    ok = True
    for label, passed in checks:
        print(f"[{'PASS' if passed else 'FAIL'}] {label}")
        ok = ok and passed
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jumptrack",
        description="Quantum-jump trajectories and adaptive two-state tracking schemes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_rates(sp):
        sp.add_argument("--gamma", type=float, default=1.0, help="decay rate (default 1)")
        sp.add_argument("--omega", type=float, required=True, help="Rabi frequency")

    sp = sub.add_parser("solve", help="list two-state jumping schemes")
    add_rates(sp)
    sp.add_argument("--out", help="JSON output path")
    sp.add_argument("--format", choices=["json", "table"], default="table")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("entropy-curve", help="entropy vs omega table (CSV)")
    sp.add_argument("--gamma", type=float, default=1.0)
    sp.add_argument("--omega-min", type=float, required=True)
    sp.add_argument("--omega-max", type=float, required=True)
    sp.add_argument("--steps", type=int, default=100)
    sp.add_argument("--out", required=True, help="CSV output path")
    sp.set_defaults(func=cmd_entropy_curve)

    sp = sub.add_parser("simulate", help="Monte Carlo quantum-jump trajectories")
    add_rates(sp)
    sp.add_argument("--policy", required=True, help="fixed:RE,IM or adaptive:FAMILY")
    sp.add_argument("--t-max", type=float, default=100.0)
    sp.add_argument("--dt-record", type=float, default=0.1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--n-traj", type=int, default=1)
    sp.add_argument("--out", required=True, help="trajectory CSV output path")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("verify", help="run the invariant self-test suite")
    add_rates(sp)
    sp.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except JumptrackError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

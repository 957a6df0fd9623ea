"""Command-line surface: analyze, oracle, simulate, verify.

Reports are machine-readable JSON (CSV for simulate on request); every
numeric result carries a method tag (exact | oracle | monte_carlo), and
warnings appear both in the report and on stderr.

Exit codes: 0 success; 1 invalid input; 2 numerical non-convergence;
3 verification failure.
"""

import argparse
import io
import json
import sys

from .analyzer import (
    ACCEPT,
    informed_guarantee,
    oracle_maxmin,
    uninformed_maxmin,
)
from .contracts import PAPER_EPSILON
from .errors import InvalidScenario, ResolutionTooLarge, ScreeningError
from .plausible import Ball
from .scenario import load_scenario
from .simplex import Forecast
from .simulation import (
    INFORMED,
    Prop1Config,
    Prop2Config,
    build_contracts,
    run_tournament,
)
from .verify import run_all


def _forecast_list(f):
    return f.probs.tolist()


def _scenario_echo(sc):
    if isinstance(sc.contract_config, Prop1Config):
        contract = {
            "kind": "prop1",
            "policy": sc.contract_config.policy,
            "witnesses": [_forecast_list(w) for w in sc.contract_config.witnesses],
        }
        if sc.contract_config.margin is not None:
            contract["fixed_margin"] = sc.contract_config.margin
    else:
        contract = {
            "kind": "prop2",
            "eps1": sc.contract_config.eps1,
            "eps2": sc.contract_config.eps2,
            "gamma": sc.contract_config.gamma,
        }
    return {
        "states": list(sc.states.labels),
        "nature": (
            {"kind": "uniform"}
            if sc.nature == "uniform"
            else {"kind": "fixed", "forecast": _forecast_list(sc.nature)}
        ),
        "experts": [
            {
                "id": e.id,
                "kind": e.kind,
                "announce": (
                    {"fixed": _forecast_list(e.announce)}
                    if isinstance(e.announce, Forecast)
                    else e.announce
                ),
            }
            for e in sc.experts
        ],
        "contract": contract,
        "trials": sc.trials,
        "seed": sc.seed,
    }


def _analyze_experts(sc, contracts, tol):
    """Per-expert analyzer results plus warning strings."""
    experts, warnings = [], []
    any_uncertified = False
    for expert, contract in zip(sc.experts, contracts):
        entry = {"id": expert.id, "kind": expert.kind}
        entry["margin"] = {"value": contract.margin, "method": "exact"}
        if expert.kind == INFORMED:
            value = informed_guarantee(contract)
            entry["value"] = {"value": value, "method": "exact"}
            entry["decision"] = ACCEPT if value > 0 else "reject"
        else:
            report = uninformed_maxmin(expert.theta, contract, tol=tol)
            entry["value"] = {"value": report.value, "method": "exact"}
            entry["decision"] = report.decision
            entry["chebyshev"] = {
                "center": _forecast_list(report.optimal_strategy.atoms[0][0]),
                "radius_sq": report.details["chebyshev_radius_sq"],
                "certified": report.certified,
                "method": "exact",
            }
            entry["worst_case_truth"] = _forecast_list(report.worst_case_truth)
            if not report.certified:
                any_uncertified = True
                warnings.append(
                    f"uncertified chebyshev result for expert '{expert.id}'"
                )
            if isinstance(expert.theta, Ball) and not expert.theta.is_uncut():
                warnings.append(
                    f"plausible ball of expert '{expert.id}' is clipped by the "
                    "simplex; its radius was certified numerically"
                )
            if contract.policy == PAPER_EPSILON and report.decision == ACCEPT:
                from .plausible import diameter_sq

                warnings.append(
                    f"expert '{expert.id}' ACCEPTS under the half-witness-distance "
                    f"margin {contract.margin}: the margin exceeds the rejection "
                    f"threshold diameter_sq/4 = {diameter_sq(expert.theta) / 4.0}; "
                    "the safe policy (witness distance^2 / 8) guarantees rejection"
                )
        experts.append(entry)
    return experts, warnings, any_uncertified


def _emit(report, warnings):
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    for w in warnings:
        sys.stderr.write(f"warning: {w}\n")


def cmd_analyze(args):
    sc = load_scenario(args.scenario)
    contracts = build_contracts(sc.contract_config)
    experts, warnings, uncertified = _analyze_experts(sc, contracts, args.tol)
    report = {
        "scenario": _scenario_echo(sc),
        "experts": experts,
        "warnings": warnings,
    }
    _emit(report, warnings)
    return 2 if uncertified else 0


def cmd_oracle(args):
    sc = load_scenario(args.scenario)
    contracts = build_contracts(sc.contract_config)
    experts, warnings, uncertified = _analyze_experts(sc, contracts, args.tol)
    for entry, expert, contract in zip(experts, sc.experts, contracts):
        if expert.kind == INFORMED:
            continue
        report = oracle_maxmin(
            expert.theta, contract, grid_k=args.grid_k, mixture_pairs=args.mixtures
        )
        entry["oracle"] = {
            "value": report.value,
            "method": "oracle",
            "decision": report.decision,
            "grid_k": args.grid_k,
            "difference_vs_exact": report.value - entry["value"]["value"],
            "reduction_rival_matches_truth_dist_sq": report.details[
                "reduction_rival_matches_truth_dist_sq"
            ],
        }
        if args.mixtures:
            entry["oracle"]["best_mixture_value"] = report.details[
                "best_mixture_value"
            ]
            entry["oracle"]["best_point_mass_value"] = report.details[
                "best_point_mass_value"
            ]
    report = {
        "scenario": _scenario_echo(sc),
        "experts": experts,
        "warnings": warnings,
    }
    _emit(report, warnings)
    return 2 if uncertified else 0


def cmd_simulate(args):
    sc = load_scenario(args.scenario)
    if args.trials is not None:
        sc = type(sc)(
            states=sc.states,
            nature=sc.nature,
            experts=sc.experts,
            contract_config=sc.contract_config,
            trials=args.trials,
            seed=sc.seed,
        )
    if args.seed is not None:
        sc = type(sc)(
            states=sc.states,
            nature=sc.nature,
            experts=sc.experts,
            contract_config=sc.contract_config,
            trials=sc.trials,
            seed=args.seed,
        )
    result = run_tournament(sc)
    if args.format == "csv":
        buf = io.StringIO()
        buf.write("id,decision,analyzer_value,mean_payoff,stderr,trials,seed\n")
        for e in result.experts:
            buf.write(
                f"{e.id},{e.decision},{e.analyzer_value!r},{e.mean_payoff!r},"
                f"{e.payoff_stderr!r},{result.trial_count},{result.seed}\n"
            )
        sys.stdout.write(buf.getvalue())
    else:
        report = {"scenario": _scenario_echo(sc), **result.to_dict()}
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return 0


def cmd_verify(args):
    results = run_all(quick=args.quick)
    width = max(len(name) for name, _, _ in results)
    failed = []
    for name, ok, detail in results:
        status = "PASS" if ok else "FAIL"
        sys.stdout.write(f"{name.ljust(width)}  {status}  {detail}\n")
        if not ok:
            failed.append(name)
    if failed:
        sys.stdout.write(f"FAILED: {', '.join(failed)}\n")
        return 3
    sys.stdout.write(f"all {len(results)} property suites passed\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="expert-screen",
        description="Screening contracts for probabilistic forecasters",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="margins, maxmin values, accept/reject")
    p.add_argument("scenario", help="path to a scenario JSON file")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("oracle", help="brute-force audit of the exact analyzer")
    p.add_argument("scenario", help="path to a scenario JSON file")
    p.add_argument("--grid-k", type=int, default=50, dest="grid_k")
    p.add_argument("--mixtures", action="store_true")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("simulate", help="run a seeded Monte Carlo tournament")
    p.add_argument("scenario", help="path to a scenario JSON file")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("verify", help="run the built-in property suites")
    p.add_argument("--quick", action="store_true")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (InvalidScenario, ResolutionTooLarge) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except ScreeningError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())

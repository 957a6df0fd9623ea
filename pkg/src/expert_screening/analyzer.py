"""Acceptance analysis: informed guarantees, the uninformed maxmin value
via the Chebyshev reduction, and an independent brute-force oracle.

The exact path is the product; the oracle is the auditor. Both return the
same report type so callers can diff them.
"""

from dataclasses import dataclass, field

import numpy as np

from .plausible import Ball, FiniteSet, chebyshev, contains, farthest_point
from .errors import ResolutionTooLarge
from .simplex import (
    Forecast,
    MixedStrategy,
    StateSpace,
    grid_enumerate,
    l2_dist_sq,
)

ACCEPT = "accept"
REJECT = "reject"


@dataclass
class MaxminReport:
    value: float
    optimal_strategy: MixedStrategy
    worst_case_truth: Forecast
    decision: str
    method: str  # "exact" | "oracle"
    certified: bool = True
    details: dict = field(default_factory=dict)


def informed_guarantee(c, truth=None):
    """Worst-case expected payoff of a truthful informed expert.

    The minimizing rival is the truth itself, so the guarantee is the
    contract margin regardless of the truth.
    """
    return c.margin


def truth_telling_gap(truth, report):
    """Expected-payoff loss from misreporting; rival-independent and equal
    to the squared L2 distance between truth and report."""
    return l2_dist_sq(truth, report)


def uninformed_maxmin(theta, c, tol=1e-8, max_iter=20000):
    """Exact maxmin value: margin minus the squared Chebyshev radius.

    The adversary's best reply is a point mass at the worst-case truth;
    point-mass strategies dominate mixtures (the variance term in the
    bias-variance decomposition is pure loss); the best point mass is the
    Chebyshev center of theta over the simplex.
    """
    res = chebyshev(theta, tol=tol, max_iter=max_iter)
    value = c.margin - res.radius_sq
    worst, _ = farthest_point(theta, res.center)
    return MaxminReport(
        value=value,
        optimal_strategy=MixedStrategy(((res.center, 1.0),)),
        worst_case_truth=worst,
        decision=ACCEPT if value > 0 else REJECT,
        method="exact",
        certified=res.certified,
        details={
            "margin": c.margin,
            "chebyshev_radius_sq": res.radius_sq,
            "chebyshev_iterations": res.iterations,
        },
    )


def _adversary_candidates(theta, grid):
    """Truths available to the oracle adversary: theta's own exact points
    (witnesses / extremes) plus grid points falling inside theta."""
    if isinstance(theta, FiniteSet):
        cand = list(theta.forecasts)
    else:
        from .plausible import _ball_grid

        cand = list(_ball_grid(theta))
    cand.extend(g for g in grid if contains(theta, g))
    # dedupe exact keys, keep first occurrence (deterministic)
    seen, out = set(), []
    for f in cand:
        if f.key() not in seen:
            seen.add(f.key())
            out.append(f)
    return out


def oracle_maxmin(theta, c, grid_k=50, mixture_pairs=False, cap=10**6):
    """Brute-force maxmin over grid strategies and adversary truths.

    Strategies are point masses on the simplex grid (plus, optionally,
    two-point mixtures with weights 0.1..0.9). For each strategy the
    adversary picks the worst truth in theta with the rival forecasting
    it; all grid rivals are also scanned to confirm that deviating from
    the truth never helps the adversary.
    """
    n = theta.n
    space = StateSpace(tuple(str(i) for i in range(n)))
    grid = grid_enumerate(space, grid_k, cap=cap)
    cand = _adversary_candidates(theta, grid)

    G = np.array([g.probs for g in grid])            # (num_grid, n)
    A = np.array([f.probs for f in cand])            # (num_cand, n)
    # squared distances cand x grid
    D = (
        np.sum(A**2, axis=1)[:, None]
        + np.sum(G**2, axis=1)[None, :]
        - 2.0 * (A @ G.T)
    )
    np.clip(D, 0.0, None, out=D)

    worst_per_pm = D.max(axis=0)                     # worst-case loss per point mass
    pm_values = c.margin - worst_per_pm
    best_j = int(np.argmax(pm_values))               # first occurrence: deterministic
    best_value = float(pm_values[best_j])
    best_strategy = MixedStrategy(((grid[best_j], 1.0),))

    details = {"grid_k": grid_k, "margin": c.margin, "best_point_mass_value": best_value}

    if mixture_pairs:
        budget = 9 * len(grid) * len(grid) * len(cand)
        if budget > 5 * 10**7:
            raise ResolutionTooLarge(
                f"two-point mixture scan needs {budget} evaluations; lower grid_k"
            )
        best_mix = -np.inf
        weights = [w / 10.0 for w in range(1, 10)]
        for i in range(len(grid)):
            col_i = D[:, i : i + 1]
            for w in weights:
                mixed = w * col_i + (1.0 - w) * D   # (num_cand, num_grid)
                vals = c.margin - mixed.max(axis=0)
                m = float(vals.max())
                if m > best_mix:
                    best_mix = m
        details["best_mixture_value"] = best_mix
        best_value = max(best_value, best_mix)

    # worst truth for the best point mass, lexicographically smallest tie
    col = D[:, best_j]
    worst_d = float(col.max())
    ties = [cand[i] for i in range(len(cand)) if col[i] >= worst_d - 1e-12]
    worst_truth = min(ties, key=lambda f: f.key())

    # rival-deviation audit: the minimizing grid rival should coincide with
    # the worst truth (rival = truth is the adversary's best reply)
    diffs = G - worst_truth.probs
    rival_d = np.sum(diffs**2, axis=1)
    r_idx = int(np.argmin(rival_d))
    details["reduction_min_rival_dist_sq"] = float(rival_d[r_idx])
    details["reduction_rival_matches_truth_dist_sq"] = float(
        l2_dist_sq(grid[r_idx], worst_truth)
    )

    return MaxminReport(
        value=best_value,
        optimal_strategy=best_strategy,
        worst_case_truth=worst_truth,
        decision=ACCEPT if best_value > 0 else REJECT,
        method="oracle",
        certified=True,
        details=details,
    )

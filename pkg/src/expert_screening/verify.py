"""Built-in property suites, runnable from the CLI (`expert-screen verify`).

Each check is a pure function of a quick/full flag, returning (ok, detail).
Random instances are drawn from fixed seeds so runs are reproducible.
"""

import json

import numpy as np

from .analyzer import (
    ACCEPT,
    REJECT,
    informed_guarantee,
    oracle_maxmin,
    truth_telling_gap,
    uninformed_maxmin,
)
from .contracts import (
    Contract,
    FIXED_MARGIN,
    PAPER_EPSILON,
    SAFE_EPSILON,
    expected_payoff,
    make_prop1_contract,
    make_prop2_contracts,
    realized_payoff,
)
from .plausible import Ball, FiniteSet, chebyshev, diameter_sq
from .scoring import (
    brier,
    expected_score_closed_form,
    expected_score_direct,
    propriety_gap,
)
from .simplex import (
    Forecast,
    MixedStrategy,
    StateSpace,
    grid_enumerate,
    l2_dist_sq,
    mixed_mean,
    sample_simplex_uniform,
)


def _space(n):
    return StateSpace(tuple(f"s{i}" for i in range(n)))


def _random_finite_set(rng, n, max_points=5, min_points=2):
    m = int(rng.integers(min_points, max_points + 1))
    space = _space(n)
    pts = []
    while len(pts) < m:
        f = sample_simplex_uniform(space, rng)
        if all(l2_dist_sq(f, g) > 1e-6 for g in pts):
            pts.append(f)
    return FiniteSet(tuple(pts))


def _random_uncut_ball(rng, n):
    space = _space(n)
    while True:
        center = sample_simplex_uniform(space, rng)
        limit = float(center.probs.min()) / np.sqrt((n - 1) / n)
        if limit > 0.06:
            radius = float(rng.uniform(0.05, min(limit * 0.95, 0.4)))
            ball = Ball(center, radius)
            if ball.is_uncut():
                return ball


def _grid_chebyshev_radius_sq(theta_points, space, k):
    """Independent oracle: min over grid centers of the max squared distance."""
    grid = grid_enumerate(space, k)
    G = np.array([g.probs for g in grid])
    P = np.array([p.probs for p in theta_points])
    D = (
        np.sum(G**2, axis=1)[:, None]
        + np.sum(P**2, axis=1)[None, :]
        - 2.0 * (G @ P.T)
    )
    return float(D.max(axis=1).min())


def check_lemma1_identity(quick):
    rng = np.random.default_rng(101)
    count = 1000 if quick else 10000
    worst = 0.0
    for _ in range(count):
        n = int(rng.integers(2, 7))
        space = _space(n)
        truth = sample_simplex_uniform(space, rng)
        report = sample_simplex_uniform(space, rng)
        diff = abs(
            expected_score_direct(truth, report)
            - expected_score_closed_form(truth, report)
        )
        worst = max(worst, diff)
    return worst <= 1e-12, f"max |direct - closed| = {worst:.2e}"


def check_strict_propriety(quick):
    rng = np.random.default_rng(102)
    count = 200 if quick else 2000
    for _ in range(count):
        n = int(rng.integers(2, 7))
        space = _space(n)
        truth = sample_simplex_uniform(space, rng)
        report = sample_simplex_uniform(space, rng)
        if l2_dist_sq(truth, report) < 1e-12:
            continue
        if not expected_score_direct(truth, truth) > expected_score_direct(
            truth, report
        ):
            return False, "truthful report not strictly optimal"
        gap = propriety_gap(truth, report)
        if abs(gap - l2_dist_sq(truth, report)) > 1e-12:
            return False, "propriety gap != squared distance"
    return True, f"{count} random truth/report pairs"


def check_brier_range(quick):
    rng = np.random.default_rng(103)
    count = 100 if quick else 1000
    for _ in range(count):
        n = int(rng.integers(2, 5))
        f = sample_simplex_uniform(_space(n), rng)
        for s in range(n):
            b = brier(f, s)
            if not -2.0 - 1e-12 <= b <= 1e-12:
                return False, f"score {b} out of range"
            if b > -1e-9 and abs(f.probs[s] - 1.0) > 1e-6:
                return False, "zero score away from the realized-state vertex"
    return True, f"{count} random forecasts, all states"


def check_bias_variance_identity(quick):
    rng = np.random.default_rng(104)
    count = 100 if quick else 1000
    worst = 0.0
    for _ in range(count):
        n = int(rng.integers(2, 5))
        space = _space(n)
        m = int(rng.integers(1, 5))
        raw_w = rng.uniform(0.1, 1.0, size=m)
        weights = raw_w / raw_w.sum()
        atoms = tuple(
            (sample_simplex_uniform(space, rng), float(w)) for w in weights
        )
        xi = MixedStrategy(atoms)
        f = sample_simplex_uniform(space, rng)
        mean = mixed_mean(xi)
        lhs = sum(w * l2_dist_sq(f, a) for a, w in xi.atoms)
        rhs = l2_dist_sq(f, mean) + sum(w * l2_dist_sq(mean, a) for a, w in xi.atoms)
        worst = max(worst, abs(lhs - rhs))
    return worst <= 1e-12, f"max identity residual = {worst:.2e}"


def check_truth_telling_gap(quick):
    rng = np.random.default_rng(105)
    count = 100 if quick else 1000
    for _ in range(count):
        n = int(rng.integers(2, 5))
        space = _space(n)
        truth = sample_simplex_uniform(space, rng)
        report = sample_simplex_uniform(space, rng)
        gap = truth_telling_gap(truth, report)
        if abs(gap - l2_dist_sq(truth, report)) > 1e-12:
            return False, "gap != squared distance"
        c = Contract(0.3, FIXED_MARGIN)
        r1 = sample_simplex_uniform(space, rng)
        r2 = sample_simplex_uniform(space, rng)
        g1 = expected_payoff(c, truth, truth, r1) - expected_payoff(c, truth, report, r1)
        g2 = expected_payoff(c, truth, truth, r2) - expected_payoff(c, truth, report, r2)
        if abs(g1 - g2) > 1e-12 or abs(g1 - gap) > 1e-12:
            return False, "gap depends on the rival"
    return True, f"{count} random triples"


def check_informed_guarantee(quick):
    rng = np.random.default_rng(106)
    count = 100 if quick else 1000
    k = 60
    for n in (2, 3):
        space = _space(n)
        grid = np.array([g.probs for g in grid_enumerate(space, k)])
        for _ in range(count // 2):
            truth = sample_simplex_uniform(space, rng)
            margin = float(rng.uniform(0.01, 1.0))
            c = Contract(margin, FIXED_MARGIN)
            if abs(informed_guarantee(c, truth) - margin) > 0:
                return False, "guarantee != margin"
            d = np.sum((grid - truth.probs) ** 2, axis=1)
            if float((d + margin).min()) < margin - 1e-9:
                return False, "grid rival beat the guarantee"
    return True, f"{count} truths, rival grid k={k}"


def check_chebyshev_two_point(quick):
    rng = np.random.default_rng(107)
    count = 20 if quick else 100
    for _ in range(count):
        n = int(rng.integers(2, 4))
        space = _space(n)
        a = sample_simplex_uniform(space, rng)
        b = sample_simplex_uniform(space, rng)
        if l2_dist_sq(a, b) < 1e-4:
            continue
        theta = FiniteSet((a, b))
        res = chebyshev(theta, tol=1e-10)
        mid = Forecast((a.probs + b.probs) / 2.0)
        if l2_dist_sq(res.center, mid) > 1e-8:
            return False, "center not at the midpoint"
        if abs(res.radius_sq - diameter_sq(theta) / 4.0) > 1e-8:
            return False, "radius_sq != diameter_sq / 4"
    return True, f"{count} random two-point sets"


def check_chebyshev_vs_grid(quick):
    rng = np.random.default_rng(108)
    count = 10 if quick else 30
    k = 60
    for _ in range(count):
        n = int(rng.integers(2, 4))
        theta = _random_finite_set(rng, n, max_points=6)
        res = chebyshev(theta, tol=1e-9)
        oracle = _grid_chebyshev_radius_sq(theta.forecasts, _space(n), k)
        if abs(res.radius_sq - oracle) > 3.0 / k:
            return False, f"|{res.radius_sq} - {oracle}| > {3.0 / k}"
    return True, f"{count} random finite sets vs grid k={k}"


def check_maxmin_vs_oracle(quick):
    rng = np.random.default_rng(109)
    sets = 5 if quick else 15
    balls = 3 if quick else 8
    k = 50
    c = Contract(0.1, FIXED_MARGIN)
    for _ in range(sets):
        n = int(rng.integers(2, 4))
        theta = _random_finite_set(rng, n)
        exact = uninformed_maxmin(theta, c)
        oracle = oracle_maxmin(theta, c, grid_k=k)
        if abs(exact.value - oracle.value) > 3.0 / k:
            return False, f"finite set disagreement {abs(exact.value - oracle.value)}"
    for _ in range(balls):
        n = int(rng.integers(2, 4))
        theta = _random_uncut_ball(rng, n)
        exact = uninformed_maxmin(theta, c)
        oracle = oracle_maxmin(theta, c, grid_k=k)
        if abs(exact.value - oracle.value) > 3.0 / k:
            return False, f"ball disagreement {abs(exact.value - oracle.value)}"
    return True, f"{sets} finite sets + {balls} uncut balls, grid k={k}"


def check_safe_epsilon_screening(quick):
    rng = np.random.default_rng(110)
    count = 10 if quick else 40
    for _ in range(count):
        n = int(rng.integers(2, 4))
        theta = _random_finite_set(rng, n)
        margin = diameter_sq(theta) / 8.0
        c = Contract(margin, FIXED_MARGIN)
        report = uninformed_maxmin(theta, c)
        if report.decision != REJECT or report.value >= 0:
            return False, f"accepted at margin diameter^2/8 (value {report.value})"
    return True, f"{count} random finite sets"


def check_paper_epsilon_counterexample(quick):
    rng = np.random.default_rng(111)
    count = 5 if quick else 20
    for _ in range(count):
        n = int(rng.integers(2, 4))
        space = _space(n)
        fx = sample_simplex_uniform(space, rng)
        fy = sample_simplex_uniform(space, rng)
        if l2_dist_sq(fx, fy) < 1e-2:
            continue
        d2 = l2_dist_sq(fx, fy)
        theta = FiniteSet((fx, fy))
        c = make_prop1_contract(fx, fy, PAPER_EPSILON)
        exact = uninformed_maxmin(theta, c)
        oracle = oracle_maxmin(theta, c, grid_k=50)
        expected = d2 / 4.0
        if exact.decision != ACCEPT or abs(exact.value - expected) > 1e-6:
            return False, f"exact value {exact.value}, expected {expected}"
        if oracle.decision != ACCEPT or abs(oracle.value - expected) > 0.06:
            return False, f"oracle value {oracle.value}, expected {expected}"
    return True, f"{count} two-point sets accept at the half-distance margin"


def check_prop2_screening(quick):
    rng = np.random.default_rng(112)
    count = 5 if quick else 20
    done = 0
    while done < count:
        n = int(rng.integers(2, 4))
        ball1 = _random_uncut_ball(rng, n)
        eps1 = ball1.radius
        eps2 = eps1 + float(rng.uniform(0.05, 0.3))
        ball2 = None
        for _ in range(200):
            cand = _random_uncut_ball(rng, n)
            if abs(cand.radius - eps2) < 0.2 and Ball(cand.center, eps2).is_uncut():
                ball2 = Ball(cand.center, eps2)
                break
        if ball2 is None:
            continue
        gamma = float(rng.uniform(eps1**2 * 1.05, eps2**2 * 0.95))
        c1, c2 = make_prop2_contracts(eps1, eps2, gamma)
        r1 = uninformed_maxmin(ball1, c1)
        r2 = uninformed_maxmin(ball2, c2)
        if abs(r1.value - (gamma - eps1**2)) > 1e-6 or r1.decision != ACCEPT:
            return False, f"expert 1 value {r1.value} vs {gamma - eps1**2}"
        if abs(r2.value - (gamma - eps2**2)) > 1e-6 or r2.decision != REJECT:
            return False, f"expert 2 value {r2.value} vs {gamma - eps2**2}"
        done += 1
    return True, f"{count} random (eps1, eps2, gamma) triples"


def check_point_mass_dominance(quick):
    rng = np.random.default_rng(113)
    count = 3 if quick else 8
    k = 20
    c = Contract(0.2, FIXED_MARGIN)
    for _ in range(count):
        theta = _random_finite_set(rng, 2)
        report = oracle_maxmin(theta, c, grid_k=k, mixture_pairs=True)
        pm = report.details["best_point_mass_value"]
        mix = report.details["best_mixture_value"]
        # a mixture's barycenter lies off-grid, so it may beat the best
        # grid point mass by up to grid-resolution error, never more
        if mix > pm + 3.0 / k:
            return False, f"mixture {mix} beat point mass {pm}"
    return True, f"{count} oracle runs with two-point mixtures, grid k={k}"


def check_eq1_reduction(quick):
    rng = np.random.default_rng(114)
    count = 5 if quick else 15
    k = 50
    c = Contract(0.1, FIXED_MARGIN)
    for _ in range(count):
        n = int(rng.integers(2, 4))
        theta = _random_finite_set(rng, n)
        report = oracle_maxmin(theta, c, grid_k=k)
        # minimizing grid rival must coincide with the worst-case truth
        tol = 2.0 * (n / k) ** 2 + 1e-9
        if report.details["reduction_rival_matches_truth_dist_sq"] > tol:
            return False, "adversary benefited from a rival away from the truth"
    return True, f"{count} oracle runs, grid k={k}"


def check_simulation_determinism(quick):
    from .simulation import ExpertSpec, Prop1Config, Scenario, run_tournament

    space = _space(2)
    fx, fy = Forecast([1.0, 0.0]), Forecast([0.0, 1.0])
    sc = Scenario(
        states=space,
        nature=Forecast([0.7, 0.3]),
        experts=(
            ExpertSpec(id="informed", kind="informed"),
            ExpertSpec(
                id="uninformed",
                kind="uninformed",
                theta=FiniteSet((fx, fy)),
                announce="chebyshev",
            ),
        ),
        contract_config=Prop1Config(policy=SAFE_EPSILON, witnesses=(fx, fy)),
        trials=200 if quick else 2000,
        seed=7,
    )
    a = json.dumps(run_tournament(sc).to_dict(), sort_keys=True)
    b = json.dumps(run_tournament(sc).to_dict(), sort_keys=True)
    if a != b:
        return False, "reports differ across identical runs"
    return True, "identical seeds give byte-identical reports"


CHECKS = [
    ("lemma1-identity", check_lemma1_identity),
    ("strict-propriety", check_strict_propriety),
    ("brier-range", check_brier_range),
    ("bias-variance-identity", check_bias_variance_identity),
    ("truth-telling-gap", check_truth_telling_gap),
    ("informed-guarantee", check_informed_guarantee),
    ("chebyshev-two-point", check_chebyshev_two_point),
    ("chebyshev-vs-grid-oracle", check_chebyshev_vs_grid),
    ("maxmin-exact-vs-oracle", check_maxmin_vs_oracle),
    ("safe-epsilon-screening", check_safe_epsilon_screening),
    ("paper-epsilon-counterexample", check_paper_epsilon_counterexample),
    ("prop2-screening", check_prop2_screening),
    ("point-mass-dominance", check_point_mass_dominance),
    ("eq1-reduction-audit", check_eq1_reduction),
    ("simulation-determinism", check_simulation_determinism),
]


def run_all(quick=False):
    """Run every check; returns a list of (name, ok, detail)."""
    results = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn(quick)
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append((name, ok, detail))
    return results

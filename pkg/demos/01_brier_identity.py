"""Walkthrough: the Brier score and its expected-value identity.

The expected Brier score of a report g under a true distribution f has a
closed form: ||f||^2 - ||f - g||^2 - 1. Because the penalty is exactly
the squared distance between truth and report, truthful reporting is
uniquely optimal (strict propriety), with a loss equal to the squared
distance for any misreport.
"""

import numpy as np

from expert_screening import (
    Forecast,
    StateSpace,
    brier,
    expected_score_closed_form,
    expected_score_direct,
    propriety_gap,
    sample_simplex_uniform,
)

space = StateSpace(("rain", "sun", "snow"))
truth = Forecast([0.6, 0.3, 0.1])
report = Forecast([0.3, 0.5, 0.2])

print("pointwise Brier scores of the report, per realized state:")
for s, label in enumerate(space.labels):
    print(f"  {label:>5}: {brier(report, s):+.4f}")

direct = expected_score_direct(truth, report)
closed = expected_score_closed_form(truth, report)
print(f"\nexpected score, direct sum:   {direct:.12f}")
print(f"expected score, closed form:  {closed:.12f}")
print(f"difference:                   {abs(direct - closed):.2e}")

print("\nthe identity holds to machine precision on random pairs:")
rng = np.random.default_rng(0)
worst = 0.0
for _ in range(5000):
    f = sample_simplex_uniform(space, rng)
    g = sample_simplex_uniform(space, rng)
    worst = max(
        worst, abs(expected_score_direct(f, g) - expected_score_closed_form(f, g))
    )
print(f"  max |direct - closed| over 5000 pairs: {worst:.2e}")

gap = propriety_gap(truth, report)
print(f"\nloss from misreporting (propriety gap): {gap:.6f}")
print(f"squared L2 distance truth->report:      "
      f"{float(np.sum((truth.probs - report.probs) ** 2)):.6f}")

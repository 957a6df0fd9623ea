"""The Brier scoring rule and its expected-value identity.

The direct-sum and closed-form expected scores are both public: their
agreement is this module's own correctness oracle.
"""

import numpy as np

from .errors import IndexOutOfRange
from .simplex import _check_same_space


def brier(f, s):
    """Brier score 2*f(s) - ||f||^2 - 1; zero iff f is the point mass on s."""
    s = int(s)
    if not 0 <= s < f.n:
        raise IndexOutOfRange(f"state index {s} outside [0, {f.n})")
    p = f.probs
    return float(2.0 * p[s] - np.dot(p, p) - 1.0)


def expected_score_direct(truth, report):
    """Expected Brier score of `report` under `truth`, by direct summation."""
    _check_same_space(truth, report)
    return float(sum(truth.probs[s] * brier(report, s) for s in range(truth.n)))


def expected_score_closed_form(truth, report):
    """Closed form ||truth||^2 - ||truth - report||^2 - 1."""
    _check_same_space(truth, report)
    t, r = truth.probs, report.probs
    d = t - r
    return float(np.dot(t, t) - np.dot(d, d) - 1.0)


def propriety_gap(truth, report):
    """Expected-score loss from reporting `report` instead of `truth`.

    Equals the squared L2 distance exactly; strictly positive off-truth.
    """
    return expected_score_closed_form(truth, truth) - expected_score_closed_form(
        truth, report
    )

"""Walkthrough: screening a better-informed expert from a worse-informed one.

Neither expert knows the truth; each holds an L2 ball of plausible
forecasts, and "better informed" means a smaller radius. A mirrored pair
of Brier-difference contracts with additive margin gamma strictly between
the two squared radii is accepted exactly by the better-informed expert:
their worst case is gamma - radius^2, positive for the small ball and
negative for the large one.
"""

import numpy as np

from expert_screening import (
    Ball,
    Forecast,
    make_prop2_contracts,
    oracle_maxmin,
    uninformed_maxmin,
)

eps1, eps2 = 0.10, 0.30
gamma = 0.05  # must satisfy eps1^2 = 0.01 < gamma < 0.09 = eps2^2
sharp = Ball(Forecast([0.45, 0.35, 0.20]), eps1)
blurry = Ball(Forecast([0.40, 0.32, 0.28]), eps2)

c1, c2 = make_prop2_contracts(eps1, eps2, gamma)
print(f"radii: {eps1} (sharp) vs {eps2} (blurry); margin gamma = {gamma}")
print(f"admissible gamma window: ({eps1**2}, {eps2**2})\n")

for name, ball, contract in (("sharp", sharp, c1), ("blurry", blurry, c2)):
    exact = uninformed_maxmin(ball, contract)
    oracle = oracle_maxmin(ball, contract, grid_k=50)
    closed = gamma - ball.radius**2
    print(f"{name} expert (radius {ball.radius}):")
    print(f"  closed form gamma - radius^2:   {closed:+.4f}")
    print(f"  exact analyzer value:           {exact.value:+.4f}  -> {exact.decision}")
    print(f"  oracle value (grid k=50):       {oracle.value:+.4f}  -> {oracle.decision}")
    print()

print("sweeping gamma across and beyond the admissible window:")
for g in np.linspace(0.005, 0.12, 8):
    v1 = g - eps1**2
    v2 = g - eps2**2
    verdict = (
        "screens correctly" if v1 > 0 > v2
        else "both reject" if v1 <= 0
        else "both accept"
    )
    print(f"  gamma={g:.3f}: sharp {v1:+.4f}, blurry {v2:+.4f}  ({verdict})")

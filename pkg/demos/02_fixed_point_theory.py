"""Explore the scalar tuning recursion behind the solver.

On an orthogonal design each tuning weight evolves independently under
b <- alpha*(b+sigma)^2 / (b+sigma+z). Whether it settles at a finite fixed
point or blows up is decided by a sharp threshold in z, and that dichotomy
is exactly what turns the weights into a variable-selection device: dead
coordinates diverge and get truncated, informative ones converge.
"""

from gaga.fixed_point import (
    ScalarRegime,
    classify_trajectory,
    closed_form_fixed_point,
    convergence_threshold,
)

alpha, sigma = 2.0, 1.0
thr = convergence_threshold(alpha, sigma)
print(f"alpha={alpha} sigma={sigma}: convergence threshold z = {thr:.6f}")

for mult in (0.25, 0.9, 1.1, 3.0):
    z = mult * thr
    regime = ScalarRegime.from_params(z, sigma, alpha)
    label, trajectory = classify_trajectory(regime, 1000)
    line = f"z = {mult:.2f} x threshold -> {label:10s}"
    fixed = closed_form_fixed_point(regime)
    if fixed is not None:
        line += (f" closed-form b* = {fixed:.6f},"
                 f" iterate after {len(trajectory)} steps = {trajectory[-1]:.6f}")
    else:
        line += f" last iterate before escape = {trajectory[-1]:.3e}"
    print(line)

print("\nfirst ten iterates just above vs just below the threshold:")
for mult in (1.02, 0.98):
    regime = ScalarRegime.from_params(mult * thr, sigma, alpha)
    _, trajectory = classify_trajectory(regime, 10)
    print(f"  {mult:.2f}x:", " ".join(f"{b:.4f}" for b in trajectory[:10]))

# %% [markdown]
# Spectral singularities of the gain/loss barrier
#
# The barrier has strength ``+iz`` on ``(-a, 0)`` and ``-iz`` on ``(0, a)``.
# Its singularities come from a one-dimensional root search per window
# around odd multiples of pi, so each one costs a single bracketed solve.

# %%
import numpy as np

from specsing import BarrierParams, barrier_profile, scattering_amplitudes, singularity
from specsing.singularities import plus_branch_scan

print(f"{'n':>4} {'r_n':>12} {'y_n':>11} {'ak_n':>12} {'a2z_n':>12} {'|M22|':>9}")
for n in (-2, -1, 0, 1, 2, 10, 100):
    rec = singularity(n)
    print(f"{n:>4} {rec.r:12.7f} {rec.y:11.8f} {rec.ak:12.7f} {rec.a2z:12.7f} {rec.residual:9.1e}")

# %% Sweeping k through the first singularity: every coefficient blows up.
rec = singularity(0)
barrier = barrier_profile(BarrierParams(1.0, rec.a2z))
for dk in (-1e-2, -1e-4, -1e-6, 1e-6, 1e-4, 1e-2):
    amp = scattering_amplitudes(barrier, rec.ak + dk)
    print(f"k - k_0 = {dk:+.0e}   log10|T|^2 = {np.log10(amp.transmission):6.2f}")

# %% The other branch of the quadratic never produces a root.
closest = min(w.min_abs_difference for w in plus_branch_scan(20))
print(f"closest approach of the other branch over n <= 20: {closest:.3f}")

# %% [markdown]
# Transfer matrices of layered complex potentials
#
# A potential is a list of constant layers. The transfer matrix maps the
# plane-wave coefficients on the left of the support to those on the right,
# and every scattering amplitude is a ratio of its entries.

# %%
from specsing import PiecewisePotential, scattering_amplitudes, transfer_matrix
from specsing.oracle import compare

well = PiecewisePotential(left_edge=0.0, layers=((1.0, -4.0),))
lossy = PiecewisePotential(left_edge=-0.5, layers=((0.5, 3 - 2j), (0.5, 1j)))

# %% A real well conserves flux, so |t|^2 + |r|^2 = 1.
for k in (0.5, 1.0, 2.0):
    amp = scattering_amplitudes(well, k)
    print(f"k={k:4.1f}  |t|^2={amp.transmission:.6f}  |r|^2={amp.reflection_left:.6f}  sum={amp.transmission + amp.reflection_left:.15f}")

# %% With gain or loss the left and right reflections differ but t does not.
amp = scattering_amplitudes(lossy, 1.3)
print(f"|t|^2={amp.transmission:.6f}  |r_left|^2={amp.reflection_left:.6f}  |r_right|^2={amp.reflection_right:.6f}")

# %% det M = 1 always; the brute-force RK4 reconstruction agrees entry by entry.
m = transfer_matrix(lossy, 1.3)
print("det M =", m.det)
print("max deviation from RK4:", compare(lossy, 1.3))

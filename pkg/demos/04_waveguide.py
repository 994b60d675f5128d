# %% [markdown]
# A gain/loss waveguide tuned to a singularity
#
# The TE_m mode of a rectangular guide with a gain/loss filling reduces to
# the barrier problem with wavenumber ``kappa = sqrt(K^2 - K_m^2)``. Picking
# the frequency fixes the geometry that makes the guide singular there.

# %%
import math

from specsing import WaveguideSpec, frequency_scan, singular_design
from specsing.waveguide import peak_row

gain = WaveguideSpec(1.0, 1.0, omega_p=0.2, delta=1.25).s
design = singular_design(n=0, m=1, s=gain, omega=5.0)
print(f"hbar s = {gain:.4f} eV  alpha = {design.alpha:.4f} nm  beta = {design.beta:.5f} nm")

# %% Two nearly equal geometries, scanned against a 5 eV reference.
tuned = WaveguideSpec(1004.17, 62.0464)
rounded = WaveguideSpec(1004.0, 62.0)
print(f"TE1 cutoff: {tuned.cutoff_energy:.4f} eV, so the lower scan rows are evanescent")
for name, spec in (("1004.17/62.0464", tuned), ("1004/62", rounded)):
    rows = frequency_scan(spec, 0.999, 1.002, 3001, omega_ref=5.0)
    peak = peak_row(rows)
    print(f"{name:>16}: peak at omega/5eV = {peak.ratio:.7f}, log10|T|^2 = {math.log10(peak.T2):.2f}")

# %% [markdown]
# Locating singularities without a closed form
#
# For an arbitrary family ``theta -> potential`` a damped Newton search in
# ``(k, theta)`` drives ``M22`` to zero. On the barrier it recovers the
# window solutions; on a real family it has nothing to find.

# %%
from specsing import PiecewisePotential, find_generic, solve_window
from specsing.errors import LeftDomainError, NoSingularityFoundError
from specsing.singularities import barrier_family

for seed in ((1.0, 2.0), (4.3, 13.3)):
    hit = find_generic(barrier_family(), *seed)
    print(f"seed {seed} -> k={hit.k:.8f} theta={hit.theta:.8f} in {hit.iterations} steps")
print("window solutions:", [(round(solve_window(n).ak, 8), round(solve_window(n).a2z, 8)) for n in (0, 1)])

# %% A three-layer family with an asymmetric gain profile.
def asymmetric(theta):
    return PiecewisePotential(-1.0, ((0.6, 1j * theta), (0.8, 2.0), (0.6, -0.5j * theta)))

hit = find_generic(asymmetric, 1.5, 3.0)
print(f"asymmetric family: k={hit.k:.8f} theta={hit.theta:.8f} |M22|={hit.residual:.1e}")

# %% A real family is Hermitian: the search always gives up.
def real_family(theta):
    return PiecewisePotential(-1.0, ((1.0, theta), (1.0, -theta / 2)))

try:
    find_generic(real_family, 1.0, 2.0)
except (NoSingularityFoundError, LeftDomainError) as exc:
    print("real family:", exc)

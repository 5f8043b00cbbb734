# The 3D Wigner quantum oscillator inside V(p)

from parafock import OscillatorParams, build_observables, noncommutativity_report, spectrum
from parafock.oscillator import (
    compatibility_residual,
    hamilton_heisenberg_residuals,
    vector_transform_residual,
)

p = 2
params = OscillatorParams(mass=1.0, omega=1.0, hbar=1.0)
obs = build_observables(p, params)

# Condition (ii): sum_i [{a_i+, a_i-}, a_k+-] = +-2 a_k+-
for k in (1, 2, 3):
    print(f"a{k}: ", [f"{compatibility_residual(obs, k, s):.1e}" for s in (+1, -1)])

# Hamilton's equations coincide with Heisenberg's.
print(hamilton_heisenberg_residuals(obs))

# Equally spaced levels, E_n = hbar w (n + p/2), degeneracy p+1 then 2p.
levels_out = spectrum(p, 6, params, obs=obs)
for n, energy, mult in levels_out.levels:
    print(f"n={n}  E={energy:g}  multiplicity={mult}")
print("closed form vs diagonalization:", levels_out.max_deviation)

# Different coordinates anticommute but do not commute.
for name, value in noncommutativity_report(p, 6, obs=obs).items():
    print(f"{name:>12}  {value:.3e}")

# M, r and p rotate as vectors.
for which in "Mrp":
    print(which, vector_transform_residual(obs, which))

# Orthogonal polynomials of a Jacobi matrix, Sturm counts and bisection.
import numpy as np

from jacobi_spectra import (eigenvalues, eval_pi, measure_n, spectral_gaps,
                            spectral_measure, sturm_count)
from jacobi_spectra.instances import random_jacobi

rng = np.random.default_rng(0)
J = random_jacobi(rng, 6, (-3, 3), (0.3, 2))
print("q", np.round(J.diag, 3))
print("b", np.round(J.offdiag, 3))

# pi_1 .. pi_7 at z = 0.5 (pi_7 uses b_6 := 1, it is det(z - J) up to scale)
print("\npi_k(0.5):", eval_pi(J, 0.5).true_values())

# Sturm count: number of eigenvalues strictly below x
for x in (-4.0, -1.0, 0.0, 1.0, 4.0):
    print(f"eigenvalues below {x:+.1f}: {sturm_count(J, x)}")

lam = eigenvalues(J)
print("\neigenvalues (bisection):", lam)
print("eigenvalues (LAPACK):   ", np.linalg.eigvalsh(J.to_dense()))

# zeros of pi_N at the eigenvalues (scaled by the largest term of the sequence)
pis = eval_pi(J, lam).true_values()
print("|pi_7(lambda)| / max|pi_k|:", np.abs(pis[-1]) / np.max(np.abs(pis), axis=0))

rho = spectral_measure(J)
print("\nspectral measure weights", rho.weights, " total", rho.total_mass)
rho3 = measure_n(J, 3)
print("weights at site 3       ", rho3.weights)
for g in spectral_gaps(rho):
    print(f"gap ({g.lower:+.4f}, {g.upper:+.4f})  {g.lower_kind}/{g.upper_kind}")

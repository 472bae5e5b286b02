# Weyl functions, the Weyl solution psi and the diagonal Green function.
import numpy as np

from jacobi_spectra import (eigenvalues, green, green_routes, m_minus, m_plus,
                            numeric_residue, psi_vector, residue_at, weyl_m)
from jacobi_spectra.instances import random_jacobi

rng = np.random.default_rng(1)
J = random_jacobi(rng, 7, (-2, 2), (0.5, 1.5))
z = 0.3 + 0.4j

print("m(z)      ", weyl_m(J, z))
print("(J-z)^-1_11", np.linalg.inv(J.to_dense() - z * np.eye(7))[0, 0])

psi = psi_vector(J, z)
print("\npsi", np.round(psi.values, 6))

# m^+ and m^- at site 4 by the submatrix and quotient routes
print("m+_4", m_plus(J, 4, z), m_plus(J, 4, z, route="quotient"))
print("m-_4", m_minus(J, 4, z), m_minus(J, 4, z, route="quotient"))

# Three independent routes to G(z, 4)
for k, v in green_routes(J, z, 4).items():
    print(f"route {k}: {v}")
print("dense   :", np.linalg.inv(J.to_dense() - z * np.eye(7))[3, 3])

# G is Herglotz: Im G > 0 in the upper half plane
print("\nIm G(x + 0.1i, 4) over a grid:",
      all(green(J, complex(x, 0.1), 4).imag > 0 for x in np.linspace(-4, 4, 81)))

# Residues at eigenvalues: the weight of the measure of delta_4
print("\n   lambda        residue       eps-limit")
for x in eigenvalues(J):
    print(f"{x:+.6f}  {residue_at(J, x, 4):.6e}  {numeric_residue(J, x, 4).real:.6e}")

# A chain of five unit masses joined by unit springs, both ends fixed.
import numpy as np

from jacobi_spectra import (MassSpringChain, Perturbation, apply_perturbation,
                            chain_to_jacobi, perturb_chain)
from jacobi_spectra.operator_model import grounded_chain_to_jacobi

chain = MassSpringChain(np.ones(5), np.ones(6))
J = chain_to_jacobi(chain)
print("diagonal    ", J.diag)
print("off-diagonal", J.offdiag)
print(J.to_dense())

# Make the second mass four times heavier: theta = 1/2 scales the row and
# column through that site.  Here h = 0, so no extra spring.
p = Perturbation(site=2, theta=0.5, shift=0.0)
Jt = apply_perturbation(J, p)
print("\nperturbed diagonal    ", Jt.diag)
print("perturbed off-diagonal", Jt.offdiag)

# The same change made on the chain itself
heavier, grounded = perturb_chain(chain, p)
print("\nmasses", heavier.masses, " grounded spring", grounded)

# A nonzero shift adds a spring from the mass to the frame
p2 = Perturbation(site=2, theta=0.5, shift=0.75)
chain2, k_ground = perturb_chain(chain, p2)
A = grounded_chain_to_jacobi(chain2, 2, k_ground)
B = apply_perturbation(J, p2)
print("grounded spring for h=0.75:", k_ground)
print("chain route == matrix route:", np.allclose(A.diag, B.diag), np.allclose(A.offdiag, B.offdiag))

# gamma is where the perturbation pins an eigenvalue; the inverse undoes it
print("\ngamma", p2.gamma, " inverse", p2.inverse())
back = apply_perturbation(B, p2.inverse())
print("round trip error", np.max(np.abs(back.diag - J.diag)))

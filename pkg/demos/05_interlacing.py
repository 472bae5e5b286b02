# Where the eigenvalues go: uniform chain, second mass four times heavier.
import numpy as np

from jacobi_spectra import Perturbation, classify, locate_new_eigenvalues
from jacobi_spectra.instances import random_jacobi
from jacobi_spectra.verification import theorem_gaps, verify_interlacing
from jacobi_spectra.operator_model import MassSpringChain, chain_to_jacobi

J = chain_to_jacobi(MassSpringChain(np.ones(5), np.ones(6)))
p = Perturbation(2, 0.5, 0.0)
rep = classify(J, p)
print("gamma", rep.gamma)
print("shared       ", [a for a, _ in rep.common])
print("only in J    ", np.round(rep.J_only, 6))
print("only in Jt   ", np.round(rep.Jt_only, 6))

# -2 is shared: pi_2(-2) = 0, so that mode does not move the second mass.
for gp in theorem_gaps(J, p):
    v = verify_interlacing(J, p, gp)
    roots = locate_new_eigenvalues(J, p, gp)
    print(f"\ngap ({gp.lower:+.4f}, {gp.upper:+.4f})  passed={v.passed}")
    for r in v.regions:
        print(f"  side {r.name}: new={np.round(r.new, 6)} shared={np.round(r.common, 6)}")
    print("  roots of the augmented Borel transform:", np.round(roots, 6))

# theta > 1: the roles of J and Jt swap
rng = np.random.default_rng(3)
J2 = random_jacobi(rng, 7, (-2, 2), (0.5, 1.5))
p2 = Perturbation.with_gamma(4, 1.8, 0.2)
print("\ntheta = 1.8")
for gp in theorem_gaps(J2, p2):
    v = verify_interlacing(J2, p2, gp)
    print(f"gap ({gp.lower:+.4f}, {gp.upper:+.4f}) swapped={v.swapped} passed={v.passed}")

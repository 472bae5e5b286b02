# The ratio of the two Green functions at the perturbed site is affine in G.
import numpy as np

from jacobi_spectra import Perturbation, green, master
from jacobi_spectra.instances import random_jacobi

rng = np.random.default_rng(2)
J = random_jacobi(rng, 8, (-2, 2), (0.5, 1.5))
z = -0.7 + 0.2j

print(" theta      gamma       |G/Gt - affine| / |G/Gt|")
for theta in (0.25, 0.5, 0.75, 1.0, 1.5, 2.0):
    p = Perturbation(3, theta, 0.8)
    m = master(J, p, z)
    print(f"{theta:5.2f}  {p.gamma:+10.4f}     {m.discrepancy:.2e}")

# At z = gamma the affine side equals theta**2, whatever G is
p = Perturbation.with_gamma(3, 0.6, 0.123)
m = master(J, p, p.gamma)
print("\nat z = gamma:", m.affine, " theta^2 =", 0.36)

# theta = 1 is a rank-one diagonal change: the ratio is 1 + h G
p1 = Perturbation(3, 1.0, 0.8)
print("theta = 1:", master(J, p1, z).ratio, 1 + 0.8 * green(J, z, 3))

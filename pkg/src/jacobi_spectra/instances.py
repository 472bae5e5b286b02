"""Random Jacobi matrices and chains, including ones with shared eigenvalues.

A perturbation at site ``n`` leaves an eigenvalue ``lam`` of ``J`` in place
exactly when ``pi_n(lam) = 0``, i.e. when ``lam`` is an eigenvalue of both
the leading ``(n-1)`` block and the trailing ``N-n`` block.  Generic random
matrices never have such points, so :func:`jacobi_with_common` builds them.
"""
from __future__ import annotations

import numpy as np

from .operator_model import JacobiMatrix, MassSpringChain, Perturbation
from .spectral_engine import eigenvalues


def random_jacobi(rng, N, q_range=(-10.0, 10.0), b_range=(0.0, 10.0)):
    """Uniform diagonal in ``q_range`` and off-diagonal in ``b_range``.

    A lower bound of 0 is read as the open interval; exact zeros are
    redrawn.
    """
    q = rng.uniform(*q_range, size=N)
    b = rng.uniform(*b_range, size=N - 1)
    while np.any(b <= 0):
        bad = b <= 0
        b[bad] = rng.uniform(*b_range, size=int(bad.sum()))
    return JacobiMatrix(q, b)


def random_chain(rng, N, mass_range=(0.5, 5.0), spring_range=(0.5, 5.0)):
    return MassSpringChain(rng.uniform(*mass_range, size=N),
                           rng.uniform(*spring_range, size=N + 1))


def jacobi_with_common(rng, N, site, q_range=(-3.0, 3.0), b_range=(0.3, 2.0)):
    """Random ``J`` with an eigenvalue ``lam`` satisfying ``pi_site(lam) = 0``.

    Needs ``2 <= site <= N - 1``.  Returns ``(J, lam)``.
    """
    if not 2 <= site <= N - 1:
        raise ValueError("a shared eigenvalue needs 2 <= site <= N - 1")
    lead = random_jacobi(rng, site - 1, q_range, b_range)
    lam = float(rng.choice(eigenvalues(lead)))
    trail = random_jacobi(rng, N - site, q_range, b_range)
    mu = float(rng.choice(eigenvalues(trail)))
    q = np.concatenate([lead.diag, [rng.uniform(*q_range)],
                        trail.diag + (lam - mu)])
    b = np.concatenate([lead.offdiag, rng.uniform(*b_range, size=2),
                        trail.offdiag])
    return JacobiMatrix(q, b), lam


def random_theta(rng, below_one=True):
    if below_one:
        return float(rng.uniform(0.15, 0.95))
    return float(rng.uniform(1.05, 3.0))


def gamma_at(site, theta, target):
    """Perturbation at ``site`` whose attractor is ``target``."""
    return Perturbation.with_gamma(site, theta, target)

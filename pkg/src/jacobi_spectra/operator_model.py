"""Jacobi matrices of mass-spring chains and the mass-and-spring perturbation.

Indices follow the physical and matrix convention: masses, sites and matrix
rows are numbered from 1.  Arrays stored on the objects are ordinary
zero-based numpy arrays, so ``diag[k - 1]`` is the entry q_k.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


def _frozen_array(values, name):
    arr = np.array(values, dtype=float).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class MassSpringChain:
    """Chain of ``N`` masses held by ``N + 1`` springs.

    Spring ``k_1`` ties mass 1 to the wall, ``k_{j+1}`` ties mass ``j`` to
    mass ``j + 1``; ``k_{N+1}`` is the spring that continues the chain past
    the last stored mass (it only enters the last diagonal entry).
    """

    masses: np.ndarray
    springs: np.ndarray

    def __post_init__(self):
        masses = _frozen_array(self.masses, "masses")
        springs = _frozen_array(self.springs, "springs")
        if masses.size == 0:
            raise ValueError("a chain needs at least one mass")
        if springs.size != masses.size + 1:
            raise ValueError(
                f"expected {masses.size + 1} spring constants for "
                f"{masses.size} masses, got {springs.size}")
        if np.any(masses <= 0):
            raise ValueError("masses must be strictly positive")
        if np.any(springs <= 0):
            raise ValueError("spring constants must be strictly positive")
        object.__setattr__(self, "masses", masses)
        object.__setattr__(self, "springs", springs)

    @property
    def size(self):
        return self.masses.size

    def __eq__(self, other):
        if not isinstance(other, MassSpringChain):
            return NotImplemented
        return (np.array_equal(self.masses, other.masses)
                and np.array_equal(self.springs, other.springs))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class JacobiMatrix:
    """Finite symmetric tridiagonal matrix with positive off-diagonal.

    Parameters
    ----------
    diag : array_like, shape (N,)
        The diagonal entries q_1, ..., q_N.
    offdiag : array_like, shape (N-1,)
        The off-diagonal entries b_1, ..., b_{N-1}, all strictly positive.
    """

    diag: np.ndarray
    offdiag: np.ndarray
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        diag = _frozen_array(self.diag, "diag")
        offdiag = _frozen_array(self.offdiag, "offdiag")
        if diag.size < 1:
            raise ValueError("a Jacobi matrix has at least one row")
        if offdiag.size != diag.size - 1:
            raise ValueError(
                f"offdiag must have length {diag.size - 1}, got {offdiag.size}")
        if np.any(offdiag <= 0):
            raise ValueError("off-diagonal entries must be strictly positive")
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", offdiag)

    @property
    def size(self):
        return self.diag.size

    def b(self, k):
        """Off-diagonal b_k with the evaluation conventions b_0 = 0, b_N = 1."""
        if k == 0:
            return 0.0
        if k == self.size:
            return 1.0
        return float(self.offdiag[k - 1])

    def to_dense(self):
        return (np.diag(self.diag) + np.diag(self.offdiag, 1)
                + np.diag(self.offdiag, -1))

    def gershgorin_bounds(self):
        """Interval ``(lo, hi)`` that contains every eigenvalue."""
        pad = np.zeros(self.size)
        pad[:-1] += self.offdiag
        pad[1:] += self.offdiag
        return float(np.min(self.diag - pad)), float(np.max(self.diag + pad))

    def scale(self):
        """Magnitude used to turn relative thresholds into absolute ones."""
        lo, hi = self.gershgorin_bounds()
        return max(hi - lo, float(np.max(np.abs(self.diag))), 1e-300)

    def __eq__(self, other):
        if not isinstance(other, JacobiMatrix):
            return NotImplemented
        return (np.array_equal(self.diag, other.diag)
                and np.array_equal(self.offdiag, other.offdiag))

    __hash__ = None


@dataclass(frozen=True)
class Perturbation:
    """Scale the neighbourhood of ``site`` by ``theta`` and shift q by ``shift``.

    The perturbed matrix has ``theta**2 * (q_n + h)`` on the diagonal at
    row ``n = site`` and ``theta * b_{n-1}``, ``theta * b_n`` next to it.
    """

    site: int
    theta: float
    shift: float = 0.0

    def __post_init__(self):
        if int(self.site) != self.site or self.site < 1:
            raise ValueError("site must be an integer >= 1")
        if not (self.theta > 0 and math.isfinite(self.theta)):
            raise ValueError("theta must be a positive real")
        if not math.isfinite(self.shift):
            raise ValueError("shift must be finite")
        object.__setattr__(self, "site", int(self.site))
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "shift", float(self.shift))

    @property
    def gamma(self):
        """Attractor point; ``math.inf`` when ``theta == 1``."""
        t2 = self.theta ** 2
        if t2 == 1.0:
            return math.inf
        return t2 * self.shift / (1.0 - t2)

    def inverse(self):
        """Perturbation mapping the perturbed matrix back to the original.

        It has the same site and the same attractor.
        """
        return Perturbation(self.site, 1.0 / self.theta,
                            -self.theta ** 2 * self.shift)

    @classmethod
    def with_gamma(cls, site, theta, gamma):
        """Perturbation whose attractor is ``gamma`` (needs ``theta != 1``)."""
        t2 = theta ** 2
        if t2 == 1.0:
            raise ValueError("theta = 1 has no finite attractor")
        return cls(site, theta, gamma * (1.0 - t2) / t2)


def chain_to_jacobi(chain):
    """Jacobi matrix of the equations of motion of ``chain``.

    ``q_j = -(k_{j+1} + k_j) / m_j`` and ``b_j = k_{j+1} / sqrt(m_j m_{j+1})``.
    """
    m, k = chain.masses, chain.springs
    diag = -(k[1:] + k[:-1]) / m
    offdiag = k[1:-1] / np.sqrt(m[:-1] * m[1:])
    return JacobiMatrix(diag, offdiag)


def apply_perturbation(J, p):
    """Return the perturbed copy of ``J`` (the starting matrix is unchanged)."""
    n = p.site
    if n > J.size:
        raise ValueError(f"site {n} outside a {J.size}x{J.size} matrix")
    diag = J.diag.copy()
    offdiag = J.offdiag.copy()
    diag[n - 1] = p.theta ** 2 * (diag[n - 1] + p.shift)
    if n >= 2:
        offdiag[n - 2] *= p.theta
    if n <= J.size - 1:
        offdiag[n - 1] *= p.theta
    return JacobiMatrix(diag, offdiag)


def perturb_chain(chain, p):
    """Physical realisation of ``p``: heavier mass ``n`` plus a grounded spring.

    The mass ``m_n`` becomes ``m_n / theta**2`` (that is, ``m_n * (theta**-2 - 1)``
    is added) and a spring of constant ``-shift * m_n`` ties mass ``n`` to
    the fixed frame.  The grounded constant may be negative.

    Returns
    -------
    chain : MassSpringChain
        The chain with the modified mass; the springs are unchanged.
    grounded_spring : float
        Constant of the extra spring from mass ``n`` to the frame.
    """
    n = p.site
    if n > chain.size:
        raise ValueError(f"site {n} outside a chain of {chain.size} masses")
    masses = chain.masses.copy()
    masses[n - 1] = masses[n - 1] / p.theta ** 2
    grounded = -p.shift * chain.masses[n - 1]
    if grounded == 0.0:
        grounded = 0.0  # normalise -0.0
    return MassSpringChain(masses, chain.springs.copy()), grounded


def grounded_chain_to_jacobi(chain, site, grounded_spring):
    """``chain_to_jacobi`` with an extra spring from mass ``site`` to the frame."""
    J = chain_to_jacobi(chain)
    diag = J.diag.copy()
    diag[site - 1] -= grounded_spring / chain.masses[site - 1]
    return JacobiMatrix(diag, J.offdiag)

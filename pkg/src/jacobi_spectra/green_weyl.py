"""Weyl m-functions, resolvent entries, diagonal Green functions, residues.

All z-dependent functions work in complex arithmetic and refuse points
within ``1e-12 * diameter`` of the spectrum (:class:`PoleAt`), so callers
can tell a pole from a large finite value.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DivisionNearZero, PoleAt
from .poly_recurrence import eval_pi
from .spectral_engine import (
    eigenvalues,
    eigenvectors,
    leading_submatrix,
    measure_n,
    spectral_diameter,
    spectral_measure,
    trailing_submatrix,
)

POLE_REL = 1e-12
QUOTIENT_REL = 1e-13


def check_off_spectrum(J, z):
    """Raise :class:`PoleAt` when ``z`` is too close to an eigenvalue of ``J``."""
    lam = eigenvalues(J)
    dist = np.abs(lam - complex(z))
    i = int(np.argmin(dist))
    if dist[i] < POLE_REL * spectral_diameter(J):
        raise PoleAt(float(lam[i]), z)


@dataclass(frozen=True, eq=False)
class WeylSolution:
    """``psi(z) = (J - z)^{-1} delta_1`` as the sequence psi_1..psi_N."""

    values: np.ndarray
    argument: complex

    def __len__(self):
        return self.values.size

    def __getitem__(self, k):
        """1-based access, with ``psi_{N+1} = 0``."""
        if k == self.values.size + 1:
            return 0j
        if not 1 <= k <= self.values.size:
            raise IndexError(k)
        return self.values[k - 1]


def weyl_m(J, z):
    """``m(z) = <delta_1, (J - z)^{-1} delta_1> = sum_i w_i / (lam_i - z)``."""
    check_off_spectrum(J, z)
    return complex(spectral_measure(J).stieltjes(complex(z)))


def psi_vector(J, z):
    """Weyl solution by bottom-up elimination of ``(J - z) psi = delta_1``."""
    check_off_spectrum(J, z)
    z = complex(z)
    N = J.size
    q, b = J.diag, J.offdiag
    # an exact zero pivot (z on the spectrum of a trailing block) is
    # replaced by a rounding-size value; psi stays finite and accurate
    tiny = np.finfo(float).eps * (np.max(np.abs(q)) + abs(z) + 1.0)
    u = np.empty(N, dtype=complex)
    u[N - 1] = q[N - 1] - z
    for k in range(N - 2, -1, -1):
        if u[k + 1] == 0:
            u[k + 1] = tiny
        u[k] = (q[k] - z) - b[k] ** 2 / u[k + 1]
    if u[0] == 0:
        u[0] = tiny
    psi = np.empty(N, dtype=complex)
    psi[0] = 1.0 / u[0]
    for k in range(1, N):
        psi[k] = -b[k - 1] * psi[k - 1] / u[k]
    return WeylSolution(psi, z)


def m_plus(J, n, z, route="submatrix"):
    """Weyl function of the matrix with the first ``n`` rows/columns removed.

    ``route="submatrix"`` evaluates the m-function of the trailing block;
    ``route="quotient"`` uses ``-psi_{n+1} / (b_n psi_n)``.
    """
    if not 1 <= n <= J.size - 1:
        raise ValueError(f"m_plus needs 1 <= n <= {J.size - 1}, got {n}")
    if route == "submatrix":
        return weyl_m(trailing_submatrix(J, n), z)
    if route != "quotient":
        raise ValueError(f"unknown route {route!r}")
    check_off_spectrum(trailing_submatrix(J, n), z)
    psi = psi_vector(J, z)
    den = J.b(n) * psi[n]
    if abs(den) < QUOTIENT_REL * J.b(n) * np.max(np.abs(psi.values)):
        raise DivisionNearZero(f"psi_{n}({z}) is numerically zero")
    return complex(-psi[n + 1] / den)


def m_minus(J, n, z, route="submatrix"):
    """Weyl function (at ``delta_{n-1}``) of the leading ``(n-1)`` block.

    ``route="quotient"`` uses ``-pi_{n-1} / (b_{n-1} pi_n)``.
    """
    if not 2 <= n <= J.size:
        raise ValueError(f"m_minus needs 2 <= n <= {J.size}, got {n}")
    Jm = leading_submatrix(J, n)
    if route == "submatrix":
        check_off_spectrum(Jm, z)
        # m-function at the last basis vector of the block: Stieltjes sum of
        # the block's spectral measure for that vector
        return complex(measure_n(Jm, n - 1).stieltjes(complex(z)))
    if route != "quotient":
        raise ValueError(f"unknown route {route!r}")
    check_off_spectrum(Jm, z)
    pi = eval_pi(J, complex(z), n)
    den = J.b(n - 1) * pi[n]
    if abs(den) < QUOTIENT_REL * J.b(n - 1) * max(abs(pi[n - 1]), abs(pi[n])):
        raise DivisionNearZero(f"pi_{n}({z}) is numerically zero")
    return complex(-pi[n - 1] / den)


def resolvent_entry(J, z, j, k):
    """``<delta_j, (J - z)^{-1} delta_k> = pi_min(j,k)(z) psi_max(j,k)(z)``."""
    N = J.size
    if not (1 <= j <= N and 1 <= k <= N):
        raise IndexError(f"indices must lie in 1..{N}")
    lo, hi = min(j, k), max(j, k)
    psi = psi_vector(J, z)
    pi = eval_pi(J, complex(z), hi)
    return complex(pi[lo] * psi[hi])


def green_routes(J, z, n):
    """The diagonal Green function ``G(z, n)`` by three independent routes.

    Returns a dict with keys ``"A"`` (``pi_n psi_n``), ``"B"`` (Stieltjes
    sum over the measure of ``delta_n``) and ``"C"`` (the formula through the
    Weyl functions of the two submatrices; present when both submatrices that
    are needed are off their spectra).
    """
    N = J.size
    if not 1 <= n <= N:
        raise IndexError(f"n must lie in 1..{N}, got {n}")
    check_off_spectrum(J, z)
    z = complex(z)
    psi = psi_vector(J, z)
    pi = eval_pi(J, z, n)
    routes = {"A": complex(pi[n] * psi[n]),
              "B": complex(measure_n(J, n).stieltjes(z))}
    try:
        den = z - J.diag[n - 1]
        if n <= N - 1:
            den += J.b(n) ** 2 * m_plus(J, n, z)
        if n >= 2:
            den += J.b(n - 1) ** 2 * m_minus(J, n, z)
        routes["C"] = complex(-1.0 / den)
    except PoleAt:
        pass
    return routes


def green(J, z, n, verify=False, rtol=1e-8):
    """Diagonal Green function ``<delta_n, (J - z)^{-1} delta_n>``.

    The returned value is ``pi_n(z) psi_n(z)``.  With ``verify=True`` the
    other two routes are evaluated too and an ``AssertionError`` is raised if
    any pair disagrees by more than ``rtol`` relative.
    """
    if not verify:
        check_off_spectrum(J, z)
        z = complex(z)
        psi = psi_vector(J, z)
        return complex(eval_pi(J, z, n)[n] * psi[n])
    routes = green_routes(J, z, n)
    vals = list(routes.values())
    scale = max(abs(v) for v in vals)
    for v in vals:
        if abs(v - routes["A"]) > rtol * scale:
            raise AssertionError(f"Green routes disagree at z={z}: {routes}")
    return routes["A"]


def _match_eigenvalue(J, x, tol):
    lam = eigenvalues(J)
    if tol is None:
        tol = 1e-9 * spectral_diameter(J)
    i = int(np.argmin(np.abs(lam - x)))
    return i if abs(lam[i] - x) <= tol else None


def residue_at(J, x, n, tol=None):
    """``lim_{z->x} (x - z) G(z, n) = pi_n(x)**2 rho({x})``.

    Zero unless ``x`` matches an eigenvalue within ``tol`` (default
    ``1e-9 * diameter``).
    """
    if not 1 <= n <= J.size:
        raise IndexError(f"n must lie in 1..{J.size}, got {n}")
    i = _match_eigenvalue(J, float(x), tol)
    if i is None:
        return 0.0
    return float(eigenvectors(J)[n - 1, i] ** 2)


def numeric_residue(J, x, n, eps=1e-6):
    """Finite-``eps`` approximation ``(x - z) G(z, n)`` with ``z = x + i eps``."""
    z = complex(x, eps)
    return complex((x - z) * green(J, z, n))


def green_off_atom(J, x, n, tol=None):
    """Analytic continuation of ``G(., n)`` at a real ``x``, atom at ``x`` removed.

    Finite at zeros of ``pi_n`` that are eigenvalues; used for the
    zero-or-pole dichotomy.
    """
    mu = measure_n(J, n)
    if tol is None:
        tol = 1e-9 * spectral_diameter(J)
    keep = np.abs(mu.positions - x) > tol
    return float(np.sum(mu.weights[keep] / (mu.positions[keep] - x)))


__all__ = [
    "WeylSolution", "weyl_m", "psi_vector", "m_plus", "m_minus",
    "resolvent_entry", "green", "green_routes", "residue_at",
    "numeric_residue", "green_off_atom", "check_off_spectrum",
]

"""Eigenvalues, spectral measures and sub-operators of finite Jacobi matrices.

Eigenvalues come from bisection on Sturm counts, so the same primitive
that counts eigenvalues in an interval also produces them.  Eigenvectors
are proportional to ``(pi_1(lam), ..., pi_N(lam))``; they are built with a
twisted factorisation, which gives the same vector as the forward
recurrence but stays accurate when that recurrence is unstable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .operator_model import JacobiMatrix
from .poly_recurrence import eval_pi, sturm_count

DEFAULT_REL_TOL = 1e-12
ZERO_WEIGHT_REL = 1e-12


@dataclass(frozen=True, eq=False)
class SpectralMeasure:
    """Finite atomic measure: sorted ``positions`` with positive ``weights``."""

    positions: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float).reshape(-1)
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        if pos.shape != w.shape:
            raise ValueError("positions and weights differ in length")
        if np.any(np.diff(pos) <= 0):
            raise ValueError("atom positions must be strictly increasing")
        if np.any(w <= 0):
            raise ValueError("atom weights must be positive")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "weights", w)

    @property
    def atoms(self):
        return list(zip(self.positions.tolist(), self.weights.tolist()))

    @property
    def total_mass(self):
        return float(np.sum(self.weights))

    def __len__(self):
        return self.positions.size

    def stieltjes(self, z):
        """``sum_i w_i / (t_i - z)``, broadcast over ``z``."""
        z = np.asarray(z)
        return np.sum(self.weights / (self.positions - z[..., None]), axis=-1)


@dataclass(frozen=True)
class Gap:
    """Open interval free of atoms; an endpoint is an atom or infinite."""

    lower: float
    upper: float

    @property
    def lower_kind(self):
        return "infinite" if math.isinf(self.lower) else "eigenvalue"

    @property
    def upper_kind(self):
        return "infinite" if math.isinf(self.upper) else "eigenvalue"

    @property
    def bounded(self):
        return not (math.isinf(self.lower) or math.isinf(self.upper))

    def contains(self, x):
        return self.lower < x < self.upper


@dataclass(frozen=True)
class GapList:
    intervals: tuple

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __getitem__(self, i):
        return self.intervals[i]

    def bounded(self):
        return [g for g in self.intervals if g.bounded]


def spectral_diameter(J):
    """Width of the Gershgorin interval, an upper bound for ``lam_max - lam_min``.

    For ``N = 1`` the entry scale ``max(|q_1|, 1)`` is used instead.
    """
    lo, hi = J.gershgorin_bounds()
    if J.size == 1:
        return max(abs(float(J.diag[0])), 1.0)
    return hi - lo


def _bisect(J, lo, hi, idx, tol):
    for _ in range(200):
        width = hi - lo
        if np.all(width <= tol):
            break
        mid = 0.5 * (lo + hi)
        stuck = (mid <= lo) | (mid >= hi)
        if np.all(stuck | (width <= tol)):
            break
        above = sturm_count(J, mid) >= idx + 1
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    return lo, hi


def _secant_polish(J, lo, hi):
    # one secant step on pi_{N+1}, kept only if it stays inside the bracket
    plo = eval_pi(J, lo).true_values()[-1]
    phi = eval_pi(J, hi).true_values()[-1]
    mid = 0.5 * (lo + hi)
    with np.errstate(all="ignore"):
        x = lo - plo * (hi - lo) / (phi - plo)
    ok = np.isfinite(x) & (x >= lo) & (x <= hi)
    return np.where(ok, x, mid)


def eigenvalues(J, tol=None):
    """Sorted eigenvalues of ``J`` by Sturm bisection.

    Each eigenvalue is bracketed to width ``tol`` (default
    ``1e-12 * spectral diameter``) and polished with one secant step.
    The result is cached on the matrix for the default tolerance.
    """
    use_cache = tol is None
    if use_cache and "eigenvalues" in J._cache:
        return J._cache["eigenvalues"]
    if tol is None:
        tol = DEFAULT_REL_TOL * spectral_diameter(J)
    if not tol > 0:
        raise ValueError("tol must be positive")
    N = J.size
    if N == 1:
        lam = np.array([float(J.diag[0])])
    else:
        glo, ghi = J.gershgorin_bounds()
        pad = 1e-8 * max(ghi - glo, 1.0)
        idx = np.arange(N)
        lo, hi = _bisect(J, np.full(N, glo - pad), np.full(N, ghi + pad),
                         idx, tol)
        lam = _secant_polish(J, lo, hi)
    lam = np.sort(lam)
    lam.setflags(write=False)
    if use_cache:
        J._cache["eigenvalues"] = lam
    return lam


def eigenvector(J, lam):
    """Unit eigenvector for the (approximate) eigenvalue ``lam``.

    Signed so that the first component is positive, which makes
    ``v / v[0]`` the vector ``(pi_1(lam), ..., pi_N(lam))``.
    """
    N = J.size
    if N == 1:
        return np.ones(1)
    q, b = J.diag - lam, J.offdiag
    tiny = np.finfo(float).eps * (np.max(np.abs(J.diag)) + np.max(b) + 1.0)
    d = np.empty(N)
    u = np.empty(N)
    d[0] = q[0]
    for k in range(1, N):
        prev = d[k - 1] if d[k - 1] != 0.0 else tiny
        d[k] = q[k] - b[k - 1] ** 2 / prev
    u[N - 1] = q[N - 1]
    for k in range(N - 2, -1, -1):
        nxt = u[k + 1] if u[k + 1] != 0.0 else tiny
        u[k] = q[k] - b[k] ** 2 / nxt
    twist = d + u - q
    r = int(np.argmin(np.abs(twist)))
    v = np.empty(N)
    v[r] = 1.0
    for j in range(r - 1, -1, -1):
        dj = d[j] if d[j] != 0.0 else tiny
        v[j] = -b[j] * v[j + 1] / dj
    for j in range(r + 1, N):
        uj = u[j] if u[j] != 0.0 else tiny
        v[j] = -b[j - 1] * v[j - 1] / uj
    v /= np.linalg.norm(v)
    if v[0] < 0:
        v = -v
    return v


def eigenvectors(J):
    """Columns ``V[:, i]`` are unit eigenvectors for ``eigenvalues(J)[i]``."""
    if "eigenvectors" in J._cache:
        return J._cache["eigenvectors"]
    lam = eigenvalues(J)
    V = np.column_stack([eigenvector(J, x) for x in lam])
    V.setflags(write=False)
    J._cache["eigenvectors"] = V
    return V


def pi_at_eigenvalues(J):
    """Matrix ``P[k-1, i] = pi_k(lam_i)`` computed from the eigenvectors."""
    V = eigenvectors(J)
    return V / V[0]


def spectral_measure(J, tol=None):
    """Spectral measure of ``delta_1``: atoms ``(lam, 1 / sum_k pi_k(lam)**2)``."""
    if tol is not None:
        lam = eigenvalues(J, tol)
        V = np.column_stack([eigenvector(J, x) for x in lam])
    else:
        lam, V = eigenvalues(J), eigenvectors(J)
    return SpectralMeasure(lam, V[0] ** 2)


def measure_n(J, n, tol=None):
    """Measure ``pi_n**2 d rho``, i.e. the spectral measure of ``delta_n``.

    Atoms whose weight falls below ``1e-12`` of the total are dropped.
    """
    if not 1 <= n <= J.size:
        raise IndexError(f"n must lie in 1..{J.size}, got {n}")
    if tol is not None:
        lam = eigenvalues(J, tol)
        V = np.column_stack([eigenvector(J, x) for x in lam])
    else:
        lam, V = eigenvalues(J), eigenvectors(J)
    w = V[n - 1] ** 2
    keep = w >= ZERO_WEIGHT_REL * np.sum(w)
    return SpectralMeasure(lam[keep], w[keep])


def leading_submatrix(J, n):
    """Upper-left ``(n-1) x (n-1)`` block (the operator restricted to F_{n-1})."""
    if not 2 <= n <= J.size:
        raise ValueError(f"leading submatrix needs 2 <= n <= {J.size}, got {n}")
    # memoised so that the block keeps its own cached spectrum
    key = ("leading", n)
    if key not in J._cache:
        J._cache[key] = JacobiMatrix(J.diag[:n - 1], J.offdiag[:n - 2])
    return J._cache[key]


def trailing_submatrix(J, n):
    """Matrix with the first ``n`` rows and columns removed."""
    if not 1 <= n <= J.size - 1:
        raise ValueError(
            f"trailing submatrix needs 1 <= n <= {J.size - 1}, got {n}")
    key = ("trailing", n)
    if key not in J._cache:
        J._cache[key] = JacobiMatrix(J.diag[n:], J.offdiag[n:])
    return J._cache[key]


def spectral_gaps(measure):
    """Open atom-free intervals of ``measure``, including the two rays."""
    pts = [-math.inf] + [float(x) for x in measure.positions] + [math.inf]
    if len(pts) == 2:
        return GapList((Gap(-math.inf, math.inf),))
    return GapList(tuple(Gap(a, b) for a, b in zip(pts[:-1], pts[1:])))

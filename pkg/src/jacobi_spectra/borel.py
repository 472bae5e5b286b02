"""Borel (Stieltjes) transforms of atomic measures on the real line.

``F(x) = sum_i w_i / (t_i - x) + c / (s - x)`` for a measure made of atoms
``(t_i, w_i)`` and an optional unit step of height ``c`` located at ``s``.
On an interval without mass ``F`` is strictly increasing, tends to
``-inf`` at a massive left endpoint and to ``+inf`` at a massive right
endpoint, so it has exactly one zero between two massive endpoints.
Zeros are found by bisection on the sign of ``F``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import HypothesisViolated, PoleAt


@dataclass(frozen=True, eq=False)
class BorelMeasure:
    """Atoms plus an optional step term ``step_mass * H(t - step_at)``.

    ``step_mass`` may be negative; the monotonicity results need every mass
    (atoms and step) to be positive.
    """

    positions: np.ndarray
    weights: np.ndarray
    step_at: float | None = None
    step_mass: float = 0.0

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float).reshape(-1)
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        if pos.shape != w.shape:
            raise ValueError("positions and weights differ in length")
        if np.any(w <= 0):
            raise ValueError("atom weights must be positive")
        if not np.all(np.isfinite(pos)):
            raise ValueError("atom positions must be finite")
        order = np.argsort(pos)
        object.__setattr__(self, "positions", pos[order])
        object.__setattr__(self, "weights", w[order])
        if self.step_at is None or self.step_mass == 0.0:
            object.__setattr__(self, "step_at", None)
            object.__setattr__(self, "step_mass", 0.0)
        elif not math.isfinite(self.step_at):
            raise ValueError("step location must be finite")

    @classmethod
    def from_spectral(cls, measure, step_at=None, step_mass=0.0):
        return cls(measure.positions, measure.weights, step_at, step_mass)

    def mass_points(self):
        """All locations carrying mass, sorted (atoms and the step)."""
        pts = list(self.positions.tolist())
        if self.step_at is not None:
            pts.append(float(self.step_at))
        return sorted(pts)

    def mass_at(self, x, tol=0.0):
        """Total mass located within ``tol`` of ``x``."""
        m = float(np.sum(self.weights[np.abs(self.positions - x) <= tol]))
        if self.step_at is not None and abs(self.step_at - x) <= tol:
            m += self.step_mass
        return m

    @property
    def total_variation(self):
        return float(np.sum(self.weights)) + abs(self.step_mass)


def borel_F(mu, x):
    """Borel transform of ``mu`` at real ``x`` (scalar or array)."""
    x = np.asarray(x, dtype=float)
    hit = np.isin(x, mu.positions)
    if mu.step_at is not None:
        hit |= x == mu.step_at
    if np.any(hit):
        raise PoleAt(float(np.atleast_1d(x)[np.atleast_1d(hit)][0]))
    val = np.sum(mu.weights / (mu.positions - x[..., None]), axis=-1)
    if mu.step_at is not None:
        val = val + mu.step_mass / (mu.step_at - x)
    return float(val) if val.ndim == 0 else val


def _endpoint_tol(a, b):
    return 1e-12 * max(1.0, abs(a), abs(b))


def check_gap(mu, a, b, tol=None):
    """Validate that ``(a, b)`` is massless inside with massive finite ends.

    Raises :class:`HypothesisViolated` otherwise.
    """
    if not a < b:
        raise HypothesisViolated("empty-interval", f"({a}, {b})")
    if tol is None:
        tol = _endpoint_tol(a, b)
    pts = np.asarray(mu.mass_points())
    inside = pts[(pts > a + tol) & (pts < b - tol)]
    if inside.size:
        raise HypothesisViolated(
            "interior-mass", f"mass at {inside[0]!r} inside ({a}, {b})")
    for end, name in ((a, "lower"), (b, "upper")):
        if math.isinf(end):
            raise HypothesisViolated(
                "infinite-endpoint", f"{name} endpoint is infinite")
        if mu.mass_at(end, tol) <= 0:
            raise HypothesisViolated(
                "massless-endpoint", f"{name} endpoint {end!r} carries no mass")


def borel_root(mu, a, b, tol=None):
    """The unique zero of ``F`` in the gap ``(a, b)``.

    Both endpoints must be finite and carry positive mass and ``(a, b)``
    must be massless.  Bisection stops once the bracket is narrower than
    ``tol`` (default ``1e-13 * max(1, |a|, |b|)``) or cannot be split.
    """
    check_gap(mu, a, b)
    if tol is None:
        tol = 1e-13 * max(1.0, abs(a), abs(b))
    lo, hi = float(a), float(b)
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol or mid <= lo or mid >= hi:
            break
        if borel_F(mu, mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)

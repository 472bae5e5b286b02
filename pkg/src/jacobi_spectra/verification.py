"""Checks of the interlacing, attractor and persistence statements.

Each verifier takes a concrete matrix and perturbation, computes both
spectra by bisection, and reports whether the predicted pattern holds.
Hypotheses are checked first; a gap that does not satisfy them raises
:class:`HypothesisViolated` instead of producing a verdict.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import HypothesisViolated, PoleAt
from .green_weyl import green
from .operator_model import Perturbation, apply_perturbation
from .perturbation_analysis import (
    CONFIRM_REL,
    _orient,
    check_gap_hypotheses,
    classify,
    interlacing_gaps,
    locate_new_eigenvalues,
)
from .spectral_engine import Gap, eigenvalues, measure_n, spectral_diameter
from .borel import BorelMeasure, borel_root


@dataclass
class RegionVerdict:
    name: str
    lower: float
    upper: float
    new: list
    common: list
    borel_roots: list
    checks: dict

    @property
    def passed(self):
        return all(self.checks.values())


@dataclass
class InterlacingVerdict:
    gap: Gap
    gamma: float
    swapped: bool
    gamma_in_spectrum: bool
    regions: list
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures


def _attractor_ok(new, common, g):
    if not new or not common:
        return True
    return max(abs(x - g) for x in common) < min(abs(x - g) for x in new)


def verify_interlacing(J, p, gap, swap=None, match_tol=None):
    """Check the eigenvalue pattern predicted inside one gap.

    ``gap`` is ``(a, b)`` with ``a``, ``b`` unshared eigenvalues of the base
    operator (``J`` for ``theta < 1``; the perturbed matrix when ``theta > 1``
    and the roles are swapped) and only shared base eigenvalues between
    them.  On each side of ``gamma`` within a bounded gap there must be
    exactly one new eigenvalue ``mu``, at most one shared ``eta``, and
    ``|eta - gamma| < |mu - gamma|``.  Rays follow the below/above-spectrum
    pattern: nothing between ``gamma`` and the infinite end, one new
    eigenvalue between ``gamma`` and the finite end, and no shared
    eigenvalue at all unless ``gamma`` is itself an eigenvalue.
    """
    base, q, other, swapped = _orient(J, p, swap)
    report = classify(base, q, match_tol, Jt=other)
    gap = check_gap_hypotheses(report, gap)
    tol = report.match_tol
    g = q.gamma
    a, b = gap.lower, gap.upper
    e_base = eigenvalues(base)
    gamma_in = bool(np.min(np.abs(e_base - g)) <= tol)
    new_pts = report.other_only
    common_pts = report.common_base

    def inside(x, lo, hi):
        return lo < x < hi and abs(x - g) > tol

    regions = []
    failures = []
    spans = []
    if g > a + tol:
        spans.append(("A", a, min(b, g)))
    if g < b - tol:
        spans.append(("B", max(a, g), b))
    for name, lo, hi in spans:
        new = [x for x in new_pts if inside(x, lo, hi)]
        com = [x for x in common_pts if inside(x, lo, hi)]
        checks = {}
        to_infinity = math.isinf(lo) or math.isinf(hi)
        if to_infinity:
            checks["no_new"] = len(new) == 0
            checks["no_common"] = len(com) == 0
            roots = []
        else:
            checks["one_new"] = len(new) == 1
            checks["at_most_one_common"] = len(com) <= 1
            if not gap.bounded and not gamma_in:
                checks["no_common"] = len(com) == 0
            checks["attractor"] = _attractor_ok(new, com, g)
            roots = locate_new_eigenvalues(
                base, q, (a, b), match_tol=tol, swap=False)
            roots = [r for r in roots if lo < r < hi]
            scale = max(spectral_diameter(base), spectral_diameter(other))
            checks["borel_match"] = (
                len(roots) == len(new)
                and all(abs(r - m) <= CONFIRM_REL * scale
                        for r, m in zip(sorted(roots), sorted(new))))
        reg = RegionVerdict(name, lo, hi, new, com, roots, checks)
        regions.append(reg)
        failures.extend(f"{name}:{k}" for k, v in checks.items() if not v)
    if not gap.bounded and not gamma_in:
        lo, hi = (-math.inf, b) if math.isinf(a) else (a, math.inf)
        stray = [x for x in common_pts if inside(x, lo, hi)]
        if stray:
            failures.append("ray:common")
    return InterlacingVerdict(gap, g, swapped, gamma_in, regions, failures)


def theorem_gaps(J, p, bounded=True, match_tol=None):
    """Gaps in the orientation the interlacing checks expect."""
    base, q, other, _ = _orient(J, p, None)
    report = classify(base, q, match_tol, Jt=other)
    gaps = interlacing_gaps(report.base_only)
    return [gp for gp in gaps if gp.bounded == bounded]


def verify_below_spectrum(J, p, match_tol=None):
    """Pattern on the ray below the lowest unshared base eigenvalue.

    Needs ``gamma`` below that eigenvalue.
    """
    rays = [gp for gp in theorem_gaps(J, p, bounded=False, match_tol=match_tol)
            if math.isinf(gp.lower)]
    if not rays:
        raise HypothesisViolated("no-finite-endpoint", "no unshared eigenvalue")
    ray = rays[0]
    if not p.gamma < ray.upper:
        raise HypothesisViolated(
            "gamma-not-below", f"gamma={p.gamma!r} >= b={ray.upper!r}")
    return verify_interlacing(J, p, ray, match_tol=match_tol)


@dataclass
class GammaPersistenceVerdict:
    eigenvalue: float
    shift: float
    forward_distance: float
    gap_gamma: float
    converse_distance: float
    tol: float

    @property
    def forward_ok(self):
        return self.forward_distance <= self.tol

    @property
    def converse_ok(self):
        return self.converse_distance > self.tol

    @property
    def passed(self):
        return self.forward_ok and self.converse_ok


def verify_gamma_persistence(J, p_theta, target_eig_index, site=1, tol=1e-8):
    """An eigenvalue placed at ``gamma`` survives the perturbation, and a
    ``gamma`` placed in a gap is not an eigenvalue of the perturbed matrix.

    The shift is solved from ``gamma = lam``: ``h = lam (1 - theta**2) / theta**2``.
    For the converse ``gamma`` is put at the midpoint between ``lam`` and a
    neighbouring eigenvalue.
    """
    if p_theta == 1.0:
        raise HypothesisViolated("theta-one", "gamma is undefined for theta = 1")
    lam_all = eigenvalues(J)
    if not 0 <= target_eig_index < lam_all.size:
        raise IndexError(f"eigenvalue index {target_eig_index} out of range")
    lam = float(lam_all[target_eig_index])
    p = Perturbation.with_gamma(site, p_theta, lam)
    Jt = apply_perturbation(J, p)
    fwd = float(np.min(np.abs(eigenvalues(Jt) - lam)))
    if lam_all.size == 1:
        mid = lam + 1.0
    elif target_eig_index + 1 < lam_all.size:
        mid = 0.5 * (lam + float(lam_all[target_eig_index + 1]))
    else:
        mid = 0.5 * (lam + float(lam_all[target_eig_index - 1]))
    p2 = Perturbation.with_gamma(site, p_theta, mid)
    conv = float(np.min(np.abs(eigenvalues(apply_perturbation(J, p2)) - mid)))
    return GammaPersistenceVerdict(lam, p.shift, fwd, mid, conv, tol)


def zero_equivalence(J, p, zero_tol=1e-10, implied_tol=1e-6, Jt=None):
    """Real zeros of ``G(., n)`` are zeros of ``Gt(., n)`` and vice versa.

    Zeros are located by bisection between consecutive atoms of the
    measure of ``delta_n`` of each operator.  Returns a list of
    ``(operator, x, |G(x)|, |Gt(x)|, ok)`` rows; ``gamma`` is skipped.
    """
    if Jt is None:
        Jt = apply_perturbation(J, p)
    n = p.site
    rows = []
    for label, A, B in (("J", J, Jt), ("Jt", Jt, J)):
        mu = measure_n(A, n)
        bm = BorelMeasure.from_spectral(mu)
        scale_a = 1.0 / spectral_diameter(A)
        atom_tol = 1e-8 * spectral_diameter(A)
        for lo, hi in zip(mu.positions[:-1], mu.positions[1:]):
            x = borel_root(bm, float(lo), float(hi))
            if not math.isinf(p.gamma) and abs(x - p.gamma) <= atom_tol:
                continue
            # only atom-free points: shared eigenvalues are atoms of rho
            if min(np.min(np.abs(eigenvalues(A) - x)),
                   np.min(np.abs(eigenvalues(B) - x))) <= atom_tol:
                continue
            try:
                ga = abs(green(A, x, n))
                gb = abs(green(B, x, n))
            except PoleAt:
                continue
            if ga > zero_tol * scale_a:
                continue
            ok = gb <= implied_tol / spectral_diameter(B)
            rows.append((label, x, ga, gb, ok))
    return rows


@dataclass
class CampaignResult:
    triples: int
    failures: list
    hypothesis_skips: int
    with_common: int
    with_both_witnesses: int
    swapped: int

    @property
    def passed(self):
        return self.triples > 0 and not self.failures


CAMPAIGN_KINDS = ("generic", "common", "gamma_eig", "common_gamma")


def campaign_instance(rng, kind, below_one):
    """One random ``(J, p)`` pair of the given kind for the campaign."""
    from .instances import jacobi_with_common, random_jacobi, random_theta

    N = int(rng.integers(4, 11))
    theta = random_theta(rng, below_one)
    if kind in ("common", "common_gamma"):
        site = int(rng.integers(2, N))
        J, _ = jacobi_with_common(rng, N, site)
    else:
        site = int(rng.integers(1, N + 1))
        J = random_jacobi(rng, N, (-3.0, 3.0), (0.3, 2.0))
    lam = eigenvalues(J)
    if kind in ("gamma_eig", "common_gamma"):
        g = float(rng.choice(lam))
    else:
        g = float(rng.uniform(lam[0] - 1.0, lam[-1] + 1.0))
    return J, Perturbation.with_gamma(site, theta, g)


def run_interlacing_campaign(min_triples=1000, seed=0):
    """Verify every bounded gap of random instances until ``min_triples``.

    Instances cycle through generic matrices, matrices with a built-in
    shared eigenvalue, and perturbations whose attractor sits on an
    eigenvalue, alternating ``theta < 1`` and ``theta > 1``.  The result
    depends only on ``seed``.
    """
    rng = np.random.default_rng(seed)
    triples = skips = with_common = both = swapped = 0
    failures = []
    i = 0
    while triples < min_triples:
        kind = CAMPAIGN_KINDS[i % len(CAMPAIGN_KINDS)]
        below = (i // len(CAMPAIGN_KINDS)) % 2 == 0
        i += 1
        J, p = campaign_instance(rng, kind, below)
        for gp in theorem_gaps(J, p):
            try:
                v = verify_interlacing(J, p, gp)
            except HypothesisViolated:
                skips += 1
                continue
            triples += 1
            swapped += v.swapped
            if any(r.common for r in v.regions):
                with_common += 1
            if any(r.common and r.new for r in v.regions):
                both += 1
            if not v.passed:
                failures.append((i, kind, p, gp, v.failures))
    return CampaignResult(triples, failures, skips, with_common, both, swapped)

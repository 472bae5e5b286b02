"""Comparison of the spectra of ``J`` and its perturbation ``Jt``.

The perturbation ``p`` rescales row/column ``n`` of ``J`` by ``theta`` and
shifts ``q_n``; the quotient of diagonal Green functions ``G / Gt`` at site
``n`` is affine in ``G``:

    G / Gt = theta**2 + (theta**2 h - (1 - theta**2) z) G(z, n)

which for ``theta != 1`` reads ``theta**2 + (1 - theta**2)(gamma - z) G``
with the attractor ``gamma = theta**2 h / (1 - theta**2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .borel import BorelMeasure, borel_root
from .errors import HypothesisViolated, TheoremViolation
from .green_weyl import green, green_off_atom
from .operator_model import apply_perturbation
from .spectral_engine import (
    Gap,
    eigenvalues,
    eigenvectors,
    measure_n,
    spectral_diameter,
    ZERO_WEIGHT_REL,
)

DEFAULT_MATCH_REL = 1e-9
COMMON_ZERO_REL = 1e-6
CONFIRM_REL = 1e-8


def gamma(p):
    """Attractor ``theta**2 h / (1 - theta**2)``; ``math.inf`` when theta = 1."""
    return p.gamma


@dataclass(frozen=True)
class MasterEvaluation:
    z: complex
    ratio: complex
    affine: complex
    reciprocal_affine: complex
    discrepancy: float

    @property
    def reciprocal_ratio(self):
        return 1.0 / self.ratio


def master(J, p, z, Jt=None):
    """Both sides of the master identity and of its reciprocal form at ``z``.

    ``discrepancy`` is the larger of the two relative residuals, each
    measured against ``max(1, |lhs|)``.
    """
    if Jt is None:
        Jt = apply_perturbation(J, p)
    z = complex(z)
    n, t2, h = p.site, p.theta ** 2, p.shift
    G = green(J, z, n)
    Gt = green(Jt, z, n)
    ratio = G / Gt
    affine = t2 + (t2 * h - (1.0 - t2) * z) * G
    recip = 1.0 / t2 - (h + (1.0 - 1.0 / t2) * z) * Gt
    inv = 1.0 / ratio
    disc = max(abs(ratio - affine) / max(1.0, abs(ratio)),
               abs(inv - recip) / max(1.0, abs(inv)))
    return MasterEvaluation(z, ratio, affine, recip, float(disc))


# -- classification ---------------------------------------------------------

@dataclass
class RegionRecord:
    """One side of ``gamma`` inside a gap: ``A`` lies left of it, ``B`` right."""

    name: str
    lower: float
    upper: float
    new: list = field(default_factory=list)
    common: list = field(default_factory=list)
    attractor_ok: bool | None = None


@dataclass
class GapRecord:
    lower: float
    upper: float
    new: list
    common: list
    regions: list

    @property
    def new_count(self):
        return len(self.new)

    @property
    def gap(self):
        return Gap(self.lower, self.upper)


@dataclass
class ClassificationReport:
    """Eigenvalues of ``J`` and ``Jt`` split into shared and unshared ones.

    Gap records are written in the orientation in which the interlacing
    statements hold: for ``theta < 1`` the gaps are those of the
    ``J``-only eigenvalues and the "new" points are ``Jt``-only; for
    ``theta > 1`` (``swapped``) the roles of ``J`` and ``Jt`` are exchanged.
    """

    gamma: float
    theta: float
    site: int
    match_tol: float
    eigs_J: np.ndarray
    eigs_Jt: np.ndarray
    common: list
    J_only: list
    Jt_only: list
    swapped: bool
    gap_records: list
    common_zero_violations: list

    @property
    def base_only(self):
        return self.Jt_only if self.swapped else self.J_only

    @property
    def other_only(self):
        return self.J_only if self.swapped else self.Jt_only

    @property
    def common_base(self):
        """Common eigenvalues as computed on the base operator."""
        return [pair[1] if self.swapped else pair[0] for pair in self.common]


def match_spectra(eA, eB, tol):
    """Greedy merge of two sorted spectra.

    Returns ``(pairs, only_A, only_B)``; a pair is two eigenvalues closer
    than ``tol``.
    """
    i = j = 0
    pairs, only_a, only_b = [], [], []
    while i < len(eA) and j < len(eB):
        x, y = float(eA[i]), float(eB[j])
        if abs(x - y) <= tol:
            pairs.append((x, y))
            i += 1
            j += 1
        elif x < y:
            only_a.append(x)
            i += 1
        else:
            only_b.append(y)
            j += 1
    only_a.extend(float(x) for x in eA[i:])
    only_b.extend(float(y) for y in eB[j:])
    return pairs, only_a, only_b


def _regions(a, b, g, tol):
    if math.isinf(g):
        return [RegionRecord("A", a, b)]
    regions = []
    if g > a + tol:
        regions.append(RegionRecord("A", a, min(b, g)))
    if g < b - tol:
        regions.append(RegionRecord("B", max(a, g), b))
    return regions


def _fill_region(reg, new_pts, common_pts, g, tol):
    def inside(x):
        if not reg.lower < x < reg.upper:
            return False
        return math.isinf(g) or abs(x - g) > tol
    reg.new = [x for x in new_pts if inside(x)]
    reg.common = [x for x in common_pts if inside(x)]
    if reg.new and reg.common and not math.isinf(g):
        reg.attractor_ok = (max(abs(x - g) for x in reg.common)
                            < min(abs(x - g) for x in reg.new))
    return reg


def interlacing_gaps(base_only):
    """Intervals between consecutive unshared base eigenvalues, plus the rays."""
    pts = [-math.inf] + sorted(base_only) + [math.inf]
    if len(pts) == 2:
        return []
    return [Gap(a, b) for a, b in zip(pts[:-1], pts[1:])]


def _common_zero_check(J, n, r, tol):
    mu = measure_n(J, n)
    keep = np.abs(mu.positions - r) > tol
    g = green_off_atom(J, r, n, tol)
    scale = float(np.sum(mu.weights[keep] / np.abs(mu.positions[keep] - r)))
    return abs(g) <= COMMON_ZERO_REL * max(scale, 1e-300), g


def _weight_at(J, n, x):
    lam = eigenvalues(J)
    i = int(np.argmin(np.abs(lam - x)))
    return float(eigenvectors(J)[n - 1, i] ** 2)


def _split_near_misses(J, Jt, n, g, tol, pairs, j_only, jt_only):
    # Away from gamma a shared eigenvalue has no weight in the measure of
    # delta_n.  Two close eigenvalues whose weights are not negligible are
    # a near coincidence and are kept apart.
    kept = []
    for x, y in pairs:
        if not math.isinf(g) and abs(x - g) <= tol:
            kept.append((x, y))
            continue
        w = max(_weight_at(J, n, x), _weight_at(Jt, n, y))
        if w <= ZERO_WEIGHT_REL:
            kept.append((x, y))
        else:
            j_only.append(x)
            jt_only.append(y)
    return kept, sorted(j_only), sorted(jt_only)


def classify(J, p, match_tol=None, Jt=None):
    """Compare ``sigma(J)`` with ``sigma(Jt)`` and build per-gap records.

    Two eigenvalues within ``match_tol`` count as shared; away from
    ``gamma`` they must also carry negligible weight (below ``1e-12``) in
    the measure of ``delta_n``, otherwise they are a near coincidence and
    are listed as unshared.  A common eigenvalue ``r`` away from ``gamma``
    must be a zero of ``G(., n)``; each failure of that is listed in
    ``common_zero_violations`` as ``(r, G(r, n))``.  The identity perturbation shares every
    eigenvalue and skips both checks.
    """
    if Jt is None:
        Jt = apply_perturbation(J, p)
    eJ, eT = eigenvalues(J), eigenvalues(Jt)
    if match_tol is None:
        match_tol = DEFAULT_MATCH_REL * max(spectral_diameter(J),
                                            spectral_diameter(Jt))
    if not match_tol > 0:
        raise ValueError("match_tol must be positive")
    pairs, j_only, jt_only = match_spectra(eJ, eT, match_tol)
    g = p.gamma
    n = p.site
    trivial = p.theta == 1 and p.shift == 0
    if not trivial:
        pairs, j_only, jt_only = _split_near_misses(
            J, Jt, n, g, match_tol, pairs, j_only, jt_only)
    violations = []
    for r, _ in ([] if trivial else pairs):
        if not math.isinf(g) and abs(r - g) <= match_tol:
            continue
        ok, val = _common_zero_check(J, n, r, match_tol)
        if not ok:
            violations.append((r, val))
    swapped = p.theta > 1
    base_only = jt_only if swapped else j_only
    new_pts = j_only if swapped else jt_only
    common_pts = [b if swapped else a for a, b in pairs]
    records = []
    for gap in interlacing_gaps(base_only):
        a, b = gap.lower, gap.upper
        regions = [_fill_region(reg, new_pts, common_pts, g, match_tol)
                   for reg in _regions(a, b, g, match_tol)]
        records.append(GapRecord(
            a, b,
            new=[x for x in new_pts if a < x < b],
            common=[x for x in common_pts if a < x < b],
            regions=regions))
    return ClassificationReport(
        gamma=g, theta=p.theta, site=n, match_tol=match_tol,
        eigs_J=eJ, eigs_Jt=eT, common=pairs, J_only=j_only, Jt_only=jt_only,
        swapped=swapped, gap_records=records, common_zero_violations=violations)


# -- Borel-transform location of new eigenvalues ----------------------------

def augmented_measure(J, p, match_tol=None, exclude=None):
    """Measure of ``delta_n`` plus the step ``theta**2/(1-theta**2) H(t-gamma)``.

    Its Borel transform is ``M_n(x) / ((1 - theta**2)(gamma - x))``.  Atoms
    within ``match_tol`` of ``gamma`` are merged into the step.  When
    ``exclude`` lists the shared eigenvalues, exactly those atoms are
    removed and all others are kept whatever their weight; otherwise the
    relative drop rule of :func:`measure_n` applies.
    """
    if p.theta == 1.0:
        raise HypothesisViolated("theta-one", "gamma is undefined for theta = 1")
    if match_tol is None:
        match_tol = DEFAULT_MATCH_REL * spectral_diameter(J)
    t2 = p.theta ** 2
    g = p.gamma
    if exclude is None:
        mu = measure_n(J, p.site)
        pos, w = mu.positions, mu.weights
    else:
        pos = eigenvalues(J)
        w = eigenvectors(J)[p.site - 1] ** 2
        keep = np.ones(pos.size, dtype=bool)
        for x in exclude:
            if abs(x - g) > match_tol:
                keep &= np.abs(pos - x) > match_tol
        keep &= w > 0
        pos, w = pos[keep], w[keep]
    near = np.abs(pos - g) <= match_tol
    step = t2 / (1.0 - t2) + float(np.sum(w[near]))
    return BorelMeasure(pos[~near], w[~near], g, step)


def _snap(x, candidates, tol):
    if math.isinf(x):
        return x, True
    if not candidates:
        return x, False
    arr = np.asarray(candidates)
    i = int(np.argmin(np.abs(arr - x)))
    if abs(arr[i] - x) <= tol:
        return float(arr[i]), True
    return x, False


def check_gap_hypotheses(report, gap):
    """Validate ``gap`` against the interlacing hypotheses of ``report``.

    Endpoints must be unshared eigenvalues of the base operator (or
    infinite) and every base eigenvalue inside must be shared.  Returns the
    gap with endpoints snapped onto the computed eigenvalues.
    """
    a, b = (gap.lower, gap.upper) if isinstance(gap, Gap) else map(float, gap)
    tol = report.match_tol
    if not a < b:
        raise HypothesisViolated("empty-interval", f"({a}, {b})")
    if math.isinf(a) and math.isinf(b):
        raise HypothesisViolated("no-finite-endpoint",
                                 "the gap must have a finite endpoint")
    common = report.common_base
    snapped = []
    for x, name in ((a, "lower"), (b, "upper")):
        y, ok = _snap(x, report.base_only, tol)
        if not ok:
            _, is_common = _snap(x, common, tol)
            if is_common:
                raise HypothesisViolated(
                    "endpoint-common",
                    f"{name} endpoint {x!r} is shared by both operators")
            raise HypothesisViolated(
                "endpoint-not-eigenvalue",
                f"{name} endpoint {x!r} is not an eigenvalue of the base operator")
        snapped.append(y)
    a, b = snapped
    inner = [x for x in report.base_only if a + tol < x < b - tol]
    if inner:
        raise HypothesisViolated(
            "interior-unshared",
            f"unshared base eigenvalue {inner[0]!r} inside ({a}, {b})")
    return Gap(a, b)


def _orient(J, p, swap):
    if p.theta == 1.0:
        raise HypothesisViolated("theta-one", "the comparison needs theta != 1")
    if swap is None:
        swap = p.theta > 1
    if swap and p.theta < 1:
        raise HypothesisViolated("direction", "swapped roles need theta > 1")
    if not swap and p.theta > 1:
        raise HypothesisViolated("direction",
                                 "theta > 1 requires the swapped orientation")
    Jt = apply_perturbation(J, p)
    if swap:
        return Jt, p.inverse(), J, True
    return J, p, Jt, False


def locate_new_eigenvalues(J, p, gap, tol=None, swap=None, match_tol=None):
    """Eigenvalues inside ``gap`` that the perturbation creates.

    They are the zeros of the augmented Borel transform on each side of
    ``gamma``; between two massive endpoints there is exactly one, and a
    side that runs off to infinity has none.  Every root is checked against
    the eigenvalues of the perturbed matrix.

    For ``theta > 1`` the roles are swapped: ``gap`` is a gap of the
    perturbed matrix and the returned points are eigenvalues of ``J`` that
    the perturbed matrix lacks.
    """
    base, q, other, _ = _orient(J, p, swap)
    report = classify(base, q, match_tol, Jt=other)
    gap = check_gap_hypotheses(report, gap)
    omega = augmented_measure(base, q, report.match_tol,
                              exclude=report.common_base)
    g = q.gamma
    a, b = gap.lower, gap.upper
    pieces = [(a, g), (g, b)] if a < g < b else [(a, b)]
    roots = []
    for lo, hi in pieces:
        if math.isinf(lo) or math.isinf(hi):
            # F -> 0 with the wrong sign at the infinite end: no zero
            continue
        roots.append(borel_root(omega, lo, hi, tol))
    scale = max(spectral_diameter(base), spectral_diameter(other))
    e_other = eigenvalues(other)
    for r in roots:
        if np.min(np.abs(e_other - r)) > CONFIRM_REL * scale:
            raise TheoremViolation(
                f"Borel root {r!r} is not an eigenvalue of the perturbed matrix")
    return sorted(roots)

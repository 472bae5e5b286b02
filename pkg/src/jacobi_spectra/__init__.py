"""Spectral analysis of finite Jacobi matrices and mass-spring chains under a
perturbation that rescales one mass and grounds it with an extra spring.

The modules are layered: :mod:`operator_model` (matrices, chains,
perturbations), :mod:`poly_recurrence` (orthogonal polynomials, Sturm
counts), :mod:`spectral_engine` (eigenvalues, spectral measures),
:mod:`green_weyl` (Weyl and Green functions), :mod:`perturbation_analysis`
and :mod:`verification` (comparison of the two spectra) and :mod:`report`
(configs, reports, the ``spectra`` command).
"""
from ._version import __version__
from .borel import BorelMeasure, borel_F, borel_root
from .errors import (
    DivisionNearZero,
    HypothesisViolated,
    ParseError,
    PoleAt,
    SpectraError,
    TheoremViolation,
    ValidationError,
)
from .green_weyl import (
    WeylSolution,
    green,
    green_routes,
    m_minus,
    m_plus,
    numeric_residue,
    psi_vector,
    residue_at,
    resolvent_entry,
    weyl_m,
)
from .operator_model import (
    JacobiMatrix,
    MassSpringChain,
    Perturbation,
    apply_perturbation,
    chain_to_jacobi,
    grounded_chain_to_jacobi,
    perturb_chain,
)
from .perturbation_analysis import (
    ClassificationReport,
    MasterEvaluation,
    augmented_measure,
    classify,
    gamma,
    locate_new_eigenvalues,
    master,
)
from .poly_recurrence import PolySequence, eval_pi, eval_theta, sturm_count, wronskian
from .spectral_engine import (
    Gap,
    GapList,
    SpectralMeasure,
    eigenvalues,
    eigenvectors,
    measure_n,
    spectral_gaps,
    spectral_measure,
)
from .verification import (
    run_interlacing_campaign,
    verify_below_spectrum,
    verify_gamma_persistence,
    verify_interlacing,
    zero_equivalence,
)

"""geowb: invariant-form calculus on complex nilmanifolds and solvmanifolds.

Exact bigraded exterior algebra over a complex coframe, Lie-algebra
structure equations with the operators d / del / delbar, special
Hermitian metric classification, transversality testing of (p,p)-forms,
a catalogue of structure presentations, and existence/obstruction
analysis for p-symplectic and p-pluriclosed structures -- everything at
the invariant (Lie-algebra) level, with exact Gaussian-rational
arithmetic wherever the structure constants are rational.
"""

from .scalars import EXACT, FLOAT, GaussRational
from .forms import (
    InvariantForm,
    Monomial,
    bidegree_project,
    conjugate,
    form_from_json,
    form_to_json,
    is_real,
    normalize_monomial,
    sigma,
    volume_form,
    volume_ratio,
    wedge,
)
from .lie import (
    StructurePresentation,
    ValidationReport,
    complexify_real_presentation,
    is_J_nilpotent,
    presentation_from_json,
    presentation_to_json,
)
from .metrics import (
    HermitianMetric,
    MetricReport,
    classify,
    form_power,
    fundamental_form,
    is_p_pluriclosed,
)
from .positivity import (
    SimpleForm,
    TransversalityVerdict,
    omega_a_form,
    omega_a_matrix,
    omega_a_verdict,
    pairing,
    quadric_matrix,
    quadric_transversality,
    transversality_sample,
)
from .existence import (
    AnsatzSolution,
    ObstructionCertificate,
    bott_chern_dimensions,
    closure_system,
    exact_simple_holomorphic_search,
    fps_psymplectic_condition,
    fps_skt_2symplectic_system,
    fps_solution_circle,
    ft8_3symplectic_condition,
    ft8_combined_system,
    ft8_ddbar_omega2,
    invariant_ddbar_lemma_check,
    st10_4symplectic_condition,
    st10_combined_system,
    verify_obstruction_certificate,
)
from . import catalog

__version__ = "0.1.0"

__all__ = [
    "EXACT",
    "FLOAT",
    "GaussRational",
    "InvariantForm",
    "Monomial",
    "StructurePresentation",
    "ValidationReport",
    "HermitianMetric",
    "MetricReport",
    "SimpleForm",
    "TransversalityVerdict",
    "AnsatzSolution",
    "ObstructionCertificate",
    "catalog",
    "bidegree_project",
    "bott_chern_dimensions",
    "classify",
    "closure_system",
    "complexify_real_presentation",
    "conjugate",
    "exact_simple_holomorphic_search",
    "form_from_json",
    "form_power",
    "form_to_json",
    "fps_psymplectic_condition",
    "fps_skt_2symplectic_system",
    "fps_solution_circle",
    "ft8_3symplectic_condition",
    "ft8_combined_system",
    "ft8_ddbar_omega2",
    "fundamental_form",
    "invariant_ddbar_lemma_check",
    "is_J_nilpotent",
    "is_p_pluriclosed",
    "is_real",
    "normalize_monomial",
    "omega_a_form",
    "omega_a_matrix",
    "omega_a_verdict",
    "pairing",
    "presentation_from_json",
    "presentation_to_json",
    "quadric_matrix",
    "quadric_transversality",
    "sigma",
    "st10_4symplectic_condition",
    "st10_combined_system",
    "transversality_sample",
    "verify_obstruction_certificate",
    "volume_form",
    "volume_ratio",
    "wedge",
]

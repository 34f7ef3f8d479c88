"""Fermionic Gaussian states, randomizing channels, and privacy diagnostics.

The heavy lifting lives in the compiled extension; this package re-exports
its surface. Dense operators cross the boundary as numpy arrays.
"""

from fpqc._core import (  # noqa: F401
    AttenuationChannel,
    ChoiDiagnostics,
    ConcentrationAudit,
    ConcentrationPoint,
    ConcentrationResult,
    ExperimentConfig,
    FermionicGaussianState,
    KrausTerm,
    MajoranaMonomial,
    MonomialExpansion,
    NormalForm,
    PauliString,
    PqcVerdict,
    RandomUnitaryChannel,
    SizeStatistics,
    SweepResult,
    apply,
    apply_attenuation,
    attenuation_choi_diagnostics,
    bounds,
    choi_cp_check,
    concentration_experiment,
    covariance_of,
    distance_to_mms,
    entropy,
    expand,
    export_concentration,
    export_sweep,
    fpqc_full,
    fpqc_paper,
    fpqc_random_subset,
    fpqc_unitary,
    gaussian_unitary,
    hermitian_monomial,
    jordan_wigner,
    majorana_operator,
    normal_form,
    parity_operator,
    pqc_test,
    purity,
    random_gaussian_state,
    random_skew_symmetric,
    reconstruct,
    schatten_norm,
    skew_exponential,
    special_orthogonal_log,
    state_from_spectrum,
    state_spectrum_from_generator,
    surrogate_net,
    sweep_cardinality,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

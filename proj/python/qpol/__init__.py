"""Quasi-deterministic analyzer Monte Carlo for photon polarization."""

from ._qpol import (  # noqa: F401
    Analyzer,
    Channel,
    ChannelOutcome,
    CheckResult,
    ChshResult,
    CountTable,
    Criterion,
    EigenPair,
    EigenstateResiduals,
    FieldState,
    FitReport,
    HermitianAnalyzerMatrix,
    RandomStream,
    ResultRow,
    RotationKind,
    SamplingDistribution,
    StokesP,
    StokesS,
    binomial_sigma,
    chi_square_fit,
    chsh_run,
    closed_form_plus_probability,
    default_gaussian_sigma,
    eigenstate_residuals,
    eigenvalues,
    field_to_stokes,
    frame_offset,
    gamma,
    matrix_to_stokes,
    normalized_pp,
    reference_curves,
    rotate_stokes,
    run_coincidence,
    run_malus,
    run_verification,
    sample_arg,
    transit,
)

__all__ = [name for name in dir() if not name.startswith("_")]

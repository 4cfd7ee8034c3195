"""pstlab: exactly certified perfect state transfer on XX spin chains.

Chains are synthesized from two recurrence families with all couplings kept
in a real quadratic field, certified for perfect transfer by exact integer
and sign tests, and cross-checked by simulating the one-excitation dynamics
with a self-contained eigensolver.
"""

from .dynamics import (
    FidelityTrace,
    chain_eigensystem,
    default_time_grid,
    evolve_basis_state,
    fidelity_trace,
    mirror_check,
    transfer_amplitude,
)
from .exactnum import QuadExt, RootExt, cheb_u, q_from_m
from .models import (
    AnalyticSpectrum,
    DegenerateParameters,
    ModelParams,
    NoRealSolution,
    NonMonotoneSpectrum,
    NonPositiveCoupling,
    SpinChain,
    SynthesisError,
    build_chain,
    build_para_chain,
    build_qracah_chain,
    para_gap_values,
    para_solve_params,
    para_spectrum,
    qracah_coeffs,
    qracah_gap_values,
    qracah_solve_params,
    qracah_spectrum,
)
from .pstcert import (
    PSTCertificate,
    certify,
    check_inequality_para,
    check_inequality_qracah,
    check_persymmetry,
    check_ratio_condition_para,
    extract_gap_integers,
)
from .spectral import (
    ConvergenceFailure,
    TridiagEigen,
    eigh_tridiagonal,
    refine_eigenvectors,
    reflection_signs,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticSpectrum",
    "ConvergenceFailure",
    "DegenerateParameters",
    "FidelityTrace",
    "ModelParams",
    "NoRealSolution",
    "NonMonotoneSpectrum",
    "NonPositiveCoupling",
    "PSTCertificate",
    "QuadExt",
    "RootExt",
    "SpinChain",
    "SynthesisError",
    "TridiagEigen",
    "build_chain",
    "build_para_chain",
    "build_qracah_chain",
    "certify",
    "chain_eigensystem",
    "cheb_u",
    "check_inequality_para",
    "check_inequality_qracah",
    "check_persymmetry",
    "check_ratio_condition_para",
    "default_time_grid",
    "eigh_tridiagonal",
    "evolve_basis_state",
    "extract_gap_integers",
    "fidelity_trace",
    "mirror_check",
    "para_gap_values",
    "para_solve_params",
    "para_spectrum",
    "q_from_m",
    "qracah_coeffs",
    "qracah_gap_values",
    "qracah_solve_params",
    "qracah_spectrum",
    "refine_eigenvectors",
    "reflection_signs",
    "transfer_amplitude",
    "__version__",
]

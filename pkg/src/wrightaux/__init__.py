"""Auxiliary Wright functions F_sigma(x) and M_sigma(x).

F_sigma(x) = W_{-sigma,0}(-x) and M_sigma(x) = W_{-sigma,1-sigma}(-x) with
W_{lambda,mu}(z) = sum z^n / (n! Gamma(lambda n + mu)), 0 < sigma < 1.

Modules: :mod:`core` (parameters, regimes, errors), :mod:`series`
(convergent series, the reference values), :mod:`coeffs` (expansion
coefficients c_j, two ways), :mod:`asympt` (large-argument expansions),
:mod:`limit` (sigma -> 1 forms and the Kreis-Pipkin integral),
:mod:`tables` and :mod:`cli`.
"""

from .asympt import (
    ExpansionResult,
    calf_asympt,
    calf_stokes,
    f_neg_asympt,
    f_pos_asympt,
    hat_e,
    m_neg_asympt,
    m_pos_asympt,
    stokes_reconstruction,
)
from .coeffs import CoefficientTable, c_algorithm, c_closed, stirling_coeffs
from .core import (
    AccuracyWarning,
    ContourError,
    ConvergenceError,
    DomainError,
    RangeError,
    Regime,
    SigmaParams,
    StokesError,
    StokesLineError,
    big_x,
    classify_regime,
    derive_params,
)
from .limit import figure_grid, kreis_pipkin, m_limit_neg, m_limit_pos
from .series import calf_series, f_series, m_closed, m_series, wright_series

__version__ = "0.1.0"

__all__ = [
    "AccuracyWarning",
    "CoefficientTable",
    "ContourError",
    "ConvergenceError",
    "DomainError",
    "ExpansionResult",
    "RangeError",
    "Regime",
    "SigmaParams",
    "StokesError",
    "StokesLineError",
    "big_x",
    "c_algorithm",
    "c_closed",
    "calf_asympt",
    "calf_series",
    "calf_stokes",
    "classify_regime",
    "derive_params",
    "f_neg_asympt",
    "f_pos_asympt",
    "f_series",
    "figure_grid",
    "hat_e",
    "kreis_pipkin",
    "m_closed",
    "m_limit_neg",
    "m_limit_pos",
    "m_neg_asympt",
    "m_pos_asympt",
    "m_series",
    "stirling_coeffs",
    "stokes_reconstruction",
    "wright_series",
]

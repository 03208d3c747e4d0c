"""Hankel transform, Hankel translation and the Hankel wavelet transform on the weighted half-line."""

from .errors import (
    ConfigError, DivergenceError, DomainError, GridMismatchError, HankeletError, InadmissibleWaveletError,
    NumericalError, OracleError, PreconditionError,
)
from .hankel import HankelPlan, get_plan, hankel_transform
from .radial import (
    RadialFunction, RadialGrid, ScaleSpaceGrid, integrate_radial, integrate_scale_space, lp_norm_radial,
    weighted_moment,
)
from .special import bessel_j_norm, digamma, gamma_fn, log_gamma
from .translate import dilate, hankel_convolve, hankel_translate, kernel_mass, translation_kernel
from .wavelet import ScaleSpaceFunction, Wavelet, hwt_direct_oracle, hwt_forward, make_bessel_hat, wavelet_atom

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "DivergenceError", "DomainError", "GridMismatchError", "HankelPlan", "HankeletError",
    "InadmissibleWaveletError", "NumericalError", "OracleError", "PreconditionError", "RadialFunction",
    "RadialGrid", "ScaleSpaceFunction", "ScaleSpaceGrid", "Wavelet", "bessel_j_norm", "digamma", "dilate",
    "gamma_fn", "get_plan", "hankel_convolve", "hankel_transform", "hankel_translate", "hwt_direct_oracle",
    "hwt_forward", "integrate_radial", "integrate_scale_space", "kernel_mass", "log_gamma", "lp_norm_radial",
    "make_bessel_hat", "translation_kernel", "wavelet_atom", "weighted_moment",
]

"""Numerical certification of uncertainty inequalities for the Hankel wavelet transform."""

from .battery import BatteryResult, run_battery
from .constants import (
    Region, concentration_epsilon, entropy_constants, log_constant_hankel, log_constant_hwt, mellin_of_wavelet,
    pitt_constant_hankel, pitt_constant_hwt, shannon_entropy_ss,
)
from .inequalities import ALL_IDS, HANKEL_IDS, HWT_IDS, InequalitySpec, check_inequality
from .report import AuditEntry, AuditReport

__all__ = [
    "ALL_IDS", "AuditEntry", "AuditReport", "BatteryResult", "HANKEL_IDS", "HWT_IDS", "InequalitySpec", "Region",
    "check_inequality", "concentration_epsilon", "entropy_constants", "log_constant_hankel", "log_constant_hwt",
    "mellin_of_wavelet", "pitt_constant_hankel", "pitt_constant_hwt", "run_battery", "shannon_entropy_ss",
]

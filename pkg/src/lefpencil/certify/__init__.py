"""Verification pipeline: base points, smoothness, critical scheme, eliminant, eta map, Euler ledger."""

from .certificate import STAGES, Certificate, run_certificate
from .config import ConfigError, Options, RunConfig, load_config, parse_config, shipped_config_path
from .ledger import D0, G0, EulerLedger, IntersectionClass, euler_ledger
from .pipeline import (
    Backend, BadPrimeSuspected, EtaMatrix, base_locus_smoothness, base_points, cover_validation,
    critical_scheme, eta_definedness, eta_matrix, eta_value, parameter_eliminant,
)

__all__ = [
    "STAGES", "Certificate", "run_certificate", "ConfigError", "Options", "RunConfig", "load_config",
    "parse_config", "shipped_config_path", "D0", "G0", "EulerLedger", "IntersectionClass",
    "euler_ledger", "Backend", "BadPrimeSuspected", "EtaMatrix", "base_locus_smoothness",
    "base_points", "cover_validation", "critical_scheme", "eta_definedness", "eta_matrix",
    "eta_value", "parameter_eliminant",
]

"""Verification harness: configuration, suites, reports and the on-disk cache."""
from .cache import CACHE_ENV, Cache, ChecksumError, quotient_ctx
from .config import SUITES, ConfigError, SuiteConfig, build_config, parse_config_text, parse_field_literal
from .report import Check, Report, emit, to_json, to_text
from .suites import run_suite

__all__ = [
    "CACHE_ENV", "Cache", "ChecksumError", "quotient_ctx", "SUITES", "ConfigError", "SuiteConfig",
    "build_config", "parse_config_text", "parse_field_literal", "Check", "Report", "emit", "to_json",
    "to_text", "run_suite",
]

"""Verification suites package initialization."""

from .runner import SuiteRunner, resolve_suites  # noqa: F401
from .suites import SuiteContext  # noqa: F401

"""
Size caps and environment-driven defaults.

Every exhaustive or materializing operation is bounded by one of the caps
below. Exceeding a cap raises ``CapExceededError``.
"""

import dataclasses
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional

from .errors import CapExceededError, ConfigurationError

logger = logging.getLogger(__name__)

ENV_PREFIX = "CAROUSEL_WIDTH_CAP_"
OUTPUT_DIR_ENV = "CAROUSEL_WIDTH_OUTPUT_DIR"
LOG_LEVEL_ENV = "CAROUSEL_WIDTH_LOG_LEVEL"


@dataclass(frozen=True)
class Caps:
    """Upper bounds for the expensive operations."""

    materialize: int = 50_000  # vertices
    rankwidth_exact: int = 10  # vertices; (2n-5)!! trees
    certificate: int = 24  # vertices; 2^(n-1) bipartitions
    even_hole: int = 24  # vertices
    dilworth: int = 2_000  # vertices
    triple_matrix: int = 4_096  # k for materialized triple matrices
    probe_attempts: int = 256  # random submatrix probes per trial
    probe_size: int = 8  # rows/columns per probe

    def __post_init__(self) -> None:
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigurationError(
                    f"cap '{field.name}' must be a positive integer, got {value!r}"
                )

    @classmethod
    def names(cls) -> Iterable[str]:
        return [field.name for field in dataclasses.fields(cls)]

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Caps":
        """Build caps from ``CAROUSEL_WIDTH_CAP_<NAME>`` variables."""
        env = os.environ if environ is None else environ
        values = {}
        for name in cls.names():
            raw = env.get(ENV_PREFIX + name.upper())
            if raw is None:
                continue
            values[name] = _parse_cap(name, raw)
            logger.debug(f"cap {name}={values[name]} taken from environment")
        return cls(**values)

    def with_overrides(self, assignments: Iterable[str]) -> "Caps":
        """Apply ``key=value`` strings, as given to ``--caps``."""
        known = set(self.names())
        values = {}
        for item in assignments:
            key, sep, raw = item.partition("=")
            key = key.strip().replace("-", "_")
            if not sep:
                raise ConfigurationError(f"cap override must be key=value: {item!r}")
            if key not in known:
                raise ConfigurationError(
                    f"unknown cap '{key}', expected one of {sorted(known)}"
                )
            values[key] = _parse_cap(key, raw)
        return dataclasses.replace(self, **values)

    def check(self, name: str, actual: int) -> None:
        """Raise ``CapExceededError`` when ``actual`` is over cap ``name``."""
        limit = getattr(self, name)
        if actual > limit:
            raise CapExceededError(name, limit, actual)


def _parse_cap(name: str, raw: str) -> int:
    try:
        return int(raw.strip())
    except ValueError:
        raise ConfigurationError(f"cap '{name}' is not an integer: {raw!r}") from None


def resolve_caps(caps: Optional[Caps]) -> Caps:
    return Caps.from_env() if caps is None else caps


def default_output_dir() -> Path:
    return Path(os.getenv(OUTPUT_DIR_ENV, "."))


def default_log_level() -> str:
    return os.getenv(LOG_LEVEL_ENV, "INFO").upper()

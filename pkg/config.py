"""
Octodp — Configuration Module
Loads environment variables and exposes a Settings dataclass.
"""

import os
from dataclasses import dataclass, field
from pathlib import Path

from dotenv import load_dotenv

from errors import PreconditionError

# Load .env from project root
_env_path = Path(__file__).resolve().parent / ".env"
load_dotenv(dotenv_path=_env_path)


@dataclass
class Settings:
    """Centralised settings loaded from environment variables."""

    # Arithmetic
    prime: int = field(
        default_factory=lambda: int(os.getenv("OCTODP_PRIME", "5"))
    )
    seed: int = field(
        default_factory=lambda: int(os.getenv("OCTODP_SEED", "20240229"))
    )

    # Worker pools (sample / verify)
    threads: int = field(
        default_factory=lambda: int(os.getenv("OCTODP_THREADS", "1"))
    )

    log_level: str = field(
        default_factory=lambda: os.getenv("OCTODP_LOG_LEVEL", "INFO")
    )

    # Local paths
    project_root: Path = field(
        default_factory=lambda: Path(__file__).resolve().parent
    )
    output_dir: Path = field(default=None)  # type: ignore[assignment]
    data_dir: Path = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.output_dir is None:
            env_out = os.getenv("OCTODP_OUTPUT_DIR")
            self.output_dir = Path(env_out) if env_out else self.project_root / "output"
        if self.data_dir is None:
            env_data = os.getenv("OCTODP_DATA_DIR")
            self.data_dir = Path(env_data) if env_data else self.project_root / "data"
        self.output_dir.mkdir(parents=True, exist_ok=True)

    # ------------------------------------------------------------------
    # Validation helpers
    # ------------------------------------------------------------------
    def validate_prime(self, prime: int | None = None) -> int:
        """Return the prime to use, rejecting composite or small values."""
        from exact.valuation import check_prime

        p = self.prime if prime is None else prime
        check_prime(p)
        return p

    def validate_threads(self, threads: int | None = None) -> int:
        """Return the worker count: the request capped by OCTODP_THREADS (at least 1)."""
        if self.threads < 1:
            raise PreconditionError(f"OCTODP_THREADS must be >= 1, got {self.threads}")
        if threads is None:
            return self.threads
        if threads < 1:
            raise PreconditionError(f"--threads must be >= 1, got {threads}")
        return min(threads, self.threads)


# Singleton instance
settings = Settings()

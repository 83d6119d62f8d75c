"""Shared configuration settings for gradia."""

from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings

# Define package root
PACKAGE_ROOT = Path(__file__).parent
PROJECT_ROOT = PACKAGE_ROOT.parent.parent


class Settings(BaseSettings):
    """Environment configuration with validation."""

    # Equality
    default_fuel: int = Field(
        default=1000, gt=0, description="Parallel-reduction rounds and whnf steps"
    )
    join_window: int = Field(
        default=8, gt=0, description="Reducts per side compared by joinability"
    )
    keep_full_chains: bool = Field(
        default=False, description="Retain every reduct of a joinability run"
    )

    # Harness
    default_seed: int = Field(default=0, description="Seed for property suites")
    default_trials: int = Field(
        default=200, gt=0, description="Trials per property suite"
    )
    batch_size: int = Field(
        default=25, gt=0, description="Trials handed to one suite worker"
    )
    max_size: int = Field(
        default=16, gt=0, description="AST size bound for generated terms"
    )

    # Output
    log_level: str = Field(default="WARNING", description="Root logging level")

    # Storage Paths
    data_dir: Path = Field(
        default_factory=lambda: PACKAGE_ROOT / "data",
        description="Directory holding the lattice and PTS catalogues",
    )
    reports_dir: Path = Field(
        default_factory=lambda: PROJECT_ROOT / "reports",
        description="Directory receiving suite detail files",
    )

    model_config = {
        "env_prefix": "GRADIA_",
        "env_file": str(PROJECT_ROOT / ".env"),
        "env_file_encoding": "utf-8",
        "extra": "ignore",
    }

    @property
    def lattices_dir(self) -> Path:
        """Directory of built-in lattice configs"""
        return self.data_dir / "lattices"

    @property
    def pts_dir(self) -> Path:
        """Directory of built-in PTS signatures"""
        return self.data_dir / "pts"

    def ensure_dirs(self) -> None:
        """Ensure all writable directories exist."""
        dirs = [
            self.reports_dir,
        ]
        for dir_path in dirs:
            dir_path.mkdir(parents=True, exist_ok=True)

    @classmethod
    def load_env(cls) -> "Settings":
        """Load configuration from environment variables and create its directories."""
        loaded = cls()
        loaded.ensure_dirs()
        return loaded


# Load environment configuration
settings = Settings.load_env()

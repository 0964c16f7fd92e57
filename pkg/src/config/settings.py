"""
Configuration settings for CrossTalk
"""
from typing import Any

from pydantic_settings import BaseSettings, SettingsConfigDict

from src.models.params import IntegrationConfig, SystemParams


class Settings(BaseSettings):
    """Application settings"""
    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="CROSSTALK_",
        case_sensitive=True,
        extra="ignore"  # Ignore extra fields from .env file
    )

    # Application Settings
    APP_NAME: str = "CrossTalk"
    VERSION: str = "1.0.0"
    LOG_LEVEL: str = "INFO"
    DEFAULT_ENGINE: str = "analytic"
    OUTPUT_FORMAT: str = "csv"
    SCAN_WORKERS: int = 1

    # Default parameter set, units of gamma (B' = 3B as in 39K)
    DEFAULT_B: float = 2.0
    DEFAULT_B_PRIME_RATIO: float = 3.0
    DEFAULT_G: float = 0.5
    DEFAULT_GAMMA1: float = 4.0
    DEFAULT_GAMMA2: float = 2.0

    # A / 2pi of the 39K D line in MHz; gamma = A / 12
    EINSTEIN_A_MHZ: float = 6.079

    # Time-domain oracle
    TD_PROBE_AMPLITUDE: float = 1e-3
    TD_T_END: float = 2000.0
    TD_DT: float = 2e-3
    TD_WINDOW: float = 0.25
    TD_SAMPLES_PER_PERIOD: int = 16

    # Feature detection
    GAIN_TOL: float = 1e-9
    TRANSPARENCY_TOL: float = 1e-8

    def default_params(self, **overrides: Any) -> SystemParams:
        """
        Default parameters with explicit overrides applied

        B' follows the resolved B through DEFAULT_B_PRIME_RATIO unless given,
        and delta and Delta default to the resolved B' - B.

        Raises:
            pydantic.ValidationError: If any value is invalid
        """
        resolved = SystemParams.model_validate({
            "B": self.DEFAULT_B,
            "G": self.DEFAULT_G,
            "gamma1": self.DEFAULT_GAMMA1,
            "gamma2": self.DEFAULT_GAMMA2,
            **overrides,
        })
        if "B_prime" in overrides:
            B_prime = resolved.B_prime
        else:
            B_prime = self.DEFAULT_B_PRIME_RATIO * resolved.B
        changes = {"B_prime": B_prime}
        for name in ("Delta", "delta"):
            if name not in overrides:
                changes[name] = B_prime - resolved.B
        return resolved.replace(**changes)

    def integration_config(self) -> IntegrationConfig:
        """Time-domain settings from the TD_* fields"""
        return IntegrationConfig(
            probe_amplitude=self.TD_PROBE_AMPLITUDE,
            t_end=self.TD_T_END,
            dt=self.TD_DT,
            demod_window=self.TD_WINDOW,
            samples_per_period=self.TD_SAMPLES_PER_PERIOD,
        )


# Global settings instance
settings = Settings()

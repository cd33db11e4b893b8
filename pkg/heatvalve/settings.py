from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict


class HeatValveSettings(BaseSettings):
    """
    Process-level settings for the command line.
    These parameters can be configured with environment variables (HEATVALVE_*).
    """

    log_format: Literal["pretty", "json"] = "pretty"
    log_level: str = "INFO"
    default_parallelism: int = 1

    # a .env file can be used to overload these settings
    # ex: "HEATVALVE_LOG_FORMAT=json"
    model_config = SettingsConfigDict(
        env_prefix="HEATVALVE_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

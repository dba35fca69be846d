from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict

from .utils.helpers import parse_key_value_text


class ConfigError(Exception):
    """Raised for unreadable config files, unknown keys or invalid values."""

    def __init__(self, message: str, error_code: str | None = None):
        super().__init__(message)
        self.error_code = error_code


class Settings(BaseSettings):
    """Process configuration loaded from DRE_* environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="DRE_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    host: str = "127.0.0.1"
    port: int = 7653
    debug: bool = False

    # Seed fallback when neither --seed nor a config file sets one (DRE_SEED).
    seed: int | None = None
    output_dir: str = "./results"
    # 0 = number of grid cells capped at available cores.
    parallel: int = 0


_settings: Settings | None = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next call re-reads the environment."""
    global _settings
    _settings = None


def load_key_value_file(path: str | Path) -> dict[str, str]:
    """Read a flat `key = value` config file, raising ConfigError on any problem."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e}", error_code="config.unreadable")
    try:
        return parse_key_value_text(text)
    except ValueError as e:
        raise ConfigError(f"{path}: {e}", error_code="config.bad_value")


def get_output_dir(override: str | Path | None = None) -> Path:
    out = Path(override) if override else Path(get_settings().output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out

import logging
from functools import lru_cache

from pydantic import BaseSettings, validator

LOG_LEVELS = {
    "critical": logging.CRITICAL,
    "error": logging.ERROR,
    "warning": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}


class Settings(BaseSettings):
    log_level: str = "warning"

    # closure / search caps
    closure_cap: int = 4096
    iso_cap: int = 512
    order_cap: int = 1000
    enumeration_max_q: int = 7

    # finite fields up to this size get log/antilog tables
    table_field_limit: int = 65536

    json_indent: int = 2

    class Config:
        env_prefix = "EDONE_"

    @validator("log_level")
    def valid_loglevel(cls, level: str) -> str:
        level = level.lower()
        if level not in LOG_LEVELS.keys():
            raise ValueError(f"log_level must be one of {list(LOG_LEVELS.keys())}")
        return level

    @property
    def logging_level(self) -> int:
        return LOG_LEVELS[self.log_level]


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings()

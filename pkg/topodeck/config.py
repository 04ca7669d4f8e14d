"""
运行配置

环境变量（TOPODECK_*，也可写在 .env 中）提供命令行参数的默认值。
"""

from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

Mode = Literal["set-deck", "multi-deck"]
Verbosity = Literal["quiet", "info", "debug"]

MODE_ALIASES = {"set": "set-deck", "multi": "multi-deck"}


class Settings(BaseSettings):
    """从环境读取的默认值"""
    model_config = SettingsConfigDict(env_prefix="TOPODECK_", env_file=".env", extra="ignore")

    workers: int = Field(default=1, ge=1)
    debug: bool = False
    quiet: bool = False


class RunConfig(BaseModel):
    """一次命令行调用的完整配置"""
    command: str
    n: Optional[int] = None
    out: Optional[Path] = None
    catalog: Optional[Path] = None
    space: Optional[Path] = None
    report: Optional[Path] = None
    mode: Mode = "set-deck"
    workers: int = Field(default=1, ge=1)
    verbosity: Verbosity = "info"
    stretch: bool = False

    @field_validator("mode", mode="before")
    @classmethod
    def _expand_mode(cls, value):
        return MODE_ALIASES.get(value, value)


def load_settings() -> Settings:
    return Settings()

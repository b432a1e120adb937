# utils/settings.py
# -*- coding: utf-8 -*-
import os
from functools import lru_cache

# 先尝试从 .env 加载环境变量
try:
    from dotenv import load_dotenv
    load_dotenv()
except Exception:
    pass

from pydantic import BaseModel, Field, ValidationError, field_validator

from utils.errors import MalformedInputError


class Settings(BaseModel):
    """
    运行配置，全部来自环境变量（可写在 .env 里）：
        GROTHLAB_THREADS    sweep 的 worker 数
        GROTHLAB_DEBUG      打开 weight_raiser 的逐步引理断言
        GROTHLAB_LOG_LEVEL  日志级别
        GROTHLAB_SEED       随机实例的默认种子
    """

    threads: int = Field(default=1, ge=1)
    debug: bool = False
    log_level: str = "INFO"
    seed: int = 0

    @field_validator("log_level")
    @classmethod
    def _upper(cls, v: str) -> str:
        v = (v or "INFO").strip().upper()
        if v not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level: {v}")
        return v


def load_settings() -> Settings:
    raw = {
        "threads": os.getenv("GROTHLAB_THREADS"),
        "debug": os.getenv("GROTHLAB_DEBUG"),
        "log_level": os.getenv("GROTHLAB_LOG_LEVEL"),
        "seed": os.getenv("GROTHLAB_SEED"),
    }
    # 空字符串与未设置同等对待
    raw = {k: v.strip() for k, v in raw.items() if v is not None and v.strip()}
    try:
        return Settings(**raw)
    except ValidationError as e:
        raise MalformedInputError(f"bad GROTHLAB_* configuration: {e}") from e


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return load_settings()

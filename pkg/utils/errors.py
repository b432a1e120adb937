# utils/errors.py
# -*- coding: utf-8 -*-
"""
统一异常。CLI 按类型映射退出码：
    MalformedInputError -> 2
    PreconditionError   -> 3
    InvariantViolation  -> 4
"""
from typing import Any, Optional


class GrothlabError(Exception):
    """所有库内异常的基类"""

    def __str__(self) -> str:
        # args 里可能带 payload（见 InvariantViolation），只展示消息
        return str(self.args[0]) if self.args else self.__class__.__name__


class MalformedInputError(GrothlabError, ValueError):
    pass


class PreconditionError(GrothlabError, ValueError):
    pass


class InvariantViolation(GrothlabError, RuntimeError):
    """
    引理支撑的断言失败。出现即意味着实现有 bug。
    payload 一般是 RaiseTrace；放进 args 以便跨进程 pickle。
    """

    def __init__(self, message: str, payload: Optional[Any] = None):
        super().__init__(message, payload)

    @property
    def payload(self) -> Optional[Any]:
        return self.args[1] if len(self.args) > 1 else None

# utils/schemas.py
# -*- coding: utf-8 -*-
"""
对外 JSON 结构（机器接口）。核心数学类型是 dataclass，这里只管线上格式。
"""
import json
from typing import Any, Dict, List, Literal, Optional, Tuple, Type, TypeVar

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from utils.errors import MalformedInputError

M = TypeVar("M", bound=BaseModel)

Claim = Literal[
    "main-support", "m-convex", "layered", "schub-support", "psp-formula",
    "oracle-equiv", "raise-sweep",
    # 额外的
    "psp-inclusion", "lower-bound", "column-bound", "raise-completeness",
]
PermFilter = Literal["all", "fireworks", "layered"]


class DiagramModel(BaseModel):
    model_config = ConfigDict(extra="forbid")
    n_rows: int = Field(ge=1)
    n_cols: int = Field(ge=1)
    cells: List[Tuple[int, int]]


class PipeDreamModel(BaseModel):
    model_config = ConfigDict(extra="forbid")
    n: int = Field(ge=1)
    crosses: List[Tuple[int, int]]


class TermModel(BaseModel):
    exp: List[int]
    coef: int


class PolynomialModel(BaseModel):
    n_vars: int = Field(ge=1)
    terms: List[TermModel]


class RaiseStepModel(BaseModel):
    case: int = Field(ge=0, le=2)
    tiles: Dict[str, Tuple[int, int]]
    pipes: Dict[str, int]
    removed_fakes: List[Tuple[int, int]] = Field(default_factory=list)
    row_weight: int


class RaiseTraceModel(BaseModel):
    perm: str
    row: int = Field(ge=1)
    start: PipeDreamModel
    final: PipeDreamModel
    final_weight: List[int]
    steps: List[RaiseStepModel]


class Report(BaseModel):
    claim: str
    instance: str
    ok: bool
    lhs_minus_rhs: List[List[int]] = Field(default_factory=list)
    rhs_minus_lhs: List[List[int]] = Field(default_factory=list)
    note: Optional[str] = None

    def to_dict(self) -> dict:
        return self.model_dump(mode="json", exclude_none=True)


class VerificationJob(BaseModel):
    model_config = ConfigDict(extra="forbid")
    claim: Claim
    n: int = Field(ge=1)
    filter: Optional[PermFilter] = None
    seed: int = 0
    parallelism: int = Field(default=1, ge=1)
    samples: int = Field(default=200, ge=0)
    fail_fast: bool = False


class SweepSummary(BaseModel):
    claim: str
    n: int
    filter: Optional[str]
    seed: int
    checked: int
    failures: int
    reports: List[Report]

    def line(self) -> str:
        return f"checked {self.checked} instances, {self.failures} failures"


# -----------------------
# Helpers
# -----------------------
def parse_model(model: Type[M], data: Any) -> M:
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise MalformedInputError(f"invalid {model.__name__}: {e}") from e


def parse_model_json(model: Type[M], text: str) -> M:
    try:
        return model.model_validate_json(text)
    except ValidationError as e:
        raise MalformedInputError(f"invalid {model.__name__} JSON: {e}") from e


def dumps(obj: Any) -> str:
    """确定性输出：排序键、无时间戳"""
    if isinstance(obj, BaseModel):
        obj = obj.model_dump(mode="json", exclude_none=True)
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)

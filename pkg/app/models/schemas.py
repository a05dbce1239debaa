"""判定结果与实验配置的数据模型"""
from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from app.core.seeding import MASK64


class CoxeterLabel(str, Enum):
    """直角 Coxeter 群标签；只给出组合判据能够支持的结论"""
    THICK_OF_ORDER_EXACTLY_1 = "ThickOfOrderExactly1"
    NONTRIVIAL_JOIN = "NontrivialJoin"
    INCONCLUSIVE = "Inconclusive"


class ThresholdKind(str, Enum):
    CONNECTIVITY = "Connectivity"
    AS = "AS"
    CFS_UPPER = "CfsUpper"
    CFS_LOWER = "CfsLower"
    CFS_CONJECTURED = "CfsConjectured"


class Block(BaseModel):
    """极大块 B(w, w')：两端不相邻，核心是两端的公共邻域"""
    ends: Tuple[int, int]
    core: List[int]

    model_config = {"frozen": True}


class AsResult(BaseModel):
    verdict: bool
    witness: Optional[Block] = None
    blocks_examined: int = Field(ge=0)


class CfsResult(BaseModel):
    verdict: bool
    clique_factor: List[int] = []
    witness_component: Optional[Tuple[int, int]] = None
    reason: Optional[str] = None


class Classification(BaseModel):
    """一张图的完整判定记录"""
    n: int
    as_verdict: bool
    as_witness: Optional[Block] = None
    blocks_examined: int
    cfs_verdict: bool
    clique_factor: List[int] = []
    cfs_witness_component: Optional[Tuple[int, int]] = None
    join: Optional[Tuple[List[int], List[int]]] = None
    coxeter_label: CoxeterLabel

    @model_validator(mode="after")
    def check_invariants(self):
        if self.as_verdict and not self.cfs_verdict:
            raise ValueError("AS 成立而 CFS 不成立，违反 AS ⇒ CFS")
        if (self.as_witness is not None) != self.as_verdict:
            raise ValueError("AS 见证与判定不一致")
        thick = self.coxeter_label == CoxeterLabel.THICK_OF_ORDER_EXACTLY_1
        if thick != (self.cfs_verdict and self.join is None):
            raise ValueError("ThickOfOrderExactly1 当且仅当 CFS 成立且不是非平凡联")
        return self


# ---------- 实验 ----------

class SweepProperty(str, Enum):
    AS = "AS"
    CFS = "CFS"
    CONNECTED = "CONNECTED"


class DensityRule(str, Enum):
    """α 到边概率 p 的换算规则"""
    ALPHA_CUBE_ROOT_LOG_OVER_N = "as"        # p = α (log n / n)^{1/3}
    ALPHA_INV_SQRT = "inv-sqrt"              # p = α n^{-1/2}
    ALPHA_LOG_OVER_N = "log-over-n"          # p = α log n / n
    ABSOLUTE = "absolute"                    # p = α
    ALPHA_INV_SQRT_LOG = "inv-sqrt-log"      # p = α / (√n log n)


DENSITY_RULE_ALIASES = {
    "AlphaCubeRootLogOverN": DensityRule.ALPHA_CUBE_ROOT_LOG_OVER_N.value,
    "AlphaInvSqrt": DensityRule.ALPHA_INV_SQRT.value,
    "AlphaLogOverN": DensityRule.ALPHA_LOG_OVER_N.value,
    "Absolute": DensityRule.ABSOLUTE.value,
    "AlphaInvSqrtLog": DensityRule.ALPHA_INV_SQRT_LOG.value,
}


class MetricFlag(str, Enum):
    SUPPORT_FRACTION = "support_fraction"
    BLOCKS_EXAMINED = "blocks_examined"


class SweepConfig(BaseModel):
    """一次网格扫描的配置，JSON 键名与字段名一致"""
    property: SweepProperty
    density_rule: DensityRule
    n_values: List[int] = Field(min_length=1)
    alpha_values: List[float] = Field(min_length=1)
    trials_per_cell: int = Field(default=400, ge=1)
    base_seed: int = Field(default=0, ge=0, le=MASK64)
    metrics: List[MetricFlag] = []

    model_config = {"extra": "forbid"}

    @field_validator("property", mode="before")
    @classmethod
    def upper_property(cls, v):
        return v.upper() if isinstance(v, str) else v

    @field_validator("density_rule", mode="before")
    @classmethod
    def rule_alias(cls, v):
        # 也接受枚举成员的驼峰名，如 AlphaInvSqrt
        if isinstance(v, str) and v not in DensityRule._value2member_map_:
            return DENSITY_RULE_ALIASES.get(v, v)
        return v

    @field_validator("n_values")
    @classmethod
    def check_n(cls, v):
        if any(n < 1 for n in v):
            raise ValueError("n 必须为正整数")
        return v

    @field_validator("alpha_values")
    @classmethod
    def check_alpha(cls, v):
        if any(a < 0 for a in v):
            raise ValueError("α 不能为负")
        return v

    def cells(self) -> List[Tuple[int, float]]:
        """网格顺序：n 外层、α 内层"""
        return [(n, alpha) for n in self.n_values for alpha in self.alpha_values]


CSV_COLUMNS = [
    "property", "n", "alpha", "p", "trials", "successes", "p_hat",
    "ci_lo", "ci_hi", "mean_support_fraction", "mean_blocks_examined", "base_seed",
]


class SweepRecord(BaseModel):
    """一个 (n, α) 网格单元的统计结果"""
    property: SweepProperty
    n: int
    alpha: float
    p: float
    trials: int
    successes: int
    p_hat: float
    ci_lo: float
    ci_hi: float
    mean_support_fraction: Optional[float] = None
    mean_blocks_examined: Optional[float] = None
    base_seed: int

    @model_validator(mode="after")
    def check_counts(self):
        if not 0 <= self.successes <= self.trials:
            raise ValueError("successes 必须在 0..trials 之间")
        return self

    def to_row(self) -> dict:
        row = self.model_dump()
        row["property"] = self.property.value
        return row

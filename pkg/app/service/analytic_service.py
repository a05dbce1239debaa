"""阈值曲线、期望公式与统计区间

所有公式中的 log 都是自然对数。

关于 AS 阈值附近“好块”个数 N 的泊松启发式（期望约为
n·exp(-n^ε (1-ε) log n)）只作为说明，不提供计算接口。
"""
import logging
import math
from typing import Dict, List, Tuple

from scipy.stats import norm

from app.core.exceptions import DomainError, GraphInputError
from app.models.schemas import DensityRule, ThresholdKind

logger = logging.getLogger(__name__)

# 猜想的 CFS 阈值常数 sqrt((sqrt(17) - 3) / 2) ≈ 0.7494，按需计算而不写成字面量
CFS_CONJECTURED_CONSTANT = math.sqrt((math.sqrt(17.0) - 3.0) / 2.0)


def threshold(kind: ThresholdKind, n: int) -> float:
    """各性质的临界密度，截断到 (0, 1]"""
    if n < 2:
        raise DomainError(f"阈值公式要求 n >= 2: {n}")
    log_n = math.log(n)
    kind = ThresholdKind(kind)
    if kind == ThresholdKind.CONNECTIVITY:
        value = log_n / n
    elif kind == ThresholdKind.AS:
        value = (log_n / n) ** (1.0 / 3.0)
    elif kind == ThresholdKind.CFS_UPPER:
        value = 5.0 * math.sqrt(log_n / n)
    elif kind == ThresholdKind.CFS_LOWER:
        value = 1.0 / (math.sqrt(n) * log_n)
    else:
        value = CFS_CONJECTURED_CONSTANT / math.sqrt(n)
    return min(value, 1.0)


def density(rule: DensityRule, n: int, alpha: float) -> float:
    """按密度规则把 α 换算成边概率 p，截断到 [0, 1]"""
    rule = DensityRule(rule)
    if rule == DensityRule.ABSOLUTE:
        p = alpha
    else:
        if n < 2:
            raise DomainError(f"密度规则 {rule.value} 要求 n >= 2: {n}")
        log_n = math.log(n)
        if rule == DensityRule.ALPHA_CUBE_ROOT_LOG_OVER_N:
            p = alpha * (log_n / n) ** (1.0 / 3.0)
        elif rule == DensityRule.ALPHA_INV_SQRT:
            p = alpha / math.sqrt(n)
        elif rule == DensityRule.ALPHA_LOG_OVER_N:
            p = alpha * log_n / n
        else:
            p = alpha / (math.sqrt(n) * log_n)
    return min(max(p, 0.0), 1.0)


def expected_nonadjacent_pairs(n: int, p: float) -> float:
    """非邻接点对（即块）的期望个数 (1-p)·n(n-1)/2"""
    return (1.0 - p) * n * (n - 1) / 2.0


def expected_induced_squares(n: int, p: float) -> float:
    """诱导四圈的期望个数 3·C(n,4)·p^4·(1-p)^2；n < 4 时为 0"""
    if n < 4:
        return 0.0
    return 3.0 * math.comb(n, 4) * p ** 4 * (1.0 - p) ** 2


def chernoff_bound(mu: float, delta: float) -> float:
    """P(|X - μ| >= δμ) 的 Chernoff 上界 min(1, 2·exp(-δ²μ/3))"""
    if not 0.0 < delta < 2.0 / 3.0:
        raise DomainError(f"δ 必须在 (0, 2/3) 内: {delta}")
    if mu <= 0:
        raise DomainError(f"μ 必须为正: {mu}")
    return min(1.0, 2.0 * math.exp(-delta * delta * mu / 3.0))


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> Tuple[float, float]:
    """二项比例的 Wilson 得分区间"""
    if trials < 1 or not 0 <= successes <= trials:
        raise GraphInputError(f"要求 0 <= successes <= trials 且 trials >= 1: {successes}/{trials}")
    if not 0.0 < confidence < 1.0:
        raise GraphInputError(f"置信水平必须在 (0, 1) 内: {confidence}")

    z = float(norm.ppf(0.5 + confidence / 2.0))
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    centre = (phat + z2 / (2.0 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z2 / (4.0 * trials * trials)) / denom
    lo = 0.0 if successes == 0 else max(0.0, min(phat, centre - half))
    hi = 1.0 if successes == trials else min(1.0, max(phat, centre + half))
    return lo, hi


class AnalyticService:
    """阈值表服务"""

    def threshold_table(self, n: int) -> List[Dict]:
        """五条阈值曲线在 n 处的取值，按 ThresholdKind 的定义顺序"""
        table = [{"kind": kind.value, "value": threshold(kind, n)} for kind in ThresholdKind]
        logger.debug(f"[AnalyticService] n={n} 的阈值表: {table}")
        return table

"""蒙特卡洛网格扫描服务

每个 (n, α) 单元做 trials_per_cell 次独立试验。第 t 次试验的种子只取决于
(base_seed, n, α, t)，单元内的试验分批交给进程池并行执行，聚合只用整数求和，
因此结果与执行顺序和并行度无关。单元按网格顺序依次产出。
"""
import logging
import math
import os
import sys
import time
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import pandas as pd
from tqdm import tqdm

from app.core.config import settings
from app.core.exceptions import GraphInputError, InvariantViolation
from app.core.seeding import trial_seed
from app.models.graph import GenSpec
from app.models.schemas import (
    CSV_COLUMNS, DensityRule, MetricFlag, SweepConfig, SweepProperty, SweepRecord,
)
from app.service.analytic_service import density, wilson_interval
from app.service.classify_service import is_AS, is_CFS
from app.service.graph_service import GraphService, is_connected
from app.service.square_service import square_components

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrialOutcome:
    """一次试验的结果；未请求的指标为 None"""
    success: bool
    largest_support: Optional[int] = None  # 最大方块分量的支撑集顶点数
    blocks_examined: Optional[int] = None


def run_trial(prop: SweepProperty, n: int, p: float, seed: int,
              metrics: Sequence[MetricFlag] = (),
              memory_cap_bytes: Optional[int] = None) -> TrialOutcome:
    """生成一张 G(n, p) 并判定性质，附带请求的指标"""
    prop = SweepProperty(prop)
    metrics = {MetricFlag(m) for m in metrics}
    g = GraphService(memory_cap_bytes).generate_gnp(GenSpec(n=n, p=p, seed=seed))

    complex_ = None
    largest = None
    if MetricFlag.SUPPORT_FRACTION in metrics:
        complex_ = square_components(g)
        largest = complex_.largest_support

    as_result = None
    if prop == SweepProperty.AS or MetricFlag.BLOCKS_EXAMINED in metrics:
        as_result = is_AS(g)
    blocks = as_result.blocks_examined if MetricFlag.BLOCKS_EXAMINED in metrics else None

    if prop == SweepProperty.AS:
        success = as_result.verdict
    elif prop == SweepProperty.CFS:
        success = is_CFS(g, complex_=complex_, need_witness=False).verdict
        if not success and settings.LEMMA_CROSS_CHECK:
            if as_result is None:
                as_result = is_AS(g)
            if as_result.verdict:
                raise InvariantViolation(
                    f"AS 成立而 CFS 不成立: n={n}, p={p}, seed={seed}, 见证 {as_result.witness.ends}"
                )
    else:
        success = is_connected(g)

    return TrialOutcome(success, largest, blocks)


def _run_trial_batch(args) -> List[TrialOutcome]:
    """进程池任务：一批试验（顶层函数以便 pickle）"""
    prop, n, p, seeds, metrics, memory_cap_bytes = args
    return [run_trial(prop, n, p, s, metrics, memory_cap_bytes) for s in seeds]


def resolve_workers(threads: Optional[int] = None) -> int:
    """并行进程数：命令行参数优先，其次 ASCFS_THREADS，最后 CPU 核数"""
    if threads is not None and threads < 1:
        raise GraphInputError(f"进程数必须为正整数: {threads}")
    return threads or settings.ASCFS_THREADS or os.cpu_count() or 1


class SweepService:
    """网格扫描"""

    def __init__(self, threads: Optional[int] = None,
                 memory_cap_bytes: Optional[int] = None,
                 progress: bool = True):
        self.workers = resolve_workers(threads)
        self.memory_cap_bytes = memory_cap_bytes or settings.MEMORY_CAP_BYTES
        self.progress = progress

    def _batches(self, config: SweepConfig, n: int, alpha: float, p: float):
        seeds = [trial_seed(config.base_seed, n, alpha, t) for t in range(config.trials_per_cell)]
        size = max(1, math.ceil(len(seeds) / (self.workers * 4)))
        return [
            (config.property, n, p, seeds[i:i + size], list(config.metrics), self.memory_cap_bytes)
            for i in range(0, len(seeds), size)
        ]

    def _run_cell(self, config: SweepConfig, n: int, alpha: float,
                  executor: Optional[Executor], bar: tqdm) -> SweepRecord:
        p = density(config.density_rule, n, alpha)
        # 单元开始前先在主进程检查内存上限
        GraphService(self.memory_cap_bytes).check_memory(n)

        batches = self._batches(config, n, alpha, p)
        results = executor.map(_run_trial_batch, batches) if executor else map(_run_trial_batch, batches)

        successes = 0
        support_sum = 0
        blocks_sum = 0
        for outcomes in results:
            for o in outcomes:
                successes += o.success
                support_sum += o.largest_support or 0
                blocks_sum += o.blocks_examined or 0
            bar.update(len(outcomes))

        trials = config.trials_per_cell
        lo, hi = wilson_interval(successes, trials)
        metrics = set(config.metrics)
        return SweepRecord(
            property=config.property,
            n=n,
            alpha=alpha,
            p=p,
            trials=trials,
            successes=successes,
            p_hat=successes / trials,
            ci_lo=lo,
            ci_hi=hi,
            mean_support_fraction=(support_sum / (trials * n)
                                   if MetricFlag.SUPPORT_FRACTION in metrics else None),
            mean_blocks_examined=(blocks_sum / trials
                                  if MetricFlag.BLOCKS_EXAMINED in metrics else None),
            base_seed=config.base_seed,
        )

    def iter_sweep(self, config: SweepConfig) -> Iterator[SweepRecord]:
        """按网格顺序逐个产出单元记录"""
        cells = config.cells()
        logger.info(f"[SweepService] 开始扫描 {config.property.value}: {len(cells)} 个单元 × "
                    f"{config.trials_per_cell} 次试验，{self.workers} 个进程")
        start_time = time.time()
        executor = ProcessPoolExecutor(max_workers=self.workers) if self.workers > 1 else None
        bar = tqdm(total=len(cells) * config.trials_per_cell, desc=config.property.value,
                   file=sys.stderr, disable=not self.progress)
        try:
            for n, alpha in cells:
                cell_start = time.time()
                record = self._run_cell(config, n, alpha, executor, bar)
                logger.debug(f"[SweepService] n={n} α={alpha} p={record.p:.6g}: "
                             f"{record.successes}/{record.trials}，耗时 {time.time() - cell_start:.3f}秒")
                yield record
        finally:
            bar.close()
            if executor is not None:
                executor.shutdown(cancel_futures=True)
        logger.info(f"[SweepService] 扫描完成，耗时 {time.time() - start_time:.3f}秒")

    def run_sweep(self, config: SweepConfig) -> List[SweepRecord]:
        return list(self.iter_sweep(config))

    def write_csv(self, records: Iterable[SweepRecord], path: str) -> int:
        """先写表头，每完成一个单元追加一行；中途失败时已完成的行保留在文件里"""
        pd.DataFrame(columns=CSV_COLUMNS).to_csv(path, index=False)
        written = 0
        for record in records:
            pd.DataFrame([record.to_row()], columns=CSV_COLUMNS).to_csv(
                path, mode="a", header=False, index=False
            )
            written += 1
        return written


def run_sweep(config: SweepConfig, threads: Optional[int] = None) -> List[SweepRecord]:
    """使用默认配置运行扫描（不显示进度条）"""
    return SweepService(threads=threads, progress=False).run_sweep(config)


def read_csv(path: str) -> pd.DataFrame:
    """读回扫描结果，列与 CSV_COLUMNS 一致"""
    return pd.read_csv(path, dtype={"property": str})


# ---------- 预设网格 ----------

def _grid(start: float, step: float, count: int) -> List[float]:
    return [round(start + step * k, 6) for k in range(count)]


PRESETS: Dict[str, Dict] = {
    "as-prevalence": dict(
        property=SweepProperty.AS,
        density_rule=DensityRule.ALPHA_CUBE_ROOT_LOG_OVER_N,
        n_values=list(range(300, 1501, 100)),
        alpha_values=_grid(0.80, 0.1, 10),
    ),
    "cfs-prevalence": dict(
        property=SweepProperty.CFS,
        density_rule=DensityRule.ALPHA_INV_SQRT,
        n_values=list(range(100, 1601, 100)),
        alpha_values=_grid(0.700, 0.025, 9),
    ),
    "cfs-support": dict(
        property=SweepProperty.CFS,
        density_rule=DensityRule.ALPHA_INV_SQRT,
        n_values=list(range(100, 1601, 100)),
        alpha_values=_grid(0.700, 0.025, 9),
        metrics=[MetricFlag.SUPPORT_FRACTION],
    ),
    "connectivity": dict(
        property=SweepProperty.CONNECTED,
        density_rule=DensityRule.ALPHA_LOG_OVER_N,
        n_values=list(range(300, 1501, 100)),
        alpha_values=_grid(0.8, 0.1, 7),
    ),
    "cfs-lower-bound": dict(
        property=SweepProperty.CFS,
        density_rule=DensityRule.ALPHA_INV_SQRT_LOG,
        n_values=[400, 900, 1600],
        alpha_values=[1.0],
        trials_per_cell=100,
        metrics=[MetricFlag.SUPPORT_FRACTION],
    ),
}


def preset(name: str, base_seed: int = 0, trials: Optional[int] = None) -> SweepConfig:
    """按名字构造预设扫描配置"""
    if name not in PRESETS:
        raise GraphInputError(f"未知的预设 {name}，可选: {', '.join(PRESETS)}")
    fields = dict(PRESETS[name])
    fields.setdefault("trials_per_cell", settings.DEFAULT_TRIALS)
    if trials is not None:
        fields["trials_per_cell"] = trials
    return SweepConfig(base_seed=base_seed, **fields)


def cell_outcomes(config: SweepConfig, n: int, alpha: float) -> List[Tuple[int, TrialOutcome]]:
    """逐次列出一个单元里每次试验的 (种子, 结果)，供检查单次试验用"""
    p = density(config.density_rule, n, alpha)
    seeds = [trial_seed(config.base_seed, n, alpha, t) for t in range(config.trials_per_cell)]
    return [(s, run_trial(config.property, n, p, s, config.metrics)) for s in seeds]

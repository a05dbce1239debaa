"""AS / CFS 判定、非平凡联分解与 Coxeter 标签"""
import logging
import time
from typing import Dict, Iterator, List, Optional, Tuple

from app.core.config import settings
from app.core.exceptions import GraphInputError, InvariantViolation
from app.models.graph import Graph, VertexSet, iter_bits
from app.models.schemas import AsResult, Block, CfsResult, Classification, CoxeterLabel
from app.models.square import SquareComplex
from app.service.graph_service import complement_components, dominating_vertices, is_clique_mask
from app.service.square_service import (
    SquareService, _diagonal_candidates, enumerate_squares, square_components,
)

logger = logging.getLogger(__name__)

# CFS 判定失败原因，作为 JSON 报告的一部分保持稳定
REASON_NO_SQUARES = "no induced 4-cycles outside clique factor"
REASON_LOW_DEGREE = "vertex outside clique factor has degree < 2"
REASON_FEW_SQUARES = "fewer than |V \\ K| - 3 induced 4-cycles"
REASON_NOT_COVERED = "no square component covers all vertices outside clique factor"


# ---------- AS ----------

def _is_good_block(rows, full: int, u: int, v: int) -> bool:
    """极大块 B(u, v) 是否见证 AS

    核心不是团，且块外每个顶点的邻域与核心之交也不是团。
    """
    core = rows[u] & rows[v]
    if is_clique_mask(rows, core):
        return False
    outside = full & ~(core | (1 << u) | (1 << v))
    while outside:
        low = outside & -outside
        outside ^= low
        s = rows[low.bit_length() - 1] & core
        if s & (s - 1) == 0:  # 至多一个顶点
            return False
        if is_clique_mask(rows, s):
            return False
    return True


def _nonadjacent_pairs_up_to(g: Graph, u: int, v: int) -> int:
    """字典序不超过 (u, v) 的非邻接点对个数"""
    rows = g.rows
    total = 0
    for x in range(u):
        total += (g.n - 1 - x) - (rows[x] >> (x + 1)).bit_count()
    between = ((1 << (v + 1)) - 1) & ~((1 << (u + 1)) - 1)
    total += (v - u) - (rows[u] & between).bit_count()
    return total


def iter_good_blocks(g: Graph) -> Iterator[Tuple[int, int]]:
    """按字典序产出所有见证 AS 的块的两端

    公共邻居少于 2 的非邻接点对核心必为团，直接跳过。
    """
    rows = g.rows
    full = g.full_mask
    for u, v in _diagonal_candidates(g):
        if _is_good_block(rows, full, u, v):
            yield u, v


def is_AS(g: Graph) -> AsResult:
    """按字典序检查极大块，返回第一个见证"""
    for u, v in iter_good_blocks(g):
        core = g.rows[u] & g.rows[v]
        return AsResult(
            verdict=True,
            witness=Block(ends=(u, v), core=list(iter_bits(core))),
            blocks_examined=_nonadjacent_pairs_up_to(g, u, v),
        )
    return AsResult(verdict=False, blocks_examined=g.nonedge_count)


def count_good_blocks(g: Graph) -> int:
    """见证 AS 的极大块个数"""
    return sum(1 for _ in iter_good_blocks(g))


# ---------- CFS ----------

def _covering_component(complex_: SquareComplex, rest: int) -> Optional[Tuple[int, int]]:
    for comp in complex_.components:
        if comp.support == rest:
            return tuple(comp.id)
    return None


def is_CFS(g: Graph, complex_: Optional[SquareComplex] = None,
           need_witness: bool = True) -> CfsResult:
    """K 取全部支配顶点，判断是否有方块分量的支撑集恰为 V \\ K

    支配顶点不在任何诱导四圈里，所以全图的方块复形可以直接复用。
    稠密图先走 AS 判定（AS 蕴含 CFS）；need_witness 为 False 时不再求见证分量。
    """
    k = dominating_vertices(g)
    clique_factor = k.to_list()
    rest = g.full_mask & ~k.mask
    if not rest:
        return CfsResult(verdict=False, clique_factor=clique_factor, reason=REASON_NO_SQUARES)

    if complex_ is None and g.density > settings.CFS_AS_FASTPATH_DENSITY and is_AS(g).verdict:
        witness = None
        if need_witness:
            witness = _covering_component(square_components(g), rest)
            if witness is None:
                raise InvariantViolation("AS 成立但没有方块分量覆盖 V \\ K")
        return CfsResult(verdict=True, clique_factor=clique_factor, witness_component=witness)

    if complex_ is None:
        for v in iter_bits(rest):
            if (g.rows[v] & rest).bit_count() < 2:
                return CfsResult(verdict=False, clique_factor=clique_factor, reason=REASON_LOW_DEGREE)
        squares = enumerate_squares(g)
        if not squares:
            return CfsResult(verdict=False, clique_factor=clique_factor, reason=REASON_NO_SQUARES)
        if len(squares) < rest.bit_count() - 3:
            return CfsResult(verdict=False, clique_factor=clique_factor, reason=REASON_FEW_SQUARES)
        complex_ = square_components(g, squares)
    elif not complex_.squares:
        return CfsResult(verdict=False, clique_factor=clique_factor, reason=REASON_NO_SQUARES)

    witness = _covering_component(complex_, rest)
    if witness is None:
        return CfsResult(verdict=False, clique_factor=clique_factor, reason=REASON_NOT_COVERED)
    return CfsResult(verdict=True, clique_factor=clique_factor, witness_component=witness)


def square_count_lower_bound_holds(g: Graph) -> bool:
    """CFS 图至少含有 |V \\ K| - 3 个诱导四圈；非 CFS 图视为成立"""
    result = is_CFS(g, need_witness=False)
    if not result.verdict:
        return True
    rest = g.n - len(result.clique_factor)
    return len(enumerate_squares(g)) >= rest - 3


# ---------- 联与标签 ----------

def is_nontrivial_join(g: Graph) -> Optional[Tuple[VertexSet, VertexSet]]:
    """补图不连通时返回 (A, B)，A 为含顶点 0 的补图分量"""
    parts = complement_components(g)
    if len(parts) < 2:
        return None
    a = parts[0]
    return a, g.vertex_set(g.full_mask & ~a.mask)


def coxeter_label(g: Graph) -> CoxeterLabel:
    if is_nontrivial_join(g) is not None:
        return CoxeterLabel.NONTRIVIAL_JOIN
    if is_CFS(g, need_witness=False).verdict:
        return CoxeterLabel.THICK_OF_ORDER_EXACTLY_1
    return CoxeterLabel.INCONCLUSIVE


def classify(g: Graph) -> Classification:
    """一次性给出全部判定，并校验 AS ⇒ CFS"""
    as_result = is_AS(g)
    complex_ = square_components(g)
    cfs_result = is_CFS(g, complex_=complex_)
    if as_result.verdict and not cfs_result.verdict:
        logger.error(f"[ClassifyService] AS 成立而 CFS 不成立: n={g.n}, 见证 {as_result.witness}")
        raise InvariantViolation(f"AS ⇒ CFS 被破坏，AS 见证 {as_result.witness.ends}")

    join = is_nontrivial_join(g)
    if join is not None:
        label = CoxeterLabel.NONTRIVIAL_JOIN
    elif cfs_result.verdict:
        label = CoxeterLabel.THICK_OF_ORDER_EXACTLY_1
    else:
        label = CoxeterLabel.INCONCLUSIVE

    return Classification(
        n=g.n,
        as_verdict=as_result.verdict,
        as_witness=as_result.witness,
        blocks_examined=as_result.blocks_examined,
        cfs_verdict=cfs_result.verdict,
        clique_factor=cfs_result.clique_factor,
        cfs_witness_component=cfs_result.witness_component,
        join=None if join is None else (join[0].to_list(), join[1].to_list()),
        coxeter_label=label,
    )


class ClassifyService:
    """单图判定服务，产出 check 命令的报告字典"""

    PROPERTIES = ("as", "cfs", "join", "coxeter")

    def __init__(self, square_service: Optional[SquareService] = None):
        self.square_service = square_service or SquareService()

    def check(self, prop: str, g: Graph, count_good: bool = False) -> Dict:
        if prop not in self.PROPERTIES:
            raise GraphInputError(f"未知性质: {prop}")
        logger.info(f"[ClassifyService] 开始判定 {prop}: n={g.n}, m={g.edge_count}")
        start_time = time.time()
        if prop == "as":
            report = self.check_as(g, count_good)
        elif prop == "cfs":
            report = self.check_cfs(g)
        elif prop == "join":
            report = self.check_join(g)
        else:
            report = self.check_coxeter(g)
        logger.info(f"[ClassifyService] {prop} 判定完成: "
                    f"{report.get('verdict', report.get('label'))}，耗时 {time.time() - start_time:.3f}秒")
        return report

    def check_as(self, g: Graph, count_good: bool = False) -> Dict:
        result = is_AS(g)
        report = {
            "verdict": result.verdict,
            "witness": result.witness.model_dump() if result.witness else None,
            "blocks_examined": result.blocks_examined,
        }
        if count_good:
            report["good_blocks"] = count_good_blocks(g)
        return report

    def check_cfs(self, g: Graph) -> Dict:
        complex_ = self.square_service.build_complex(g)
        result = is_CFS(g, complex_=complex_)
        support = None
        if result.witness_component is not None:
            support = self.square_service.support_of(complex_, result.witness_component)
        return {
            "verdict": result.verdict,
            "clique_factor": result.clique_factor,
            "witness_component": list(result.witness_component) if result.witness_component else None,
            "support": support,
            "reason": result.reason,
        }

    def check_join(self, g: Graph) -> Dict:
        join = is_nontrivial_join(g)
        return {
            "verdict": join is not None,
            "bipartition": None if join is None else [join[0].to_list(), join[1].to_list()],
        }

    def check_coxeter(self, g: Graph) -> Dict:
        c = classify(g)
        return {
            "label": c.coxeter_label.value,
            "as_verdict": c.as_verdict,
            "cfs_verdict": c.cfs_verdict,
            "join": None if c.join is None else [list(part) for part in c.join],
            "blocks_examined": c.blocks_examined,
        }

"""诱导四圈枚举、方块图分量与建造顺序"""
import heapq
import logging
import time
from collections import defaultdict
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from app.core.config import settings
from app.core.exceptions import GraphInputError, InvariantViolation
from app.core.union_find import UnionFind
from app.models.graph import Graph, iter_bits
from app.models.square import ComponentId, Diagonal, Square, SquareComplex, SquareComponent

logger = logging.getLogger(__name__)


def _diagonal_candidates(g: Graph):
    """公共邻居数 >= 2 的非邻接点对 (u, v)，u < v，按字典序

    只有这样的点对才可能是某个诱导四圈的对角线。
    """
    if g.n < 4:
        return []
    counts = g.common_neighbour_counts()
    cand = np.triu(counts >= 2, k=1) & ~g.dense
    us, vs = np.nonzero(cand)
    return list(zip(us.tolist(), vs.tolist()))


def enumerate_squares(g: Graph) -> List[Square]:
    """全部诱导四圈，每个恰好报告一次，按规范键升序

    以非边 {u, v} 为一条对角线，在公共邻域内找非边 {a, b} 作另一条；
    只保留 min(u, v) < min(a, b) 的一侧以免重复。
    """
    rows = g.rows
    squares: List[Square] = []
    for u, v in _diagonal_candidates(g):
        # 另一条对角线的两个顶点都必须大于 u
        common = rows[u] & rows[v] & ~((1 << (u + 1)) - 1)
        rest = common
        while rest:
            low = rest & -rest
            rest ^= low
            a = low.bit_length() - 1
            for b in iter_bits(rest & ~rows[a]):
                squares.append(Square(Diagonal(u, v), Diagonal(a, b)))

    if settings.DEBUG:
        for s in squares:
            s.check(rows)
    return squares


def square_components(g: Graph, squares: Optional[List[Square]] = None) -> SquareComplex:
    """方块图的连通分量

    两个方块在方块图中相邻当且仅当共享一条对角线，因此对对角线做并查集
    （每个方块合并它的两条对角线）得到的连通性与方块的连通性一致。
    """
    start_time = time.time()
    if squares is None:
        squares = enumerate_squares(g)

    uf = UnionFind()
    for s in squares:
        uf.union(s.first, s.second)

    # 根 -> 分量信息
    support: Dict[Diagonal, int] = defaultdict(int)
    count: Dict[Diagonal, int] = defaultdict(int)
    for s in squares:
        root = uf.find(s.first)
        support[root] |= s.support
        count[root] += 1

    components: List[SquareComponent] = []
    component_of: Dict[Diagonal, ComponentId] = {}
    for group in uf.groups():
        diagonals = tuple(sorted(group))
        cid = diagonals[0]
        root = uf.find(cid)
        components.append(SquareComponent(cid, support[root], count[root], diagonals))
        for d in diagonals:
            component_of[d] = cid
    components.sort(key=lambda c: c.id)

    logger.debug(f"[SquareService] n={g.n}: {len(squares)} 个方块, {len(components)} 个分量, "
                 f"耗时 {time.time() - start_time:.3f}秒")
    return SquareComplex(g.n, squares, tuple(components), component_of)


def largest_support_fraction(g: Graph, complex_: Optional[SquareComplex] = None) -> Fraction:
    """最大分量支撑集占全部顶点的比例；没有方块或 n = 0 时为 0"""
    if g.n == 0:
        return Fraction(0)
    if complex_ is None:
        complex_ = square_components(g)
    return Fraction(complex_.largest_support, g.n)


def has_two_predecessor_order(g: Graph, order: Sequence[int]) -> bool:
    """从第三个顶点起，每个顶点都与至少两个排在前面的顶点相邻"""
    seen = 0
    for i, v in enumerate(order):
        if seen >> v & 1:
            return False
        if i >= 2 and (g.rows[v] & seen).bit_count() < 2:
            return False
        seen |= 1 << v
    return True


def build_order(g: Graph, component_id: ComponentId,
                complex_: Optional[SquareComplex] = None) -> List[int]:
    """分量支撑集的建造顺序：每个后来的顶点都与至少两个前面的顶点相邻

    从规范键最小的方块的第一条对角线出发，每次在“已到达集合包含其一条对角线、
    但尚未完全到达”的方块里取规范键最小者，按升序加入它缺少的顶点。
    四圈的任意三个顶点必含一条对角线，所以“与已到达集合交于三个顶点”的情形
    已被对角线条件覆盖。
    """
    if complex_ is None:
        complex_ = square_components(g)
    try:
        comp = complex_.component(Diagonal(*component_id))
    except (KeyError, TypeError):
        raise GraphInputError(f"不存在的方块分量: {component_id}")

    squares = complex_.squares_of(comp.id)
    by_vertex: Dict[int, List[int]] = defaultdict(list)
    for idx, s in enumerate(squares):
        for x in s.vertices():
            by_vertex[x].append(idx)

    order: List[int] = []
    reached = 0
    heap: List[int] = []  # 方块下标即规范键的顺序

    def reach(x: int):
        nonlocal reached
        order.append(x)
        reached |= 1 << x
        for idx in by_vertex[x]:
            heapq.heappush(heap, idx)

    first = squares[0]
    for x in (first.first.a, first.first.b, first.second.a, first.second.b):
        reach(x)

    while heap:
        s = squares[heapq.heappop(heap)]
        missing = s.support & ~reached
        if not missing:
            continue
        if s.first.mask & ~reached and s.second.mask & ~reached:
            continue  # 暂不可加入；其顶点被到达时会重新入堆
        for x in iter_bits(missing):
            reach(x)

    if reached != comp.support:
        raise InvariantViolation(f"建造顺序没有覆盖分量 {comp.id} 的支撑集")
    if settings.DEBUG and not has_two_predecessor_order(g, order):
        raise InvariantViolation(f"建造顺序不满足两前驱性质: {order}")
    return order


class SquareService:
    """方块复形服务，供判定报告复用同一个复形"""

    def build_complex(self, g: Graph) -> SquareComplex:
        logger.info(f"[SquareService] 开始构造方块复形: n={g.n}, m={g.edge_count}")
        return square_components(g)

    def support_of(self, complex_: SquareComplex, component_id: ComponentId) -> List[int]:
        """分量支撑集，升序顶点列表"""
        return list(iter_bits(complex_.component(Diagonal(*component_id)).support))

    def build_order(self, g: Graph, component_id: ComponentId,
                    complex_: Optional[SquareComplex] = None) -> List[int]:
        start_time = time.time()
        order = build_order(g, component_id, complex_)
        logger.debug(f"[SquareService] 分量 {tuple(component_id)} 的建造顺序含 {len(order)} 个顶点，"
                     f"耗时 {time.time() - start_time:.3f}秒")
        return order

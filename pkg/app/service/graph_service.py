"""图生成与基础查询服务"""
import logging
import time
from typing import List, Optional

import numpy as np

from app.core.config import settings
from app.core.exceptions import GraphInputError, ResourceLimitError
from app.core.seeding import make_generator
from app.models.graph import GenSpec, Graph, VertexSet, iter_bits

logger = logging.getLogger(__name__)


class GraphService:
    """G(n, p) 生成服务，负责内存上限检查"""

    def __init__(self, memory_cap_bytes: Optional[int] = None):
        self.memory_cap_bytes = memory_cap_bytes or settings.MEMORY_CAP_BYTES

    def check_memory(self, n: int):
        """n² 位的邻接矩阵不能超过内存上限

        上限按打包后的邻接位计算。生成与稠密视图实际持有一个 n×n 布尔矩阵，
        每个点对 1 字节，峰值约为这个口径的 8 倍（另加打包行的 n²/8 字节）。
        """
        need = n * n // 8
        if need > self.memory_cap_bytes:
            raise ResourceLimitError(
                f"n={n} 的邻接矩阵需要 {need} 字节，超过上限 {self.memory_cap_bytes} 字节"
            )

    def generate_gnp(self, spec: GenSpec) -> Graph:
        """按 GenSpec 生成 G(n, p)

        点对按字典序 (0,1), (0,2), ..., (n-2,n-1) 依次消耗 Philox 流中的 double，
        第 i 个点对是否为边只取决于第 i 个 double，与分块方式无关。
        对称矩阵原地填写，整个过程只分配一个 n×n 布尔矩阵。
        """
        n, p = spec.n, spec.p
        if not 0.0 <= p <= 1.0:
            raise GraphInputError(f"p 必须在 [0, 1] 内: {p}")
        self.check_memory(n)

        start_time = time.time()
        rng = make_generator(spec.seed)
        adj = np.zeros((n, n), dtype=bool)
        for u in range(n - 1):
            row = rng.random(n - 1 - u) < p
            adj[u, u + 1:] = row
            adj[u + 1:, u] = row
        g = Graph.from_matrix(adj, owned=True)
        logger.debug(f"[GraphService] 生成 G({n}, {p:.6g}) seed={spec.seed}，"
                     f"边数 {g.edge_count}，耗时 {time.time() - start_time:.3f}秒")
        return g


def generate_gnp(spec: GenSpec) -> Graph:
    """使用默认配置生成 G(n, p)"""
    return GraphService().generate_gnp(spec)


def link(g: Graph, v: int) -> VertexSet:
    """顶点 v 的邻域"""
    g.check_vertex(v)
    return g.vertex_set(g.rows[v])


def common_link(g: Graph, u: int, v: int) -> VertexSet:
    """两个不同顶点的公共邻域"""
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        raise GraphInputError(f"common_link 需要两个不同的顶点: {u}")
    return g.vertex_set(g.rows[u] & g.rows[v])


def is_clique_mask(rows, mask: int) -> bool:
    """掩码内任意两点都相邻（空集和单点也算团）"""
    rest = mask
    while rest:
        low = rest & -rest
        rest ^= low
        if rest & ~rows[low.bit_length() - 1]:
            return False
    return True


def is_clique(g: Graph, s: VertexSet) -> bool:
    if s.n != g.n:
        raise GraphInputError(f"顶点集合属于 n={s.n} 的图，当前图 n={g.n}")
    return is_clique_mask(g.rows, s.mask)


def _colour_sort(rows, cand: int):
    """贪心着色：返回按颜色非降排列的顶点及其颜色编号（颜色数是团大小的上界）"""
    order: List[int] = []
    colours: List[int] = []
    uncoloured = cand
    k = 0
    while uncoloured:
        k += 1
        avail = uncoloured
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            avail &= ~rows[v]
            avail ^= low
            uncoloured ^= low
            order.append(v)
            colours.append(k)
    return order, colours


def _expand(rows, size: int, cand: int, t: int) -> bool:
    order, colours = _colour_sort(rows, cand)
    for i in range(len(order) - 1, -1, -1):
        if size + colours[i] < t:
            return False
        v = order[i]
        if size + 1 >= t:
            return True
        if _expand(rows, size + 1, cand & rows[v], t):
            return True
        cand &= ~(1 << v)
    return False


def contains_clique_of_order(g: Graph, t: int) -> bool:
    """是否存在 t 个顶点的团（精确分支定界，贪心着色剪枝）"""
    if t < 1:
        raise GraphInputError(f"团的阶必须为正整数: {t}")
    if t > g.n:
        return False
    if t <= 2:
        return g.n >= 1 if t == 1 else g.edge_count > 0

    rows = g.rows
    # 剥离度数 < t-1 的顶点，它们不可能在 t-团里
    alive = g.full_mask
    changed = True
    while changed:
        changed = False
        for v in iter_bits(alive):
            if (rows[v] & alive).bit_count() < t - 1:
                alive &= ~(1 << v)
                changed = True
    if alive.bit_count() < t:
        return False
    return _expand(rows, 0, alive, t)


def complement_components(g: Graph) -> List[VertexSet]:
    """补图的连通分量（不显式构造补图，按行取反遍历），按最小顶点排序"""
    rows = g.rows
    unvisited = g.full_mask
    parts: List[VertexSet] = []
    while unvisited:
        low = unvisited & -unvisited
        unvisited ^= low
        comp = low
        frontier = low
        while frontier:
            f_low = frontier & -frontier
            frontier ^= f_low
            x = f_low.bit_length() - 1
            reach = unvisited & ~rows[x]
            if reach:
                unvisited &= ~reach
                comp |= reach
                frontier |= reach
        parts.append(g.vertex_set(comp))
    return parts


def connected_components(g: Graph) -> List[VertexSet]:
    """图本身的连通分量，按最小顶点排序"""
    rows = g.rows
    unvisited = g.full_mask
    parts: List[VertexSet] = []
    while unvisited:
        low = unvisited & -unvisited
        unvisited ^= low
        comp = low
        frontier = low
        while frontier:
            f_low = frontier & -frontier
            frontier ^= f_low
            reach = unvisited & rows[f_low.bit_length() - 1]
            if reach:
                unvisited &= ~reach
                comp |= reach
                frontier |= reach
        parts.append(g.vertex_set(comp))
    return parts


def is_connected(g: Graph) -> bool:
    """恰有一个连通分量（空图不连通）"""
    return len(connected_components(g)) == 1


def dominating_vertices(g: Graph) -> VertexSet:
    """与其余所有顶点相邻的顶点，必然构成团"""
    full = g.full_mask
    mask = 0
    for v, row in enumerate(g.rows):
        if row | (1 << v) == full:
            mask |= 1 << v
    return g.vertex_set(mask)

"""逐字按定义实现的暴力判定，只用于小图上的对照"""
from itertools import chain, combinations
from typing import List, Set, Tuple

import networkx as nx

from app.models.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def subsets(items, min_size: int = 0):
    items = list(items)
    return chain.from_iterable(combinations(items, k) for k in range(min_size, len(items) + 1))


def is_clique(g: Graph, vertices) -> bool:
    return all(g.has_edge(a, b) for a, b in combinations(vertices, 2))


def brute_squares(g: Graph, vertices=None) -> Set[Tuple[int, int, int, int]]:
    """所有 4 元子集上的诱导四圈，键为 (对角线1, 对角线2)，对角线1 含最小顶点"""
    vertices = range(g.n) if vertices is None else vertices
    found = set()
    for quad in combinations(sorted(vertices), 4):
        a = quad[0]
        for b in quad[1:]:
            c, d = [x for x in quad[1:] if x != b]
            diagonals_missing = not g.has_edge(a, b) and not g.has_edge(c, d)
            cross = all(g.has_edge(x, y) for x in (a, b) for y in (c, d))
            if diagonals_missing and cross:
                found.add((a, b, c, d))
    return found


def brute_components(g: Graph, vertices=None) -> List[Set[int]]:
    """显式构造方块图（共享对角线即相邻），返回各分量的支撑集"""
    squares = sorted(brute_squares(g, vertices))
    sg = nx.Graph()
    sg.add_nodes_from(squares)
    for s, t in combinations(squares, 2):
        ds = {frozenset(s[:2]), frozenset(s[2:])}
        dt = {frozenset(t[:2]), frozenset(t[2:])}
        if ds & dt:
            sg.add_edge(s, t)
    return [set(chain.from_iterable(comp)) for comp in nx.connected_components(sg)]


def as_oracle(g: Graph) -> bool:
    """存在非邻接的 w, w' 以及公共邻域的子集 Γ'，使 Γ' 不是团，
    且 {w, w'} ∪ Γ' 之外每个顶点的邻域与 Γ' 之交也不是团"""
    for w, w2 in combinations(range(g.n), 2):
        if g.has_edge(w, w2):
            continue
        common = [x for x in range(g.n) if g.has_edge(w, x) and g.has_edge(w2, x)]
        for sub in subsets(common, 2):
            if is_clique(g, sub):
                continue
            block = {w, w2, *sub}
            if all(not is_clique(g, [x for x in sub if g.has_edge(v, x)])
                   for v in range(g.n) if v not in block):
                return True
    return False


def cfs_oracle(g: Graph) -> bool:
    """存在团 K（可空）使 Γ = Γ' ⋆ K，且 Γ' 的方块图有分量覆盖 Γ'"""
    for k in subsets(range(g.n)):
        rest = [v for v in range(g.n) if v not in k]
        if not rest or not is_clique(g, k):
            continue
        if not all(g.has_edge(x, y) for x in k for y in rest):
            continue
        if any(comp == set(rest) for comp in brute_components(g, rest)):
            return True
    return False


def all_graphs(n: int):
    """n 个顶点上的全部带标号图"""
    pairs = list(combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for i, e in enumerate(pairs) if bits >> i & 1])

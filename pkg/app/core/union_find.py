"""并查集（带路径压缩），元素按需加入"""
from typing import Dict, Hashable, List


class UnionFind:
    """稀疏键的并查集：元素在第一次出现时自动成为单元素集合"""

    def __init__(self):
        self.parents: Dict[Hashable, Hashable] = {}
        self.num_components = 0

    def add(self, elem: Hashable):
        if elem not in self.parents:
            self.parents[elem] = elem
            self.num_components += 1

    def find(self, elem: Hashable) -> Hashable:
        self.add(elem)
        p = elem
        # 根的父亲是自己
        while p != self.parents[p]:
            p = self.parents[p]

        # 路径压缩
        while elem != p:
            parent = self.parents[elem]
            self.parents[elem] = p
            elem = parent
        return p

    def union(self, a: Hashable, b: Hashable):
        p1 = self.find(a)
        p2 = self.find(b)
        if p1 == p2:
            return
        self.parents[p2] = p1
        self.num_components -= 1

    def groups(self) -> List[List[Hashable]]:
        """按根分组返回所有集合"""
        components: Dict[Hashable, List[Hashable]] = {}
        for elem in list(self.parents):
            components.setdefault(self.find(elem), []).append(elem)
        return list(components.values())

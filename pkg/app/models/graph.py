"""图数据模型

Graph 是顶点 0..n-1 上的不可变简单图，邻接关系按行位打包：
rows[v] 是一个 Python 整数，第 u 位为 1 当且仅当 {u, v} 是边。
集合运算（求交、取补）都是整数上的按位运算。

文本格式:
    第一行 "n m"（顶点数、边数），随后 m 行 "u v"，0 <= u < v < n，
    空白分隔、换行结尾；写出时边按字典序排列。
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from app.core.exceptions import GraphInputError, GraphParseError
from app.core.seeding import MASK64

Edge = Tuple[int, int]


def iter_bits(mask: int) -> Iterator[int]:
    """按升序枚举掩码中的顶点"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class VertexSet:
    """绑定到某个 n 的顶点集合（位掩码）"""
    mask: int
    n: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.n:
            raise GraphInputError(f"顶点集合超出 0..{self.n - 1} 的范围")

    @classmethod
    def of(cls, vertices: Iterable[int], n: int) -> "VertexSet":
        return cls(mask_of(vertices), n)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and 0 <= v < self.n and bool(self.mask >> v & 1)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask & other.mask, self.n)

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask | other.mask, self.n)

    def to_list(self) -> List[int]:
        return list(iter_bits(self.mask))

    def __repr__(self) -> str:
        return f"VertexSet({self.to_list()})"


class GenSpec(BaseModel):
    """G(n, p) 的生成参数；相同的 GenSpec 生成逐位相同的图"""
    n: int = Field(ge=0)
    p: float = Field(ge=0.0, le=1.0)
    seed: int = Field(default=0, ge=0, le=MASK64)

    model_config = {"frozen": True}


@dataclass(frozen=True, eq=False)
class Graph:
    """不可变简单图

    rows 必须对称且没有自环；通过 from_edges / from_rows / from_matrix 构造时会校验。
    """
    n: int
    rows: Tuple[int, ...]

    # ---------- 构造 ----------

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"边 ({u}, {v}) 的顶点超出 0..{n - 1}")
            if u == v:
                raise GraphInputError(f"不允许自环: ({u}, {v})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> "Graph":
        g = cls(len(rows), tuple(rows))
        g.validate()
        return g

    @classmethod
    def from_matrix(cls, adj: np.ndarray, owned: bool = False) -> "Graph":
        """从对称布尔矩阵构造，矩阵同时缓存为 dense

        owned=True 表示调用方移交一个自己构造的对称布尔矩阵：不复制、不检查对称性。
        """
        adj = np.asarray(adj, dtype=bool)
        n = adj.shape[0]
        if adj.shape != (n, n):
            raise GraphInputError(f"邻接矩阵必须是方阵: {adj.shape}")
        if not owned and n and (adj.diagonal().any() or not np.array_equal(adj, adj.T)):
            raise GraphInputError("邻接矩阵必须对称且对角线为 0")
        packed = np.packbits(adj, axis=1, bitorder="little")
        rows = tuple(int.from_bytes(packed[v].tobytes(), "little") for v in range(n))
        g = cls(n, rows)
        frozen = adj if owned else adj.copy()
        frozen.setflags(write=False)
        g.__dict__["dense"] = frozen
        return g

    def validate(self):
        """检查对称性、无自环以及位不越界"""
        for v, row in enumerate(self.rows):
            if row < 0 or row >> self.n:
                raise GraphInputError(f"第 {v} 行包含超出 0..{self.n - 1} 的位")
            if row >> v & 1:
                raise GraphInputError(f"顶点 {v} 有自环")
            for u in iter_bits(row):
                if not self.rows[u] >> v & 1:
                    raise GraphInputError(f"邻接不对称: ({v}, {u})")

    # ---------- 基本查询 ----------

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def check_vertex(self, v: int):
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise GraphInputError(f"顶点 {v} 超出 0..{self.n - 1}")

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    @cached_property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    @property
    def nonedge_count(self) -> int:
        return self.n * (self.n - 1) // 2 - self.edge_count

    @property
    def density(self) -> float:
        pairs = self.n * (self.n - 1) // 2
        return self.edge_count / pairs if pairs else 0.0

    def edges(self) -> Iterator[Edge]:
        """按字典序枚举边 (u, v)，u < v"""
        for u, row in enumerate(self.rows):
            yield from ((u, v) for v in iter_bits(row >> (u + 1) << (u + 1)))

    def vertex_set(self, mask: int) -> VertexSet:
        return VertexSet(mask, self.n)

    @cached_property
    def dense(self) -> np.ndarray:
        """只读的稠密布尔邻接矩阵"""
        nbytes = (self.n + 7) // 8
        buf = b"".join(row.to_bytes(nbytes, "little") for row in self.rows)
        packed = np.frombuffer(buf, dtype=np.uint8).reshape(self.n, nbytes)
        adj = np.unpackbits(packed, axis=1, count=self.n, bitorder="little").astype(bool)
        adj.setflags(write=False)
        return adj

    def common_neighbour_counts(self) -> np.ndarray:
        """所有点对的公共邻居数 (A·A)，float32 矩阵乘在 n < 2^24 时精确"""
        a = self.dense.astype(np.float32)
        return a @ a

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """按给定顺序重新编号的诱导子图"""
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[v]) for u in vertices for v in iter_bits(self.rows[u])
                 if v in index and index[u] < index[v]]
        return Graph.from_edges(len(vertices), edges)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


# ---------- 文本编解码 ----------

def _parse_pair(line: str, lineno: int, what: str) -> Tuple[int, int]:
    """一行两个 ASCII 十进制非负整数；Unicode 数字（如 "²"）同样视为格式错误"""
    tokens = line.split()
    if len(tokens) != 2 or not all(tok.isascii() and tok.isdigit() for tok in tokens):
        raise GraphParseError(f"{what}格式错误: {line!r}", lineno)
    return int(tokens[0]), int(tokens[1])


def read_graph(text: str) -> Graph:
    """解析图文本格式，错误带行号"""
    lines = text.splitlines()
    if not lines:
        raise GraphParseError("缺少表头 \"n m\"", 1)
    n, m = _parse_pair(lines[0], 1, "表头")

    rows = [0] * n
    seen = 0
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.split():
            continue
        u, v = _parse_pair(line, lineno, "边")
        if u >= n or v >= n:
            raise GraphParseError(f"顶点下标超出 n={n}: {line!r}", lineno)
        if u == v:
            raise GraphParseError(f"不允许自环: {line!r}", lineno)
        if rows[u] >> v & 1:
            raise GraphParseError(f"重复边: {line!r}", lineno)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        seen += 1
    if seen != m:
        raise GraphParseError(f"表头声明 {m} 条边，实际读到 {seen} 条", 1)
    return Graph(n, tuple(rows))


def write_graph(g: Graph) -> str:
    """规范形式：表头 + 字典序的边"""
    parts = [f"{g.n} {g.edge_count}\n"]
    parts.extend(f"{u} {v}\n" for u, v in g.edges())
    return "".join(parts)


def load_graph(path: str) -> Graph:
    with open(path, "rb") as f:
        data = f.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise GraphParseError(f"文件不是合法的 UTF-8: {e.reason}", data[:e.start].count(b"\n") + 1)
    return read_graph(text)


def save_graph(g: Graph, path: str):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(write_graph(g))

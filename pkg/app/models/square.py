"""诱导四圈（方块）与方块图的数据结构"""
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Tuple

from app.core.exceptions import InvariantViolation


class Diagonal(NamedTuple):
    """一对不相邻的顶点，a < b"""
    a: int
    b: int

    @property
    def mask(self) -> int:
        return (1 << self.a) | (1 << self.b)


ComponentId = Diagonal  # 分量以其包含的最小对角线为标识


class Square(NamedTuple):
    """诱导四圈，由两条顶点不交的对角线描述；first.a < second.a

    规范键就是元组本身 (first.a, first.b, second.a, second.b)。
    """
    first: Diagonal
    second: Diagonal

    @property
    def support(self) -> int:
        return self.first.mask | self.second.mask

    def vertices(self) -> Tuple[int, int, int, int]:
        return (self.first.a, self.first.b, self.second.a, self.second.b)

    def check(self, rows) -> None:
        """校验类型不变量：两条对角线是非边，四条交叉点对都是边"""
        (a, b), (c, d) = self.first, self.second
        if not (a < b and c < d and a < c and len({a, b, c, d}) == 4):
            raise InvariantViolation(f"方块顶点不规范: {self}")
        if rows[a] >> b & 1 or rows[c] >> d & 1:
            raise InvariantViolation(f"方块的对角线是边: {self}")
        for x in (a, b):
            for y in (c, d):
                if not rows[x] >> y & 1:
                    raise InvariantViolation(f"方块缺少边 ({x}, {y}): {self}")


@dataclass(frozen=True)
class SquareComponent:
    """方块图的一个连通分量"""
    id: ComponentId
    support: int  # 顶点掩码
    square_count: int
    diagonals: Tuple[Diagonal, ...]

    @property
    def support_size(self) -> int:
        return self.support.bit_count()


@dataclass(frozen=True)
class SquareComplex:
    """一张图的全部诱导四圈及方块图的分量结构"""
    n: int
    squares: List[Square]
    components: Tuple[SquareComponent, ...]  # 按 id 排序
    component_of: Dict[Diagonal, ComponentId] = field(repr=False)

    def component(self, component_id: ComponentId) -> SquareComponent:
        for comp in self.components:
            if comp.id == tuple(component_id):
                return comp
        raise KeyError(component_id)

    def squares_of(self, component_id: ComponentId) -> List[Square]:
        """分量中的方块，按规范键升序"""
        cid = Diagonal(*component_id)
        return [s for s in self.squares if self.component_of[s.first] == cid]

    @property
    def largest_support(self) -> int:
        return max((c.support_size for c in self.components), default=0)

"""异常定义

CLI 在一个地方把这些异常映射为退出码（见 app/cli/__init__.py）。
"""
from typing import Optional


class AscfsError(Exception):
    """所有业务异常的基类"""


class GraphInputError(AscfsError, ValueError):
    """输入错误：顶点越界、参数非法等"""


class GraphParseError(GraphInputError):
    """图文本格式解析错误，附带出错行号（从 1 开始）"""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message if line is None else f"第 {line} 行: {message}")
        self.message = message
        self.line = line

    def __reduce__(self):
        # 跨进程传递时保留行号
        return (GraphParseError, (self.message, self.line))


class DomainError(AscfsError, ValueError):
    """解析公式的定义域错误（例如 n < 2 时 log n 非正）"""


class ResourceLimitError(AscfsError):
    """资源超限：邻接矩阵超出内存上限"""


class InvariantViolation(AscfsError):
    """内部不变量被破坏（AS ⇒ CFS 交叉校验、建造顺序谓词等），零容忍"""

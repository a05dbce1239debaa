"""子命令共用的退出码与参数类型"""
import argparse
import sys
from contextlib import contextmanager

EXIT_OK = 0
EXIT_PROPERTY_FALSE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_INVARIANT = 4


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"必须为正整数: {text}")
    return value


def add_memory_cap(parser: argparse.ArgumentParser):
    parser.add_argument("--memory-cap", type=positive_int, default=None,
                        help="邻接矩阵内存上限（字节），默认取 MEMORY_CAP_BYTES")


@contextmanager
def open_output(path: str):
    """'-' 表示标准输出"""
    if path == "-":
        yield sys.stdout
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            yield f

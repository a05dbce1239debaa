"""命令行入口：子命令注册与退出码映射

退出码:
    0  成功 / 性质成立
    1  性质不成立（check）
    2  用法或解析错误
    3  资源超限（部分结果已写出）
    4  内部不变量被破坏
"""
import argparse
import logging
import time
from typing import List, Optional

from pydantic import ValidationError

from app.cli import check, gen, sweep, thresholds
from app.cli.common import EXIT_INVARIANT, EXIT_RESOURCE, EXIT_USAGE
from app.core.config import settings
from app.core.exceptions import InvariantViolation, ResourceLimitError

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=settings.APP_NAME,
        description="AS / CFS 判定与随机图阈值实验",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in (gen, check, sweep, thresholds):
        module.add_parser(subparsers)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """解析参数并执行子命令，返回退出码"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse 在用法错误时以 2 退出，--help 以 0 退出
        return int(e.code or 0)

    start_time = time.time()
    logger.debug(f"[CLI] {args.command} 开始")
    try:
        code = args.func(args)
        logger.debug(f"[CLI] {args.command} 完成，退出码 {code}，耗时 {time.time() - start_time:.3f}秒")
        return code
    except ResourceLimitError as e:
        logger.error(f"[CLI] 资源超限: {e}")
        return EXIT_RESOURCE
    except InvariantViolation as e:
        logger.error(f"[CLI] 内部不变量被破坏: {e}", exc_info=True)
        return EXIT_INVARIANT
    except (ValidationError, ValueError, OSError) as e:
        logger.error(f"[CLI] 输入错误: {e}")
        return EXIT_USAGE

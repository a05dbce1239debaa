"""
ascfs
AS / CFS 判定与随机图阈值实验的命令行入口
子命令: gen, check, sweep, thresholds
"""
import logging
import logging.handlers
import os
import sys

from app.core.config import settings


def setup_logging():
    """日志输出到标准错误（标准输出留给机器可读结果），LOG_DIR 非空时同时写入滚动文件"""
    handlers = [logging.StreamHandler(sys.stderr)]
    if settings.LOG_DIR:
        log_dir = settings.LOG_DIR
        if not os.path.isabs(log_dir):
            log_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), log_dir)
        os.makedirs(log_dir, exist_ok=True)
        handlers.append(logging.handlers.RotatingFileHandler(
            os.path.join(log_dir, 'app.log'),
            maxBytes=10 * 1024 * 1024,  # 10MB
            backupCount=5,
            encoding='utf-8'
        ))

    logging.basicConfig(
        level=logging.DEBUG if settings.DEBUG else settings.LOG_LEVEL,
        format='%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S',
        handlers=handlers,
    )


def main() -> int:
    setup_logging()
    from app.cli import run
    return run()


if __name__ == "__main__":
    sys.exit(main())

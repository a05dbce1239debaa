"""thresholds：打印给定 n 的各阈值"""
import argparse

from app.cli.common import EXIT_OK
from app.service.analytic_service import AnalyticService


def add_parser(subparsers):
    parser = subparsers.add_parser("thresholds", help="打印五条阈值曲线在 n 处的取值")
    parser.add_argument("--n", type=int, required=True)
    parser.set_defaults(func=handle)


def format_table(n: int) -> str:
    rows = AnalyticService().threshold_table(n)
    return "".join(f"{row['kind']:<16}{row['value']:.6g}\n" for row in rows)


def handle(args: argparse.Namespace) -> int:
    print(format_table(args.n), end="")
    return EXIT_OK

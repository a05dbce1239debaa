"""check：判定单张图的性质"""
import argparse
import json
import logging
from typing import Dict

from app.cli.common import EXIT_OK, EXIT_PROPERTY_FALSE
from app.models.graph import load_graph
from app.service.classify_service import ClassifyService

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def add_parser(subparsers):
    parser = subparsers.add_parser("check", help="判定图文件的 AS / CFS / 联 / Coxeter 标签")
    parser.add_argument("--in", dest="path", required=True, help="图文件")
    parser.add_argument("--property", choices=ClassifyService.PROPERTIES, required=True)
    parser.add_argument("--json", action="store_true", help="输出单行 JSON")
    parser.add_argument("--count-good-blocks", action="store_true",
                        help="同时统计见证 AS 的块数（仅 --property as）")
    parser.set_defaults(func=handle)


def _format_text(prop: str, report: Dict) -> str:
    lines = [f"property: {prop}"]
    for key, value in report.items():
        if isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, dict):
            value = " ".join(f"{k}={v}" for k, v in value.items())
        elif value is None:
            value = "-"
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def handle(args: argparse.Namespace) -> int:
    g = load_graph(args.path)
    prop = args.property
    report = ClassifyService().check(prop, g, count_good=args.count_good_blocks)

    if args.json:
        print(json.dumps({"schema_version": SCHEMA_VERSION, "property": prop, **report},
                         ensure_ascii=False))
    else:
        print(_format_text(prop, report))
    logger.info(f"[CLI] check {prop} {args.path}: {report.get('verdict', report.get('label'))}")

    if prop == "coxeter" or report["verdict"]:
        return EXIT_OK
    return EXIT_PROPERTY_FALSE

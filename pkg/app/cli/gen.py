"""gen：生成 G(n, p) 并写出图文件"""
import argparse
import logging
import sys

from app.cli.common import EXIT_OK, add_memory_cap, open_output
from app.core.exceptions import GraphInputError
from app.models.graph import GenSpec, write_graph
from app.models.schemas import DensityRule
from app.service.analytic_service import density
from app.service.graph_service import GraphService

logger = logging.getLogger(__name__)


def add_parser(subparsers):
    parser = subparsers.add_parser("gen", help="生成随机图 G(n, p)")
    parser.add_argument("--n", type=int, required=True, help="顶点数")
    parser.add_argument("--p", type=float, default=None, help="边概率")
    parser.add_argument("--alpha", type=float, default=None, help="与 --rule 一起换算出 p")
    parser.add_argument("--rule", choices=[r.value for r in DensityRule], default=None)
    parser.add_argument("--seed", type=int, default=0, help="64 位种子")
    parser.add_argument("--out", default="-", help="输出文件，默认标准输出")
    add_memory_cap(parser)
    parser.set_defaults(func=handle)


def resolve_p(args: argparse.Namespace) -> float:
    """--p 与 (--alpha, --rule) 必须恰好给出一组"""
    by_alpha = args.alpha is not None or args.rule is not None
    if (args.p is None) == (not by_alpha):
        raise GraphInputError("必须且只能给出 --p 或 --alpha/--rule 之一")
    if args.p is not None:
        return args.p
    if args.alpha is None or args.rule is None:
        raise GraphInputError("--alpha 与 --rule 必须同时给出")
    return density(args.rule, args.n, args.alpha)


def handle(args: argparse.Namespace) -> int:
    p = resolve_p(args)
    spec = GenSpec(n=args.n, p=p, seed=args.seed)
    print(f"p = {p!r}", file=sys.stderr)
    g = GraphService(args.memory_cap).generate_gnp(spec)
    with open_output(args.out) as f:
        f.write(write_graph(g))
    logger.info(f"[CLI] 生成 G({spec.n}, {spec.p:.6g}) seed={spec.seed}，{g.edge_count} 条边")
    return EXIT_OK

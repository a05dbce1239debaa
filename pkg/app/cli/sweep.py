"""sweep：按配置运行网格扫描并输出 CSV"""
import argparse
import logging
import sys

from app.cli.common import EXIT_OK, add_memory_cap, positive_int
from app.core.config import settings
from app.core.exceptions import GraphInputError
from app.models.schemas import DensityRule, MetricFlag, SweepConfig, SweepProperty
from app.service.sweep_service import PRESETS, SweepService, preset

logger = logging.getLogger(__name__)


def add_parser(subparsers):
    parser = subparsers.add_parser("sweep", help="蒙特卡洛网格扫描")
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--config", help="JSON 配置文件，键名与 SweepConfig 字段一致")
    source.add_argument("--preset", choices=sorted(PRESETS), help="预设网格")
    parser.add_argument("--property", choices=[p.value for p in SweepProperty], type=str.upper)
    parser.add_argument("--rule", choices=[r.value for r in DensityRule])
    parser.add_argument("--n", dest="n_values", type=int, nargs="+")
    parser.add_argument("--alpha", dest="alpha_values", type=float, nargs="+")
    parser.add_argument("--trials", type=positive_int, default=None)
    parser.add_argument("--seed", type=int, default=None, help="base_seed")
    parser.add_argument("--metrics", nargs="*", choices=[m.value for m in MetricFlag], default=None)
    parser.add_argument("--out", default="-", help="CSV 输出文件，默认标准输出")
    parser.add_argument("--threads", type=positive_int, default=None,
                        help="并行进程数，默认取 ASCFS_THREADS 或 CPU 核数")
    parser.add_argument("--no-progress", action="store_true", help="不显示进度条")
    add_memory_cap(parser)
    parser.set_defaults(func=handle)


def build_config(args: argparse.Namespace) -> SweepConfig:
    """--config / --preset / 行内参数三选一，行内的 --trials、--seed 可覆盖前两者"""
    if args.config:
        with open(args.config, "r", encoding="utf-8") as f:
            config = SweepConfig.model_validate_json(f.read())
    elif args.preset:
        config = preset(args.preset)
    else:
        missing = [flag for flag, value in (("--property", args.property), ("--rule", args.rule),
                                            ("--n", args.n_values), ("--alpha", args.alpha_values))
                   if value is None]
        if missing:
            raise GraphInputError(f"缺少参数: {', '.join(missing)}")
        config = SweepConfig(
            property=args.property,
            density_rule=args.rule,
            n_values=args.n_values,
            alpha_values=args.alpha_values,
            trials_per_cell=settings.DEFAULT_TRIALS,
            metrics=args.metrics or [],
        )

    overrides = {}
    if args.trials is not None:
        overrides["trials_per_cell"] = args.trials
    if args.seed is not None:
        overrides["base_seed"] = args.seed
    if overrides:
        config = SweepConfig(**{**config.model_dump(), **overrides})
    return config


def handle(args: argparse.Namespace) -> int:
    config = build_config(args)
    service = SweepService(threads=args.threads, memory_cap_bytes=args.memory_cap,
                           progress=not args.no_progress)
    out = sys.stdout if args.out == "-" else args.out
    written = service.write_csv(service.iter_sweep(config), out)
    logger.info(f"[CLI] sweep 写出 {written} 行到 {args.out}")
    return EXIT_OK

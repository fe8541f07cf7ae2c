#!/usr/bin/env python3
"""
calib-geo - 命令行入口
====================

构造、列出并数值验证共形度量下的标定对 (f, g)

使用方法:
    calib-geo list
    calib-geo verify astroid --competitors 100 --seed 42
    calib-geo trace brachistochrone --start 0.1585,-0.4597 --dir 1 --step 0.01 --out arc.csv
    calib-geo length --entry grim-reaper --curve reaper_arc.csv
    calib-geo plot log-spiral --competitors 20 --out spiral.svg
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from pydantic import ValidationError

from calib_geo.config.config import Config
from calib_geo.errors import CalibGeoError, UnknownEntry
from calib_geo.models.models import CliConfig
from calib_geo.services.verification_service import VerificationService
from calib_geo.tools.curves import curve_length, trace_entry
from calib_geo.tools.plotting import plot_entry
from calib_geo.tools.verification import list_entries, verify_entry

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


class _UsageError(Exception):
    """参数错误"""


class _ParserExit(Exception):
    def __init__(self, status: int):
        super().__init__(status)
        self.status = status


class _Parser(argparse.ArgumentParser):
    """出错时抛异常, 由 run 统一决定退出码"""
    def error(self, message: str):
        raise _UsageError(message)

    def exit(self, status: int = 0, message: Optional[str] = None):
        if message:
            sys.stderr.write(message)
        raise _ParserExit(status)


def _point(text: str) -> Tuple[float, float]:
    """解析 "x,y" """
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"坐标格式应为 x,y: {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"坐标格式应为 x,y: {text!r}") from exc


def _join_start(argv: Sequence[str]) -> List[str]:
    """把 "--start x,y" 合并为 "--start=x,y", 使负坐标不被当作选项"""
    args: List[str] = []
    tokens = iter(argv)
    for token in tokens:
        value = next(tokens, None) if token == "--start" else None
        args.append(token if value is None else f"--start={value}")
    return args


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="calib-geo", description="共形度量标定对的构造与验证")
    parser.add_argument("subcommand", choices=["list", "verify", "trace", "length", "plot"],
                        help="子命令")
    parser.add_argument("entry_name", nargs="?", default="", help="条目名称 (也可用 --entry)")
    parser.add_argument("--entry", default="", help="条目名称")
    parser.add_argument("--competitors", type=int, default=None, help="竞争曲线数 (verify 默认 100)")
    parser.add_argument("--seed", type=int, default=42, help="随机种子")
    parser.add_argument("--tol-len", type=float, default=None, help="长度相对阈值")
    parser.add_argument("--tol-orth", type=float, default=None, help="正交残差阈值")
    parser.add_argument("--tol-rho", type=float, default=None, help="密度相对误差阈值")
    parser.add_argument("--samples", type=int, default=None, help="假设检查的采样点数")
    parser.add_argument("--start", type=_point, default=None, help="追踪起点 x,y")
    parser.add_argument("--dir", type=int, choices=[-1, 1], default=1, help="追踪方向")
    parser.add_argument("--step", type=float, default=1e-2, help="追踪步长")
    parser.add_argument("--max-steps", type=int, default=10000, help="追踪最大步数")
    parser.add_argument("--curve", default="", help="曲线 CSV 路径")
    parser.add_argument("--out", default="", help="输出路径")
    parser.add_argument("--width", type=int, default=800, help="SVG 宽度 (像素)")
    parser.add_argument("--height", type=int, default=600, help="SVG 高度 (像素)")
    parser.add_argument("--debug", action="store_true", help="启用调试日志")
    return parser


def _parse(argv: Sequence[str]) -> Tuple[CliConfig, bool]:
    parser = build_parser()
    args = parser.parse_args(_join_start(argv))
    if args.entry_name and args.entry and args.entry_name != args.entry:
        raise _UsageError("位置参数与 --entry 给出的条目不一致")
    default_competitors = 100 if args.subcommand == "verify" else 0
    cli = CliConfig(
        subcommand=args.subcommand,
        entry=args.entry or args.entry_name,
        competitors=default_competitors if args.competitors is None else args.competitors,
        seed=args.seed,
        tol_len=args.tol_len,
        tol_orth=args.tol_orth,
        tol_rho=args.tol_rho,
        samples=args.samples,
        start=args.start,
        direction=args.dir,
        step=args.step,
        max_steps=args.max_steps,
        curve=args.curve,
        out=args.out,
        width=args.width,
        height=args.height,
    )
    return cli, args.debug


def _dispatch(cli: CliConfig, config: Config) -> int:
    service = VerificationService(config)
    if cli.subcommand == "list":
        for name in list_entries():
            print(name)
        return EXIT_OK

    if cli.subcommand == "verify":
        report = verify_entry(
            cli.entry,
            competitors=cli.competitors,
            seed=cli.seed,
            tolerances=cli.tolerances(config.quad_rel_tol),
            n_samples=cli.samples,
            service=service,
        )
        text = report.to_json()
        if cli.out:
            Path(cli.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return EXIT_OK if report.passed else EXIT_FAILED

    if cli.subcommand == "trace":
        trace_entry(cli.entry, cli.out, cli.start, cli.direction, cli.step, cli.max_steps)
        return EXIT_OK

    if cli.subcommand == "length":
        result = curve_length(cli.entry, cli.curve, config.quad_rel_tol)
        print(f"{result.weighted_length:.15g}")
        return EXIT_OK

    plot_entry(cli.entry, cli.out, cli.competitors, cli.seed, cli.width, cli.height, service)
    return EXIT_OK


def run(argv: Sequence[str]) -> int:
    """执行命令并返回退出码: 0 成功, 1 验证未通过, 2 参数错误, 3 数值错误"""
    parser = build_parser()
    try:
        cli, debug = _parse(argv)
    except _ParserExit as exc:
        return exc.status
    except (_UsageError, ValidationError) as exc:
        sys.stderr.write(parser.format_usage())
        sys.stderr.write(f"calib-geo: error: {exc}\n")
        return EXIT_USAGE

    try:
        config = Config()
    except ValueError as exc:
        sys.stderr.write(f"calib-geo: error: 配置无效: {exc}\n")
        return EXIT_USAGE
    # 命令行参数覆盖配置中的日志级别
    if debug or config.debug_mode:
        logging.getLogger().setLevel(logging.DEBUG)
    logger.debug("配置: %s", config.as_dict())

    try:
        return _dispatch(cli, config)
    except UnknownEntry as exc:
        sys.stderr.write(f"UnknownEntry: {exc}\n")
        return EXIT_USAGE
    except CalibGeoError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_NUMERICAL
    except (OSError, ValueError) as exc:
        # 输入文件缺失或格式错误
        sys.stderr.write(parser.format_usage())
        sys.stderr.write(f"calib-geo: error: {exc}\n")
        return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> None:
    """主程序入口"""
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()

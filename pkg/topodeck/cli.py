#!/usr/bin/env python3
"""
topodeck 命令行

子命令：enumerate、deck、props、audit、verify、reconstruct、oracle。
退出码：0 成功，1 读写失败，2 输入错误，3 定理验证失败。
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional

from rich.console import Console
from rich.logging import RichHandler

from topodeck import __version__
from topodeck.audit import run_audit, theorem_suite
from topodeck.canon import canonical_key
from topodeck.config import RunConfig, load_settings
from topodeck.deck import deck_document, is_reconstructible, reconstructions
from topodeck.enumeration import enumerate_upto_homeo, oracle_class_keys, oracle_labeled_count
from topodeck.errors import CatalogError, ScaleUnsupported, SpaceValidationError, StorageError
from topodeck.properties import compute_properties
from topodeck.storage import dump_document, read_catalog, read_space, write_catalog, write_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_IO = 1
EXIT_INPUT = 2
EXIT_VERIFY = 3


def configure_logging(verbosity: str) -> None:
    """日志写到标准错误，标准输出只留给结果"""
    level = {"quiet": logging.WARNING, "debug": logging.DEBUG}.get(verbosity, logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=verbosity == "debug")],
        force=True,
    )


class TopoDeckApp:
    """命令处理类，每个子命令对应一个 cmd_* 方法"""

    def __init__(self, config: RunConfig):
        self.config = config
        self.handlers: Dict[str, Callable[[], int]] = {
            "enumerate": self.cmd_enumerate,
            "deck": self.cmd_deck,
            "props": self.cmd_props,
            "audit": self.cmd_audit,
            "verify": self.cmd_verify,
            "reconstruct": self.cmd_reconstruct,
            "oracle": self.cmd_oracle,
        }

    def cmd_enumerate(self) -> int:
        """枚举 n 点拓扑并写出 JSONL 目录"""
        cfg = self.config
        catalog = enumerate_upto_homeo(cfg.n, workers=cfg.workers, allow_stretch=cfg.stretch)
        out = cfg.out or f"catalog_n{cfg.n}.jsonl"
        write_catalog(catalog, out)
        print(f"n={cfg.n}: {catalog.count} 个同胚类 -> {out}")
        return EXIT_OK

    def cmd_deck(self) -> int:
        """输出空间的卡组与多重卡组"""
        space = read_space(self.config.space)
        print(dump_document(deck_document(space)))
        return EXIT_OK

    def cmd_props(self) -> int:
        """输出空间的不变量向量"""
        space = read_space(self.config.space)
        print(dump_document(compute_properties(space)))
        return EXIT_OK

    def cmd_audit(self) -> int:
        """对目录做完整的重构审计"""
        cfg = self.config
        catalog = read_catalog(cfg.catalog)
        report = run_audit(catalog, cfg.mode, cfg.workers)
        text = write_report(report, cfg.report)
        if cfg.report is None:
            print(text)
        else:
            print(f"n={report.n} {report.mode}: {len(report.collisions)} 个碰撞类"
                  + ("（n=2 退化情形）" if report.degenerate else ""))
        return EXIT_OK

    def cmd_verify(self) -> int:
        """运行定理套件；任一已证明定理的检查失败时退出码为 3"""
        cfg = self.config
        catalog = read_catalog(cfg.catalog)
        suite = theorem_suite(catalog, cfg.workers)
        text = write_report(suite, cfg.report)
        if cfg.report is None:
            print(text)
        if not suite.passed:
            failed = [c for c, status in suite.theorems.items() if status == "fail"]
            print(f"定理检查失败: {', '.join(failed)}", file=sys.stderr)
            return EXIT_VERIFY
        return EXIT_OK

    def cmd_reconstruct(self) -> int:
        """列出目录中与给定空间卡组相同的空间"""
        cfg = self.config
        space = read_space(cfg.space)
        catalog = read_catalog(cfg.catalog)
        found = reconstructions(space, catalog, cfg.mode)
        print(dump_document({
            "key": canonical_key(space).hex(),
            "mode": cfg.mode,
            "reconstructions": [k.hex() for k in found],
            "reconstructible": is_reconstructible(space, catalog, cfg.mode),
        }))
        return EXIT_OK

    def cmd_oracle(self) -> int:
        """带标号预序的计数及其同胚类数"""
        cfg = self.config
        print(dump_document({
            "n": cfg.n,
            "labeled": oracle_labeled_count(cfg.n, cfg.workers),
            "classes": len(oracle_class_keys(cfg.n, cfg.workers)),
        }))
        return EXIT_OK

    def run(self) -> int:
        try:
            return self.handlers[self.config.command]()
        except (ScaleUnsupported, SpaceValidationError, CatalogError) as e:
            print(str(e), file=sys.stderr)
            return EXIT_INPUT
        except StorageError as e:
            print(str(e), file=sys.stderr)
            return EXIT_IO


def build_parser() -> argparse.ArgumentParser:
    """构造参数解析器；环境变量给出默认值"""
    settings = load_settings()

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=settings.workers,
                        help=f"工作进程数 (默认: {settings.workers}，环境变量 TOPODECK_WORKERS)")
    common.add_argument("--quiet", action="store_true", default=settings.quiet, help="只输出警告和错误")
    common.add_argument("--debug", action="store_true", default=settings.debug, help="输出调试日志")

    parser = argparse.ArgumentParser(prog="topodeck", description="有限拓扑空间的卡组重构分析")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="枚举 n 点拓扑的同胚类并写出目录")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", help="输出的 JSONL 目录路径（默认 catalog_n<N>.jsonl）")
    p.add_argument("--stretch", action="store_true", help="允许 n=8")

    for name, text in (("deck", "输出空间的卡组与多重卡组"), ("props", "输出空间的不变量向量")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("space", help="空间 JSON 文件")

    p = sub.add_parser("audit", parents=[common], help="对目录做重构审计")
    p.add_argument("--catalog", required=True)
    p.add_argument("--mode", choices=["set", "multi"], default="set")
    p.add_argument("--report", help="报告输出路径（默认输出到标准输出）")

    p = sub.add_parser("verify", parents=[common], help="在目录上运行定理验证套件")
    p.add_argument("--catalog", required=True)
    p.add_argument("--report")

    p = sub.add_parser("reconstruct", parents=[common], help="在目录中查找空间的重构")
    p.add_argument("space")
    p.add_argument("--catalog", required=True)
    p.add_argument("--mode", choices=["set", "multi"], default="set")

    p = sub.add_parser("oracle", parents=[common], help="带标号预序计数（n ≤ 5）")
    p.add_argument("--n", type=int, required=True)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    verbosity = "debug" if args.debug else "quiet" if args.quiet else "info"
    return RunConfig(
        command=args.command,
        n=getattr(args, "n", None),
        out=getattr(args, "out", None),
        catalog=getattr(args, "catalog", None),
        space=getattr(args, "space", None),
        report=getattr(args, "report", None),
        mode=getattr(args, "mode", "set"),
        workers=max(1, args.workers),
        verbosity=verbosity,
        stretch=getattr(args, "stretch", False),
    )


def main(argv: Optional[List[str]] = None) -> int:
    """主函数，解析命令行参数并执行子命令"""
    parser = build_parser()
    args = parser.parse_args(argv)
    config = config_from_args(args)
    configure_logging(config.verbosity)
    logger.debug("运行配置: %s", config)
    return TopoDeckApp(config).run()


if __name__ == "__main__":
    sys.exit(main())

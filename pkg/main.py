#!/usr/bin/env python3
"""
Singlet Distillation 1.0
Fourier 多端口中玻色子的精确模拟与广义单态蒸馏工具
"""

# ============================================================================
# main.py - 主入口文件
# ============================================================================

import argparse
import logging
import sys
from typing import List, Optional

from singlet_distillation.analysis.suppression import suppression_table
from singlet_distillation.analysis.verification import VerificationSuite
from singlet_distillation.config import ConfigManager
from singlet_distillation.config.settings import (NOISE_MODELS,
                                                  OUTPUT_FORMATS,
                                                  PHASE_MODELS,
                                                  VERIFY_LEVELS)
from singlet_distillation.pipeline import DistillationPipeline
from singlet_distillation.scenarios import SCENARIOS, ScenarioConfig
from singlet_distillation.utils import LogManager, load_unitary

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ZERO_PROBABILITY = 2


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """解析命令行参数"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, help="配置文件路径")
    common.add_argument("--verbose", "-v", action="store_true", help="输出详细日志信息")

    parser = argparse.ArgumentParser(
        description="Singlet Distillation - Fourier 多端口广义单态蒸馏模拟",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
使用示例:
  python main.py run --scenario depolarized --n 3            # ρ_dep, p_s = 1/27
  python main.py run --scenario product --n 4 --format csv   # p_s = 1/24
  python main.py run --scenario shortcut-pure                # |A_2⟩⊗|2⟩, p_s = 1/3
  python main.py run --scenario custom --input state.json    # 自定义态或系综文件
  python main.py suppress --n 3                              # 抑制律表
  python main.py verify --level full                         # 全部不变量自检
        """,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    # run
    run = subparsers.add_parser("run", parents=[common], help="运行命名场景或自定义输入")
    run.add_argument("--scenario", "-s", choices=SCENARIOS, default="depolarized", help="场景 (默认: depolarized)")
    run.add_argument("--n", type=int, help="粒子数 N (默认: 3; custom 场景取自文件)")
    run.add_argument("--input", "-i", type=str, help="custom 场景的态/系综 JSON 文件")
    run.add_argument("--start-j", type=int, help="起始 Fourier 端口大小 (捷径场景默认 3)")
    run.add_argument("--seed", type=int, help="噪声与随机相位种子")
    run.add_argument("--noise", choices=NOISE_MODELS, help="去极化前的无损噪声模型")
    run.add_argument("--phases", choices=PHASE_MODELS, help="每个 Fourier 端口的随机输入/输出相位")
    run.add_argument("--out", "-o", type=str, help="报告输出文件 (默认: 标准输出)")
    run.add_argument("--format", "-f", choices=OUTPUT_FORMATS, help="报告格式 (默认: json)")
    run.add_argument("--parallel", action="store_true", help="对系综分量并行计算")

    # suppress
    suppress = subparsers.add_parser("suppress", parents=[common], help="打印抑制律表")
    suppress.add_argument("--n", type=int, default=3, help="粒子数 = 模式数 (默认: 3)")
    suppress.add_argument("--unitary", "-u", type=str, help="替代 U_N 的多端口矩阵 JSON 文件")
    suppress.add_argument("--format", "-f", choices=OUTPUT_FORMATS, help="表格输出为 CSV 时用 csv")

    # verify
    verify = subparsers.add_parser("verify", parents=[common], help="运行不变量自检")
    verify.add_argument("--level", choices=VERIFY_LEVELS, help="quick: N ≤ 3; full: N ≤ 4 及 N = 5 抽样")
    verify.add_argument("--seed", type=int, help="自检随机种子")

    return parser.parse_args(argv)


def scenario_from_args(args: argparse.Namespace, config: ConfigManager) -> ScenarioConfig:
    """命令行参数与配置文件合并为 ScenarioConfig"""
    return ScenarioConfig(
        scenario=args.scenario,
        n=args.n,
        input_path=args.input,
        start_j=args.start_j,
        seed=config.noise.seed,
        noise=config.noise.model,
        phases=config.noise.phases,
        out=config.output.out,
        format=config.output.format,
        parallel=config.protocol.enable_parallel,
    )


def cmd_run(scenario: ScenarioConfig, config: ConfigManager) -> int:
    """运行一个场景; 成功概率为零时返回 2"""
    report = DistillationPipeline(scenario, config).run()
    if not report.succeeded:
        logging.warning("协议未产生输出 (成功概率为零)")
        return EXIT_ZERO_PROBABILITY
    return EXIT_OK


def cmd_suppress(
    n: int, config: ConfigManager, unitary_path: Optional[str] = None, fmt: Optional[str] = None
) -> int:
    """打印 N 粒子 N 模式的抑制律表, N ≤ crosscheck_max_n 时与精确振幅对照"""
    settings = config.suppress
    if not 2 <= n <= settings.max_n:
        logging.error(f"suppress 要求 2 ≤ N ≤ {settings.max_n}, 得到 N={n}")
        return EXIT_ERROR

    multiport = load_unitary(unitary_path) if unitary_path else None
    crosscheck = n <= settings.crosscheck_max_n
    table = suppression_table(n, crosscheck, multiport, settings.amplitude_tol)

    if fmt == "csv":
        sys.stdout.write(table.to_csv(index=False, lineterminator="\n"))
    else:
        sys.stdout.write(table.to_string(index=False) + "\n")

    if crosscheck and not table["consistent"].all():
        bad = table[~table["consistent"]].iloc[0]
        logging.error(f"抑制律与精确振幅矛盾: 类 {bad['class']}, 输出 {bad['output']}")
        return EXIT_ERROR
    return EXIT_OK


def cmd_verify(level: str, config: ConfigManager) -> int:
    """运行自检, 在第一个失败处停止并给出检查名"""
    suite = VerificationSuite(level, config.verify, config.tolerance)
    results = suite.run(show_progress=config.protocol.show_progress)

    for result in results:
        status = "通过" if result.passed else "失败"
        print(f"[{status}] {result.name:<26} {result.seconds:7.2f}s  {result.detail}")

    failed = [r for r in results if not r.passed]
    if failed:
        print(f"FAILED: {failed[0].name}")
        return EXIT_ERROR
    print(f"全部 {len(results)} 项检查通过 (level={level})")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """主函数 - 解析参数、加载配置并分派子命令"""
    args = None
    try:
        try:
            args = parse_arguments(argv)
        except SystemExit as e:
            # argparse 的用法错误退出码 2 与 "成功概率为零" 冲突
            return EXIT_OK if e.code in (0, None) else EXIT_ERROR

        config = ConfigManager(args.config)
        config.update_from_args(args)

        log_manager = LogManager(config)
        print_startup_banner()
        if args.verbose:
            log_manager.log_system_info()

        if args.command == "run":
            return cmd_run(scenario_from_args(args, config), config)
        if args.command == "suppress":
            return cmd_suppress(args.n, config, args.unitary, args.format)
        return cmd_verify(config.verify.level, config)

    except KeyboardInterrupt:
        logging.info("用户中断程序执行")
        return EXIT_ERROR
    except Exception as e:
        logging.error(f"程序执行失败: {e}")
        if args is not None and getattr(args, "verbose", False):
            import traceback

            logging.error(traceback.format_exc())
        return EXIT_ERROR


def print_startup_banner():
    """显示启动横幅 (写到标准错误, 标准输出留给报告)"""
    banner = """
╔══════════════════════════════════════════════════════════════════════════════╗
║                          Singlet Distillation 1.0                            ║
║                  Fourier 多端口中玻色子广义单态的概率性蒸馏                   ║
╚══════════════════════════════════════════════════════════════════════════════╝
    """
    print(banner, file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""
扭 Laurent 级数工作台
主要功能：
1. 表达式求值与规范输出
2. 中心判定、群序比较、γ 系数见证
3. 有限维特化代数的中心化子与范数
4. 可复现的验证套件
"""
import json
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import click
from colorama import Fore, Style, init
from tabulate import tabulate

from config import Config, RuntimeSettings
from errors import BadArguments, InvariantViolation, MnforgeError
from expr_parser import eval_text, format_series, parse_word
from field_tower import PrimeTable
from finite_algebra import AlgebraElem, AlgebraParams, alg_centralizer_dimension, alg_norm
from twisted_series import gamma_witness, sr_commutation_window_test, sr_is_central
from verification import SuiteContext, SuiteRunner, resolve_suites
from verification.storage import JSONLinesReport

# 初始化colorama
init()

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
RAW_ARGS = {'ignore_unknown_options': True}

logger = logging.getLogger(__name__)


def setup_logging(settings: RuntimeSettings):
    """设置日志：只写 stderr（和可选的日志文件），stdout 留给报告"""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if settings.log_file:
        handlers.append(logging.FileHandler(settings.log_file))
    level = getattr(logging, settings.log_level.upper(), None)
    if not isinstance(level, int):
        raise BadArguments(f"unknown log level {settings.log_level!r}")
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)


@dataclass
class CommandResult:
    """一次命令执行的结果：规范文本与结构化记录（截断值只有记录是无损的）"""

    status: str
    text: str = ''
    record: Dict[str, Any] = field(default_factory=dict)
    exit_code: int = 0
    message: str = ''


class Workbench:
    """命令上下文：有效配置、输出缓冲与结构化记录"""

    def __init__(self, color: bool = False):
        self.color = color
        self.settings: Optional[RuntimeSettings] = None
        self.table: Optional[PrimeTable] = None
        self.lines: List[str] = []
        self.record: Dict[str, Any] = {}
        self.exit_code = 0

    def emit(self, text: str = ''):
        self.lines.append(text)

    def paint(self, text: str, color: str) -> str:
        return f"{color}{text}{Style.RESET_ALL}" if self.color else text


def _parse_rationals(raw: str) -> List[Fraction]:
    try:
        return [Fraction(item.strip()) for item in raw.split(',') if item.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise BadArguments(f"expected comma separated rationals, got {raw!r}") from exc


def _algebra_params(n: int, a: Optional[str], b: Optional[str], table: PrimeTable) -> AlgebraParams:
    default = AlgebraParams.default(n, table)
    a_list = _parse_rationals(a) if a else default.a_list
    b_list = _parse_rationals(b) if b else default.b_list
    return AlgebraParams(n, tuple(a_list), tuple(b_list))


def _bool(value: bool) -> str:
    return 'true' if value else 'false'


@click.group()
@click.option('--primes', help='素数表覆盖，逗号分隔（默认第 i 个素数）')
@click.option('--depth', type=int, help='默认 Neumann 展开深度')
@click.option('--log-level', help='日志级别 (DEBUG/INFO/WARNING/ERROR)')
@click.pass_context
def cli(ctx, primes, depth, log_level):
    """扭 Laurent 级数工作台"""
    bench = ctx.ensure_object(Workbench)
    bench.settings = Config.runtime(primes=primes, depth=depth, log_level=log_level)
    setup_logging(bench.settings)
    bench.table = PrimeTable(bench.settings.primes)
    logger.debug("effective settings: %s", bench.settings.to_dict())


@cli.command('eval', context_settings=RAW_ARGS)
@click.argument('expr')
@click.option('--json', 'as_json', is_flag=True, help='输出结构化记录')
@click.pass_obj
def eval_command(bench: Workbench, expr, as_json):
    """求值表达式并输出规范文本"""
    value = eval_text(expr, bench.table, bench.settings.depth)
    bench.record = value.to_record()
    if as_json:
        bench.emit(json.dumps(bench.record, sort_keys=True, ensure_ascii=False))
        return
    bench.emit(format_series(value))
    if value.trunc is not None:
        bench.emit(f"truncated-depth: {value.trunc}")


@cli.command(context_settings=RAW_ARGS)
@click.argument('expr')
@click.pass_obj
def central(bench: Workbench, expr):
    """中心判定（支撑在 H 内且系数有理）与窗口交换检验"""
    value = eval_text(expr, bench.table, bench.settings.depth)
    predicate = sr_is_central(value)
    window = sr_commutation_window_test(value)
    if predicate != window:
        raise InvariantViolation(f"center predicate ({predicate}) and window test ({window}) disagree on {value}")
    bench.record = {
        'schema_version': Config.SCHEMA_VERSION,
        'kind': 'central',
        'series': value.to_record(),
        'central': predicate,
        'window': value.window,
    }
    bench.emit(f"central: {_bool(predicate)}")
    bench.emit(f"window-test: {_bool(window)} (window {value.window})")


@cli.command(context_settings=RAW_ARGS)
@click.argument('left')
@click.argument('right')
@click.pass_obj
def order(bench: Workbench, left, right):
    """比较两个群元素（字典序）"""
    x, y = parse_word(left, bench.table), parse_word(right, bench.table)
    result = x.compare(y)
    bench.record = {
        'schema_version': Config.SCHEMA_VERSION,
        'kind': 'order',
        'left': x.to_record(),
        'right': y.to_record(),
        'result': result.value,
    }
    bench.emit(result.value)


@cli.command('gamma-witness')
@click.option('--N', 'N', type=int, required=True, help='γ 的截断长度')
@click.option('--deg', type=int, required=True, help='幂次 n')
@click.pass_obj
def gamma_witness_command(bench: Workbench, N, deg):
    """γ_N^n 中 x1^-1...xn^-1 的系数（应为 n!）"""
    witness = gamma_witness(N, deg, bench.table)
    bench.record = witness.to_dict()
    bench.emit(str(witness.coefficient))
    bench.emit(f"absent-below-degree: {_bool(witness.absent_below_degree)}")


@cli.command()
@click.option('--n', 'n', type=int, required=True, help='四元数因子个数')
@click.option('--a', 'a', help='a_1..a_n，逗号分隔（默认 p_i）')
@click.option('--b', 'b', help='b_1..b_n，逗号分隔（默认 p_{n+i}）')
@click.pass_obj
def centralizer(bench: Workbench, n, a, b):
    """生成元中心化子的维数"""
    params = _algebra_params(n, a, b, bench.table)
    dimension = alg_centralizer_dimension(params)
    bench.record = {
        'schema_version': Config.SCHEMA_VERSION,
        'kind': 'centralizer',
        'params': params.to_dict(),
        'dimension': dimension,
    }
    bench.emit(str(dimension))


@cli.command(context_settings=RAW_ARGS)
@click.option('--n', 'n', type=int, required=True, help='四元数因子个数')
@click.option('--a', 'a', help='a_1..a_n，逗号分隔')
@click.option('--b', 'b', help='b_1..b_n，逗号分隔')
@click.argument('coords', nargs=-1, required=True)
@click.pass_obj
def norm(bench: Workbench, n, a, b, coords):
    """A_n 中元素的正则范数（左正则表示的行列式）"""
    params = _algebra_params(n, a, b, bench.table)
    values = [value for raw in coords for value in _parse_rationals(raw)]
    elem = AlgebraElem(params, tuple(values))
    result = alg_norm(params, elem)
    bench.record = {
        'schema_version': Config.SCHEMA_VERSION,
        'kind': 'norm',
        'element': elem.to_dict(),
        'norm': str(result),
    }
    bench.emit(str(result))


@cli.command()
@click.argument('suite')
@click.option('--seed', type=int, help='随机种子（默认 MNFORGE_SEED）')
@click.option('--trials', type=int, help='覆盖随机试验次数')
@click.option('--workers', type=int, help='试验分片线程数')
@click.option('--report', type=click.Path(dir_okay=False), help='JSON Lines 报告文件')
@click.option('--timings', is_flag=True, help='在报告中包含耗时')
@click.pass_obj
def verify(bench: Workbench, suite, seed, trials, workers, report, timings):
    """运行验证套件：field/order/series/center/gamma/algebra/herstein/all"""
    names = resolve_suites(suite)
    settings = Config.runtime(primes=bench.settings.primes, depth=bench.settings.depth,
                              log_level=bench.settings.log_level, seed=seed, trials=trials,
                              workers=workers, report_file=report)
    context = SuiteContext(table=bench.table, depth=settings.depth, seed=settings.seed, trials=settings.trials)
    writer = JSONLinesReport(Path(settings.report_file)) if settings.report_file else None
    summary = SuiteRunner(context, settings.workers, writer, timings).run(names)

    headers = ['suite', 'cases', 'failures', 'seed', 'status']
    if timings:
        headers.append('elapsed')
    rows = []
    for result in summary.results:
        color = Fore.RED if result.failures else Fore.GREEN
        row = [result.suite, result.cases, len(result.failures), result.seed,
               bench.paint(result.status.value, color)]
        if timings:
            row.append(f"{result.elapsed:.3f}s")
        rows.append(row)
    bench.emit(tabulate(rows, headers=headers, tablefmt='simple'))
    for result in summary.results:
        for failure in result.failures:
            bench.emit(f"FAIL {result.suite}/{failure.label()}: {failure.message}")
    bench.emit(f"total: {summary.total_cases} cases, {summary.total_failures} failures")
    bench.record = summary.to_dict(timings)
    bench.exit_code = 0 if summary.ok else 1


@cli.command('config-check')
@click.pass_obj
def config_check(bench: Workbench):
    """检查配置"""
    settings = bench.settings
    bench.emit('=== 配置检查 ===')
    primes = ', '.join(str(p) for p in settings.primes) if settings.primes else '默认（第 i 个素数）'
    rows = [
        ['MNFORGE_PRIMES', primes],
        ['MNFORGE_DEPTH', settings.depth],
        ['MNFORGE_TRIALS', settings.trials if settings.trials is not None else '各套件默认'],
        ['MNFORGE_SEED', settings.seed],
        ['MNFORGE_WORKERS', settings.workers],
        ['MNFORGE_LOG_LEVEL', settings.log_level],
        ['MNFORGE_LOG_FILE', settings.log_file or '未设置'],
        ['MNFORGE_REPORT_FILE', settings.report_file or '未设置'],
    ]
    bench.emit(tabulate(rows, headers=['变量', '有效值'], tablefmt='simple'))
    bench.emit(f"p_1..p_6: {', '.join(str(p) for p in bench.table.primes(6))}")
    bench.record = {'schema_version': Config.SCHEMA_VERSION, 'kind': 'config', **settings.to_dict()}


def run_command(argv: Sequence[str], color: bool = False) -> CommandResult:
    """执行一条命令并收集输出；用法错误退出码 2，领域错误退出码 1"""
    bench = Workbench(color)
    try:
        cli.main(args=list(argv), prog_name='mnforge', standalone_mode=False, obj=bench)
    except click.exceptions.Exit as exc:
        return CommandResult('ok' if exc.exit_code == 0 else 'error', '\n'.join(bench.lines), {}, exc.exit_code)
    except click.exceptions.Abort:
        return CommandResult('error', '', {}, 1, 'aborted')
    except click.ClickException as exc:
        message = exc.format_message()
        record = {'schema_version': Config.SCHEMA_VERSION, 'kind': 'error', 'type': type(exc).__name__,
                  'message': message}
        return CommandResult('error', '', record, exc.exit_code, message)
    except MnforgeError as exc:
        logger.debug("command failed", exc_info=True)
        message = f"{type(exc).__name__}: {exc}"
        record = {'schema_version': Config.SCHEMA_VERSION, 'kind': 'error', 'type': type(exc).__name__,
                  'message': str(exc)}
        return CommandResult('error', '\n'.join(bench.lines), record, 1, message)
    status = 'ok' if bench.exit_code == 0 else 'error'
    return CommandResult(status, '\n'.join(bench.lines), bench.record, bench.exit_code)


def main():
    color = sys.stdout.isatty()
    result = run_command(sys.argv[1:], color=color)
    if result.text:
        print(result.text)
    if result.message:
        text = f"错误: {result.message}"
        print(f"{Fore.RED}{text}{Style.RESET_ALL}" if sys.stderr.isatty() else text, file=sys.stderr)
    sys.exit(result.exit_code)


if __name__ == '__main__':
    main()

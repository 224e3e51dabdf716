"""
配置文件
"""
import os
from dataclasses import dataclass, asdict
from typing import Any, Dict, Optional, Sequence, Tuple, Union

from dotenv import load_dotenv

from errors import ConfigError

# 加载环境变量
load_dotenv()


def _parse_primes(raw: Union[str, Sequence[int]]) -> Tuple[int, ...]:
    if not isinstance(raw, str):
        return tuple(raw)
    if not raw.strip():
        return ()
    try:
        return tuple(int(item) for item in raw.split(',') if item.strip())
    except ValueError as exc:
        raise ConfigError(f"MNFORGE_PRIMES must be a comma separated list of integers: {raw!r}") from exc


def _optional_int(raw: Union[str, int, None], default: Optional[int] = None) -> Optional[int]:
    if isinstance(raw, int):
        return raw
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"expected an integer, got {raw!r}") from exc


@dataclass(frozen=True)
class RuntimeSettings:
    """一次命令执行的有效配置（命令行参数优先于环境变量）"""

    primes: Tuple[int, ...] = ()
    depth: int = 4
    trials: Optional[int] = None
    seed: int = 7
    workers: int = 1
    log_level: str = 'WARNING'
    log_file: str = ''
    report_file: str = ''

    def __post_init__(self):
        if self.depth < 1:
            raise ConfigError("inversion depth must be a positive integer")
        if self.workers < 1:
            raise ConfigError("workers must be a positive integer")
        if self.trials is not None and self.trials < 1:
            raise ConfigError("trials must be a positive integer")

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['primes'] = list(self.primes)
        return data


class Config:
    """配置类（环境变量原样保存，在 runtime() 中解析）"""

    # 素数表覆盖（空表示使用第 i 个素数）
    PRIMES = os.getenv('MNFORGE_PRIMES', '')

    # 默认 Neumann 展开深度
    DEFAULT_DEPTH = os.getenv('MNFORGE_DEPTH', '')

    # 随机验证套件的试验次数（空表示各套件默认值）
    TRIALS = os.getenv('MNFORGE_TRIALS', '')

    # 验证默认随机种子
    SEED = os.getenv('MNFORGE_SEED', '')

    # 试验分片线程数
    WORKERS = os.getenv('MNFORGE_WORKERS', '')

    # 日志配置
    LOG_LEVEL = os.getenv('MNFORGE_LOG_LEVEL', 'WARNING')
    LOG_FILE = os.getenv('MNFORGE_LOG_FILE', '')

    # 结构化记录输出文件（JSON Lines）
    REPORT_FILE = os.getenv('MNFORGE_REPORT_FILE', '')

    # 结构化记录版本
    SCHEMA_VERSION = 1

    @classmethod
    def runtime(cls, **overrides: Any) -> RuntimeSettings:
        """合并命令行参数与环境配置，值为 None 的参数不覆盖"""
        values: Dict[str, Any] = {
            'primes': _parse_primes(cls.PRIMES),
            'depth': _optional_int(cls.DEFAULT_DEPTH, 4),
            'trials': _optional_int(cls.TRIALS),
            'seed': _optional_int(cls.SEED, 7),
            'workers': _optional_int(cls.WORKERS, 1),
            'log_level': cls.LOG_LEVEL,
            'log_file': cls.LOG_FILE,
            'report_file': cls.REPORT_FILE,
        }
        for key, value in overrides.items():
            if key not in values:
                raise ConfigError(f"unknown setting: {key}")
            if value is None:
                continue
            if key == 'primes' and isinstance(value, str):
                value = _parse_primes(value)
            values[key] = value
        return RuntimeSettings(**values)

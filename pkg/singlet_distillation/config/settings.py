# ============================================================================
# singlet_distillation/config/settings.py - 配置管理
# ============================================================================

import json
import logging
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

NOISE_MODELS = ("none", "random-local", "random-correlated")
PHASE_MODELS = ("none", "random")
OUTPUT_FORMATS = ("json", "csv")
VERIFY_LEVELS = ("quick", "full")


@dataclass
class ToleranceConfig:
    """数值容差"""

    prune: float = 1e-12
    normalization: float = 1e-10
    unitarity: float = 1e-10
    phase: float = 1e-9
    zero_probability: float = 1e-12


@dataclass
class ProtocolConfig:
    """蒸馏协议配置"""

    start_j: int = 2
    enable_parallel: bool = False
    max_workers: int = 4
    show_progress: bool = False


@dataclass
class NoiseConfig:
    """噪声配置"""

    seed: int = 20240917
    model: str = "none"
    phases: str = "none"


@dataclass
class OutputConfig:
    """输出配置"""

    format: str = "json"
    precision: int = 12
    out: Optional[str] = None


@dataclass
class SuppressConfig:
    """抑制律表配置"""

    max_n: int = 5
    crosscheck_max_n: int = 3
    amplitude_tol: float = 1e-10


@dataclass
class VerifyConfig:
    """自检配置"""

    level: str = "quick"
    random_states: int = 50
    noise_draws: int = 100
    unitary_draws: int = 20
    permutation_samples: int = 50
    large_n_samples: int = 10
    seed: int = 20240917


@dataclass
class LoggingConfig:
    """日志配置"""

    level: str = "INFO"
    log_to_file: bool = False
    log_dir: Optional[str] = None


class ConfigManager:
    """配置管理器"""

    SECTIONS = ("tolerance", "protocol", "noise", "output", "suppress", "verify", "logging")

    def __init__(self, config_path: Optional[str] = None):
        """初始化配置管理器"""
        self.config_path = self._resolve_config_path(config_path)

        self.tolerance = ToleranceConfig()
        self.protocol = ProtocolConfig()
        self.noise = NoiseConfig()
        self.output = OutputConfig()
        self.suppress = SuppressConfig()
        self.verify = VerifyConfig()
        self.logging = LoggingConfig()

        self._load_config()
        self.validate()

    def _resolve_config_path(self, config_path: Optional[str]) -> str:
        """解析配置文件路径"""
        if config_path:
            if not Path(config_path).exists():
                raise FileNotFoundError(f"配置文件不存在: {config_path}")
            return str(config_path)

        default_locations = [
            Path("config.yaml"),
            Path.home() / ".singlet_distillation" / "config.yaml",
            Path(__file__).parent.parent.parent / "config.yaml",
        ]
        for path in default_locations:
            if path.exists():
                return str(path)

        return str(Path.home() / ".singlet_distillation" / "config.yaml")

    def _load_config(self):
        """从文件加载配置"""
        if not Path(self.config_path).exists():
            logging.info(f"配置文件不存在，使用默认配置: {self.config_path}")
            return

        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                if self.config_path.endswith(".json"):
                    config_data = json.load(f)
                else:
                    config_data = yaml.safe_load(f) or {}

            self._update_config_from_dict(config_data)
            logging.info(f"已从 {self.config_path} 加载配置")

        except Exception as e:
            logging.error(f"加载配置文件失败: {e}")

    def _update_config_from_dict(self, config_data: Dict[str, Any]):
        """从字典更新配置, 未知节与未知键被忽略"""
        for section_name, section_data in config_data.items():
            if section_name not in self.SECTIONS or not isinstance(section_data, dict):
                continue

            config_obj = getattr(self, section_name)
            for field_name, field_value in section_data.items():
                if hasattr(config_obj, field_name):
                    setattr(config_obj, field_name, field_value)

    def validate(self):
        """检查取值范围; 非法值抛出 ValueError 并指明配置项"""
        choices = (
            ("noise.model", self.noise.model, NOISE_MODELS),
            ("noise.phases", self.noise.phases, PHASE_MODELS),
            ("output.format", self.output.format, OUTPUT_FORMATS),
            ("verify.level", self.verify.level, VERIFY_LEVELS),
        )
        for name, value, allowed in choices:
            if value not in allowed:
                raise ValueError(f"{name} 必须是 {allowed} 之一, 得到 {value!r}")

        if self.protocol.start_j < 2:
            raise ValueError(f"protocol.start_j 必须 ≥ 2, 得到 {self.protocol.start_j}")
        if self.protocol.max_workers < 1:
            raise ValueError(f"protocol.max_workers 必须 ≥ 1, 得到 {self.protocol.max_workers}")
        if not 1 <= self.output.precision <= 17:
            raise ValueError(f"output.precision 必须在 [1, 17] 内, 得到 {self.output.precision}")
        if not 2 <= self.suppress.crosscheck_max_n <= self.suppress.max_n:
            raise ValueError("suppress 要求 2 ≤ crosscheck_max_n ≤ max_n")
        for name, value in vars(self.tolerance).items():
            if not 0 < float(value) < 1:
                raise ValueError(f"tolerance.{name} 必须在 (0, 1) 内, 得到 {value}")
        return self

    def get(self, section: str, key: Optional[str] = None, default: Any = None) -> Any:
        """获取配置值"""
        if section not in self.SECTIONS:
            return default

        config_obj = getattr(self, section)
        if key is None:
            return config_obj

        return getattr(config_obj, key, default)

    def to_dict(self) -> Dict[str, Dict[str, Any]]:
        return {name: asdict(getattr(self, name)) for name in self.SECTIONS}

    def update_from_args(self, args):
        """从命令行参数更新配置"""
        # 噪声配置
        if getattr(args, "seed", None) is not None:
            self.noise.seed = args.seed
            self.verify.seed = args.seed
        if getattr(args, "noise", None):
            self.noise.model = args.noise
        if getattr(args, "phases", None):
            self.noise.phases = args.phases

        # 协议配置
        if getattr(args, "start_j", None) is not None:
            self.protocol.start_j = args.start_j
        if getattr(args, "parallel", False):
            self.protocol.enable_parallel = True

        # 输出配置
        if getattr(args, "format", None):
            self.output.format = args.format
        if getattr(args, "out", None):
            self.output.out = args.out

        # 自检配置
        if getattr(args, "level", None):
            self.verify.level = args.level

        # 日志配置
        if getattr(args, "verbose", False):
            self.logging.level = "DEBUG"

        self.validate()

# ============================================================================
# singlet_distillation/__init__.py - 包初始化
# ============================================================================

"""
Singlet Distillation
Fourier 多端口中 N 个玻色子的精确模拟, 以及广义单态 |A_N⟩ 的概率性蒸馏

版本: 1.0.0
"""

__version__ = "1.0.0"

from .config import ConfigManager
from .core import (Ensemble, FockVector, ModeUnitary, OccupationState,
                   Permutation, fourier_matrix, fully_depolarized,
                   generalized_singlet)
from .pipeline import (DistillationPipeline, ProtocolReport, run_protocol,
                       success_probability_oracle)
from .scenarios import ScenarioConfig, build_scenario, run_scenario
from .utils import LogManager, ResultManager

__all__ = [
    "ConfigManager",
    "OccupationState",
    "FockVector",
    "ModeUnitary",
    "Permutation",
    "Ensemble",
    "fourier_matrix",
    "generalized_singlet",
    "fully_depolarized",
    "ProtocolReport",
    "run_protocol",
    "success_probability_oracle",
    "DistillationPipeline",
    "ScenarioConfig",
    "build_scenario",
    "run_scenario",
    "LogManager",
    "ResultManager",
]

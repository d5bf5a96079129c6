# ============================================================================
# singlet_distillation/scenarios.py - 命名场景
# ============================================================================

"""
每个命名场景给出一个输入系综与起始步 start_j:

- depolarized     ρ_dep, 对 |0,1,…,N-1⟩ 的每个粒子施加去极化
- product         乘积态 |0,1,…,N-1⟩
- shortcut-pure   |A_2⟩⊗|2⟩, 从 j = 3 开始 (N = 3)
- shortcut-mixed  |A_2⟩⟨A_2| ⊗ 第三个粒子最大混合, 从 j = 3 开始 (N = 3)
- custom          从态文件或系综文件读入
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from .config.settings import NOISE_MODELS, OUTPUT_FORMATS, PHASE_MODELS
from .core.channels import (Ensemble, apply_correlated_noise,
                            apply_local_noise, depolarize_all,
                            depolarize_mode, fully_depolarized, pure,
                            random_local_unitaries)
from .core.fock import FockVector, product_state, tensor_product
from .core.symmetry import singlet_over_levels
from .utils.file_utils import load_ensemble

SCENARIOS = ("depolarized", "product", "shortcut-pure", "shortcut-mixed", "custom")
SHORTCUTS = ("shortcut-pure", "shortcut-mixed")
DEFAULT_SEED = 20240917


@dataclass
class ScenarioConfig:
    """一次 run 的完整描述"""

    scenario: str = "depolarized"
    n: Optional[int] = None
    input_path: Optional[str] = None
    start_j: Optional[int] = None
    seed: int = DEFAULT_SEED
    noise: str = "none"
    phases: str = "none"
    out: Optional[str] = None
    format: str = "json"
    parallel: bool = False

    def validate(self):
        """检查字段组合, 并补全场景决定的缺省值"""
        if self.scenario not in SCENARIOS:
            raise ValueError(f"scenario 必须是 {SCENARIOS} 之一, 得到 {self.scenario!r}")
        if self.noise not in NOISE_MODELS:
            raise ValueError(f"noise 必须是 {NOISE_MODELS} 之一, 得到 {self.noise!r}")
        if self.phases not in PHASE_MODELS:
            raise ValueError(f"phases 必须是 {PHASE_MODELS} 之一, 得到 {self.phases!r}")
        if self.format not in OUTPUT_FORMATS:
            raise ValueError(f"format 必须是 {OUTPUT_FORMATS} 之一, 得到 {self.format!r}")

        if self.scenario == "custom":
            if not self.input_path:
                raise ValueError("custom 场景需要 --input 文件")
        elif self.input_path:
            logging.warning(f"场景 {self.scenario} 忽略输入文件 {self.input_path}")

        if self.scenario in SHORTCUTS:
            if self.n not in (None, 3):
                raise ValueError(f"{self.scenario} 场景固定 N = 3, 得到 N={self.n}")
            self.n = 3
        elif self.scenario != "custom" and self.n is None:
            self.n = 3

        if self.n is not None and self.n < 2:
            raise ValueError(f"N 必须 ≥ 2, 得到 {self.n}")
        if self.start_j is not None and self.n is not None and not 2 <= self.start_j <= self.n:
            raise ValueError(f"start_j 须满足 2 ≤ start_j ≤ N, 得到 {self.start_j}")
        return self


def shortcut_state() -> FockVector:
    """|A_2⟩⊗|2⟩, 内部维数 3"""
    singlet = singlet_over_levels(2, (0, 1), 3)
    third = product_state([2], 1, 3)
    return tensor_product(singlet, third)


def reference_product(n: int) -> FockVector:
    return product_state(list(range(n)), n, n)


def apply_noise(ens: Ensemble, model: str, seed) -> Ensemble:
    """按噪声模型施加一次无损噪声"""
    if model == "none":
        return ens
    if model == "random-local":
        return apply_local_noise(ens, random_local_unitaries(ens.modes, ens.levels, seed))
    if model == "random-correlated":
        return apply_correlated_noise(ens, seed)
    raise ValueError(f"未知噪声模型: {model!r}")


def build_scenario(config: ScenarioConfig, default_start: int = 2) -> Tuple[Ensemble, int]:
    """返回 (输入系综, start_j), 并在 custom 场景下回填 N; 捷径场景固定从 j = 3 开始"""
    name, seed = config.scenario, config.seed

    if name == "depolarized":
        if config.noise == "none":
            ens = fully_depolarized(config.n)
        else:
            ens = depolarize_all(apply_noise(pure(reference_product(config.n)), config.noise, seed))
    elif name == "product":
        ens = apply_noise(pure(reference_product(config.n)), config.noise, seed)
    elif name == "shortcut-pure":
        ens = apply_noise(pure(shortcut_state()), config.noise, seed)
        default_start = 3
    elif name == "shortcut-mixed":
        ens = depolarize_mode(apply_noise(pure(shortcut_state()), config.noise, seed), 2)
        default_start = 3
    else:
        ens = apply_noise(load_ensemble(config.input_path), config.noise, seed)
        if config.n is not None and config.n != ens.modes:
            raise ValueError(f"--n {config.n} 与输入文件的 modes={ens.modes} 不符")
        config.n = ens.modes
        if config.start_j is not None and not 2 <= config.start_j <= config.n:
            raise ValueError(f"start_j 须满足 2 ≤ start_j ≤ N, 得到 {config.start_j}")

    start_j = config.start_j if config.start_j is not None else default_start
    if start_j > config.n:
        raise ValueError(f"配置项 protocol.start_j = {start_j} 超过 N={config.n}")
    logging.info(f"场景 {name}: {len(ens)} 个分量, m={ens.modes}, d={ens.levels}, start_j={start_j}")
    return ens, start_j


def run_scenario(scenario: str, n: Optional[int] = None, **overrides):
    """构造 ScenarioConfig 并直接运行 DistillationPipeline"""

    from .pipeline import DistillationPipeline

    config = ScenarioConfig(scenario=scenario, n=n, **overrides)
    return DistillationPipeline(config).run()

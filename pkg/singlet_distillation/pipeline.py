# ============================================================================
# singlet_distillation/pipeline.py - 蒸馏协议与分析管道
# ============================================================================

"""
蒸馏协议 M_N: 对 j = 2…N, 在前 j 个模式上作用 Fourier j 端口,
再做前 j 个模式的符合投影 C_j。成功概率等于输入与全反对称子空间的重叠。
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from .config import ConfigManager
from .core.channels import Ensemble, expectation_overlap
from .core.fock import NORM_TOL, FockVector, fidelity
from .core.interferometer import (ModeUnitary, apply_mode_unitary, embed,
                                  fourier_matrix, phase_variant,
                                  random_phases)
from .core.symmetry import antisymmetric_weight, generalized_singlet
from .scenarios import ScenarioConfig, build_scenario
from .utils.logging import log_elapsed
from .utils.results import ResultManager

PROBABILITY_TOL = 1e-12

PhaseVariants = Dict[int, Tuple[Sequence[complex], Sequence[complex]]]


@dataclass
class ComponentTrace:
    """单个系综分量的逐步结果"""

    weight: float
    step_probabilities: List[Tuple[int, float]]
    output: Optional[FockVector]

    @property
    def success_probability(self) -> float:
        return float(np.prod([p for _, p in self.step_probabilities])) if self.output is not None else 0.0


@dataclass
class ProtocolReport:
    """协议运行报告; steps 中的 p 为通过前序步骤条件下通过第 j 步的概率"""

    n: int
    start_j: int
    steps: List[Tuple[int, float]]
    success_probability: float
    output: Optional[Ensemble]
    fidelity_with_singlet: float
    components: List[ComponentTrace] = field(default_factory=list, repr=False)

    @property
    def succeeded(self) -> bool:
        return self.output is not None


def coincidence_project(
    v: FockVector, modes: Sequence[int], zero_tol: float = PROBABILITY_TOL
) -> Tuple[float, Optional[FockVector]]:
    """C: 保留所列模式各恰有一个粒子的振幅, 不测量内部能级"""
    if not v.is_normalized(NORM_TOL):
        raise ValueError(f"符合投影要求归一化输入: ‖v‖² = {v.norm_squared():.12g}")
    modes = list(modes)
    kept = {
        occ: amp
        for occ, amp in v.items()
        if all(occ.mode_occupation()[k] == 1 for k in modes)
    }
    kept_vector = FockVector(kept, v.modes, v.levels, v.tol)
    probability = kept_vector.norm_squared()
    if probability <= zero_tol:
        return probability, None
    return probability, kept_vector.scaled(1.0 / math.sqrt(probability))


def step_unitary(
    j: int, m: int, phases: Optional[Tuple[Sequence[complex], Sequence[complex]]] = None
) -> ModeUnitary:
    """嵌入到前 j 个模式的 Fourier j 端口, 可附加输入/输出相位"""
    u = fourier_matrix(j)
    if phases is not None:
        u = phase_variant(u, *phases)
    return embed(u, range(j), m)


def protocol_step(
    v: FockVector,
    j: int,
    m: int,
    unitary: Optional[ModeUnitary] = None,
    zero_tol: float = PROBABILITY_TOL,
) -> Tuple[float, Optional[FockVector]]:
    """C_j U_j"""
    u = step_unitary(j, m) if unitary is None else unitary
    evolved = apply_mode_unitary(v, u)
    return coincidence_project(evolved, range(j), zero_tol)


def _run_component(
    weight: float,
    state: FockVector,
    unitaries: Dict[int, ModeUnitary],
    zero_tol: float,
) -> ComponentTrace:
    steps = []
    current: Optional[FockVector] = state
    for j, u in unitaries.items():
        probability, current = protocol_step(current, j, state.modes, u, zero_tol)
        steps.append((j, probability))
        if current is None:
            break
    return ComponentTrace(weight, steps, current)


def _check_one_per_mode(ens: Ensemble, n: int):
    if ens.modes != n:
        raise ValueError(f"协议要求 m = N, 得到 m={ens.modes}, N={n}")
    target = (1,) * n
    for i, (_, state) in enumerate(ens):
        for occ in state:
            if occ.mode_occupation() != target:
                raise ValueError(f"分量 {i} 不满足每个模式恰有一个粒子: {occ!r}")


def run_protocol(
    ens: Ensemble,
    n: int,
    start_j: int = 2,
    phases: Optional[PhaseVariants] = None,
    parallel: bool = False,
    max_workers: int = 4,
    show_progress: bool = False,
    zero_tol: float = PROBABILITY_TOL,
) -> ProtocolReport:
    """对系综每个分量依次执行 j = start_j…N 的 C_j U_j 并汇总"""
    _check_one_per_mode(ens, n)
    if not 2 <= start_j <= n:
        raise ValueError(f"start_j 须满足 2 ≤ start_j ≤ N, 得到 {start_j}")

    phases = phases or {}
    unitaries = {j: step_unitary(j, n, phases.get(j)) for j in range(start_j, n + 1)}

    if parallel and len(ens) > 1:
        traces = Parallel(n_jobs=max_workers)(
            delayed(_run_component)(w, v, unitaries, zero_tol) for w, v in ens
        )
    else:
        traces = [
            _run_component(w, v, unitaries, zero_tol)
            for w, v in tqdm(ens, desc="蒸馏协议", ncols=80, disable=not show_progress)
        ]

    # 逐步汇总: reached 为到达第 j 步的概率质量, passed 为通过的概率质量
    steps = []
    for index, j in enumerate(unitaries):
        reached = passed = 0.0
        for trace in traces:
            if len(trace.step_probabilities) <= index:
                continue
            prior = np.prod([p for _, p in trace.step_probabilities[:index]])
            reached += trace.weight * prior
            passed += trace.weight * prior * trace.step_probabilities[index][1]
        steps.append((j, passed / reached if reached > 0 else 0.0))

    success = float(sum(t.weight * t.success_probability for t in traces))
    output = None
    fid = 0.0
    if success > zero_tol:
        output = Ensemble.from_weighted(
            [(t.weight * t.success_probability, t.output) for t in traces if t.output is not None]
        )
        fid = singlet_fidelity(output, n)
    else:
        logging.warning(f"协议失败: 成功概率 {success:.3e} 低于阈值 {zero_tol:.0e}")

    logging.info(
        f"N={n}, start_j={start_j}: p_s = {success:.12g}, 保真度 = {fid:.12g},"
        f" 存活分量 {len(output) if output else 0}/{len(ens)}"
    )
    return ProtocolReport(n, start_j, steps, success, output, fid, traces)


def singlet_fidelity(ens: Ensemble, n: int) -> float:
    """d = N 时与 |A_N⟩ 的保真度; d > N 时为在全反对称子空间上的权重"""
    if ens.levels == n:
        singlet = generalized_singlet(n)
        return float(sum(w * fidelity(v, singlet) for w, v in ens))
    return float(sum(w * antisymmetric_weight(v) for w, v in ens))


def success_probability_oracle(ens: Ensemble, n: int) -> float:
    """不经过干涉仪的直接重叠 Tr(P_A ρ), 用作交叉检验"""
    if ens.modes != n:
        raise ValueError(f"要求 m = N, 得到 m={ens.modes}, N={n}")
    if ens.levels < n:
        raise ValueError(f"要求 d ≥ N, 得到 d={ens.levels}, N={n}")
    if ens.levels == n:
        return expectation_overlap(ens, generalized_singlet(n))
    return float(sum(w * antisymmetric_weight(v) for w, v in ens))


def random_phase_variants(n: int, start_j: int, seed) -> PhaseVariants:
    """为每个 j 端口生成随机输入/输出对角相位"""
    rng = np.random.default_rng(seed)
    return {j: (random_phases(j, rng), random_phases(j, rng)) for j in range(start_j, n + 1)}


class DistillationPipeline:
    """蒸馏管道 - 协调场景构建、协议运行与结果保存"""

    def __init__(self, scenario: ScenarioConfig, config: Optional[ConfigManager] = None):
        self.scenario = scenario
        self.config = config or ConfigManager()
        self.result_manager = ResultManager(precision=self.config.output.precision)

    def run(self) -> ProtocolReport:
        """运行完整流程, 返回报告"""
        scenario = self.scenario
        scenario.validate()
        logging.info(f"场景: {scenario.scenario}, N={scenario.n}, 噪声={scenario.noise}")

        try:
            with log_elapsed("蒸馏管道"):
                ensemble, start_j = build_scenario(scenario, self.config.protocol.start_j)
                phases = None
                if scenario.phases == "random":
                    phases = random_phase_variants(scenario.n, start_j, scenario.seed)
                    logging.info("每个 Fourier 端口附加随机输入/输出相位")

                protocol = self.config.protocol
                report = run_protocol(
                    ensemble,
                    scenario.n,
                    start_j=start_j,
                    phases=phases,
                    parallel=scenario.parallel or protocol.enable_parallel,
                    max_workers=protocol.max_workers,
                    show_progress=protocol.show_progress,
                    zero_tol=self.config.tolerance.zero_probability,
                )
                self.result_manager.save_report(report, scenario.out, scenario.format)
        except Exception as e:
            logging.error(f"蒸馏管道执行失败: {e}")
            raise

        return report

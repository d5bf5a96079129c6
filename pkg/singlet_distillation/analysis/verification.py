# ============================================================================
# singlet_distillation/analysis/verification.py - 不变量自检套件
# ============================================================================

"""
verify 子命令使用的命名检查。每个检查返回 (ok, detail),
套件按固定顺序执行并在第一个失败处停止。

quick: N ≤ 3; full: N ≤ 4, 另加 N = 5 的抽样检查。
"""

import cmath
import logging
import math
import time
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from ..config.settings import VERIFY_LEVELS, ToleranceConfig, VerifyConfig
from ..core.channels import (apply_correlated_noise, apply_local_noise,
                             depolarize_all, fully_depolarized,
                             global_rotation, pure, random_local_unitaries)
from ..core.fock import (fidelity, max_deviation, one_per_mode_basis,
                         product_state, random_one_per_mode_state)
from ..core.interferometer import (apply_mode_unitary, fourier_determinant,
                                   fourier_matrix, random_phases,
                                   random_unitary)
from ..core.symmetry import (all_permutations, antisymmetric_weight,
                             antisymmetrizer_apply, eigenspace_projector_apply,
                             generalized_singlet, permute_modes,
                             random_antisymmetric_state, random_permutation)
from ..pipeline import (random_phase_variants, run_protocol,
                        success_probability_oracle)
from ..scenarios import ScenarioConfig, build_scenario
from .suppression import (eigenvector_multiport, occupation_lists,
                          output_eigenvalues, output_max_amplitude,
                          permutation_eigenspace_apply, suppression_predicate,
                          suppression_table)

AMPLITUDE_TOL = 1e-10
PROBABILITY_TOL = 1e-9

Outcome = Tuple[bool, str]

CHECKS = (
    "fourier-eigenphase",
    "norm-preservation",
    "total-antisymmetry",
    "uniqueness",
    "projector-product",
    "rotational-invariance",
    "antisymmetric-invariance",
    "suppression-consistency",
    "suppression-general",
    "depolarized-success",
    "product-success",
    "shortcut-pure",
    "shortcut-mixed",
    "oracle-equivalence",
    "noise-robustness",
    "phase-variant-invariance",
    "sampled-large-n",
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _ok(detail: str = "") -> Outcome:
    return True, detail


def _fail(detail: str) -> Outcome:
    return False, detail


class VerificationSuite:
    """按名称组织的不变量检查"""

    def __init__(
        self,
        level: str = "quick",
        config: Optional[VerifyConfig] = None,
        tolerance: Optional[ToleranceConfig] = None,
    ):
        if level not in VERIFY_LEVELS:
            raise ValueError(f"level 必须是 quick 或 full, 得到 {level!r}")
        self.level = level
        self.config = config or VerifyConfig()
        self.tolerance = tolerance or ToleranceConfig()

    @property
    def sizes(self) -> List[int]:
        return [2, 3] if self.level == "quick" else [2, 3, 4]

    @property
    def small_sizes(self) -> List[int]:
        return [2, 3]

    def _rng(self, *salt: int) -> np.random.Generator:
        return np.random.default_rng([self.config.seed, *salt])

    def _method(self, name: str) -> Callable[[], Outcome]:
        return getattr(self, "check_" + name.replace("-", "_"))

    def run(
        self,
        names: Optional[Sequence[str]] = None,
        stop_on_failure: bool = True,
        show_progress: bool = False,
    ) -> List[CheckResult]:
        """执行检查, 返回已执行检查的结果列表"""
        names = list(CHECKS if names is None else names)
        unknown = [n for n in names if n not in CHECKS]
        if unknown:
            raise ValueError(f"未知检查: {unknown}")

        results = []
        for name in tqdm(names, desc=f"verify ({self.level})", ncols=80, disable=not show_progress):
            start = time.time()
            try:
                passed, detail = self._method(name)()
            except Exception as e:
                passed, detail = False, f"{type(e).__name__}: {e}"
            result = CheckResult(name, passed, detail, time.time() - start)
            results.append(result)
            logging.debug(f"{name}: {'通过' if passed else '失败'} ({result.seconds:.2f}s) {detail}")
            if not passed and stop_on_failure:
                break
        return results

    # ------------------------------------------------------------------
    # 干涉仪与对称性
    # ------------------------------------------------------------------
    def check_fourier_eigenphase(self) -> Outcome:
        """U_N |A_N⟩ = det(U_N) |A_N⟩, 振幅级别, det 取闭式值"""
        for n in self.sizes:
            singlet = generalized_singlet(n)
            out = apply_mode_unitary(singlet, fourier_matrix(n))
            deviation = max_deviation(out, singlet.scaled(fourier_determinant(n)))
            if deviation > AMPLITUDE_TOL:
                return _fail(f"N={n}: 偏差 {deviation:.3e}")
        return _ok(f"N ∈ {self.sizes}")

    def check_norm_preservation(self) -> Outcome:
        rng = self._rng(1)
        for n in self.sizes:
            for draw in range(5):
                u = random_unitary(n, rng)
                v = random_one_per_mode_state(n, 2, rng)
                norm = apply_mode_unitary(v, u).norm_squared()
                if abs(norm - 1.0) > AMPLITUDE_TOL:
                    return _fail(f"N={n}, 第 {draw} 次: ‖Uv‖² = {norm:.12g}")
            out = apply_mode_unitary(product_state([0] * n, n, 1), fourier_matrix(n))
            if abs(out.norm_squared() - 1.0) > AMPLITUDE_TOL:
                return _fail(f"N={n}: d=1 输入经 U_N 后范数 {out.norm_squared():.12g}")
        return _ok()

    def check_total_antisymmetry(self) -> Outcome:
        for n in self.sizes:
            singlet = generalized_singlet(n)
            for p in all_permutations(n):
                deviation = max_deviation(permute_modes(singlet, p), singlet.scaled(p.sign()))
                if deviation > AMPLITUDE_TOL:
                    return _fail(f"N={n}, π={p.images}: 偏差 {deviation:.3e}")
        return _ok()

    def check_uniqueness(self) -> Outcome:
        """d = N 时反对称化任意基矢都正比于 |A_N⟩"""
        for n in self.sizes:
            singlet = generalized_singlet(n)
            for v in one_per_mode_basis(n, n):
                projected = antisymmetrizer_apply(v, n)
                if projected.norm_squared() < AMPLITUDE_TOL:
                    continue
                f = fidelity(projected.normalized(), singlet)
                if abs(f - 1.0) > PROBABILITY_TOL:
                    return _fail(f"N={n}: 反对称化结果与 |A_N⟩ 保真度 {f:.12g}")
        return _ok()

    def check_projector_product(self) -> Outcome:
        """P_N ⋯ P_2 = A_N 在每个单粒子每模式基矢上成立"""
        for n in self.sizes:
            for v in one_per_mode_basis(n, n):
                sequential = v
                for j in range(2, n + 1):
                    sequential = eigenspace_projector_apply(sequential, j, n)
                deviation = max_deviation(sequential, antisymmetrizer_apply(v, n))
                if deviation > AMPLITUDE_TOL:
                    return _fail(f"N={n}, {next(iter(v))!r}: 偏差 {deviation:.3e}")
        return _ok()

    def check_rotational_invariance(self) -> Outcome:
        rng = self._rng(2)
        for n in self.small_sizes:
            singlet = generalized_singlet(n)
            for draw in range(self.config.unitary_draws):
                u = random_unitary(n, rng).matrix
                f = fidelity(global_rotation(singlet, u), singlet)
                if abs(f - 1.0) > PROBABILITY_TOL:
                    return _fail(f"N={n}, 第 {draw} 次: 保真度 {f:.12g}")
        return _ok(f"{self.config.unitary_draws} 次抽样")

    def check_antisymmetric_invariance(self) -> Outcome:
        """d > N: 反对称态是任意模式幺正的本征态 (本征值 det U), 整体旋转后仍在反对称子空间内"""
        rng = self._rng(3)
        for n, d in ((2, 3), (3, 4)):
            for draw in range(5):
                v = random_antisymmetric_state(n, d, rng)
                for u in (fourier_matrix(n), random_unitary(n, rng)):
                    out = apply_mode_unitary(v, u)
                    deviation = max_deviation(out, v.scaled(u.determinant()))
                    if deviation > AMPLITUDE_TOL:
                        return _fail(f"N={n}, d={d}: {u.label} 本征相位偏差 {deviation:.3e}")
                weight = antisymmetric_weight(global_rotation(v, random_unitary(d, rng).matrix))
                if abs(weight - 1.0) > PROBABILITY_TOL:
                    return _fail(f"N={n}, d={d}: 旋转后反对称权重 {weight:.12g}")
        return _ok()

    # ------------------------------------------------------------------
    # 抑制律
    # ------------------------------------------------------------------
    def check_suppression_consistency(self) -> Outcome:
        for n in self.sizes:
            table = suppression_table(n, crosscheck=True)
            bad = table[~table["consistent"]]
            if not bad.empty:
                row = bad.iloc[0]
                return _fail(
                    f"N={n}, 类 {row['class']}, 输出 {row['output']}: 振幅 {row['max_amplitude']:.3e}"
                )

        known = {
            (2, "1", "(1,1)"): "suppressed",
            (3, "1", "(1,1,1)"): "allowed",
            (3, "ω^1", "(1,1,1)"): "suppressed",
        }
        for (n, label, output), expected in known.items():
            table = suppression_table(n, crosscheck=False)
            verdict = table[(table["class"] == label) & (table["output"] == output)]["verdict"].iloc[0]
            if verdict != expected:
                return _fail(f"N={n}, 类 {label}, 输出 {output}: 期望 {expected}, 得到 {verdict}")
        return _ok()

    def check_suppression_general(self) -> Outcome:
        """随机置换 + 其本征多端口 + 随机输出相位, 被抑制的输出振幅为零"""
        rng = self._rng(4)
        max_m = 3 if self.level == "quick" else 4
        for sample in range(self.config.permutation_samples):
            m = int(rng.integers(2, max_m + 1))
            p = random_permutation(m, rng)
            u = eigenvector_multiport(p, random_phases(m, rng))
            lambdas = output_eigenvalues(u, p)
            order = p.order()
            outputs = list(occupation_lists(m, m))
            for q in range(order):
                mu = cmath.exp(2j * math.pi * q / order)
                for v in one_per_mode_basis(m, 2):
                    projected = permutation_eigenspace_apply(v, p, mu)
                    if projected.norm_squared() < AMPLITUDE_TOL:
                        continue
                    evolved = apply_mode_unitary(projected.normalized(), u)
                    for s in outputs:
                        if not suppression_predicate(lambdas, cmath.phase(mu), s):
                            continue
                        amplitude = output_max_amplitude(evolved, s)
                        if amplitude > AMPLITUDE_TOL:
                            return _fail(
                                f"样本 {sample}: π={p.images}, μ=e^{{2πi·{q}/{order}}},"
                                f" 输出 {s.r} 振幅 {amplitude:.3e}"
                            )
        return _ok(f"{self.config.permutation_samples} 个随机置换")

    # ------------------------------------------------------------------
    # 协议
    # ------------------------------------------------------------------
    def _scenario(self, name: str, n: Optional[int] = None, **kwargs):
        config = ScenarioConfig(scenario=name, n=n, seed=self.config.seed, **kwargs).validate()
        return build_scenario(config)

    def check_depolarized_success(self) -> Outcome:
        for n in self.sizes:
            report = run_protocol(fully_depolarized(n), n)
            expected = 1.0 / n ** n
            if abs(report.success_probability - expected) > PROBABILITY_TOL:
                return _fail(f"N={n}: p_s = {report.success_probability:.12g}, 期望 {expected:.12g}")
            singlet = generalized_singlet(n)
            for _, v in report.output:
                f = fidelity(v, singlet)
                if abs(f - 1.0) > PROBABILITY_TOL:
                    return _fail(f"N={n}: 存活分量保真度 {f:.12g}")
        return _ok()

    def check_product_success(self) -> Outcome:
        for n in self.sizes:
            report = run_protocol(pure(product_state(list(range(n)), n, n)), n)
            expected = 1.0 / math.factorial(n)
            if abs(report.success_probability - expected) > PROBABILITY_TOL:
                return _fail(f"N={n}: p_s = {report.success_probability:.12g}, 期望 {expected:.12g}")
            if abs(report.fidelity_with_singlet - 1.0) > PROBABILITY_TOL:
                return _fail(f"N={n}: 保真度 {report.fidelity_with_singlet:.12g}")
        return _ok()

    def _check_shortcut(self, name: str, expected: float) -> Outcome:
        ens, start_j = self._scenario(name)
        report = run_protocol(ens, 3, start_j=start_j)
        if abs(report.success_probability - expected) > PROBABILITY_TOL:
            return _fail(f"p_s = {report.success_probability:.12g}, 期望 {expected:.12g}")
        if abs(report.fidelity_with_singlet - 1.0) > PROBABILITY_TOL:
            return _fail(f"保真度 {report.fidelity_with_singlet:.12g}")
        return _ok()

    def check_shortcut_pure(self) -> Outcome:
        return self._check_shortcut("shortcut-pure", 1.0 / 3.0)

    def check_shortcut_mixed(self) -> Outcome:
        return self._check_shortcut("shortcut-mixed", 1.0 / 9.0)

    def check_oracle_equivalence(self) -> Outcome:
        rng = self._rng(5)
        for n in self.small_sizes:
            for draw in range(self.config.random_states):
                ens = pure(random_one_per_mode_state(n, n, rng))
                pipeline_p = run_protocol(ens, n).success_probability
                oracle_p = success_probability_oracle(ens, n)
                if abs(pipeline_p - oracle_p) > PROBABILITY_TOL:
                    return _fail(f"N={n}, 随机态 {draw}: {pipeline_p:.12g} vs {oracle_p:.12g}")

        named = [("depolarized", n) for n in self.sizes] + [("product", n) for n in self.sizes]
        named += [("shortcut-pure", 3), ("shortcut-mixed", 3)]
        for name, n in named:
            ens, start_j = self._scenario(name, n)
            pipeline_p = run_protocol(ens, n, start_j=start_j).success_probability
            oracle_p = success_probability_oracle(ens, n)
            if abs(pipeline_p - oracle_p) > PROBABILITY_TOL:
                return _fail(f"{name} N={n}: {pipeline_p:.12g} vs {oracle_p:.12g}")
        return _ok(f"{self.config.random_states} 个随机态 + {len(named)} 个命名场景")

    def check_noise_robustness(self) -> Outcome:
        """去极化之前的任意无损局域噪声不改变 p_s 与保真度"""
        rng = self._rng(6)
        for n in self.small_sizes:
            reference = run_protocol(fully_depolarized(n), n)
            start = pure(product_state(list(range(n)), n, n))
            draws = [
                apply_local_noise(start, random_local_unitaries(n, n, rng))
                for _ in range(self.config.noise_draws)
            ]
            draws += [apply_correlated_noise(start, rng) for _ in range(3)]
            for draw, noisy in enumerate(draws):
                report = run_protocol(depolarize_all(noisy), n)
                dp = abs(report.success_probability - reference.success_probability)
                df = abs(report.fidelity_with_singlet - reference.fidelity_with_singlet)
                if dp > PROBABILITY_TOL or df > PROBABILITY_TOL:
                    return _fail(f"N={n}, 第 {draw} 次噪声: Δp = {dp:.3e}, ΔF = {df:.3e}")
        return _ok(f"每个 N {self.config.noise_draws} 次局域 + 3 次关联噪声")

    def check_phase_variant_invariance(self) -> Outcome:
        rng = self._rng(7)
        for n in self.small_sizes:
            for ens in (fully_depolarized(n), pure(product_state(list(range(n)), n, n))):
                reference = run_protocol(ens, n)
                for draw in range(10):
                    phases = random_phase_variants(n, 2, rng)
                    report = run_protocol(ens, n, phases=phases)
                    dp = abs(report.success_probability - reference.success_probability)
                    df = abs(report.fidelity_with_singlet - reference.fidelity_with_singlet)
                    if dp > PROBABILITY_TOL or df > PROBABILITY_TOL:
                        return _fail(f"N={n}, 第 {draw} 次相位: Δp = {dp:.3e}, ΔF = {df:.3e}")
        return _ok()

    def check_sampled_large_n(self) -> Outcome:
        """仅 full: N = 5 的本征相位、乘积态成功概率与抽样去极化分量"""
        if self.level != "full":
            return _ok("quick 级别跳过")
        n = 5
        singlet = generalized_singlet(n)
        expected = singlet.scaled(fourier_determinant(n))
        deviation = max_deviation(apply_mode_unitary(singlet, fourier_matrix(n)), expected)
        if deviation > AMPLITUDE_TOL:
            return _fail(f"N=5: U_5 本征相位偏差 {deviation:.3e}")

        report = run_protocol(pure(product_state(list(range(n)), n, n)), n)
        if abs(report.success_probability - 1.0 / 120) > PROBABILITY_TOL:
            return _fail(f"N=5: 乘积态 p_s = {report.success_probability:.12g}")

        rng = self._rng(8)
        for draw in range(self.config.large_n_samples):
            levels = [int(x) for x in rng.integers(0, n, size=n)]
            ens = pure(product_state(levels, n, n))
            pipeline_p = run_protocol(ens, n).success_probability
            oracle_p = success_probability_oracle(ens, n)
            if abs(pipeline_p - oracle_p) > PROBABILITY_TOL:
                return _fail(f"N=5, 能级 {levels}: {pipeline_p:.12g} vs {oracle_p:.12g}")
        return _ok(f"{self.config.large_n_samples} 个抽样分量")

# ============================================================================
# singlet_distillation/core/channels.py - 混合态系综与局域噪声信道
# ============================================================================

"""
混合态一律表示为纯态系综 Σ w_i |v_i⟩⟨v_i|, 不构造密度矩阵。
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .fock import (NORM_TOL, FockVector, OccupationState, inner_product,
                   linear_combination, product_state,
                   transform_single_particle)
from .interferometer import (UNITARITY_TOL, SeedLike, random_unitary,
                             unitarity_deviation)

WEIGHT_TOL = 1e-10
RANK_TOL = 1e-12


@dataclass(frozen=True)
class Ensemble:
    """凸组合 Σ w_i |v_i⟩⟨v_i|, 权重和为 1, 各分量归一化"""

    components: Tuple[Tuple[float, FockVector], ...]
    modes: int
    levels: int

    def __post_init__(self):
        components = tuple((float(w), v) for w, v in self.components)
        if not components:
            raise ValueError("系综至少需要一个分量")
        for i, (weight, state) in enumerate(components):
            if weight <= 0:
                raise ValueError(f"分量 {i} 的权重必须为正, 得到 {weight}")
            if state.modes != self.modes or state.levels != self.levels:
                raise ValueError(
                    f"分量 {i} 的空间 (m={state.modes}, d={state.levels})"
                    f" 与系综 (m={self.modes}, d={self.levels}) 不符"
                )
            if not state.is_normalized(NORM_TOL):
                raise ValueError(f"分量 {i} 未归一化: ‖v‖² = {state.norm_squared():.12g}")
        total = sum(w for w, _ in components)
        if abs(total - 1.0) > WEIGHT_TOL:
            raise ValueError(f"权重和必须为 1, 得到 {total:.12g}")
        object.__setattr__(self, "components", components)

    @classmethod
    def from_weighted(cls, pairs: Sequence[Tuple[float, FockVector]]) -> "Ensemble":
        """由未归一化的非负权重构造, 丢弃零权重分量"""
        kept = [(float(w), v) for w, v in pairs if w > 0]
        if not kept:
            raise ValueError("没有正权重分量")
        total = sum(w for w, _ in kept)
        first = kept[0][1]
        return cls(tuple((w / total, v) for w, v in kept), first.modes, first.levels)

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[Tuple[float, FockVector]]:
        return iter(self.components)

    @property
    def weights(self) -> List[float]:
        return [w for w, _ in self.components]


def pure(v: FockVector) -> Ensemble:
    if not v.is_normalized(NORM_TOL):
        raise ValueError(f"纯态系综要求归一化输入: ‖v‖² = {v.norm_squared():.12g}")
    return Ensemble(((1.0, v),), v.modes, v.levels)


def expectation_overlap(ens: Ensemble, target: FockVector) -> float:
    """Tr(|t⟩⟨t| ρ) = Σ w_i |⟨t|v_i⟩|²"""
    return float(sum(w * abs(inner_product(target, v)) ** 2 for w, v in ens))


# ============================================================================
# 去极化
# ============================================================================


def depolarize_mode(ens: Ensemble, mode: int, d: Optional[int] = None) -> Ensemble:
    """
    把指定模式中粒子的内部态替换为 d 能级最大混合态。

    对每个分量先求其余粒子的约化态 (对角化 Gram 矩阵), 秩为 r 时
    分裂为 r·d 个分量; 乘积态时 r = 1。
    """
    d = ens.levels if d is None else d
    if d != ens.levels:
        raise ValueError(f"去极化维数 {d} 与系综内部维数 {ens.levels} 不符")
    if not 0 <= mode < ens.modes:
        raise ValueError(f"mode 越界: {mode} (m={ens.modes})")

    pairs: List[Tuple[float, FockVector]] = []
    for weight, state in ens:
        branches: Dict[int, Dict[OccupationState, complex]] = {}
        for occ, amp in state.items():
            if occ.mode_occupation()[mode] != 1:
                raise ValueError(f"去极化要求模式 {mode} 恰有一个粒子, 基矢 {occ!r} 不满足")
            level = occ.level_at(mode)
            branches.setdefault(level, {})[occ.replace_level(mode, 0)] = amp

        rests = [FockVector(branch, ens.modes, ens.levels) for branch in branches.values()]
        gram = np.array([[inner_product(a, b) for b in rests] for a in rests])
        eigvals, eigvecs = np.linalg.eigh(gram)

        for g, column in zip(eigvals, eigvecs.T):
            if g <= RANK_TOL:
                continue
            chi = linear_combination(
                zip(column / np.sqrt(g), rests), ens.modes, ens.levels
            )
            for k in range(d):
                pairs.append((weight * g / d, chi.relabeled(lambda s, k=k: s.replace_level(mode, k))))

    logging.debug(f"去极化模式 {mode}: {len(ens)} -> {len(pairs)} 个分量")
    return Ensemble.from_weighted(pairs)


def depolarize_all(ens: Ensemble, d: Optional[int] = None) -> Ensemble:
    for mode in range(ens.modes):
        ens = depolarize_mode(ens, mode, d)
    return ens


def fully_depolarized(n: int, d: Optional[int] = None) -> Ensemble:
    """ρ_dep = ⊗_j (1/d) Σ_k |k⟩⟨k|, 共 d^N 个等权乘积态"""
    if n < 2:
        raise ValueError(f"要求 N ≥ 2, 得到 {n}")
    d = n if d is None else d
    states = [product_state(levels, n, d) for levels in itertools.product(range(d), repeat=n)]
    weight = 1.0 / len(states)
    return Ensemble(tuple((weight, v) for v in states), n, d)


# ============================================================================
# 无损局域噪声
# ============================================================================


def _check_level_unitary(u: np.ndarray, d: int, where: str) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.shape != (d, d):
        raise ValueError(f"{where}: 期望 {d}×{d} 矩阵, 得到 {u.shape}")
    deviation = unitarity_deviation(u)
    if deviation > UNITARITY_TOL:
        raise ValueError(f"{where}: 矩阵不是幺正的 (偏差 {deviation:.3e})")
    return u


def rotate_levels(v: FockVector, per_mode_unitaries: Sequence[np.ndarray]) -> FockVector:
    """每个空间模式内独立旋转内部能级: a†_{i,l} -> Σ_{l'} u_i[l', l] a†_{i,l'}"""
    if len(per_mode_unitaries) != v.modes:
        raise ValueError(f"需要 {v.modes} 个局域幺正, 得到 {len(per_mode_unitaries)}")
    images = {}
    for mode, u in enumerate(per_mode_unitaries):
        u = _check_level_unitary(u, v.levels, f"模式 {mode} 的噪声")
        for level in range(v.levels):
            images[(mode, level)] = [
                ((mode, int(k)), complex(u[k, level])) for k in np.flatnonzero(u[:, level])
            ]
    return transform_single_particle(v, images)


def apply_local_noise(ens: Ensemble, per_mode_unitaries: Sequence[np.ndarray]) -> Ensemble:
    """逐分量施加乘积形式的无损局域噪声, 权重与每模式粒子数不变"""
    rotated = tuple((w, rotate_levels(v, per_mode_unitaries)) for w, v in ens)
    return Ensemble(rotated, ens.modes, ens.levels)


def global_rotation(v: FockVector, u: np.ndarray) -> FockVector:
    """所有模式施加同一个内部旋转 u⊗…⊗u"""
    return rotate_levels(v, [u] * v.modes)


def random_local_unitaries(m: int, d: int, seed: SeedLike = None) -> List[np.ndarray]:
    rng = np.random.default_rng(seed)
    return [random_unitary(d, rng).matrix for _ in range(m)]


def apply_correlated_noise(ens: Ensemble, seed: SeedLike = None) -> Ensemble:
    """
    单粒子每模式扇区内的关联无损噪声: 对 d^m 维内部空间施加一个随机联合幺正。

    所有分量共用同一个幺正, 即一个确定的 (非乘积) 噪声信道。
    """
    m, d = ens.modes, ens.levels
    unitary = random_unitary(d ** m, seed, label="correlated").matrix
    basis = [product_state(levels, m, d) for levels in itertools.product(range(d), repeat=m)]
    labels = [next(iter(b)) for b in basis]
    index = {label: i for i, label in enumerate(labels)}

    components = []
    for weight, state in ens:
        vec = np.zeros(len(labels), dtype=complex)
        for occ, amp in state.items():
            if occ not in index:
                raise ValueError(f"关联噪声要求每个模式恰有一个粒子, 基矢 {occ!r} 不满足")
            vec[index[occ]] = amp
        out = unitary @ vec
        components.append(
            (weight, FockVector(dict(zip(labels, out)), m, d, state.tol))
        )
    return Ensemble(tuple(components), m, d)

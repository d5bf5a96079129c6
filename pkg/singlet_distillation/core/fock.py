# ============================================================================
# singlet_distillation/core/fock.py - Fock 空间核心
# ============================================================================

"""
占据数基矢、稀疏态矢量与产生算符代数。

单粒子模式由 (空间模式, 内部能级) 二元组标记, 均从 0 开始编号。
产生算符约定: a†|n⟩ = √(n+1)|n+1⟩。
"""

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from types import MappingProxyType
from typing import (Callable, Dict, Iterable, Iterator, List, Mapping,
                    Optional, Sequence, Tuple)

import numpy as np

PRUNE_TOL = 1e-12
NORM_TOL = 1e-10

SingleMode = Tuple[int, int]
# (mode, level) -> [((mode', level'), 系数), ...]
ParticleImages = Mapping[SingleMode, Sequence[Tuple[SingleMode, complex]]]


@dataclass(frozen=True)
class OccupationState:
    """占据数基矢标签, entries 为按 (mode, level) 排序的 (mode, level, count)"""

    entries: Tuple[Tuple[int, int, int], ...]
    modes: int
    levels: int

    def __post_init__(self):
        if self.modes < 1 or self.levels < 1:
            raise ValueError(f"模式数与能级数必须为正: m={self.modes}, d={self.levels}")

        merged: Dict[SingleMode, int] = {}
        for mode, level, count in self.entries:
            if not 0 <= mode < self.modes:
                raise ValueError(f"mode 越界: {mode} (m={self.modes})")
            if not 0 <= level < self.levels:
                raise ValueError(f"level 越界: {level} (d={self.levels})")
            if count < 1:
                raise ValueError(f"占据数必须为正整数: {(mode, level, count)}")
            if (mode, level) in merged:
                raise ValueError(f"重复的单粒子模式: {(mode, level)}")
            merged[(mode, level)] = int(count)

        canonical = tuple(
            (mode, level, count) for (mode, level), count in sorted(merged.items())
        )
        object.__setattr__(self, "entries", canonical)

    @classmethod
    def from_counts(
        cls, counts: Mapping[SingleMode, int], modes: int, levels: int
    ) -> "OccupationState":
        """由 {(mode, level): count} 构造, 零占据项被丢弃"""
        entries = tuple(
            (int(mode), int(level), int(count))
            for (mode, level), count in counts.items()
            if count != 0
        )
        return cls(entries, modes, levels)

    @classmethod
    def vacuum(cls, modes: int, levels: int) -> "OccupationState":
        return cls((), modes, levels)

    def total_particles(self) -> int:
        return sum(count for _, _, count in self.entries)

    def count(self, mode: int, level: int) -> int:
        for m, l, c in self.entries:
            if m == mode and l == level:
                return c
        return 0

    def counts(self) -> Dict[SingleMode, int]:
        return {(m, l): c for m, l, c in self.entries}

    def mode_occupation(self) -> Tuple[int, ...]:
        """各空间模式的粒子数 r⃗ (内部能级被求和)"""
        occupation = [0] * self.modes
        for mode, _, count in self.entries:
            occupation[mode] += count
        return tuple(occupation)

    def particles(self) -> Tuple[SingleMode, ...]:
        """产生算符单项式: 每个粒子一个 (mode, level), 按重数重复"""
        return tuple(
            (mode, level)
            for mode, level, count in self.entries
            for _ in range(count)
        )

    def factorial_weight(self) -> int:
        """Π n! , 用于 a† 单项式与归一化基矢之间的换算"""
        weight = 1
        for _, _, count in self.entries:
            weight *= math.factorial(count)
        return weight

    def level_at(self, mode: int) -> int:
        """返回单占据模式中粒子的能级"""
        found = [(level, count) for m, level, count in self.entries if m == mode]
        if len(found) != 1 or found[0][1] != 1:
            raise ValueError(f"模式 {mode} 不是单粒子占据: {self.entries}")
        return found[0][0]

    def replace_level(self, mode: int, level: int) -> "OccupationState":
        """替换单占据模式中粒子的内部能级"""
        self.level_at(mode)
        counts = {(m, l): c for m, l, c in self.entries if m != mode}
        counts[(mode, level)] = 1
        return OccupationState.from_counts(counts, self.modes, self.levels)

    def relabel_modes(self, images: Sequence[int]) -> "OccupationState":
        """空间模式重新标记 mode -> images[mode], 能级不变"""
        counts = {(images[m], l): c for m, l, c in self.entries}
        return OccupationState.from_counts(counts, self.modes, self.levels)

    def add_particle(self, mode: int, level: int) -> "OccupationState":
        counts = self.counts()
        counts[(mode, level)] = counts.get((mode, level), 0) + 1
        return OccupationState.from_counts(counts, self.modes, self.levels)

    def __repr__(self) -> str:
        body = ", ".join(f"{m}:{l}^{c}" if c > 1 else f"{m}:{l}" for m, l, c in self.entries)
        return f"|{body}⟩"


class FockVector:
    """稀疏复振幅展开, 构造后不可变"""

    __slots__ = ("_amplitudes", "modes", "levels", "tol", "_particles")

    def __init__(
        self,
        amplitudes: Mapping[OccupationState, complex],
        modes: int,
        levels: int,
        tol: float = PRUNE_TOL,
    ):
        pruned: Dict[OccupationState, complex] = {}
        particles: Optional[int] = None

        for state, amp in amplitudes.items():
            if state.modes != modes or state.levels != levels:
                raise ValueError(
                    f"基矢空间不一致: 期望 (m={modes}, d={levels}),"
                    f" 得到 (m={state.modes}, d={state.levels})"
                )
            amp = complex(amp)
            if abs(amp) < tol:
                continue
            n = state.total_particles()
            if particles is None:
                particles = n
            elif n != particles:
                raise ValueError(f"粒子数不一致: {particles} 与 {n}")
            pruned[state] = amp

        self._amplitudes = pruned
        self._particles = particles
        self.modes = modes
        self.levels = levels
        self.tol = tol

    # ------------------------------------------------------------------
    # 读取
    # ------------------------------------------------------------------
    @property
    def amplitudes(self) -> Mapping[OccupationState, complex]:
        return MappingProxyType(self._amplitudes)

    @property
    def particle_number(self) -> Optional[int]:
        """零矢量返回 None"""
        return self._particles

    def items(self):
        return self._amplitudes.items()

    def amplitude(self, state: OccupationState) -> complex:
        return self._amplitudes.get(state, 0j)

    def terms(self) -> List[Tuple[OccupationState, complex]]:
        """按规范顺序排列的 (基矢, 振幅)"""
        return sorted(self._amplitudes.items(), key=lambda kv: kv[0].entries)

    def is_zero(self) -> bool:
        return not self._amplitudes

    def __len__(self) -> int:
        return len(self._amplitudes)

    def __iter__(self) -> Iterator[OccupationState]:
        return iter(self._amplitudes)

    # ------------------------------------------------------------------
    # 线性运算
    # ------------------------------------------------------------------
    def same_space(self, other: "FockVector") -> bool:
        if self.modes != other.modes or self.levels != other.levels:
            return False
        if self._particles is None or other._particles is None:
            return True
        return self._particles == other._particles

    def _check_space(self, other: "FockVector"):
        if not self.same_space(other):
            raise ValueError(
                f"态矢量空间不匹配: (m={self.modes}, d={self.levels}, N={self._particles})"
                f" vs (m={other.modes}, d={other.levels}, N={other._particles})"
            )

    def scaled(self, factor: complex) -> "FockVector":
        return FockVector(
            {s: a * factor for s, a in self._amplitudes.items()},
            self.modes,
            self.levels,
            self.tol,
        )

    def __mul__(self, factor: complex) -> "FockVector":
        return self.scaled(factor)

    __rmul__ = __mul__

    def __neg__(self) -> "FockVector":
        return self.scaled(-1)

    def __add__(self, other: "FockVector") -> "FockVector":
        return linear_combination([(1, self), (1, other)], self.modes, self.levels, self.tol)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return linear_combination([(1, self), (-1, other)], self.modes, self.levels, self.tol)

    def relabeled(self, mapping: Callable[[OccupationState], OccupationState]) -> "FockVector":
        """对每个基矢标签施加映射, 振幅不变, 映射到同一标签的项相加"""
        result: Dict[OccupationState, complex] = defaultdict(complex)
        for state, amp in self._amplitudes.items():
            result[mapping(state)] += amp
        return FockVector(result, self.modes, self.levels, self.tol)

    # ------------------------------------------------------------------
    # 范数
    # ------------------------------------------------------------------
    def norm_squared(self) -> float:
        return float(sum(abs(a) ** 2 for a in self._amplitudes.values()))

    def norm(self) -> float:
        return math.sqrt(self.norm_squared())

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm_squared() - 1.0) <= tol

    def normalized(self) -> "FockVector":
        norm = self.norm()
        if norm == 0.0:
            raise ValueError("零矢量无法归一化")
        return self.scaled(1.0 / norm)

    def __repr__(self) -> str:
        shown = " + ".join(f"({a:.4g}){s!r}" for s, a in self.terms()[:6])
        more = "" if len(self) <= 6 else f" + ... ({len(self)} 项)"
        return f"FockVector(m={self.modes}, d={self.levels}: {shown or '0'}{more})"


# ============================================================================
# 构造函数
# ============================================================================


def vacuum(modes: int, levels: int, tol: float = PRUNE_TOL) -> FockVector:
    return FockVector({OccupationState.vacuum(modes, levels): 1.0}, modes, levels, tol)


def basis_state(state: OccupationState, amplitude: complex = 1.0) -> FockVector:
    return FockVector({state: amplitude}, state.modes, state.levels)


def product_state(levels: Sequence[int], modes: int, dim: int) -> FockVector:
    """|l_0, l_1, ..., l_{m-1}⟩: 每个空间模式一个粒子"""
    if len(levels) != modes:
        raise ValueError(f"levels 长度 {len(levels)} 与模式数 {modes} 不符")
    for mode, level in enumerate(levels):
        if not 0 <= level < dim:
            raise ValueError(f"模式 {mode} 的能级 {level} 超出 [0, {dim})")
    state = OccupationState.from_counts(
        {(mode, int(level)): 1 for mode, level in enumerate(levels)}, modes, dim
    )
    return basis_state(state)


def one_per_mode_basis(modes: int, dim: int) -> Iterator[FockVector]:
    """单粒子占据每个空间模式的扇区的全部基矢, 共 dim**modes 个"""
    for levels in itertools.product(range(dim), repeat=modes):
        yield product_state(levels, modes, dim)


def apply_creation(v: FockVector, mode: int, level: int) -> FockVector:
    """作用产生算符 a†_{mode, level}"""
    if not 0 <= mode < v.modes:
        raise ValueError(f"mode 越界: {mode} (m={v.modes})")
    if not 0 <= level < v.levels:
        raise ValueError(f"level 越界: {level} (d={v.levels})")

    result = {}
    for state, amp in v.items():
        n = state.count(mode, level)
        result[state.add_particle(mode, level)] = amp * math.sqrt(n + 1)
    return FockVector(result, v.modes, v.levels, v.tol)


def tensor_product(a: FockVector, b: FockVector) -> FockVector:
    """拼接两个空间模式寄存器, b 的模式编号整体平移 a.modes"""
    if a.levels != b.levels:
        raise ValueError(f"内部维数不一致: {a.levels} vs {b.levels}")
    modes = a.modes + b.modes
    result = {}
    for sa, amp_a in a.items():
        for sb, amp_b in b.items():
            counts = {(m, l): c for m, l, c in sa.entries}
            counts.update({(m + a.modes, l): c for m, l, c in sb.entries})
            result[OccupationState.from_counts(counts, modes, a.levels)] = amp_a * amp_b
    return FockVector(result, modes, a.levels, min(a.tol, b.tol))


def linear_combination(
    pairs: Iterable[Tuple[complex, FockVector]],
    modes: int,
    levels: int,
    tol: float = PRUNE_TOL,
) -> FockVector:
    """Σ c_i v_i, 一次累加后统一剪枝"""
    result: Dict[OccupationState, complex] = defaultdict(complex)
    for coef, vector in pairs:
        if vector.modes != modes or vector.levels != levels:
            raise ValueError(
                f"态矢量空间不匹配: 期望 (m={modes}, d={levels}),"
                f" 得到 (m={vector.modes}, d={vector.levels})"
            )
        for state, amp in vector.items():
            result[state] += coef * amp
    return FockVector(result, modes, levels, tol)


# ============================================================================
# 内积与比较
# ============================================================================


def inner_product(a: FockVector, b: FockVector) -> complex:
    """⟨a|b⟩, 占据数基正交归一"""
    a._check_space(b)
    if len(a) > len(b):
        return complex(sum(a.amplitude(s).conjugate() * amp for s, amp in b.items()))
    return complex(sum(amp.conjugate() * b.amplitude(s) for s, amp in a.items()))


def fidelity(a: FockVector, b: FockVector, tol: float = NORM_TOL) -> float:
    """|⟨a|b⟩|², 与全局相位无关"""
    for name, v in (("a", a), ("b", b)):
        if not v.is_normalized(tol):
            raise ValueError(f"fidelity 要求归一化输入: ‖{name}‖² = {v.norm_squared():.12g}")
    value = abs(inner_product(a, b)) ** 2
    return float(min(1.0, value))


def max_deviation(a: FockVector, b: FockVector) -> float:
    """振幅级别的最大偏差 max |a_s - b_s|"""
    a._check_space(b)
    keys = set(a.amplitudes) | set(b.amplitudes)
    if not keys:
        return 0.0
    return float(max(abs(a.amplitude(s) - b.amplitude(s)) for s in keys))


# ============================================================================
# 单粒子线性变换 (产生算符替换)
# ============================================================================


def transform_single_particle(v: FockVector, images: ParticleImages) -> FockVector:
    """
    把每个 a†_{mode,level} 替换为 Σ c·a†_{mode',level'} 并重新展开到占据数基。

    基矢 |n⟩ = Π (a†)^n / √(Π n!) |0⟩; 逐粒子相乘展开多项式, 相同单项式先合并,
    最后乘回 √(Π n'!) 得到归一化基矢的振幅。
    """
    result: Dict[OccupationState, complex] = defaultdict(complex)

    for state, amp in v.items():
        polynomial: Dict[Tuple[SingleMode, ...], complex] = {
            (): amp / math.sqrt(state.factorial_weight())
        }
        for particle in state.particles():
            targets = images.get(particle)
            if targets is None:
                raise ValueError(f"缺少单粒子模式 {particle} 的映射")
            expanded: Dict[Tuple[SingleMode, ...], complex] = defaultdict(complex)
            for word, coef in polynomial.items():
                for target, weight in targets:
                    expanded[tuple(sorted(word + (target,)))] += coef * weight
            polynomial = expanded

        for word, coef in polynomial.items():
            out = OccupationState.from_counts(Counter(word), v.modes, v.levels)
            result[out] += coef * math.sqrt(out.factorial_weight())

    return FockVector(result, v.modes, v.levels, v.tol)


def random_one_per_mode_state(modes: int, dim: int, rng: np.random.Generator) -> FockVector:
    """单粒子每模式扇区内的随机归一化纯态 (复高斯系数)"""
    basis = list(one_per_mode_basis(modes, dim))
    coefs = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
    return linear_combination(zip(coefs, basis), modes, dim).normalized()

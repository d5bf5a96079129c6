# ============================================================================
# singlet_distillation/core/symmetry.py - 置换对称性与广义单态
# ============================================================================

import cmath
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .fock import (FockVector, inner_product, linear_combination,
                   product_state)


@dataclass(frozen=True)
class Permutation:
    """空间模式置换, images[i] 为模式 i 的去向"""

    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"不是 [0, {len(images)}) 上的双射: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(m)))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def compose(self, other: "Permutation") -> "Permutation":
        """(p∘q)(i) = p(q(i))"""
        if self.size != other.size:
            raise ValueError(f"置换大小不一致: {self.size} vs {other.size}")
        return Permutation(tuple(self.images[other.images[i]] for i in range(self.size)))

    __mul__ = compose

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, image in enumerate(self.images):
            inv[image] = i
        return Permutation(tuple(inv))

    def power(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.size)
        for _ in range(abs(k)):
            result = base.compose(result)
        return result

    def cycles(self) -> List[Tuple[int, ...]]:
        """轮换分解 (含不动点), 每个轮换从其最小元素开始"""
        seen = set()
        cycles = []
        for start in range(self.size):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            cycles.append(tuple(cycle))
        return cycles

    def order(self) -> int:
        """最小的 k ≥ 1 使 p^k 为恒等"""
        return int(np.lcm.reduce([len(c) for c in self.cycles()]))

    def sign(self) -> int:
        return -1 if (self.size - len(self.cycles())) % 2 else 1


def all_permutations(m: int) -> List[Permutation]:
    return [Permutation(p) for p in itertools.permutations(range(m))]


def random_permutation(m: int, rng: np.random.Generator) -> Permutation:
    return Permutation(tuple(int(x) for x in rng.permutation(m)))


def permute_modes(v: FockVector, p: Permutation) -> FockVector:
    """a†_{i,level} -> a†_{p(i),level}, 玻色子无符号"""
    if p.size != v.modes:
        raise ValueError(f"置换大小 {p.size} 与模式数 {v.modes} 不符")
    return v.relabeled(lambda state: state.relabel_modes(p.images))


def cyclic(j: int, m: int) -> Permutation:
    """前 j 个模式上的 j-轮换 0→1→…→j-1→0, 其余模式不动"""
    if j < 2 or j > m:
        raise ValueError(f"轮换长度须满足 2 ≤ j ≤ m, 得到 j={j}, m={m}")
    return Permutation(tuple((i + 1) % j if i < j else i for i in range(m)))


def eigenspace_projector_apply(
    v: FockVector, j: int, m: int, eigenvalue: Optional[complex] = None
) -> FockVector:
    """
    投影到 cyclic(j, m) 的本征值 μ 本征空间: P_μ = (1/j) Σ_{k=1..j} (μ̄ π)^k。

    μ 缺省为 (-1)^{j-1}, 此时即反聚束所需的本征空间。
    """
    if v.modes != m:
        raise ValueError(f"态的模式数 {v.modes} 与 m={m} 不符")
    cycle = cyclic(j, m)
    mu = complex((-1) ** (j - 1)) if eigenvalue is None else complex(eigenvalue)
    if abs(mu ** j - 1) > 1e-9:
        raise ValueError(f"本征值 {mu} 不是 {j} 次单位根")

    pairs = []
    power = Permutation.identity(m)
    for k in range(1, j + 1):
        power = cycle.compose(power)
        pairs.append((mu.conjugate() ** k / j, permute_modes(v, power)))
    return linear_combination(pairs, v.modes, v.levels, v.tol)


def antisymmetrizer_apply(v: FockVector, n: int) -> FockVector:
    """(1/N!) Σ_{π∈S_N} sgn(π) π"""
    if v.modes != n:
        raise ValueError(f"反对称化要求 m = N, 得到 m={v.modes}, N={n}")
    norm = math.factorial(n)
    pairs = ((p.sign() / norm, permute_modes(v, p)) for p in all_permutations(n))
    return linear_combination(pairs, v.modes, v.levels, v.tol)


# ============================================================================
# 广义单态
# ============================================================================


def singlet_over_levels(n: int, levels: Iterable[int], d: int) -> FockVector:
    """限制在能级子集 S 上的 N 体 N 能级单态 |A_N^S⟩"""
    chosen = tuple(sorted(int(x) for x in levels))
    if len(chosen) != n or len(set(chosen)) != n:
        raise ValueError(f"能级子集必须恰含 {n} 个不同能级, 得到 {chosen}")
    if d < n:
        raise ValueError(f"内部维数 d={d} 小于粒子数 N={n}")
    if any(not 0 <= level < d for level in chosen):
        raise ValueError(f"能级子集越界: {chosen} (d={d})")

    amplitude = 1.0 / math.sqrt(math.factorial(n))
    pairs = []
    for p in all_permutations(n):
        levels_by_mode = [chosen[p(i)] for i in range(n)]
        pairs.append((p.sign() * amplitude, product_state(levels_by_mode, n, d)))
    return linear_combination(pairs, n, d)


def generalized_singlet(n: int) -> FockVector:
    """|A_N⟩, m = d = N"""
    if n < 2:
        raise ValueError(f"广义单态要求 N ≥ 2, 得到 {n}")
    return singlet_over_levels(n, range(n), n)


def level_subsets(n: int, d: int) -> List[Tuple[int, ...]]:
    return list(itertools.combinations(range(d), n))


@lru_cache(maxsize=None)
def antisymmetric_basis(n: int, d: int) -> Tuple[Tuple[Tuple[int, ...], FockVector], ...]:
    """全反对称子空间 (单粒子占据每个模式) 的正交基 {|A_N^S⟩}"""
    return tuple((subset, singlet_over_levels(n, subset, d)) for subset in level_subsets(n, d))


def antisymmetric_state(
    n: int, d: int, coefficients: Mapping[Sequence[int], complex]
) -> FockVector:
    """Σ_S c_S |A_N^S⟩, 结果归一化"""
    if not coefficients:
        raise ValueError("系数表为空")
    pairs = [(c, singlet_over_levels(n, subset, d)) for subset, c in coefficients.items()]
    return linear_combination(pairs, n, d).normalized()


def random_antisymmetric_state(n: int, d: int, rng: np.random.Generator) -> FockVector:
    subsets = level_subsets(n, d)
    coefs = rng.normal(size=len(subsets)) + 1j * rng.normal(size=len(subsets))
    return antisymmetric_state(n, d, dict(zip(subsets, coefs)))


def antisymmetric_weight(v: FockVector) -> float:
    """Σ_S |⟨A_N^S|v⟩|²: v 在全反对称子空间上的投影权重 (要求 m = N)"""
    n = v.modes
    if v.particle_number not in (None, n):
        raise ValueError(f"要求粒子数等于模式数, 得到 N={v.particle_number}, m={n}")
    if n < 2 or v.levels < n:
        return 0.0
    return float(
        sum(abs(inner_product(a, v)) ** 2 for _, a in antisymmetric_basis(n, v.levels))
    )


def eigenvalue_label(mu: complex, j: int) -> str:
    """把 j 次单位根写成 ω^q"""
    q = int(round(cmath.phase(mu) / (2 * math.pi) * j)) % j
    return "1" if q == 0 else f"ω^{q}"

# ============================================================================
# singlet_distillation/analysis/suppression.py - 多端口抑制律
# ============================================================================

"""
抑制律: 输入态在模式置换 P 下获得相位 e^{iφ}, 若输出分布 s⃗ 满足
Π_α λ_{d_α(s⃗)} ≠ e^{iφ}, 则该输出概率为零 (必要条件, 非充分)。

约定: permute_modes(v, p) 即 a†_i -> a†_{p(i)}, φ 定义为 permute_modes(v, p) = e^{iφ} v。
在行=输出的矩阵约定下, 输出模式 k 携带的本征值 λ_k 满足 U[k, p(ℓ)] = λ_k U[k, ℓ]。
"""

import cmath
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..core.channels import Ensemble
from ..core.fock import (FockVector, inner_product, linear_combination,
                         one_per_mode_basis)
from ..core.interferometer import (ModeUnitary, apply_mode_unitary,
                                   fourier_matrix)
from ..core.symmetry import (Permutation, cyclic, eigenspace_projector_apply,
                             eigenvalue_label, permute_modes)

PHASE_TOL = 1e-9
AMPLITUDE_TOL = 1e-10


@dataclass(frozen=True)
class ModeOccupationList:
    """r⃗ = (r_1, …, r_n): 每个空间模式中的粒子数"""

    r: Tuple[int, ...]

    def __post_init__(self):
        r = tuple(int(x) for x in self.r)
        if any(x < 0 for x in r):
            raise ValueError(f"占据数不能为负: {r}")
        object.__setattr__(self, "r", r)

    @property
    def particles(self) -> int:
        return sum(self.r)

    def __len__(self) -> int:
        return len(self.r)


@dataclass(frozen=True)
class ModeAssignmentList:
    """d⃗(r⃗): 每个粒子所在模式, 升序"""

    d_list: Tuple[int, ...]

    def __post_init__(self):
        if list(self.d_list) != sorted(self.d_list):
            raise ValueError(f"模式分配表必须升序: {self.d_list}")


@dataclass(frozen=True)
class EigenvalueVector:
    """每个 (输出) 模式对应的单位模本征值"""

    lambdas: Tuple[complex, ...]

    def __post_init__(self):
        lambdas = tuple(complex(x) for x in self.lambdas)
        for x in lambdas:
            if abs(abs(x) - 1.0) > 1e-10:
                raise ValueError(f"本征值必须为单位模: {x}")
        object.__setattr__(self, "lambdas", lambdas)

    def __len__(self) -> int:
        return len(self.lambdas)

    def __getitem__(self, k: int) -> complex:
        return self.lambdas[k]

    def product(self) -> complex:
        return complex(np.prod(self.lambdas))


def mode_assignment(r: ModeOccupationList) -> ModeAssignmentList:
    return ModeAssignmentList(tuple(i for i, count in enumerate(r.r) for _ in range(count)))


def suppression_predicate(
    lambdas: EigenvalueVector, phi: float, s: ModeOccupationList, tol: float = PHASE_TOL
) -> bool:
    """True 表示输出 s⃗ 被抑制"""
    if len(lambdas) != len(s):
        raise ValueError(f"本征值个数 {len(lambdas)} 与模式数 {len(s)} 不符")
    product = complex(np.prod([lambdas[k] for k in mode_assignment(s).d_list]))
    return abs(product - cmath.exp(1j * phi)) > tol


def cyclic_eigenvalues(n: int) -> EigenvalueVector:
    """U_N 各列 (本征矢) 在 N-轮换下的本征值 λ_j = ω^{1-j}, j = 1…N"""
    if n < 2:
        raise ValueError(f"要求 N ≥ 2, 得到 {n}")
    return EigenvalueVector(tuple(cmath.exp(-2j * math.pi * k / n) for k in range(n)))


# ============================================================================
# 一般形式: 置换的本征基与本征多端口
# ============================================================================


def permutation_eigenbasis(p: Permutation) -> Tuple[ModeUnitary, EigenvalueVector]:
    """
    置换矩阵 (P e_i = e_{p(i)}) 的本征矢矩阵 A 与本征值。

    每个长度 L 的轮换 (c_0 → c_1 → …) 使用一个 Fourier L 端口块:
    A[c_t, c_r] = (U_L)[t, r], 对应本征值 ω_L^{-r}。
    """
    m = p.size
    matrix = np.zeros((m, m), dtype=complex)
    lambdas = [1.0 + 0j] * m
    for cycle in p.cycles():
        length = len(cycle)
        block = fourier_matrix(length).matrix
        for r, column in enumerate(cycle):
            lambdas[column] = cmath.exp(-2j * math.pi * r / length)
            for t, row in enumerate(cycle):
                matrix[row, column] = block[t, r]
    return ModeUnitary(matrix, f"A[{p.images}]"), EigenvalueVector(tuple(lambdas))


def eigenvector_multiport(
    p: Permutation, sigma: Optional[Sequence[complex]] = None
) -> ModeUnitary:
    """抑制律适用的多端口 U = Σ·A† (行=输出约定), Σ 为输出端对角相位, 缺省为单位阵"""
    a, _ = permutation_eigenbasis(p)
    sigma = np.ones(p.size) if sigma is None else np.asarray(sigma, dtype=complex)
    return ModeUnitary(np.diag(sigma) @ a.matrix.conj().T, f"Σ·A†[{p.images}]")


def output_eigenvalues(u: ModeUnitary, p: Permutation, tol: float = PHASE_TOL) -> EigenvalueVector:
    """每个输出模式 k 的本征值 λ_k, 满足 U[k, p(ℓ)] = λ_k U[k, ℓ]; 不满足时抛出 ValueError"""
    if u.dim != p.size:
        raise ValueError(f"幺正维数 {u.dim} 与置换大小 {p.size} 不符")
    matrix = u.matrix
    lambdas = []
    for k in range(u.dim):
        row = matrix[k]
        pivot = int(np.argmax(np.abs(row)))
        lam = row[p(pivot)] / row[pivot]
        permuted = np.array([row[p(ell)] for ell in range(u.dim)])
        if np.max(np.abs(permuted - lam * row)) > tol:
            raise ValueError(f"{u.label} 的第 {k} 行不是置换 {p.images} 的本征行")
        lambdas.append(lam / abs(lam))
    return EigenvalueVector(tuple(lambdas))


def invariance_phase(v: FockVector, p: Permutation, tol: float = PHASE_TOL) -> Optional[float]:
    """若 permute_modes(v, p) = e^{iφ} v 则返回 φ ∈ (-π, π], 否则 None"""
    if v.is_zero():
        return None
    overlap = inner_product(v, permute_modes(v, p)) / v.norm_squared()
    if abs(abs(overlap) - 1.0) > tol:
        return None
    return cmath.phase(overlap)


def permutation_eigenspace_apply(v: FockVector, p: Permutation, eigenvalue: complex) -> FockVector:
    """任意置换的本征空间投影 (1/L) Σ_{k=0}^{L-1} (μ̄ p)^k, L 为置换的阶"""
    order = p.order()
    mu = complex(eigenvalue)
    if abs(mu ** order - 1) > PHASE_TOL:
        raise ValueError(f"本征值 {mu} 不是 {order} 次单位根")
    pairs = [
        (mu.conjugate() ** k / order, permute_modes(v, p.power(k))) for k in range(order)
    ]
    return linear_combination(pairs, v.modes, v.levels, v.tol)


def antibunch_allowed(ens: Ensemble, j: int, m: int, tol: float = PHASE_TOL) -> bool:
    """反聚束必要条件 Tr(ρP) ≠ 0"""
    trace = sum(
        w * inner_product(v, eigenspace_projector_apply(v, j, m)).real for w, v in ens
    )
    logging.debug(f"Tr(ρP) = {trace:.12g} (j={j}, m={m})")
    return abs(trace) > tol


# ============================================================================
# 输出分布
# ============================================================================


def occupation_lists(particles: int, modes: int) -> Iterator[ModeOccupationList]:
    """n 个粒子在 m 个模式上的全部占据表 (隔板法枚举)"""
    for bars in itertools.combinations(range(particles + modes - 1), modes - 1):
        edges = (-1,) + bars + (particles + modes - 1,)
        yield ModeOccupationList(tuple(edges[i + 1] - edges[i] - 1 for i in range(modes)))


def output_probability(v: FockVector, s: ModeOccupationList) -> float:
    """对内部能级求和后输出占据 s⃗ 的概率"""
    return float(sum(abs(a) ** 2 for occ, a in v.items() if occ.mode_occupation() == s.r))


def output_max_amplitude(v: FockVector, s: ModeOccupationList) -> float:
    amps = [abs(a) for occ, a in v.items() if occ.mode_occupation() == s.r]
    return float(max(amps)) if amps else 0.0


def cyclic_eigenstates(n: int, eigenvalue: complex) -> List[FockVector]:
    """把每个单粒子每模式乘积基矢投影到 cyclic(n, n) 的本征空间, 归一化后去掉零矢量"""
    states = []
    for basis_vector in one_per_mode_basis(n, n):
        projected = eigenspace_projector_apply(basis_vector, n, n, eigenvalue)
        if projected.norm_squared() > 1e-20:
            states.append(projected.normalized())
    return states


def suppression_table(
    n: int,
    crosscheck: bool = True,
    multiport: Optional[ModeUnitary] = None,
    amplitude_tol: float = AMPLITUDE_TOL,
) -> pd.DataFrame:
    """
    N 粒子 N 模式的抑制律表: 每个轮换本征值类 × 每个输出占据表。

    crosscheck 时对该类全部本征态精确计算输出振幅, 记录最大振幅并核对:
    被抑制的输出振幅必须 ≤ amplitude_tol。
    """
    u = fourier_matrix(n) if multiport is None else multiport
    cycle = cyclic(n, n)
    lambdas = output_eigenvalues(u, cycle)

    rows = []
    for q in range(n):
        mu = cmath.exp(2j * math.pi * q / n)
        phi = cmath.phase(mu)
        outputs: Dict[Tuple[int, ...], float] = {}
        if crosscheck:
            for state in cyclic_eigenstates(n, mu):
                evolved = apply_mode_unitary(state, u)
                for occ, amp in evolved.items():
                    key = occ.mode_occupation()
                    outputs[key] = max(outputs.get(key, 0.0), abs(amp))

        for s in occupation_lists(n, n):
            suppressed = suppression_predicate(lambdas, phi, s)
            row = {
                "class": eigenvalue_label(mu, n),
                "output": "(" + ",".join(map(str, s.r)) + ")",
                "verdict": "suppressed" if suppressed else "allowed",
            }
            if crosscheck:
                amplitude = outputs.get(s.r, 0.0)
                row["max_amplitude"] = amplitude
                row["consistent"] = (not suppressed) or amplitude <= amplitude_tol
            rows.append(row)

    return pd.DataFrame(rows)

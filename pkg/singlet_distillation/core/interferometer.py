# ============================================================================
# singlet_distillation/core/interferometer.py - 模式幺正变换
# ============================================================================

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from scipy.stats import unitary_group

from .fock import FockVector, transform_single_particle

UNITARITY_TOL = 1e-10

SeedLike = Union[None, int, np.random.Generator]


@dataclass(frozen=True, eq=False)
class ModeUnitary:
    """
    只作用于空间模式的 m×m 幺正矩阵, 内部能级不变。

    矩阵约定: 行号为输出模式, 列号为输入模式,
    即 a†_ℓ -> Σ_k U[k, ℓ] a†_k。
    """

    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"模式幺正矩阵必须是方阵, 得到形状 {matrix.shape}")
        deviation = unitarity_deviation(matrix)
        if deviation > UNITARITY_TOL:
            raise ValueError(
                f"矩阵 '{self.label}' 不是幺正的: ‖UU†-1‖_max = {deviation:.3e}"
            )
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def determinant(self) -> complex:
        return complex(np.linalg.det(self.matrix))

    def dagger(self) -> "ModeUnitary":
        return ModeUnitary(self.matrix.conj().T, f"{self.label}†")

    def __matmul__(self, other: "ModeUnitary") -> "ModeUnitary":
        """u2 @ u1: 先 u1 后 u2"""
        if self.dim != other.dim:
            raise ValueError(f"维数不一致: {self.dim} vs {other.dim}")
        return ModeUnitary(self.matrix @ other.matrix, f"{self.label}·{other.label}")


def unitarity_deviation(matrix: np.ndarray) -> float:
    n = matrix.shape[0]
    return float(np.max(np.abs(matrix @ matrix.conj().T - np.eye(n))))


def identity(m: int) -> ModeUnitary:
    return ModeUnitary(np.eye(m), f"1_{m}")


def fourier_matrix(n: int) -> ModeUnitary:
    """Fourier 多端口 U_n, (k, ℓ) 元 = ω^{kℓ}/√n, ω = e^{2πi/n}"""
    if n < 1:
        raise ValueError(f"Fourier 多端口的端口数必须 ≥ 1, 得到 {n}")
    k = np.arange(n)
    matrix = np.exp(2j * np.pi * np.outer(k, k) / n) / np.sqrt(n)
    return ModeUnitary(matrix, f"U_{n}")


def fourier_determinant(n: int) -> complex:
    """
    det U_n 的闭式。U_n 的本征值只有 ±1, ±i; 共轭约定 (ω = e^{-2πi/n}) 下
    1, -1, -i, i 的重数由 n mod 4 决定, 取共轭即得本约定下的行列式。

    反对称的每模式单粒子态满足 U|Ψ⟩ = det(U)|Ψ⟩, 故 |A_n⟩ 在 U_n 下的本征相位
    就是此值: n = 2, 3, 4, 5 时依次为 -1, -i, -i, -1。
    """
    if n < 1:
        raise ValueError(f"Fourier 多端口的端口数必须 ≥ 1, 得到 {n}")
    m, r = divmod(n, 4)
    _, minus_one, minus_i, plus_i = {
        0: (m + 1, m, m, m - 1),
        1: (m + 1, m, m, m),
        2: (m + 1, m + 1, m, m),
        3: (m + 1, m + 1, m + 1, m),
    }[r]
    det = (-1) ** minus_one * (-1j) ** minus_i * (1j) ** plus_i
    return complex(det).conjugate()


def embed(u: ModeUnitary, modes: Sequence[int], m: int) -> ModeUnitary:
    """把 j 端口嵌入 m 模式系统: 子集外为恒等, 子集内按给定顺序作用 u"""
    modes = [int(x) for x in modes]
    if len(modes) != u.dim:
        raise ValueError(f"模式子集长度 {len(modes)} 与 {u.label} 维数 {u.dim} 不符")
    if len(set(modes)) != len(modes):
        raise ValueError(f"模式子集包含重复索引: {modes}")
    if any(not 0 <= x < m for x in modes):
        raise ValueError(f"模式子集越界: {modes} (m={m})")

    matrix = np.eye(m, dtype=complex)
    matrix[np.ix_(modes, modes)] = u.matrix
    return ModeUnitary(matrix, f"{u.label}@{modes}")


def apply_mode_unitary(v: FockVector, u: ModeUnitary) -> FockVector:
    """a†_{ℓ,level} -> Σ_k u[k, ℓ] a†_{k,level}, 按占据数基重新展开"""
    if u.dim != v.modes:
        raise ValueError(f"幺正矩阵维数 {u.dim} 与态的模式数 {v.modes} 不符")

    images = {}
    for ell in range(v.modes):
        column = u.matrix[:, ell]
        rows = np.flatnonzero(column)
        for level in range(v.levels):
            images[(ell, level)] = [((int(k), level), complex(column[k])) for k in rows]

    result = transform_single_particle(v, images)
    logging.debug(f"{u.label}: {len(v)} 项 -> {len(result)} 项")
    return result


def phase_variant(
    u: ModeUnitary,
    d_in: Sequence[complex],
    d_out: Sequence[complex],
    tol: float = UNITARITY_TOL,
) -> ModeUnitary:
    """diag(d_out) · u · diag(d_in): 在输入/输出端附加局域相位"""
    d_in = np.asarray(d_in, dtype=complex)
    d_out = np.asarray(d_out, dtype=complex)
    for name, phases in (("d_in", d_in), ("d_out", d_out)):
        if phases.shape != (u.dim,):
            raise ValueError(f"{name} 长度必须为 {u.dim}, 得到 {phases.shape}")
        if np.any(np.abs(np.abs(phases) - 1.0) > tol):
            raise ValueError(f"{name} 含非单位模相位: {phases}")
    matrix = np.diag(d_out) @ u.matrix @ np.diag(d_in)
    return ModeUnitary(matrix, f"D·{u.label}·D'")


def random_unitary(m: int, seed: SeedLike = None, label: Optional[str] = None) -> ModeUnitary:
    """复高斯矩阵正交化得到的随机幺正 (Haar 测度), 种子可复现"""
    rng = np.random.default_rng(seed)
    if m == 1:
        matrix = np.exp(2j * np.pi * rng.uniform()).reshape(1, 1)
    else:
        matrix = unitary_group.rvs(m, random_state=rng)
    return ModeUnitary(matrix, label or f"haar_{m}")


def random_phases(m: int, seed: SeedLike = None) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return np.exp(2j * np.pi * rng.uniform(size=m))

# ============================================================================
# singlet_distillation/utils/file_utils.py - 态、系综与幺正矩阵文件读写
# ============================================================================

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np

from ..core.channels import Ensemble, pure
from ..core.fock import FockVector, OccupationState
from ..core.interferometer import ModeUnitary
from .validation import EnsembleValidator, StateValidator, UnitaryValidator

PathLike = Union[str, Path]


def round_sig(value: float, precision: Optional[int] = None) -> float:
    """保留 precision 位有效数字; None 表示不截断"""
    value = float(value)
    if precision is None:
        return value
    return float(f"{value:.{precision}g}")


def _complex_pair(z: complex, precision: Optional[int]) -> list:
    return [round_sig(z.real, precision), round_sig(z.imag, precision)]


# ============================================================================
# 态
# ============================================================================


def state_to_dict(v: FockVector, precision: Optional[int] = None) -> Dict[str, Any]:
    """按规范顺序写出 occ 条目与振幅"""
    return {
        "modes": v.modes,
        "levels": v.levels,
        "terms": [
            {"occ": [list(entry) for entry in occ.entries], "amp": _complex_pair(amp, precision)}
            for occ, amp in v.terms()
        ],
    }


def state_from_dict(data: Dict[str, Any], where: str = "") -> FockVector:
    ok, msg = StateValidator.validate_state_dict(data, where)
    if not ok:
        raise ValueError(msg)

    modes, levels = data["modes"], data["levels"]
    amplitudes: Dict[OccupationState, complex] = {}
    for i, term in enumerate(data["terms"]):
        occ = OccupationState(tuple(tuple(e) for e in term["occ"]), modes, levels)
        if occ in amplitudes:
            raise ValueError(f"{where + '.' if where else ''}terms[{i}].occ: 重复的基矢 {occ!r}")
        amplitudes[occ] = complex(*term["amp"])
    return FockVector(amplitudes, modes, levels)


# ============================================================================
# 系综
# ============================================================================


def ensemble_to_dict(ens: Ensemble, precision: Optional[int] = None) -> Dict[str, Any]:
    return {
        "modes": ens.modes,
        "levels": ens.levels,
        "components": [
            {"weight": round_sig(w, precision), "state": state_to_dict(v, precision)}
            for w, v in ens
        ],
    }


def ensemble_from_dict(data: Dict[str, Any]) -> Ensemble:
    ok, msg = EnsembleValidator.validate_ensemble_dict(data)
    if not ok:
        raise ValueError(msg)

    components = []
    for i, component in enumerate(data["components"]):
        where = f"components[{i}].state"
        state = state_from_dict(component["state"], where)
        if not state.is_normalized():
            raise ValueError(f"{where}: 未归一化, ‖v‖² = {state.norm_squared():.12g}")
        components.append((float(component["weight"]), state))
    return Ensemble(tuple(components), data["modes"], data["levels"])


# ============================================================================
# 幺正矩阵
# ============================================================================


def unitary_to_dict(u: ModeUnitary, precision: Optional[int] = None) -> Dict[str, Any]:
    return {
        "dim": u.dim,
        "rows": [[_complex_pair(z, precision) for z in row] for row in u.matrix],
    }


def unitary_from_dict(data: Dict[str, Any], label: str = "file") -> ModeUnitary:
    ok, msg = UnitaryValidator.validate_unitary_dict(data)
    if not ok:
        raise ValueError(msg)
    matrix = np.array([[complex(re, im) for re, im in row] for row in data["rows"]])
    return ModeUnitary(matrix, label)


# ============================================================================
# 文件
# ============================================================================


def load_json(path: PathLike) -> Any:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"文件不存在: {path}")
    with open(path, "r", encoding="utf-8") as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as e:
            raise ValueError(f"{path}: JSON 解析失败 (第 {e.lineno} 行): {e.msg}") from e


def dump_json(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def save_json(data: Any, path: PathLike):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dump_json(data))
    logging.debug(f"已写入 {path}")


def load_state(path: PathLike) -> FockVector:
    return state_from_dict(load_json(path))


def load_unitary(path: PathLike) -> ModeUnitary:
    return unitary_from_dict(load_json(path), Path(path).stem)


def load_ensemble(path: PathLike) -> Ensemble:
    """系综文件或纯态文件 (视为权重 1 的系综)"""
    data = load_json(path)
    if isinstance(data, dict) and "components" in data:
        return ensemble_from_dict(data)
    state = state_from_dict(data)
    if not state.is_normalized():
        raise ValueError(f"terms: 纯态未归一化, ‖v‖² = {state.norm_squared():.12g}")
    return pure(state)

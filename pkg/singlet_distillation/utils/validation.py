# ============================================================================
# singlet_distillation/utils/validation.py - 输入文件数据验证
# ============================================================================

import numbers
from typing import Any, Optional, Tuple

import numpy as np

Result = Tuple[bool, Optional[str]]


def _is_int(value: Any) -> bool:
    return isinstance(value, numbers.Integral) and not isinstance(value, bool)


def _is_real(value: Any) -> bool:
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


def _check_complex_pair(value: Any, where: str) -> Result:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        return False, f"{where}: 复数必须写成 [re, im], 得到 {value!r}"
    if not all(_is_real(x) for x in value):
        return False, f"{where}: 实部与虚部必须为数值, 得到 {value!r}"
    return True, None


class StateValidator:
    """态文件验证工具"""

    @staticmethod
    def validate_space(data: Any, where: str = "") -> Result:
        prefix = f"{where}." if where else ""
        if not isinstance(data, dict):
            return False, f"{where or '顶层'}: 必须是 JSON 对象"
        for key in ("modes", "levels"):
            if key not in data:
                return False, f"缺少必需字段: {prefix}{key}"
            if not _is_int(data[key]) or data[key] < 1:
                return False, f"{prefix}{key}: 必须为正整数, 得到 {data[key]!r}"
        return True, None

    @staticmethod
    def validate_state_dict(data: Any, where: str = "") -> Result:
        """验证 {"modes", "levels", "terms": [{"occ", "amp"}]}"""
        ok, msg = StateValidator.validate_space(data, where)
        if not ok:
            return ok, msg

        prefix = f"{where}." if where else ""
        modes, levels = data["modes"], data["levels"]
        terms = data.get("terms")
        if not isinstance(terms, list) or not terms:
            return False, f"{prefix}terms: 必须为非空列表"

        particles = None
        for i, term in enumerate(terms):
            at = f"{prefix}terms[{i}]"
            if not isinstance(term, dict) or "occ" not in term or "amp" not in term:
                return False, f"{at}: 必须包含 occ 与 amp"
            ok, msg = _check_complex_pair(term["amp"], f"{at}.amp")
            if not ok:
                return ok, msg

            occ = term["occ"]
            if not isinstance(occ, list):
                return False, f"{at}.occ: 必须为列表"
            seen = set()
            total = 0
            for k, entry in enumerate(occ):
                if (
                    not isinstance(entry, (list, tuple))
                    or len(entry) != 3
                    or not all(_is_int(x) for x in entry)
                ):
                    return False, f"{at}.occ[{k}]: 必须为 [mode, level, count] 整数三元组"
                mode, level, count = entry
                if not 0 <= mode < modes:
                    return False, f"{at}.occ[{k}]: mode {mode} 超出 [0, {modes})"
                if not 0 <= level < levels:
                    return False, f"{at}.occ[{k}]: level {level} 超出 [0, {levels})"
                if count < 1:
                    return False, f"{at}.occ[{k}]: count 必须为正, 得到 {count}"
                if (mode, level) in seen:
                    return False, f"{at}.occ[{k}]: 重复的 (mode, level) = {(mode, level)}"
                seen.add((mode, level))
                total += count
            if particles is None:
                particles = total
            elif total != particles:
                return False, f"{at}.occ: 粒子数 {total} 与前面各项的 {particles} 不一致"

        return True, None


class EnsembleValidator:
    """系综文件验证工具"""

    @staticmethod
    def validate_ensemble_dict(data: Any, tol: float = 1e-10) -> Result:
        ok, msg = StateValidator.validate_space(data)
        if not ok:
            return ok, msg

        components = data.get("components")
        if not isinstance(components, list) or not components:
            return False, "components: 必须为非空列表"

        total = 0.0
        for i, component in enumerate(components):
            at = f"components[{i}]"
            if not isinstance(component, dict) or "weight" not in component or "state" not in component:
                return False, f"{at}: 必须包含 weight 与 state"
            weight = component["weight"]
            if not _is_real(weight) or weight <= 0:
                return False, f"{at}.weight: 必须为正数, 得到 {weight!r}"
            total += weight

            state = component["state"]
            ok, msg = StateValidator.validate_state_dict(state, f"{at}.state")
            if not ok:
                return ok, msg
            if (state["modes"], state["levels"]) != (data["modes"], data["levels"]):
                return False, f"{at}.state: 空间 (modes, levels) 与系综不一致"

        if abs(total - 1.0) > tol:
            return False, f"components[*].weight: 权重和必须为 1, 得到 {total:.12g}"
        return True, None


class UnitaryValidator:
    """幺正矩阵文件验证工具"""

    @staticmethod
    def validate_unitary_dict(data: Any, tol: float = 1e-10) -> Result:
        """验证 {"dim": m, "rows": [[[re, im], ...], ...]}"""
        if not isinstance(data, dict):
            return False, "顶层: 必须是 JSON 对象"
        dim = data.get("dim")
        if not _is_int(dim) or dim < 1:
            return False, f"dim: 必须为正整数, 得到 {dim!r}"
        rows = data.get("rows")
        if not isinstance(rows, list) or len(rows) != dim:
            return False, f"rows: 必须恰有 {dim} 行"

        matrix = np.zeros((dim, dim), dtype=complex)
        for r, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != dim:
                return False, f"rows[{r}]: 必须恰有 {dim} 个元素"
            for c, value in enumerate(row):
                ok, msg = _check_complex_pair(value, f"rows[{r}][{c}]")
                if not ok:
                    return ok, msg
                matrix[r, c] = complex(value[0], value[1])

        deviation = float(np.max(np.abs(matrix @ matrix.conj().T - np.eye(dim))))
        if deviation > tol:
            return False, f"rows: 矩阵不是幺正的 (偏差 {deviation:.3e})"
        return True, None

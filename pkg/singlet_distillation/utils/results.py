# ============================================================================
# singlet_distillation/utils/results.py - 结果管理
# ============================================================================


import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import pandas as pd

from .file_utils import dump_json, ensemble_to_dict, round_sig

FORMATS = ("json", "csv")
CSV_COLUMNS = ["record", "index", "value", "imag", "occ"]


class ResultManager:
    """协议报告的 JSON / CSV 输出"""

    def __init__(self, precision: int = 12):
        self.precision = precision

    def report_to_dict(self, report) -> Dict[str, Any]:
        """固定键顺序: N, steps, p_success, fidelity, output"""
        p = self.precision
        return {
            "N": report.n,
            "steps": [{"j": j, "p": round_sig(prob, p)} for j, prob in report.steps],
            "p_success": round_sig(report.success_probability, p),
            "fidelity": round_sig(report.fidelity_with_singlet, p),
            "output": ensemble_to_dict(report.output, p) if report.output is not None else None,
        }

    def report_to_frame(self, report) -> pd.DataFrame:
        """
        CSV 行: 每步一行 (step, j, p), 之后是 p_success 与 fidelity;
        协议成功时再列出输出系综: component 行 (分量序号, 权重) 与
        term 行 (分量序号, 振幅实部, 虚部, 占据数 mode-level-count 以 ";" 分隔)。
        """
        p = self.precision
        rows = [
            {"record": "step", "index": j, "value": round_sig(prob, p)} for j, prob in report.steps
        ]
        rows.append({"record": "p_success", "value": round_sig(report.success_probability, p)})
        rows.append({"record": "fidelity", "value": round_sig(report.fidelity_with_singlet, p)})

        if report.output is not None:
            for i, (weight, state) in enumerate(report.output):
                rows.append({"record": "component", "index": i, "value": round_sig(weight, p)})
                for occ, amp in state.terms():
                    rows.append({
                        "record": "term",
                        "index": i,
                        "value": round_sig(amp.real, p),
                        "imag": round_sig(amp.imag, p),
                        "occ": ";".join("-".join(str(x) for x in entry) for entry in occ.entries),
                    })

        df = pd.DataFrame(rows, columns=CSV_COLUMNS)
        df["index"] = df["index"].astype("Int64")
        return df

    def render(self, report, fmt: str = "json") -> str:
        if fmt == "json":
            return dump_json(self.report_to_dict(report))
        if fmt == "csv":
            return self.report_to_frame(report).to_csv(
                index=False, float_format=f"%.{self.precision}g", lineterminator="\n"
            )
        raise ValueError(f"format 必须是 {FORMATS} 之一, 得到 {fmt!r}")

    def save_report(self, report, path: Optional[str] = None, fmt: str = "json") -> Optional[Path]:
        """写入文件; path 为空时写到标准输出"""
        text = self.render(report, fmt)
        if path is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return None

        out_path = Path(path)
        out_path.parent.mkdir(parents=True, exist_ok=True)
        with open(out_path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        logging.info(f"报告已保存: {out_path}")
        return out_path

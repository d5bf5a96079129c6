# ============================================================================
# singlet_distillation/utils/logging.py - 日志管理
# ============================================================================

import contextlib
import logging
import platform
import sys
import time
from pathlib import Path
from typing import Iterator, Optional

from tqdm import tqdm

CONSOLE_FORMAT = "%(levelname)s: %(message)s"
FILE_FORMAT = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"
DEFAULT_LOG_DIR = Path.home() / ".singlet_distillation" / "logs"


class TqdmHandler(logging.Handler):
    """经 ``tqdm.write`` 写到标准错误, 进度条不被打断; 标准输出留给报告"""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            tqdm.write(self.format(record), file=sys.stderr)
        except Exception:
            self.handleError(record)


class LogManager:
    """日志管理器: 按配置的 logging 节设置根日志"""

    def __init__(self, config=None):
        settings = config.get("logging") if config is not None and hasattr(config, "get") else None
        level_name = str(getattr(settings, "level", "INFO")).upper()
        self.level = getattr(logging, level_name, None)
        if not isinstance(self.level, int):
            self.level = logging.INFO

        root = logging.getLogger()
        root.setLevel(self.level)
        for handler in root.handlers[:]:
            root.removeHandler(handler)

        console = TqdmHandler()
        console.setFormatter(logging.Formatter(CONSOLE_FORMAT))
        root.addHandler(console)

        self.log_file: Optional[Path] = None
        if getattr(settings, "log_to_file", False):
            self.log_file = self._attach_file_handler(root, getattr(settings, "log_dir", None))

    @staticmethod
    def _attach_file_handler(root: logging.Logger, log_dir: Optional[str]) -> Path:
        directory = Path(log_dir) if log_dir else DEFAULT_LOG_DIR
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / f"singlet_distillation_{time.strftime('%Y%m%d_%H%M%S')}.log"

        handler = logging.FileHandler(path, encoding="utf-8")
        handler.setFormatter(logging.Formatter(FILE_FORMAT))
        root.addHandler(handler)
        logging.info(f"日志记录到文件: {path}")
        return path

    def log_system_info(self):
        """记录运行环境与数值库版本"""
        import joblib
        import numpy
        import pandas
        import scipy

        logging.info("=" * 50)
        logging.info(f"操作系统: {platform.platform()}")
        logging.info(f"Python版本: {platform.python_version()} ({sys.executable})")
        logging.info(
            f"numpy {numpy.__version__}, scipy {scipy.__version__},"
            f" pandas {pandas.__version__}, joblib {joblib.__version__}"
        )
        logging.info("=" * 50)


@contextlib.contextmanager
def log_elapsed(label: str, level: int = logging.INFO) -> Iterator[None]:
    """记录代码块耗时"""
    start = time.time()
    try:
        yield
    finally:
        logging.log(level, f"{label}耗时 {time.time() - start:.2f}s")

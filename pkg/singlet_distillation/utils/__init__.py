from .file_utils import load_ensemble, load_state, load_unitary
from .logging import LogManager
from .results import ResultManager
from .validation import EnsembleValidator, StateValidator, UnitaryValidator

__all__ = [
    "LogManager",
    "ResultManager",
    "StateValidator",
    "EnsembleValidator",
    "UnitaryValidator",
    "load_ensemble",
    "load_state",
    "load_unitary",
]

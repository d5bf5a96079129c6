from .suppression import (EigenvalueVector, ModeAssignmentList,
                          ModeOccupationList, cyclic_eigenvalues,
                          suppression_predicate, suppression_table)
from .verification import CHECKS, VerificationSuite

__all__ = [
    "ModeOccupationList",
    "ModeAssignmentList",
    "EigenvalueVector",
    "suppression_predicate",
    "cyclic_eigenvalues",
    "suppression_table",
    "VerificationSuite",
    "CHECKS",
]

from .channels import (Ensemble, apply_local_noise, depolarize_mode,
                       fully_depolarized, pure)
from .fock import FockVector, OccupationState, inner_product, product_state
from .interferometer import (ModeUnitary, apply_mode_unitary, embed,
                             fourier_determinant, fourier_matrix,
                             phase_variant)
from .symmetry import (Permutation, antisymmetrizer_apply, cyclic,
                       eigenspace_projector_apply, generalized_singlet,
                       permute_modes)

__all__ = [
    "OccupationState",
    "FockVector",
    "inner_product",
    "product_state",
    "ModeUnitary",
    "fourier_matrix",
    "fourier_determinant",
    "embed",
    "apply_mode_unitary",
    "phase_variant",
    "Permutation",
    "permute_modes",
    "cyclic",
    "eigenspace_projector_apply",
    "antisymmetrizer_apply",
    "generalized_singlet",
    "Ensemble",
    "pure",
    "depolarize_mode",
    "fully_depolarized",
    "apply_local_noise",
]

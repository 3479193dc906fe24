"""clockchain: clock-string operator algebra and integrability checks for
range-r quantum lattice chains."""

from .strings import (ClockString, OperatorSum, commutator, anticommutator,
                      nested_commutator, multiply, pauli_string, omega)
from .models import (ModelSpec, gca_generator, tl_generator,
                     onsager_generator, commuting_charge, hamiltonian,
                     dual_generator, clifford_transform, onsager_tower,
                     load_model_config, model_from_dict)
from .linalg import to_dense
from .reports import VerificationReport, make_report

__version__ = "0.1.0"

__all__ = [
    "ClockString", "OperatorSum", "commutator", "anticommutator",
    "nested_commutator", "multiply", "pauli_string", "omega",
    "ModelSpec", "gca_generator", "tl_generator", "onsager_generator",
    "commuting_charge", "hamiltonian", "dual_generator",
    "clifford_transform", "onsager_tower", "load_model_config",
    "model_from_dict", "to_dense", "VerificationReport", "make_report",
]

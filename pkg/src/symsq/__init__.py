"""Pairwise entanglement in symmetric qubit systems.

Local invariants, covariance-matrix criteria and spin-squeezing measures
for two-qubit and collective N-qubit states, backed by a brute-force
symmetric-subspace simulator.
"""

__version__ = "0.1.0"

from .states import (  # noqa: E402
    SpecialClassState,
    SymmetricTwoQubitState,
    TwoQubitState,
    from_bloch,
    symmetric_from_special,
)
from .invariants import (  # noqa: E402
    makhlin_all,
    special_class_invariants,
    symmetric_six,
    symmetric_six_from_bloch,
)
from .covariance import c_matrix, c_negativity_test  # noqa: E402
from .collective import classify_invariants, squeezing  # noqa: E402
from .models import atomic_pair, dicke_pair, ku_pair, sweep  # noqa: E402

__all__ = [
    "SpecialClassState",
    "SymmetricTwoQubitState",
    "TwoQubitState",
    "from_bloch",
    "symmetric_from_special",
    "makhlin_all",
    "special_class_invariants",
    "symmetric_six",
    "symmetric_six_from_bloch",
    "c_matrix",
    "c_negativity_test",
    "classify_invariants",
    "squeezing",
    "atomic_pair",
    "dicke_pair",
    "ku_pair",
    "sweep",
    "__version__",
]

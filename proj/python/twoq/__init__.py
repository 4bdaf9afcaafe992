"""Two-qubit information toolkit.

Thin wrapper around the C++ core: state families and noise channels,
entropy/information ledgers, concurrence and tangle, the tangle-entropy
frontier, and simulated Pauli tomography with Poissonian counting noise.
States are plain numpy complex arrays (2x2 or 4x4 density matrices).
"""

from ._twoq import (
    ParamOutOfRange,
    InvalidStateError,
    BadShots,
    __version__,
    apply_channel,
    bloch,
    concurrence,
    error_bars,
    fidelity,
    hermitian_eigen,
    info_budget,
    kron,
    linear_information,
    make_state,
    max_tangle_at_entropy,
    partial_trace,
    purity,
    reconstruct,
    sample_random_state,
    simulate_counts,
    state_from_json,
    state_to_json,
    tangle,
    triality_ledger,
    validate,
    visibility_predictability,
    von_neumann_entropy,
)

__all__ = [
    "ParamOutOfRange",
    "InvalidStateError",
    "BadShots",
    "__version__",
    "apply_channel",
    "bloch",
    "concurrence",
    "error_bars",
    "fidelity",
    "hermitian_eigen",
    "info_budget",
    "kron",
    "linear_information",
    "make_state",
    "max_tangle_at_entropy",
    "partial_trace",
    "purity",
    "reconstruct",
    "sample_random_state",
    "simulate_counts",
    "state_from_json",
    "state_to_json",
    "tangle",
    "triality_ledger",
    "validate",
    "visibility_predictability",
    "von_neumann_entropy",
]

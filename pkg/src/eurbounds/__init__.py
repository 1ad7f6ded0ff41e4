"""Entropic uncertainty lower bounds for two-qubit states.

Computes the classical-strategy, quantum-memory, discord-tightened,
fine-grained and extractable-classical-information bounds (L0 to L4) on
the sum of outcome entropies of two qubit observables.
"""

from .bounds import (
    BoundReport,
    GameSpec,
    SettingsResult,
    adaptive_complementarity,
    bound_l0,
    bound_l1,
    bound_l2,
    bound_l3,
    bound_l4,
    chsh_game,
    complementarity,
    disagreement_game,
    full_report,
    game_probability,
    lhs_entropic,
    lhs_fano,
    optimize_settings,
)
from .correlations import (
    OptimizationResult,
    classical_gain,
    classical_information,
    extractable_classical_information,
    luo_classical_information,
    quantum_discord,
)
from .entropy import binary_entropy, conditional_vn, mutual_information, shannon, von_neumann
from .exceptions import (
    ConvergenceWarning,
    EURError,
    GameSpecError,
    InvalidDirectionError,
    InvalidInputError,
    InvalidStateError,
    ParameterError,
    UnsupportedDimensionError,
)
from .linalg import hermitian_eigensystem, partial_trace, tensor_product
from .measurement import Side, condition_on, dephase, joint_distribution, p_different
from .states import (
    DensityMatrix,
    Observable,
    bell_diagonal,
    classical_state,
    make_state,
    mixed_marginal,
    pure_entangled,
    random_state,
    validate,
    werner,
)

__version__ = "0.1.0"

"""Products of short cycles C_m^N: level sets, exact operator identities,
invariant spaces and spatio-spectral limiting."""

from ._cyclespace import (
    BudgetExceeded,
    ConfigError,
    NumericalFailure,
    VertexTable,
    gft,
    level_matrix,
    multiplier_sequence,
    operator,
    spaces,
    ssl,
    verify,
)

__all__ = [
    "BudgetExceeded",
    "ConfigError",
    "NumericalFailure",
    "VertexTable",
    "gft",
    "level_matrix",
    "multiplier_sequence",
    "operator",
    "spaces",
    "ssl",
    "verify",
]

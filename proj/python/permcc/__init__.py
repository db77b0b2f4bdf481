"""Congruence closure of ground equations modulo permutation equations.

The heavy lifting lives in the compiled ``_permcc`` extension; this package
re-exports its public surface.
"""

try:
    from ._permcc import (
        Permutation,
        PermGroup,
        Solver,
        PermccError,
        solve,
        oracle_answers,
    )
except ImportError:  # in-tree builds put the extension on PYTHONPATH instead
    from _permcc import (
        Permutation,
        PermGroup,
        Solver,
        PermccError,
        solve,
        oracle_answers,
    )

__all__ = [
    "Permutation",
    "PermGroup",
    "Solver",
    "PermccError",
    "solve",
    "oracle_answers",
]

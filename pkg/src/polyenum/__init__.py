"""Enumeration of polyominoes and permutations, k-convexity series and
submatrix pattern classes."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    BinaryMatrix,
    CapExceeded,
    Permutation,
    Polyomino,
    PolyenumError,
    enumerate_permutations,
    enumerate_polyominoes,
    perm,
    perm_to_matrix,
    polyomino,
)
from .classify import convexity_degree, family_predicate, members  # noqa: E402
from .patterns import GenPattern, avoids_all, contains, parse_patterns  # noqa: E402
from .series import Series, family_series, gf_exact_degree, gf_k_parallelogram  # noqa: E402
from .trees import from_tree, to_tree  # noqa: E402

__all__ = [
    "BinaryMatrix", "CapExceeded", "GenPattern", "Permutation", "Polyomino", "PolyenumError",
    "Series", "avoids_all", "contains", "convexity_degree", "enumerate_permutations",
    "enumerate_polyominoes", "family_predicate", "family_series", "from_tree",
    "gf_exact_degree", "gf_k_parallelogram", "members", "parse_patterns", "perm",
    "perm_to_matrix", "polyomino", "to_tree",
]

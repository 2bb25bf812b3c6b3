"""Complete non-ambiguous trees (CNATs) and their links to permutation graphs
and the abelian sandpile model.

The submodules build on each other: ``perm`` and ``graph`` are standalone,
``sandpile`` and ``cnat`` sit on ``graph``, ``bijections`` on ``cnat``, and
``harness`` ties everything together for exhaustive tables and checks.
"""

from .cnat import Cnat, DotGrid, cnat_count, enumerate_cnats, validate
from .graph import Graph, permutation_graph, rooted_acyclic_orientations
from .perm import Permutation, parse

__version__ = "0.1.0"

__all__ = [
    "Cnat", "DotGrid", "Graph", "Permutation", "cnat_count", "enumerate_cnats",
    "parse", "permutation_graph", "rooted_acyclic_orientations", "validate",
]

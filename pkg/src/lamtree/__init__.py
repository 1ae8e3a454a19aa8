"""Laminar-constrained spanning trees with certified cost and thinness guarantees."""
from .lp import Infeasible
from .model import (DEFAULT_ETA, Graph, InputError, Instance, LaminarFamily, LaminarSet,
                    Partition, contract_sets, cut_edges, delta_partition, induced,
                    validate_laminar)
from .pipeline import (TreeReport, solve_from_point, solve_instance, solve_lp2,
                       thin_tree_for_k_connected, thinness_factor)

__all__ = [
    "DEFAULT_ETA", "Graph", "Infeasible", "InputError", "Instance", "LaminarFamily",
    "LaminarSet", "Partition", "TreeReport", "contract_sets", "cut_edges", "delta_partition",
    "induced", "solve_from_point", "solve_instance", "solve_lp2", "thin_tree_for_k_connected",
    "thinness_factor", "validate_laminar",
]

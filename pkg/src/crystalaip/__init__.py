"""Exact integer tensors, crystals, and the affine integer programming hierarchy."""

__version__ = "0.1.0"

from .tensor_core import IntTensor, apply_projection, contract, star  # noqa: E402
from .album import Album, is_realistic, mine_crystal, realize, verify_crystal  # noqa: E402
from .diophantine import hermite_normal_form, solve_diophantine  # noqa: E402
from .aip import Digraph, aip_level_k, build_system, clique, cycle  # noqa: E402
from .fooling import certify_main_theorem_witness, fooling_matrix  # noqa: E402

__all__ = [
    "Album",
    "Digraph",
    "IntTensor",
    "aip_level_k",
    "apply_projection",
    "build_system",
    "certify_main_theorem_witness",
    "clique",
    "contract",
    "cycle",
    "fooling_matrix",
    "hermite_normal_form",
    "is_realistic",
    "mine_crystal",
    "realize",
    "solve_diophantine",
    "star",
    "verify_crystal",
]

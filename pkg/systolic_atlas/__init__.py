__all__ = [
    "CubicMultigraph",
    "CanonicalCode",
    "canonical_code",
    "enumerate_census",
    "MoveSet",
    "whitehead",
    "apply_moveset",
    "girth_lift",
    "MdpVertex",
    "neighbors",
    "ball",
    "distance_to_set",
    "SparsityReport",
    "sparsity_experiment",
    "solve_pentagon",
    "build_hairy_torus",
    "build_y_surface",
    "verify_systole_certificate",
]

from .graphs.multigraph import CanonicalCode, CubicMultigraph, canonical_code
from .graphs.census import enumerate_census
from .rewrite import MoveSet, apply_moveset, girth_lift, whitehead
from .mdp import MdpVertex, ball, distance_to_set, neighbors
from .experiment import SparsityReport, sparsity_experiment
from .geometry import build_hairy_torus, build_y_surface, solve_pentagon, verify_systole_certificate

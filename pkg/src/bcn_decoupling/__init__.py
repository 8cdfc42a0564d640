"""IO-decoupling analysis and feedback synthesis for Boolean control networks."""

__version__ = "0.1.0"

from .bcn import BCNet, Trajectory, gamma_set, omega_set, simulate, step
from .decoupling import (DecouplingVerdict, NotSquareError, PreconditionError, XiMatrix, canonical_form,
                         check_def1, check_def2, decomposed_form, decoupled_forms, fiber_vector,
                         io_mapping, xi_matrix)
from .feedback import (Status, SynthesisOutcome, closed_loop, khat, kbar, synthesize_def1,
                       synthesize_def2, synthesize_def3)
from .files import load_network
from .logic import NetworkDefinition, ParseError, build_algebraic_form, parse, structure_matrix
from .oracle import (brute_def1, brute_def2, brute_def3, exhaustive_feedback_search,
                     output_reachability)
from .stp import DeltaVector, LogicalMatrix, khatri_rao, stp, swap_matrix, power_reducing_matrix

__all__ = [
    "BCNet", "Trajectory", "gamma_set", "omega_set", "simulate", "step",
    "DecouplingVerdict", "NotSquareError", "PreconditionError", "XiMatrix", "canonical_form",
    "check_def1", "check_def2", "decomposed_form", "decoupled_forms", "fiber_vector",
    "io_mapping", "xi_matrix",
    "Status", "SynthesisOutcome", "closed_loop", "khat", "kbar",
    "synthesize_def1", "synthesize_def2", "synthesize_def3",
    "load_network",
    "NetworkDefinition", "ParseError", "build_algebraic_form", "parse", "structure_matrix",
    "brute_def1", "brute_def2", "brute_def3", "exhaustive_feedback_search", "output_reachability",
    "DeltaVector", "LogicalMatrix", "khatri_rao", "stp", "swap_matrix", "power_reducing_matrix",
]

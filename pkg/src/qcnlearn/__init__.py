"""Qualitative constraint networks: representation, propagation, and
active acquisition through membership queries."""

from .algebra import Calculus, CalculusError, compose, intersect, inverse, load_calculus
from .baselines import ClausalTheory, learn_conacq2, learn_naive
from .generation import GenConfig, GenerationError, generate_target, generate_target_pair
from .learner import (
    LearnResult,
    LearnerConfig,
    RunStats,
    apply_answer,
    learn,
    learn_with_mistakes,
    next_query,
)
from .network import NetworkError, Qcn, Scenario, enumerate_scenarios, new_universal, parse, serialize
from .oracle import Answer, OracleConfig, Query, SimulatedOracle, render_query
from .propagation import (
    ChordalStructure,
    PropagationResult,
    partial_path_consistency,
    path_consistency,
    path_consistency_incremental,
    triangulate,
)
from .teaching import ConceptClass, enumerate_concepts, teaching_dimension

__version__ = "0.1.0"

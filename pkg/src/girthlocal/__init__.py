"""Lower bounds for independence and max-cut ratios of large-girth regular
graphs, two ways: fixed-step integration of the idealized degree-evolution
processes, and the same local algorithms run on finite random regular
multigraphs, with an exact small-graph oracle to keep everything honest.
"""
from .evolution_core import (
    EvolutionParams,
    IntegrationError,
    ProcessExhausted,
    RefinementReport,
    Trajectory,
    integrate,
    refine,
)
from .is_evolution import (
    DegreeState,
    Is3Rules,
    Is4Rules,
    initial_degree_state,
    mu_of_lambda,
    phase1_rates,
)
from .cut_evolution import (
    CutEvolutionState,
    CutRates,
    CutRules,
    closed_form_rates,
    cut_step,
    edge_probability,
    solve_cut_rates,
)

__version__ = "0.1.0"

__all__ = [
    "EvolutionParams",
    "IntegrationError",
    "ProcessExhausted",
    "RefinementReport",
    "Trajectory",
    "integrate",
    "refine",
    "DegreeState",
    "Is3Rules",
    "Is4Rules",
    "initial_degree_state",
    "mu_of_lambda",
    "phase1_rates",
    "CutEvolutionState",
    "CutRates",
    "CutRules",
    "closed_form_rates",
    "cut_step",
    "edge_probability",
    "solve_cut_rates",
    "__version__",
]

"""cohesion-lab: spectral network-cohesion toolkit.

Graph metrics, Laplacian spectra and bounds, diffusion/consensus dynamics,
seeded network generators, least-squares fits, and reproduction experiments.
"""

from .errors import (
    CohesionError,
    ConvergenceError,
    DomainError,
    EdgeListParseError,
    ResourceBudgetError,
    ValidationError,
)
from .graphs import (
    Cycle,
    DistanceSummary,
    Graph,
    connected_components,
    density,
    distance_summary,
    from_edge_list,
    is_connected,
    longest_chordless_cycle,
    smallest_cycle,
    to_edge_list,
    vertex_connectivity,
)
from .spectra import (
    BoundReport,
    LaplacianKind,
    Spectrum,
    TradeoffMetrics,
    algebraic_connectivity,
    bound_report,
    eigen_sym,
    fiedler_pair,
    laplacian,
    spectrum,
    tradeoff_metrics,
)
from .dynamics import (
    MemoryExperimentResult,
    RoundSchedule,
    Susceptibility,
    Trajectory,
    convergence_time,
    diffuse_spectral,
    diffuse_stepped,
    memory_experiment,
    run_rounds,
)
from .generators import (
    RewireConfig,
    chord_midway,
    clique,
    clique_chain,
    clique_chain_groups,
    cycle,
    path,
    random_poisson,
    random_skewed,
    relocate_chord,
    relocation_suite,
    rewire,
    ring_lattice,
    square_lattice,
    star,
    two_cliques_bridged,
)
from .fitting import FitResult, fit_hyperbola, fit_line, fit_power_law
from .experiments import ExperimentConfig, ExperimentReport, load_targets, run_experiment

__version__ = "0.1.0"

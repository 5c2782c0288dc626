"""Local overlapping-community detection by seed-set expansion.

Pipeline: sample a working subgraph around the seeds by a short lazy random
walk, build an orthonormal local spectral subspace by subspace iteration on a
Krylov start, recover a sparse nonnegative indicator by one-norm minimization,
size the community with a conductance sweep, and reseed until the minimum
conductance turns back up.
"""

from .conductance import (
    ConductanceBounds,
    SpectralOracle,
    SweepCurve,
    conductance,
    rayleigh_quotient,
    spectral_bounds,
    stop_decision,
    sweep,
)
from .driver import (
    SYNTHETIC_COMBOS,
    DetectionResult,
    IterationRecord,
    LemonParams,
    detect,
    real_params,
    reseed,
    synthetic_params,
)
from .evaluation import BatchReport, GroundTruth, f1, read_communities, run_batch
from .graph import (
    Graph,
    GraphError,
    SampledSubgraph,
    build_graph,
    induced_subgraph,
    read_edge_list,
    shortest_path,
    volume,
    write_edge_list,
)
from .planted import PlantedSpec, generate_planted, preset_spec
from .recovery import (
    LpInfeasibleError,
    LpProblem,
    LpTolerances,
    ScoreVector,
    solve_sparse_indicator,
    truncate_top,
)
from .sampling import WalkState, sample_subgraph, walk_step
from .seeding import SeedSet, SeedingConfig, enlarge_seed_set, seed_count_policy, select_seeds
from .spectra import (
    NormalizedAdjacency,
    SpectralBasis,
    initial_probability,
    krylov_basis,
    local_spectra,
    orthonormalize,
    refine_basis,
)

__version__ = "0.1.0"

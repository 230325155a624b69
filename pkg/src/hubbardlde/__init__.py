"""Long-distance entanglement and four-dimensional teleportation over
open Fermi-Hubbard chains: exact diagonalization, end-pair density matrices,
concurrence lower bounds, and the generalized teleportation channel."""

from ._kernels import BACKEND as kernel_backend
from .errors import DomainError, EigensolverError, NumericalIntegrityError
from .fock import SectorBasis, apply_hop, enumerate_sector, local_config, mode_position
from .hamiltonian import (
    ModelSpec,
    SparseHamiltonian,
    build_alternating_bonds,
    build_alternating_hopping,
    build_hamiltonian,
    build_uniform,
)
from .eigensolver import GroundStateResult, dense_spectrum, ground_state, sector_scan
from .rdm import TwoSiteDensityMatrix, one_site_rdm, purity, two_site_rdm
from .entanglement import (
    ConcurrenceReport,
    SOGeneratorSet,
    concurrence_lower_bound,
    pair_lambdas,
    so_generators,
    state_probability,
)
from .teleport import (
    ChannelResult,
    ProjectorFamily,
    QuditState,
    average_fidelity,
    bell_family,
    channel_output,
    circuit_oracle,
    classical_threshold,
    fidelity,
    fully_entangled_fraction,
    hubbard_family,
    make_input_state,
    max_entangled_state,
    weyl_operator,
)
from .sweep import ResultRow, SweepConfig, emit_csv, linear_grid, run_sweep

__version__ = "0.1.0"

__all__ = [
    "ChannelResult",
    "ConcurrenceReport",
    "DomainError",
    "EigensolverError",
    "GroundStateResult",
    "ModelSpec",
    "NumericalIntegrityError",
    "ProjectorFamily",
    "QuditState",
    "ResultRow",
    "SOGeneratorSet",
    "SectorBasis",
    "SparseHamiltonian",
    "SweepConfig",
    "TwoSiteDensityMatrix",
    "apply_hop",
    "average_fidelity",
    "bell_family",
    "build_alternating_bonds",
    "build_alternating_hopping",
    "build_hamiltonian",
    "build_uniform",
    "channel_output",
    "circuit_oracle",
    "classical_threshold",
    "concurrence_lower_bound",
    "dense_spectrum",
    "emit_csv",
    "enumerate_sector",
    "fidelity",
    "fully_entangled_fraction",
    "ground_state",
    "hubbard_family",
    "kernel_backend",
    "linear_grid",
    "local_config",
    "make_input_state",
    "max_entangled_state",
    "mode_position",
    "one_site_rdm",
    "pair_lambdas",
    "purity",
    "run_sweep",
    "sector_scan",
    "so_generators",
    "state_probability",
    "two_site_rdm",
    "weyl_operator",
]

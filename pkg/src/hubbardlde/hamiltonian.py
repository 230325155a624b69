"""Sector-restricted sparse Hamiltonians for the three chain variants.

All energies are measured in units of the hopping amplitude t, so the
interaction enters as the dimensionless U.  Chains are open; bond ``b``
(1-based) couples sites ``b`` and ``b+1``.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from . import _kernels
from .errors import DomainError
from .fock import SectorBasis, enumerate_sector

DEFAULT_MAX_DIM = 10**7

UNIFORM = "uniform"
ALT_BONDS = "alt-bonds"
ALT_HOPPING = "alt-hopping"
VARIANTS = (UNIFORM, ALT_BONDS, ALT_HOPPING)


@dataclass(frozen=True)
class ModelSpec:
    """Parameters of one chain Hamiltonian."""

    variant: str
    L: int
    U: float
    delta: float = 0.0
    tau_a: float = 1.0
    tau_b: float = 1.0

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise DomainError(f"unknown variant {self.variant!r}, expected one of {VARIANTS}")
        if self.L < 2:
            raise DomainError(f"need at least 2 sites, got L={self.L}")
        if self.variant == ALT_BONDS:
            if self.L % 2:
                raise DomainError("alternating bonds require even L (weak bonds at both ends)")
            if not 0.0 <= self.delta <= 1.0:
                raise DomainError(f"delta={self.delta} outside [0, 1]")
        if self.variant == ALT_HOPPING:
            if self.L % 2:
                raise DomainError("alternating hopping requires even L")
            if self.tau_a < 0 or self.tau_b < 0:
                raise DomainError("hopping amplitudes must be non-negative")

    def bond_amplitudes(self) -> np.ndarray:
        """Hopping amplitude of each of the L-1 bonds."""
        bonds = np.arange(1, self.L)
        if self.variant == UNIFORM:
            return np.ones(self.L - 1)
        if self.variant == ALT_BONDS:
            # bond 1 carries 1 + (-1)^1 delta = 1 - delta: ends are weak.
            return 1.0 + np.where(bonds % 2 == 1, -self.delta, self.delta)
        return np.where(bonds % 2 == 1, self.tau_a, self.tau_b)

    def half_filled_sector(self) -> tuple:
        return (self.L // 2, self.L // 2)


@dataclass(eq=False)
class SparseHamiltonian:
    """Real symmetric operator on a SectorBasis, stored as CSR."""

    matrix: sp.csr_matrix = field(repr=False)
    basis: SectorBasis
    model: ModelSpec

    @property
    def dim(self) -> int:
        return self.basis.size

    def matvec(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ v

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()


def _resolve_sector(L, sector) -> SectorBasis:
    if sector is None:
        sector = (L // 2, L // 2)
    if isinstance(sector, SectorBasis):
        if sector.L != L:
            raise DomainError(f"sector basis is for L={sector.L}, model has L={L}")
        return sector
    n_up, n_down = sector
    return enumerate_sector(L, n_up, n_down)


def build_hamiltonian(model: ModelSpec, sector=None, max_dim: int = DEFAULT_MAX_DIM) -> SparseHamiltonian:
    """Assemble the sector-restricted Hamiltonian of ``model``.

    ``sector`` may be a (n_up, n_down) pair, a prebuilt SectorBasis, or None
    for half filling.  Sectors larger than ``max_dim`` are rejected.
    """
    basis = _resolve_sector(model.L, sector)
    dim = basis.size
    if dim > max_dim:
        raise DomainError(f"sector dimension {dim} exceeds cap {max_dim}")
    rows, cols, vals = _kernels.hop_entries(basis.states, model.L, model.bond_amplitudes())
    diag = model.U * _kernels.double_occupancy(basis.states, model.L).astype(np.float64)
    H = sp.coo_matrix((vals, (rows, cols)), shape=(dim, dim)).tocsr()
    H += sp.diags(diag, format="csr")
    return SparseHamiltonian(matrix=H, basis=basis, model=model)


def build_uniform(L, U, sector=None, max_dim=DEFAULT_MAX_DIM) -> SparseHamiltonian:
    """H = -sum (c+_i c_i+1 + h.c.) + U sum n_up n_down on the sector."""
    return build_hamiltonian(ModelSpec(UNIFORM, L, U), sector, max_dim)


def build_alternating_bonds(L, delta, U, sector=None, max_dim=DEFAULT_MAX_DIM) -> SparseHamiltonian:
    """Bond b carries prefactor 1 + (-1)^b delta, so both end bonds are weak."""
    return build_hamiltonian(ModelSpec(ALT_BONDS, L, U, delta=delta), sector, max_dim)


def build_alternating_hopping(L, tau_a, tau_b, U, sector=None, max_dim=DEFAULT_MAX_DIM) -> SparseHamiltonian:
    """Odd bonds (1,2), (3,4), ... carry tau_a; even bonds carry tau_b."""
    return build_hamiltonian(ModelSpec(ALT_HOPPING, L, U, tau_a=tau_a, tau_b=tau_b), sector, max_dim)


def spin_raising_matrix(basis: SectorBasis):
    """Sparse S+ = sum_i c+_{i,up} c_{i,down} from ``basis`` to the raised sector.

    Returns (matrix, raised_basis); the matrix is empty when the raised sector
    does not exist.
    """
    L = basis.L
    if basis.n_up == L or basis.n_down == 0:
        empty = sp.csr_matrix((0, basis.size))
        return empty, None
    raised = enumerate_sector(L, basis.n_up + 1, basis.n_down - 1)
    one = np.uint64(1)
    states = basis.states
    rows, cols, vals = [], [], []
    all_idx = np.arange(basis.size, dtype=np.int64)
    for site in range(1, L + 1):
        p_to = np.uint64(site - 1)
        p_from = np.uint64(L + site - 1)
        ok = (((states >> p_from) & one) == 1) & (((states >> p_to) & one) == 0)
        src = all_idx[ok]
        if src.size == 0:
            continue
        moved = states[ok] ^ ((one << p_from) | (one << p_to))
        between_mask = ((one << p_from) - one) ^ ((one << (p_to + one)) - one)
        parity = np.bitwise_count(states[ok] & between_mask) & one
        rows.append(raised.index_array(moved))
        cols.append(src)
        vals.append(1.0 - 2.0 * parity.astype(np.float64))
    if not rows:
        return sp.csr_matrix((raised.size, basis.size)), raised
    mat = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(raised.size, basis.size),
    ).tocsr()
    return mat, raised


def spin_squared_operator(basis: SectorBasis):
    """Linear-operator-style closure applying total S^2 within ``basis``.

    Uses S^2 = S- S+ + Sz (Sz + 1) with Sz fixed by the sector.
    """
    sz = 0.5 * (basis.n_up - basis.n_down)
    shift = sz * (sz + 1.0)
    s_plus, _ = spin_raising_matrix(basis)
    s_plus_t = s_plus.T.tocsr()

    def apply(v):
        return s_plus_t @ (s_plus @ v) + shift * v

    return apply

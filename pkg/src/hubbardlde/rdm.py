"""Two-site reduced density matrices in the four-state local basis.

The 16-dimensional pair space is ordered |a>|b> with a, b in {0, up, down,
updown} (index 4*a + b), sites 1-based with i < j.  Two conventions are
supported:

``"qudit"`` (default)
    The pair state of the qudit chain obtained from the fermion chain by the
    spin-major Jordan-Wigner mapping: a plain partial trace over the remaining
    modes, with site i's (up, down) mode pair forming the first qudit.  This
    is what the sweep tables report (and what a QuSpin-ordered state vector
    yields under a plain mode reshape).

``"fermionic"``
    Gram matrix of second-quantized extraction operators with full
    Jordan-Wigner reordering signs, i.e. matrix elements
    <psi| C+_i(a) C+_j(b) |0_i 0_j, e> summed over environments.  For a
    number-conserving state the two conventions agree except for
    environment-parity signs on charge-offdiagonal blocks.

Each convention has an independent dense oracle in ``oracle`` and the pair
must agree to 1e-12.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError
from .fock import SectorBasis

PAIR_DIM = 16
CONVENTIONS = ("qudit", "fermionic")

#: particle number and 2*Sz of each local configuration (0, up, down, updown)
_CONF_N = np.array([0, 1, 1, 2])
_CONF_SZ2 = np.array([0, 1, -1, 0])


@dataclass
class TwoSiteDensityMatrix:
    """16x16 Hermitian, unit-trace state of a site pair."""

    matrix: np.ndarray
    sites: tuple

    def purity(self) -> float:
        return purity(self)

    def eigen_probabilities(self) -> np.ndarray:
        """Mixture weights (ascending eigenvalues of the matrix)."""
        return np.linalg.eigvalsh(self.matrix)

    def dominant_eigenvector(self) -> np.ndarray:
        """Eigenvector of the largest mixture weight, phase-fixed."""
        _, vecs = np.linalg.eigh(self.matrix)
        v = vecs[:, -1]
        peak = np.argmax(np.abs(v))
        return v * np.conj(v[peak]) / np.abs(v[peak])

    def to_text(self) -> str:
        """Row-major dump, one row per line, entries formatted as "re,im"."""
        lines = []
        for row in self.matrix:
            lines.append(" ".join(f"{z.real:.12g},{z.imag:.12g}" for z in row))
        return "\n".join(lines) + "\n"


def _state_vector(state_or_result, basis):
    vec = np.asarray(getattr(state_or_result, "vector", state_or_result), dtype=float)
    if vec.shape != (basis.size,):
        raise DomainError(f"state length {vec.shape} does not match basis size {basis.size}")
    return vec


def two_site_rdm(
    state, basis: SectorBasis, i: int, j: int, convention: str = "qudit"
) -> TwoSiteDensityMatrix:
    """Reduced density matrix of sites (i, j) of a real sector state.

    ``state`` is a GroundStateResult or a plain amplitude vector over ``basis``.
    """
    if not (1 <= i < j <= basis.L):
        raise DomainError(f"need 1 <= i < j <= {basis.L}, got ({i}, {j})")
    if convention not in CONVENTIONS:
        raise DomainError(f"convention must be one of {CONVENTIONS}")
    amps = _state_vector(state, basis)
    env, cfg, sign = _kernels.rdm_extract(basis.states, basis.L, i, j)
    weights = amps if convention == "qudit" else sign * amps
    _, env_idx = np.unique(env, return_inverse=True)
    coef = np.zeros((env_idx.max() + 1, PAIR_DIM))
    coef[env_idx, cfg] = weights
    rho = (coef.T @ coef).astype(complex)
    rho /= np.trace(rho).real
    return TwoSiteDensityMatrix(matrix=rho, sites=(i, j))


def one_site_rdm(state, basis: SectorBasis, site: int) -> np.ndarray:
    """4x4 single-site density matrix, computed independently of two_site_rdm.

    Identical in both pair conventions (extraction signs square away on the
    diagonal, and number/Sz superselection makes the marginal diagonal).
    """
    if not 1 <= site <= basis.L:
        raise DomainError(f"site {site} outside 1..{basis.L}")
    amps = _state_vector(state, basis)
    one = np.uint64(1)
    up = (basis.states >> np.uint64(site - 1)) & one
    down = (basis.states >> np.uint64(basis.L + site - 1)) & one
    cfg = (up + 2 * down).astype(np.int64)
    rho = np.zeros((4, 4))
    np.add.at(rho, (cfg, cfg), amps**2)
    return (rho / np.trace(rho)).astype(complex)


def purity(rho) -> float:
    """Tr rho^2, in [1/16, 1] for a valid 16-dim state."""
    mat = getattr(rho, "matrix", rho)
    return float(np.trace(mat @ mat).real)


def partial_trace_site(rho: TwoSiteDensityMatrix, keep_first: bool = True) -> np.ndarray:
    """Trace one site out of a pair state; returns the 4x4 marginal."""
    mat = rho.matrix.reshape(4, 4, 4, 4)
    return np.einsum("abcb->ac", mat) if keep_first else np.einsum("abad->bd", mat)


def superselection_mask() -> np.ndarray:
    """Boolean 16x16 mask of entries allowed by particle-number and Sz blocks."""
    n_pair = (_CONF_N[:, None] + _CONF_N[None, :]).ravel()
    sz_pair = (_CONF_SZ2[:, None] + _CONF_SZ2[None, :]).ravel()
    return (n_pair[:, None] == n_pair[None, :]) & (sz_pair[:, None] == sz_pair[None, :])

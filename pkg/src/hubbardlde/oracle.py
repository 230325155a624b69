"""Brute-force dense reference implementations (test oracles).

Everything here works in the full 4^L site-tensor-product space with explicit
dense Jordan-Wigner operators, independently of the bit-packed sector
machinery, and is intentionally naive: L <= 4 only.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .hamiltonian import ModelSpec
from .rdm import TwoSiteDensityMatrix

DENSE_MAX_SITES = 4

# local site basis (0, up, down, updown); |updown> = c+_up c+_down |0>
_A_UP = np.zeros((4, 4)); _A_UP[0, 1] = 1.0; _A_UP[2, 3] = 1.0
_A_DOWN = np.zeros((4, 4)); _A_DOWN[0, 2] = 1.0; _A_DOWN[1, 3] = -1.0
_PARITY = np.diag([1.0, -1.0, -1.0, 1.0])


@dataclass
class DenseState:
    """Ground state amplitudes over the full 4^L product basis."""

    L: int
    amplitudes: np.ndarray = field(repr=False)
    energy: float
    n_up: int
    n_down: int
    model: ModelSpec


def site_annihilators(L: int) -> dict:
    """Dense JW-mapped c_{site,spin} operators, keyed by (site, spin string)."""
    if L > DENSE_MAX_SITES:
        raise DomainError(f"dense oracle limited to L <= {DENSE_MAX_SITES}")
    ops = {}
    for site in range(1, L + 1):
        for spin, local in (("up", _A_UP), ("down", _A_DOWN)):
            mat = np.eye(1)
            for k in range(1, L + 1):
                if k < site:
                    factor = _PARITY
                elif k == site:
                    factor = local
                else:
                    factor = np.eye(4)
                mat = np.kron(mat, factor)
            ops[(site, spin)] = mat
    return ops


def _site_digits(L: int) -> np.ndarray:
    """(4^L, L) array of local configurations, site 1 in column 0."""
    idx = np.arange(4**L)
    digits = np.empty((4**L, L), dtype=np.int64)
    for k in range(L):
        digits[:, k] = (idx // 4 ** (L - 1 - k)) % 4
    return digits


def dense_hamiltonian(model: ModelSpec) -> np.ndarray:
    """Full-space Hamiltonian from the explicit JW operators."""
    L = model.L
    ops = site_annihilators(L)
    dim = 4**L
    H = np.zeros((dim, dim))
    amps = model.bond_amplitudes()
    for b in range(1, L):
        for spin in ("up", "down"):
            c_i = ops[(b, spin)]
            c_j = ops[(b + 1, spin)]
            hop = c_i.T @ c_j
            H -= amps[b - 1] * (hop + hop.T)
    digits = _site_digits(L)
    docc = np.sum((digits == 3), axis=1)
    H += model.U * np.diag(docc.astype(float))
    return H


def dense_ground_state(model: ModelSpec, sector=None) -> DenseState:
    """Ground state of ``model`` inside one particle-number sector."""
    L = model.L
    if L > DENSE_MAX_SITES:
        raise DomainError(f"dense oracle limited to L <= {DENSE_MAX_SITES}")
    n_up, n_down = sector if sector is not None else (L // 2, L // 2)
    digits = _site_digits(L)
    ups = np.sum((digits == 1) | (digits == 3), axis=1)
    downs = np.sum((digits == 2) | (digits == 3), axis=1)
    keep = np.nonzero((ups == n_up) & (downs == n_down))[0]
    if keep.size == 0:
        raise DomainError(f"empty sector ({n_up},{n_down}) for L={L}")
    H = dense_hamiltonian(model)[np.ix_(keep, keep)]
    w, v = np.linalg.eigh(H)
    amp = np.zeros(4**L)
    amp[keep] = v[:, 0]
    peak = np.argmax(np.abs(amp))
    if amp[peak] < 0:
        amp = -amp
    return DenseState(L=L, amplitudes=amp, energy=float(w[0]), n_up=n_up, n_down=n_down, model=model)


def dense_partial_trace(state: DenseState, keep: tuple) -> TwoSiteDensityMatrix:
    """Two-site RDM via explicit extraction-operator strings.

    For each pair configuration x = (a, b) the environment overlap vector is
    w_x = O_x |psi> with O_x the adjoint of the site-blocked creation string
    c+_{i,up} c+_{i,down} c+_{j,up} c+_{j,down} (occupied factors only); the
    RDM is the Gram matrix of the w_x.
    """
    i, j = keep
    L = state.L
    if not (1 <= i < j <= L):
        raise DomainError(f"need 1 <= i < j <= {L}, got {keep}")
    ops = site_annihilators(L)
    creation_order = [(i, "up"), (i, "down"), (j, "up"), (j, "down")]
    occupied = {
        0: (False, False), 1: (True, False), 2: (False, True), 3: (True, True)
    }
    digits = _site_digits(L)
    pair_empty = (digits[:, i - 1] == 0) & (digits[:, j - 1] == 0)
    columns = np.empty((4**L, 16), dtype=complex)
    for a in range(4):
        for b in range(4):
            flags = occupied[a] + occupied[b]
            annihilate = [op for op, f in zip(creation_order, flags) if f]
            w = state.amplitudes.astype(complex)
            # adjoint of the creation string: rightmost annihilator acts first,
            # and that is the first operator in creation order
            for site_spin in annihilate:
                w = ops[site_spin] @ w
            # the environment sum runs over |0_i, 0_j, e> components only
            columns[:, 4 * a + b] = np.where(pair_empty, w, 0.0)
    rho = (columns.conj().T @ columns).T
    rho /= np.trace(rho).real
    return TwoSiteDensityMatrix(matrix=rho, sites=(i, j))


# --- independent Jordan-Wigner qubit route (oracle for the "qudit" RDM) ---

_SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]])
_PAULI_Z = np.diag([1.0, -1.0])


def jw_qubit_annihilators(L: int) -> list:
    """c_p = Z^(x p) x sigma- x I... on 2L qubits ordered by spin-major mode."""
    if L > DENSE_MAX_SITES:
        raise DomainError(f"dense oracle limited to L <= {DENSE_MAX_SITES}")
    n_modes = 2 * L
    ops = []
    for p in range(n_modes):
        mat = np.eye(1)
        for q in range(n_modes):
            if q < p:
                factor = _PAULI_Z
            elif q == p:
                factor = _SIGMA_MINUS
            else:
                factor = np.eye(2)
            mat = np.kron(mat, factor)
        ops.append(mat)
    return ops


def qudit_hamiltonian(model: ModelSpec) -> np.ndarray:
    """Chain Hamiltonian assembled from explicit JW qubit strings."""
    L = model.L
    ops = jw_qubit_annihilators(L)
    dim = 4**L
    H = np.zeros((dim, dim))
    amps = model.bond_amplitudes()
    for b in range(L - 1):
        for spin in (0, 1):
            p = b + spin * L
            hop = ops[p].T @ ops[p + 1]
            H -= amps[b] * (hop + hop.T)
    for site in range(L):
        n_up = ops[site].T @ ops[site]
        n_down = ops[L + site].T @ ops[L + site]
        H += model.U * n_up @ n_down
    return H


def qudit_ground_state(model: ModelSpec, sector=None):
    """(energy, amplitudes) over the 2L-qubit basis, sector-projected."""
    L = model.L
    n_up, n_down = sector if sector is not None else (L // 2, L // 2)
    idx = np.arange(4**L)
    ups = np.zeros(4**L, dtype=np.int64)
    downs = np.zeros(4**L, dtype=np.int64)
    for p in range(L):
        ups += (idx >> (2 * L - 1 - p)) & 1
        downs += (idx >> (L - 1 - p)) & 1
    keep = np.nonzero((ups == n_up) & (downs == n_down))[0]
    if keep.size == 0:
        raise DomainError(f"empty sector ({n_up},{n_down}) for L={L}")
    H = qudit_hamiltonian(model)[np.ix_(keep, keep)]
    w, v = np.linalg.eigh(H)
    amp = np.zeros(4**L)
    amp[keep] = v[:, 0]
    return float(w[0]), amp


def qudit_pair_rdm(amplitudes: np.ndarray, L: int, i: int, j: int) -> TwoSiteDensityMatrix:
    """Plain mode partial trace of a JW qubit state, site-blocked grouping."""
    if not (1 <= i < j <= L):
        raise DomainError(f"need 1 <= i < j <= {L}, got ({i}, {j})")
    psi = np.asarray(amplitudes, dtype=complex).reshape((2,) * (2 * L))
    # qudit index 4a+b with a = up + 2*down means axis order (d_i, u_i, d_j, u_j)
    kept = (L + i - 1, i - 1, L + j - 1, j - 1)
    rest = tuple(ax for ax in range(2 * L) if ax not in kept)
    T = psi.transpose(kept + rest).reshape(16, -1)
    rho = T @ T.conj().T
    rho /= np.trace(rho).real
    return TwoSiteDensityMatrix(matrix=rho, sites=(i, j))


def dense_index_and_sign(state: int, L: int):
    """Map a bit-packed sector state to (dense product index, reorder sign).

    The sign is the parity of the permutation taking the occupied modes from
    ascending spin-major positions to site-blocked order (u_1, d_1, u_2, ...),
    computed by brute force; it relates sector amplitudes to dense-oracle
    amplitudes.
    """
    occupied = [p for p in range(2 * L) if (state >> p) & 1]
    site_blocked = sorted(occupied, key=lambda p: (p % L, p // L))
    order = [occupied.index(p) for p in site_blocked]
    sign = 1
    for x in range(len(order)):
        for y in range(x + 1, len(order)):
            if order[x] > order[y]:
                sign = -sign
    index = 0
    for site in range(1, L + 1):
        up = (state >> (site - 1)) & 1
        down = (state >> (L + site - 1)) & 1
        index = index * 4 + up + 2 * down
    return index, sign

"""d-dimensional standard teleportation channel with exchangeable projector
families.

Conventions (validated against the explicit three-qudit circuit in
``circuit_oracle`` and the test suite):

* Weyl unitaries U^{nm} = sum_k exp(2 pi i k n / d) |k><k+m mod d|.
* A projector family is the Bell family conjugated by a local unitary W on the
  first subsystem: E^{nm} = ((W U^{nm}) x I) |psi+><psi+| ((W U^{nm}) x I)+,
  so E^{00} projects onto the family's base state (W x I)|psi+>.
* Channel output: eps(rho) = sum_nm Tr[E^{nm} chi] U^{n(-m)} rho U^{n(-m)+}.
* In the circuit, the measured pair is (input, resource-A) and the projector's
  rotated slot is aligned with the resource-A subsystem.

With these choices the channel equals the literal protocol for arbitrary
resource states and arbitrary W, and a resource matching the family base state
teleports exactly.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

BELL = "bell"
HUBBARD_FIXED = "hubbard-fixed"
HUBBARD_ADAPTIVE = "hubbard-adaptive"

#: local qudit alphabet: 0 empty, 1 up, 2 down, 3 doubly occupied
HUBBARD_PERMUTATION = np.array(
    [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], dtype=complex
)


@dataclass(frozen=True)
class QuditState:
    """Pure d-level state with unit-norm amplitudes."""

    amplitudes: np.ndarray

    def __post_init__(self):
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1.0) > 1e-12:
            raise DomainError("QuditState amplitudes must be unit-norm")

    @property
    def d(self) -> int:
        return self.amplitudes.shape[0]

    def density_matrix(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


def make_input_state(alphas) -> QuditState:
    """Normalize the given amplitudes into a QuditState."""
    a = np.asarray(alphas, dtype=complex)
    norm = np.linalg.norm(a)
    if norm == 0.0:
        raise DomainError("input state amplitudes are all zero")
    return QuditState(amplitudes=a / norm)


def weyl_operator(d: int, n: int, m: int) -> np.ndarray:
    if not (0 <= n < d and 0 <= m < d):
        raise DomainError(f"Weyl indices ({n},{m}) outside 0..{d-1}")
    k = np.arange(d)
    U = np.zeros((d, d), dtype=complex)
    U[k, (k + m) % d] = np.exp(2j * np.pi * k * n / d)
    return U


def max_entangled_state(d: int) -> np.ndarray:
    """|psi+> = (1/sqrt d) sum_j |jj>."""
    v = np.zeros(d * d, dtype=complex)
    v[:: d + 1] = 1.0 / np.sqrt(d)
    return v


@dataclass
class ProjectorFamily:
    """d^2 rank-one projectors onto rotated maximally entangled states."""

    d: int
    kind: str
    rotation: np.ndarray = field(repr=False)  # W, acting on the first qudit
    base_state: np.ndarray = field(repr=False)
    projectors: np.ndarray = field(repr=False)  # (d*d, d^2, d^2), index n*d+m
    warning: bool = False

    def projector(self, n: int, m: int) -> np.ndarray:
        return self.projectors[n * self.d + m]

    def completeness_defect(self) -> float:
        total = self.projectors.sum(axis=0)
        return float(np.abs(total - np.eye(self.d**2)).max())


def _build_family(W: np.ndarray, kind: str, warning: bool = False) -> ProjectorFamily:
    d = W.shape[0]
    psi = max_entangled_state(d)
    eye = np.eye(d)
    projs = np.empty((d * d, d * d, d * d), dtype=complex)
    for n in range(d):
        for m in range(d):
            vec = np.kron(W @ weyl_operator(d, n, m), eye) @ psi
            projs[n * d + m] = np.outer(vec, vec.conj())
    base = np.kron(W, eye) @ psi
    return ProjectorFamily(
        d=d, kind=kind, rotation=W, base_state=base, projectors=projs, warning=warning
    )


def bell_family(d: int = 4) -> ProjectorFamily:
    """The standard generalized Bell measurement basis."""
    if d < 2:
        raise DomainError(f"need d >= 2, got {d}")
    return _build_family(np.eye(d, dtype=complex), BELL)


def hubbard_family(mode: str = "fixed", rho_resource=None, d: int = 4) -> ProjectorFamily:
    """Projector family based on the maximally entangled Hubbard state.

    mode="fixed" rotates by the permutation exchanging empty <-> doubly
    occupied and up <-> down, whose base state is
    (|1,2> + |2,1> + |3,0> + |0,3>)/2.  mode="adaptive" instead takes the
    dominant eigenvector of ``rho_resource``, projects its coefficient matrix
    onto the nearest unitary (polar decomposition), and rotates by that, which
    makes the family follow the resource's own sign conventions.
    """
    if d != 4 and mode == "fixed":
        raise DomainError("the fixed Hubbard family is defined for d=4")
    if mode == "fixed":
        return _build_family(HUBBARD_PERMUTATION.copy(), HUBBARD_FIXED)
    if mode != "adaptive":
        raise DomainError(f"mode must be 'fixed' or 'adaptive', got {mode!r}")
    if rho_resource is None:
        raise DomainError("adaptive mode needs the resource density matrix")
    chi = np.asarray(getattr(rho_resource, "matrix", rho_resource), dtype=complex)
    if chi.shape != (d * d, d * d):
        raise DomainError(f"resource must be {d*d}x{d*d}, got {chi.shape}")
    _, vecs = np.linalg.eigh(chi)
    dominant = vecs[:, -1]
    coeff = dominant.reshape(d, d)
    u, s, vh = np.linalg.svd(coeff)
    warning = bool(s[-1] <= 1e-10 * max(1.0, s[0]))
    return _build_family(u @ vh, HUBBARD_ADAPTIVE, warning=warning)


@dataclass
class ChannelResult:
    output: np.ndarray
    fidelity: float
    fef: float
    avg_fidelity: float
    outcome_weights: np.ndarray


def _as_density(obj, d2: int, what: str) -> np.ndarray:
    rho = np.asarray(getattr(obj, "matrix", obj), dtype=complex)
    if rho.shape != (d2, d2):
        raise DomainError(f"{what} must be {d2}x{d2}, got {rho.shape}")
    return rho


def fidelity(rho_in, rho_out) -> float:
    """Transmission fidelity Tr(rho_in rho_out)."""
    a = np.asarray(rho_in, dtype=complex)
    b = np.asarray(rho_out, dtype=complex)
    if a.shape != b.shape:
        raise DomainError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.trace(a @ b).real)


def fully_entangled_fraction(chi, family: ProjectorFamily) -> float:
    """Overlap of the resource with the family's base state."""
    chi = _as_density(chi, family.d**2, "resource")
    return float(np.real(np.vdot(family.base_state, chi @ family.base_state)))


def average_fidelity(f: float, d: int) -> float:
    """Mean teleportation fidelity over all pure inputs, (d f + 1)/(d + 1)."""
    if not 0.0 <= f <= 1.0 + 1e-12:
        raise DomainError(f"fully entangled fraction {f} outside [0, 1]")
    return (d * f + 1.0) / (d + 1.0)


def classical_threshold(d: int) -> float:
    """Best average fidelity achievable without shared entanglement."""
    return 2.0 / (d + 1.0)


def channel_output(chi, rho_in, family: ProjectorFamily) -> ChannelResult:
    """Depolarizing-form teleportation channel for the given family."""
    d = family.d
    chi = _as_density(chi, d * d, "resource")
    rho = _as_density(rho_in, d, "input state")
    weights = np.empty(d * d)
    out = np.zeros((d, d), dtype=complex)
    for n in range(d):
        for m in range(d):
            w = float(np.trace(family.projector(n, m) @ chi).real)
            weights[n * d + m] = w
            corr = weyl_operator(d, n, (-m) % d)
            out += w * corr @ rho @ corr.conj().T
    f = fully_entangled_fraction(chi, family)
    return ChannelResult(
        output=out,
        fidelity=fidelity(rho, out),
        fef=f,
        avg_fidelity=average_fidelity(min(max(f, 0.0), 1.0), d),
        outcome_weights=weights,
    )


def _swap_pair(d: int) -> np.ndarray:
    S = np.zeros((d * d, d * d))
    for a in range(d):
        for b in range(d):
            S[b * d + a, a * d + b] = 1.0
    return S


def circuit_oracle(chi, rho_in, family: ProjectorFamily) -> np.ndarray:
    """Literal three-qudit protocol; must reproduce channel_output to 1e-10.

    Subsystem order (input, A, B): project (input, A) onto each family state
    with the rotated slot on A, apply U^{n(-m)} on B, trace the measured pair
    out, and sum over outcomes.
    """
    d = family.d
    chi = _as_density(chi, d * d, "resource")
    rho = _as_density(rho_in, d, "input state")
    total = np.kron(rho, chi)
    swap = _swap_pair(d)
    eye = np.eye(d)
    out = np.zeros((d, d), dtype=complex)
    for n in range(d):
        for m in range(d):
            pair_proj = swap @ family.projector(n, m) @ swap
            proj = np.kron(pair_proj, eye)
            kept = (proj @ total @ proj).reshape(d, d, d, d, d, d)
            rho_b = np.einsum("abcabf->cf", kept)
            corr = weyl_operator(d, n, (-m) % d)
            out += corr @ rho_b @ corr.conj().T
    return out

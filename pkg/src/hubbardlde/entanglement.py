"""Analytic lower bound of concurrence for two-qudit states.

The bound decomposes the d x d space over pairs of SO(d) generators: for each
generator pair (G_a, G_b) the spin-flipped state rho~ = (G_a x G_b) rho*
(G_a x G_b) yields lambda values (square roots of the eigenvalues of
rho rho~), combined exactly as in the two-qubit Wootters formula, and

    tau2 = d / (2(d-1)) * sum_ab C_ab^2  <=  C(rho)^2.

The reported scalar is sqrt(tau2): for the d=4 maximally entangled state it
equals 1, for the embedded two-qubit singlet sqrt(2/3) ~= 0.8165.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalIntegrityError

CLIP_TOL = 1e-10
INTEGRITY_TOL = 1e-8


@dataclass(frozen=True)
class SOGeneratorSet:
    """The d(d-1)/2 real antisymmetric generators L_jk = |j><k| - |k><j|, j < k."""

    d: int
    generators: np.ndarray  # (n, d, d)

    @property
    def count(self) -> int:
        return self.generators.shape[0]


@dataclass
class ConcurrenceReport:
    tau2: float
    lower_bound: float
    per_pair: np.ndarray  # (n, n) matrix of C_ab


def so_generators(d: int) -> SOGeneratorSet:
    """Generators ordered lexicographically by (j, k)."""
    if d < 2:
        raise DomainError(f"need d >= 2, got {d}")
    gens = []
    for j in range(d):
        for k in range(j + 1, d):
            g = np.zeros((d, d))
            g[j, k] = 1.0
            g[k, j] = -1.0
            gens.append(g)
    return SOGeneratorSet(d=d, generators=np.array(gens))


def _as_matrix(rho) -> np.ndarray:
    return np.asarray(getattr(rho, "matrix", rho), dtype=complex)


def _lambdas(rho, kron_gg):
    rho_tilde = kron_gg @ rho.conj() @ kron_gg
    ev = np.linalg.eigvals(rho @ rho_tilde)
    if np.any(np.abs(ev.imag) > INTEGRITY_TOL) or np.any(ev.real < -INTEGRITY_TOL):
        raise NumericalIntegrityError(
            f"eigenvalues of rho*rho~ left the positive real axis: {ev}"
        )
    vals = ev.real
    vals[np.abs(vals) < CLIP_TOL] = 0.0
    vals[vals < 0.0] = 0.0
    lam = np.sort(np.sqrt(vals))[::-1]
    out = np.zeros(4)
    out[: min(4, lam.shape[0])] = lam[:4]
    return out


def pair_lambdas(rho, alpha: int, beta: int, gens: SOGeneratorSet = None) -> np.ndarray:
    """The four largest lambda values for one generator pair, descending."""
    rho = _as_matrix(rho)
    d = int(round(np.sqrt(rho.shape[0])))
    gens = gens or so_generators(d)
    if not (0 <= alpha < gens.count and 0 <= beta < gens.count):
        raise DomainError(f"generator index outside 0..{gens.count - 1}")
    gg = np.kron(gens.generators[alpha], gens.generators[beta])
    return _lambdas(rho, gg)


def concurrence_lower_bound(rho) -> ConcurrenceReport:
    """Lower-bound report for a two-qudit density matrix (d=4 for 16x16)."""
    rho = _as_matrix(rho)
    d = int(round(np.sqrt(rho.shape[0])))
    if d * d != rho.shape[0] or rho.shape[0] != rho.shape[1]:
        raise DomainError(f"expected a d^2 x d^2 matrix, got {rho.shape}")
    gens = so_generators(d)
    n = gens.count
    per_pair = np.zeros((n, n))
    for a in range(n):
        ga = gens.generators[a]
        for b in range(n):
            lam = _lambdas(rho, np.kron(ga, gens.generators[b]))
            per_pair[a, b] = max(0.0, lam[0] - lam[1] - lam[2] - lam[3])
    tau2 = d / (2.0 * (d - 1)) * float(np.sum(per_pair**2))
    return ConcurrenceReport(tau2=tau2, lower_bound=float(np.sqrt(tau2)), per_pair=per_pair)


def state_probability(rho, phi: np.ndarray) -> float:
    """P = <phi| rho |phi> for a normalized pure reference state."""
    rho = _as_matrix(rho)
    phi = np.asarray(phi, dtype=complex)
    if abs(np.linalg.norm(phi) - 1.0) > 1e-10:
        raise DomainError("reference state must be normalized")
    return float(np.real(np.vdot(phi, rho @ phi)))

"""Sector-restricted fermionic Fock bases over bit-packed occupation states.

A basis state is an unsigned integer whose bit ``site-1`` holds the up mode of
``site`` and bit ``L+site-1`` the down mode (spin-major mode order, sites are
1-based).  A Fock state is the ascending-position product of creation
operators on the vacuum, so Jordan-Wigner signs count occupied modes between
the affected positions.
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import DomainError

#: local site configurations, index = n_up + 2*n_down
EMPTY, UP, DOWN, UPDOWN = 0, 1, 2, 3
LOCAL_LABELS = ("0", "up", "down", "updown")

_SPIN = {"up": 0, "down": 1, 0: 0, 1: 1}


def mode_position(L: int, site: int, spin) -> int:
    """Bit position of a (site, spin) mode in the spin-major order."""
    if not 1 <= site <= L:
        raise DomainError(f"site {site} outside 1..{L}")
    try:
        s = _SPIN[spin]
    except (KeyError, TypeError):
        raise DomainError(f"spin must be 'up' or 'down', got {spin!r}") from None
    return (site - 1) + s * L


@dataclass(frozen=True)
class SectorBasis:
    """All occupation states with fixed per-spin particle counts, ascending."""

    L: int
    n_up: int
    n_down: int
    states: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return self.states.shape[0]

    def index_of(self, state: int) -> int:
        """Position of ``state`` in the basis; KeyError if absent."""
        pos = int(np.searchsorted(self.states, np.uint64(state)))
        if pos == self.size or self.states[pos] != np.uint64(state):
            raise KeyError(f"state {state:#x} not in sector ({self.n_up},{self.n_down})")
        return pos

    def index_array(self, states: np.ndarray) -> np.ndarray:
        """Vectorized lookup; every input must belong to the basis."""
        pos = np.searchsorted(self.states, states)
        if np.any(pos == self.size) or np.any(self.states[pos] != states):
            raise KeyError("state outside sector")
        return pos.astype(np.int64)


def _bit_patterns(L: int, n: int) -> np.ndarray:
    pats = [sum(1 << k for k in combo) for combo in combinations(range(L), n)]
    return np.array(sorted(pats), dtype=np.uint64)


def enumerate_sector(L: int, n_up: int, n_down: int) -> SectorBasis:
    """Enumerate the (n_up, n_down) sector of an L-site chain.

    The result holds C(L, n_up) * C(L, n_down) states in strictly increasing
    integer order.
    """
    if L < 2:
        raise DomainError(f"need at least 2 sites, got L={L}")
    if not (0 <= n_up <= L and 0 <= n_down <= L):
        raise DomainError(f"particle counts ({n_up},{n_down}) outside 0..{L}")
    up = _bit_patterns(L, n_up)
    down = _bit_patterns(L, n_down) << np.uint64(L)
    states = (down[:, None] | up[None, :]).ravel()  # ascending: down-major
    return SectorBasis(L=L, n_up=n_up, n_down=n_down, states=states)


def jw_sign(state: int, p: int, q: int) -> int:
    """(-1)**(occupied modes strictly between positions p and q)."""
    lo, hi = (p, q) if p < q else (q, p)
    between = state & (((1 << hi) - 1) ^ ((1 << (lo + 1)) - 1))
    return -1 if bin(between).count("1") & 1 else 1


def apply_hop(state: int, i: int, j: int, spin, L: int):
    """Apply c+_{i,spin} c_{j,spin}; returns (new_state, sign) or None.

    None means the move is Pauli-blocked (source empty or target occupied).
    """
    if i == j:
        raise DomainError("hop requires two distinct sites")
    p_to = mode_position(L, i, spin)
    p_from = mode_position(L, j, spin)
    if not (state >> p_from) & 1 or (state >> p_to) & 1:
        return None
    return state ^ ((1 << p_from) | (1 << p_to)), jw_sign(state, p_to, p_from)


def local_config(state: int, site: int, L: int) -> int:
    """Configuration of one site: EMPTY, UP, DOWN or UPDOWN."""
    up = (state >> mode_position(L, site, "up")) & 1
    down = (state >> mode_position(L, site, "down")) & 1
    return up + 2 * down

"""Pure-numpy kernels, used when the compiled extension is unavailable.

Same contracts as ``_core``:

* states are uint64 bit sets in spin-major mode order (bit ``site-1`` holds the
  up mode of ``site``, bit ``L+site-1`` the down mode),
* basis arrays are the strictly increasing (down x up) product that
  enumerate_sector builds, so hop targets resolve on the pattern arrays.
"""

import numpy as np

BACKEND = "numpy"

_ONE = np.uint64(1)


def _product_split(states, L):
    """Split the (down x up) product basis into its sorted pattern arrays.

    Kernel precondition: ``states`` is the full ascending product that
    enumerate_sector builds (index = down_idx * n_up_patterns + up_idx).
    """
    up_mask = np.uint64((1 << L) - 1)
    n_up = int(np.searchsorted(states, states[0] | up_mask, side="right"))
    up_patterns = states[:n_up] & up_mask
    down_patterns = states[::n_up] >> np.uint64(L)
    return up_patterns, down_patterns


def hop_entries(states, L, amps):
    """COO entries of the hopping part -sum_b amps[b] (c+_b c_b+1 + h.c.).

    Nearest-neighbour same-spin modes occupy adjacent bit positions in the
    spin-major order, so every hop carries Jordan-Wigner sign +1.  Targets are
    resolved per spin species on the small pattern arrays of the product
    basis rather than by searching the full basis.
    """
    up_patterns, down_patterns = _product_split(states, L)
    n_up = up_patterns.shape[0]
    n_down = down_patterns.shape[0]
    rows, cols, vals = [], [], []
    up_offsets = np.arange(n_down, dtype=np.int64) * n_up
    for b in range(L - 1):
        amp = amps[b]
        if amp == 0.0:
            continue
        p = np.uint64(b)
        mask = (_ONE << p) | (_ONE << (p + _ONE))
        for patterns, same_spin in ((up_patterns, True), (down_patterns, False)):
            movable = ((patterns >> p) ^ (patterns >> (p + _ONE))) & _ONE == 1
            src = np.nonzero(movable)[0].astype(np.int64)
            if src.size == 0:
                continue
            dst = np.searchsorted(patterns, patterns[src] ^ mask).astype(np.int64)
            if same_spin:
                r = (up_offsets[:, None] + dst[None, :]).ravel()
                c = (up_offsets[:, None] + src[None, :]).ravel()
            else:
                up_idx = np.arange(n_up, dtype=np.int64)
                r = (dst[:, None] * n_up + up_idx[None, :]).ravel()
                c = (src[:, None] * n_up + up_idx[None, :]).ravel()
            rows.append(r)
            cols.append(c)
            vals.append(np.full(r.shape[0], -amp))
    if not rows:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy(), np.empty(0)
    return np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)


def double_occupancy(states, L):
    """Number of doubly occupied sites for every basis state."""
    up_mask = np.uint64((1 << L) - 1)
    both = states & (states >> np.uint64(L)) & up_mask
    return np.bitwise_count(both).astype(np.int64)


def rdm_extract(states, L, i, j):
    """Per-state data for the two-site reduced density matrix of sites i < j.

    Returns (env, cfg, sign): environment bit pattern (local modes cleared),
    local pair configuration index 4*a+b with a,b in {0:empty,1:up,2:down,
    3:updown}, and the fermionic extraction sign (+-1).

    The sign is the parity of reordering the occupied modes from global
    ascending order (u_i < u_j < d_i < d_j interleaved with the environment)
    into the embedding order (u_i, d_i, u_j, d_j, environment ascending); it
    is applied only for the fermionic-operator RDM convention.
    """
    ui = np.uint64(i - 1)
    uj = np.uint64(j - 1)
    di = np.uint64(L + i - 1)
    dj = np.uint64(L + j - 1)
    local_mask = (_ONE << ui) | (_ONE << uj) | (_ONE << di) | (_ONE << dj)

    o_ui = (states >> ui) & _ONE
    o_uj = (states >> uj) & _ONE
    o_di = (states >> di) & _ONE
    o_dj = (states >> dj) & _ONE
    env = states & ~local_mask

    cfg = (4 * (o_ui + 2 * o_di) + (o_uj + 2 * o_dj)).astype(np.uint8)

    below = lambda p: (_ONE << p) - _ONE
    crossings = o_uj * o_di
    crossings = crossings + o_ui * np.bitwise_count(env & below(ui))
    crossings = crossings + o_uj * np.bitwise_count(env & below(uj))
    crossings = crossings + o_di * np.bitwise_count(env & below(di))
    crossings = crossings + o_dj * np.bitwise_count(env & below(dj))
    sign = 1.0 - 2.0 * (crossings & _ONE).astype(np.float64)

    return env, cfg, sign

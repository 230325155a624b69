"""Kernel backend selection.

The compiled Cython core is preferred; the numpy fallback is used when the
extension was not built or when ``HUBBARDLDE_PURE_PYTHON`` is set (non-empty)
in the environment.
"""

import os

from . import _fallback

if os.environ.get("HUBBARDLDE_PURE_PYTHON"):
    _impl = _fallback
else:
    try:
        from . import _core as _impl
    except ImportError:
        _impl = _fallback

BACKEND = _impl.BACKEND
hop_entries = _impl.hop_entries
double_occupancy = _impl.double_occupancy
rdm_extract = _impl.rdm_extract

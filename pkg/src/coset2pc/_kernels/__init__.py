"""Hot inner loops, compiled when available.

The Cython extension ``_ckernels`` is used if it was built; otherwise the
numpy fallback in ``_pykernels`` is loaded. Set ``COSET2PC_PURE=1`` to force
the fallback. ``BACKEND`` names whichever was selected.
"""

import os

from . import _pykernels

if os.environ.get("COSET2PC_PURE") == "1":
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

rref_mod = _impl.rref_mod
first_containment = _impl.first_containment
first_disjoint = _impl.first_disjoint
subset_counts = _impl.subset_counts
syndrome_histogram = _impl.syndrome_histogram


def available_backends():
    backends = {"python": _pykernels}
    try:
        from . import _ckernels

        backends["cython"] = _ckernels
    except ImportError:
        pass
    return backends

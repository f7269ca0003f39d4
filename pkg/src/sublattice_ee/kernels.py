"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``SUBLATTICE_EE_PURE_PYTHON`` is set to a non-empty
value other than ``0``, the numpy fallback is used. ``BACKEND`` records
which one is active.
"""

import os

from . import _pykernels

_force_python = os.environ.get("SUBLATTICE_EE_PURE_PYTHON", "") not in ("", "0")

_impl = _pykernels
BACKEND = "python"
if not _force_python:
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        pass

compensated_sum = _impl.compensated_sum
residue_sums = _impl.residue_sums
cosine_sums = _impl.cosine_sums
cosine_table = _impl.cosine_table
jacobi_eigh = _impl.jacobi_eigh


def available_backends():
    """Map backend name to kernel module for every backend that imports."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        return out
    out["cython"] = _ckernels
    return out

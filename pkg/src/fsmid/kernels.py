"""Backend selection for the search kernels.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``FSMID_PURE_PYTHON`` is set to a non-empty value, the
pure-Python twin is used.  Both expose ``search_first`` and ``count_canonical``
with identical results.
"""

import os

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

if _compiled is not None and not os.environ.get("FSMID_PURE_PYTHON"):
    active = _compiled
else:
    active = _pykernels

BACKEND = active.NAME


def available():
    """Names of the importable backends, compiled first."""
    return [m.NAME for m in (_compiled, _pykernels) if m is not None]


def get(name=None):
    if name is None:
        return active
    if name == "python":
        return _pykernels
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")

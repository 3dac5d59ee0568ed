"""Kernel backend selection.

The compiled extension is preferred when it imported cleanly; the pure-Python
module is the fallback.  Set EJAFA_BACKEND=pure (or =c) before import to force
a choice; forcing "c" raises if the extension is missing rather than silently
degrading.
"""

import os

from . import _kernels_pure

try:
    from . import _kernels_c
except ImportError:
    _kernels_c = None

_requested = os.environ.get("EJAFA_BACKEND", "").strip().lower()
if _requested == "pure":
    kernels = _kernels_pure
elif _requested == "c":
    if _kernels_c is None:
        raise ImportError("EJAFA_BACKEND=c but the compiled kernels are not built")
    kernels = _kernels_c
elif _requested:
    raise ImportError(f"unknown EJAFA_BACKEND value: {_requested!r}")
else:
    kernels = _kernels_c if _kernels_c is not None else _kernels_pure

BACKEND = "c" if kernels is _kernels_c else "pure"


def available_backends():
    """Mapping of backend name to kernel module, for benchmarks and tests."""
    found = {"pure": _kernels_pure}
    if _kernels_c is not None:
        found["c"] = _kernels_c
    return found

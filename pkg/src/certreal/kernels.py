"""Series-kernel backend selection.

Imports the compiled Cython kernels when they are available and falls
back to the pure-Python twins otherwise.  Setting the environment
variable CERTREAL_PURE_KERNELS=1 forces the pure-Python backend, which
is how the equivalence tests and benchmarks get at both.

The two backends are bit-identical by construction; nothing downstream
may depend on which one is active except for speed.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("CERTREAL_PURE_KERNELS") != "1":
    try:
        from . import _kernels_c  # type: ignore[attr-defined]
        _impl = _kernels_c
        BACKEND = "compiled"
    except ImportError:
        pass

exp_series = _impl.exp_series
sin_series = _impl.sin_series
cos_series = _impl.cos_series
atan_series = _impl.atan_series
ln1p_series = _impl.ln1p_series

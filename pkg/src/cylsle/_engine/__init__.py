"""Engine selection: compiled Cython core when available, numpy fallback
otherwise.  Both expose the same three entry points:

    sde_counts(x0, p, dt_max, bfac, eps, teps, switch_p, rtol, seed, stream)
    lerw_counts(M, L, target, n_accept, step_budget, seed, stream)

plus ``drift_eval`` on the compiled side (the fallback's reference drift is
kernels.sde_drift itself).  Selection happens at import; set
CYLSLE_FORCE_FALLBACK=1 to benchmark or test the pure-Python path even when
the extension is built.
"""

from __future__ import annotations

import os

from . import fallback

try:
    from . import _core as compiled
except ImportError:  # extension not built
    compiled = None

_forced = os.environ.get("CYLSLE_FORCE_FALLBACK", "") not in ("", "0")

if compiled is not None and not _forced:
    active = compiled
    IMPLEMENTATION = "compiled"
else:
    active = fallback
    IMPLEMENTATION = "python"


def get_engine(name: str = "auto"):
    """Return the engine module for 'auto', 'compiled' or 'python'."""
    if name == "auto":
        return active
    if name == "compiled":
        if compiled is None:
            raise RuntimeError("compiled engine is not available")
        return compiled
    if name == "python":
        return fallback
    raise ValueError(f"unknown engine {name!r}")

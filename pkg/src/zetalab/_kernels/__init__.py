"""Numeric kernel backends.

Two implementations of the same low-level API live here: a compiled
Cython module (``_fastcore``) and a pure-numpy reference
(``reference``).  The compiled one is preferred when it imported
cleanly; set ``ZLL_PURE_PYTHON=1`` to force the reference backend,
which is also the fallback when the extension was never built.

Everything above this package talks to the selected backend through
the names re-exported below, so the choice is a process-wide, import
time decision.
"""

import os

from . import reference as _reference


def _want_pure():
    flag = os.environ.get("ZLL_PURE_PYTHON", "")
    return flag.strip().lower() not in ("", "0", "false", "no")


_impl = _reference
if not _want_pure():
    try:
        from . import _fastcore as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _reference

BACKEND = _impl.BACKEND_NAME

theta = _impl.theta
rs_z = _impl.rs_z
rs_z_vec = _impl.rs_z_vec
em_zeta = _impl.em_zeta
em_zeta_deriv = _impl.em_zeta_deriv
em_zeta_many = _impl.em_zeta_many
hardy_z = _impl.hardy_z
z_sq = _impl.z_sq
integrate_z_sq = _impl.integrate_z_sq

__all__ = [
    "BACKEND",
    "theta",
    "rs_z",
    "rs_z_vec",
    "em_zeta",
    "em_zeta_deriv",
    "em_zeta_many",
    "hardy_z",
    "z_sq",
    "integrate_z_sq",
]

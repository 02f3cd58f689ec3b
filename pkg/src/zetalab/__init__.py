"""zetalab: a numerical laboratory for ladders of Hardy-function masses.

The package builds, from first principles, the chain of objects needed to
factorize mean values of |zeta(1/2+it)|^2 into finite products, crossbreed
those factorizations into exact and asymptotic hybrid identities, and then
graft the resulting trigonometric weights onto zeta values taken off the
critical line.  Everything is deterministic: no randomness, no wall-clock
dependence, and cached tables reload bit for bit.

Layering, bottom to top:

- ``engine``: Riemann-Siegel and Euler-Maclaurin evaluators with an
  accuracy budget (compiled kernels when available, pure numpy otherwise)
- ``quadrature``: checkpointed adaptive integration of Z^2
- ``ladder``: the increasing solution of the mass equation and its
  iterates, with per-depth interpolating proxies
- ``factorization``: certificates for the finite-product identities
- ``identity``: frozen pass/fail reports keyed by equation id
- ``bohr``: root searches for zeta(s) = a in fixed strips
- ``meta``: hybrid formulas, grafted identities, and U-grid scans
- ``config`` / ``cli``: run configuration and the command-line pipeline
"""

from ._kernels import BACKEND
from .bohr import GraftPoint, StripLayout, build_strips, find_a_point, verify_graft
from .config import RunConfig, load_config
from .engine import EngineConfig, ZetaEngine
from .errors import (
    AccuracyWarning,
    ConfigError,
    NotFoundError,
    ZetaLabError,
)
from .factorization import (
    COS2,
    COS2T,
    SIN2,
    FactorizationCertificate,
    factorize,
    verify_certificate,
)
from .identity import EquationId, IdentityReport, make_report
from .ladder import HardyIntegralTable, LadderTable
from .meta import (
    GraftSet,
    UGrid,
    assemble_achf,
    assemble_diff,
    assemble_echf1,
    assemble_echf2,
    graft,
    meta_asymptotic,
    meta_exact,
    meta_secondary,
    scan_u_grid,
)

__version__ = "1.0.0"

__all__ = [
    "AccuracyWarning",
    "BACKEND",
    "COS2",
    "COS2T",
    "ConfigError",
    "EngineConfig",
    "EquationId",
    "FactorizationCertificate",
    "GraftPoint",
    "GraftSet",
    "HardyIntegralTable",
    "IdentityReport",
    "LadderTable",
    "NotFoundError",
    "RunConfig",
    "SIN2",
    "StripLayout",
    "UGrid",
    "ZetaEngine",
    "ZetaLabError",
    "__version__",
    "assemble_achf",
    "assemble_diff",
    "assemble_echf1",
    "assemble_echf2",
    "build_strips",
    "factorize",
    "find_a_point",
    "graft",
    "load_config",
    "make_report",
    "meta_asymptotic",
    "meta_exact",
    "meta_secondary",
    "scan_u_grid",
    "verify_certificate",
    "verify_graft",
]

"""Run configuration: flat sectioned key=value files with env overrides.

The format is INI-style text with the sections [engine], [ladder], [grid],
[strips], [bohr], [tolerances], [cache], [output]; the keys for each are
listed in _SCHEMA below, and every key has a default, so the empty config
is a complete one.  Numeric values accept pi-expressions ("pi/8",
"3*pi/16") with explicit operators only.  Environment variables named
ZLL_<SECTION>_<KEY> override file values; variables whose first token is
not a section name are ignored (the kernel backend switch ZLL_PURE_PYTHON
travels the same prefix), but a recognized section with an unknown key is
an error, so typos fail loudly.

Loading revalidates every constraint owned by the target modules: the
engine config and strip layout construct themselves (and raise their own
ConfigError subclasses), the U grid is checked through UGrid, and the
ladder/grid couplings (pi L >= l0, k within chain depth) are mirrored
here so a bad run dies at load time, not mid-pipeline.
"""

import configparser
import dataclasses
import math
import os
import re
from dataclasses import dataclass

from .engine import EngineConfig, ZetaEngine
from .errors import ConfigError, ZetaLabError
from .bohr import (
    DEFAULT_T_MAX,
    DEFAULT_T_START,
    DEFAULT_WINDOW,
    ROOT_TOL_BOHR,
    StripLayout,
)
from .factorization import DEFAULT_CERT_TOL, MAX_CHAIN_DEPTH
from .ladder import LadderTable
from .meta import DEFAULT_ENVELOPE, DEFAULT_K_TRIPLE, DEFAULT_U_GRID, UGrid
from .quadrature import HardyIntegralTable

# A(T) table tolerance is an internal calibration, not a user knob; the
# certificate tolerances downstream assume at least this quality.
A_TABLE_TOL = 1e-9

_ENGINE_DEFAULTS = EngineConfig()
_STRIP_DEFAULTS = StripLayout()

_SCHEMA = {
    "engine": {
        "target_rel_error": ("float", _ENGINE_DEFAULTS.target_rel_error),
        "euler_maclaurin_terms": ("int", _ENGINE_DEFAULTS.euler_maclaurin_terms),
        "riemann_siegel_correction_order": (
            "int",
            _ENGINE_DEFAULTS.riemann_siegel_correction_order,
        ),
        "crossover_t": ("float", _ENGINE_DEFAULTS.crossover_t),
        "t_max_engine": ("float", _ENGINE_DEFAULTS.t_max_engine),
    },
    "ladder": {
        "l0": ("float", 100.0),
        "c0": ("float", 0.0),
        "root_tol": ("float", 1e-10),
    },
    "grid": {
        "l_values": ("int_list", (100,)),
        "u_values": ("float_list", DEFAULT_U_GRID),
        "k_triple": ("int_triple", DEFAULT_K_TRIPLE),
    },
    "strips": {
        "sigma1": ("float", _STRIP_DEFAULTS.sigma1),
        "sigma0": ("float_triple", _STRIP_DEFAULTS.sigma0),
        "sigma2": ("float", _STRIP_DEFAULTS.sigma2),
        "delta": ("float", _STRIP_DEFAULTS.delta),
    },
    "bohr": {
        "t_start": ("float", DEFAULT_T_START),
        "t_max": ("float", DEFAULT_T_MAX),
        "h_w": ("float", DEFAULT_WINDOW),
        "root_tol_bohr": ("float", ROOT_TOL_BOHR),
    },
    "tolerances": {
        "cert_tol": ("float", DEFAULT_CERT_TOL),
        "meta_envelope": ("float", DEFAULT_ENVELOPE),
    },
    "cache": {
        "path": ("str", ""),
    },
    "output": {
        "json_path": ("str", ""),
        "csv_path": ("str", ""),
    },
}

_EXPR_RE = re.compile(r"^[0-9pi+\-*/(). ]+$")


def parse_scalar(text):
    """Float from a literal or a pi-expression with explicit operators."""
    s = str(text).strip()
    if not s:
        raise ConfigError("empty numeric value")
    # plain literals first so scientific notation works; the expression
    # grammar below has no use for 'e'
    try:
        val = float(s)
    except ValueError:
        pass
    else:
        if not math.isfinite(val):
            raise ConfigError("non-finite numeric value %r" % s)
        return val
    if not _EXPR_RE.match(s) or "**" in s:
        raise ConfigError("bad numeric expression %r" % s)
    try:
        val = eval(s, {"__builtins__": {}}, {"pi": math.pi})
    except Exception as exc:
        raise ConfigError("cannot evaluate %r: %s" % (s, exc))
    try:
        val = float(val)
    except (TypeError, ValueError, OverflowError):
        raise ConfigError("expression %r is not a number" % s)
    if not math.isfinite(val):
        raise ConfigError("non-finite numeric value %r" % s)
    return val


def _parse_value(kind, text, where):
    try:
        if kind == "float":
            return parse_scalar(text)
        if kind == "int":
            return int(str(text).strip())
        if kind == "str":
            return str(text).strip()
        parts = [p for p in str(text).split(",") if p.strip()]
        if kind == "int_list":
            return tuple(int(p.strip()) for p in parts)
        if kind == "float_list":
            return tuple(parse_scalar(p) for p in parts)
        if kind in ("int_triple", "float_triple"):
            if len(parts) != 3:
                raise ConfigError("%s needs exactly 3 values" % where)
            if kind == "int_triple":
                return tuple(int(p.strip()) for p in parts)
            return tuple(parse_scalar(p) for p in parts)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError("bad value for %s: %s" % (where, exc))
    raise ConfigError("unknown schema kind %r" % kind)


@dataclass(frozen=True)
class LadderParams:
    l0: float
    c0: float
    root_tol: float


@dataclass(frozen=True)
class GridParams:
    l_values: tuple
    u_values: tuple
    k_triple: tuple


@dataclass(frozen=True)
class BohrParams:
    t_start: float
    t_max: float
    h_w: float
    root_tol_bohr: float


@dataclass(frozen=True)
class ToleranceParams:
    cert_tol: float
    meta_envelope: float


@dataclass(frozen=True)
class OutputParams:
    json_path: str
    csv_path: str


@dataclass(frozen=True)
class RunConfig:
    engine: EngineConfig
    ladder: LadderParams
    grid: GridParams
    strips: StripLayout
    bohr: BohrParams
    tolerances: ToleranceParams
    cache_path: str
    output: OutputParams

    def u_grid(self):
        try:
            return UGrid(values=self.grid.u_values)
        except ZetaLabError as exc:
            raise ConfigError("invalid U grid: %s" % exc)

    def make_engine(self):
        return ZetaEngine(self.engine)

    def make_ladder(self, engine):
        """Ladder table, warm-started from cache_path when one is set.

        A missing, stale, or mismatched cache file silently cold-starts;
        the load path revalidates the calibration fingerprint itself.
        """
        kw = dict(c0=self.ladder.c0, root_tol=self.ladder.root_tol, l0=self.ladder.l0)
        if self.cache_path:
            return LadderTable.load(
                self.cache_path, engine=engine, tol=A_TABLE_TOL, **kw
            )
        return LadderTable(
            hardy=HardyIntegralTable(engine=engine, tol=A_TABLE_TOL), **kw
        )

    def save_ladder(self, lt):
        if self.cache_path:
            lt.save(self.cache_path)

    def to_dict(self):
        """JSON-ready echo of every setting, in schema order."""
        return {
            "engine": dataclasses.asdict(self.engine),
            "ladder": dataclasses.asdict(self.ladder),
            "grid": {
                "l_values": list(self.grid.l_values),
                "u_values": list(self.grid.u_values),
                "k_triple": list(self.grid.k_triple),
            },
            "strips": {
                "sigma1": self.strips.sigma1,
                "sigma0": list(self.strips.sigma0),
                "sigma2": self.strips.sigma2,
                "delta": self.strips.delta,
            },
            "bohr": dataclasses.asdict(self.bohr),
            "tolerances": dataclasses.asdict(self.tolerances),
            "cache_path": self.cache_path,
            "output": dataclasses.asdict(self.output),
        }


def _merged_settings(path, env):
    settings = {
        sec: {key: default for key, (_kind, default) in keys.items()}
        for sec, keys in _SCHEMA.items()
    }

    if path:
        parser = configparser.ConfigParser(interpolation=None)
        try:
            with open(path) as fh:
                parser.read_file(fh)
        except OSError as exc:
            raise ConfigError("cannot read config %r: %s" % (path, exc))
        except configparser.Error as exc:
            raise ConfigError("cannot parse config %r: %s" % (path, exc))
        for sec in parser.sections():
            if sec not in _SCHEMA:
                raise ConfigError("unknown config section [%s]" % sec)
            for key, raw in parser.items(sec):
                if key not in _SCHEMA[sec]:
                    raise ConfigError("unknown config key [%s] %s" % (sec, key))
                kind = _SCHEMA[sec][key][0]
                settings[sec][key] = _parse_value(kind, raw, "[%s] %s" % (sec, key))

    for name, raw in sorted(env.items()):
        if not name.startswith("ZLL_"):
            continue
        body = name[4:]
        sec, _sep, key = body.partition("_")
        sec = sec.lower()
        key = key.lower()
        if sec not in _SCHEMA:
            # other ZLL_ knobs (the kernel backend switch) share the prefix
            continue
        if key not in _SCHEMA[sec]:
            raise ConfigError("unknown config override %s" % name)
        kind = _SCHEMA[sec][key][0]
        settings[sec][key] = _parse_value(kind, raw, name)

    return settings


def load_config(path=None, env=None):
    """RunConfig from an optional file plus ZLL_ environment overrides."""
    if env is None:
        env = os.environ
    s = _merged_settings(path, env)

    try:
        engine = EngineConfig(**s["engine"])
        strips = StripLayout(**s["strips"])
    except ZetaLabError as exc:
        raise ConfigError(str(exc))

    ladder = LadderParams(**s["ladder"])
    if ladder.l0 < 10.0:
        raise ConfigError("ladder l0 must be >= 10, got %g" % ladder.l0)
    if ladder.root_tol <= 0.0:
        raise ConfigError("ladder root_tol must be positive")

    grid = GridParams(**s["grid"])
    if not grid.l_values:
        raise ConfigError("grid l_values is empty")
    for L in grid.l_values:
        if L < 1:
            raise ConfigError("grid L values must be positive integers")
        if math.pi * L < ladder.l0:
            raise ConfigError(
                "grid L=%d puts the base below ladder l0=%g" % (L, ladder.l0)
            )
    for k in grid.k_triple:
        if not 1 <= k <= MAX_CHAIN_DEPTH:
            raise ConfigError(
                "k_triple entries must lie in [1, %d]" % MAX_CHAIN_DEPTH
            )
    try:
        UGrid(values=grid.u_values)
    except ZetaLabError as exc:
        raise ConfigError("invalid U grid: %s" % exc)

    bohr = BohrParams(**s["bohr"])
    if not 0.0 < bohr.t_start < bohr.t_max:
        raise ConfigError("bohr needs 0 < t_start < t_max")
    if bohr.h_w <= 0.0:
        raise ConfigError("bohr h_w must be positive")
    if bohr.root_tol_bohr <= 0.0:
        raise ConfigError("bohr root_tol_bohr must be positive")

    tolerances = ToleranceParams(**s["tolerances"])
    if tolerances.cert_tol <= 0.0 or tolerances.meta_envelope <= 0.0:
        raise ConfigError("tolerances must be positive")

    return RunConfig(
        engine=engine,
        ladder=ladder,
        grid=grid,
        strips=strips,
        bohr=bohr,
        tolerances=tolerances,
        cache_path=s["cache"]["path"],
        output=OutputParams(**s["output"]),
    )

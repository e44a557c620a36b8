"""Built-in connection fixtures and JSON fixture-config loading.

Shipped fixtures cover the four regimes of interest: flat (zero
connection), flat in a curvilinear chart (polar), genuinely curved (unit
sphere chart) and torsionful (constant coefficients).  The same fixtures
are available as JSON config files for the command line; a config can
give coefficients directly, derive them from a metric, or transform
another fixture through a coordinate map.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from . import expr as ex
from .bridge import CoordinateMap, levi_civita_from_metric, transform_connection
from .connection import ConnectionField
from .fields import Box


class ConfigError(ValueError):
    """Malformed fixture or map configuration."""


@dataclass(frozen=True, eq=False)
class FixtureConfig:
    name: str
    dim: int
    coordinates: tuple[str, ...]
    conn: ConnectionField
    domain: Box
    samples: int
    seed: int
    tolerance: float


def zero_fixture(dim: int = 3) -> FixtureConfig:
    domain = Box((-1.5,) * dim, (1.5,) * dim)
    return FixtureConfig("zero", dim, tuple(f"x{i}" for i in range(dim)),
                         ConnectionField.zero(dim, domain), domain,
                         samples=50, seed=12021, tolerance=1e-8)


def polar_fixture() -> FixtureConfig:
    """Flat plane in polar coordinates (r, theta), r bounded away from 0."""
    domain = Box((0.1, -3.0), (3.0, 3.0))
    r = ex.Var(0)
    conn = ConnectionField.from_entries(2, {
        (0, 1, 1): ex.neg(r),
        (1, 0, 1): ex.div(ex.ONE, r),
        (1, 1, 0): ex.div(ex.ONE, r),
    }, domain)
    return FixtureConfig("polar", 2, ("r", "theta"), conn, domain,
                         samples=50, seed=23031, tolerance=1e-8)


def sphere_fixture() -> FixtureConfig:
    """Unit-sphere chart (theta, phi) with theta away from the poles."""
    domain = Box((0.1, -3.0), (math.pi - 0.1, 3.0))
    th = ex.Var(0)
    conn = ConnectionField.from_entries(2, {
        (0, 1, 1): ex.neg(ex.mul(ex.call("sin", th), ex.call("cos", th))),
        (1, 0, 1): ex.div(ex.call("cos", th), ex.call("sin", th)),
        (1, 1, 0): ex.div(ex.call("cos", th), ex.call("sin", th)),
    }, domain)
    return FixtureConfig("sphere", 2, ("theta", "phi"), conn, domain,
                         samples=50, seed=34041, tolerance=1e-8)


def torsionful_fixture() -> FixtureConfig:
    """Constant-coefficient connection with torsion (one asymmetric entry)."""
    domain = Box((-1.5, -1.5), (1.5, 1.5))
    conn = ConnectionField.from_entries(2, {(0, 0, 1): ex.ONE}, domain)
    return FixtureConfig("torsionful", 2, ("x0", "x1"), conn, domain,
                         samples=50, seed=45051, tolerance=1e-8)


def polar_map() -> CoordinateMap:
    """Right half-plane to polar coordinates; forward needs atan, so the
    primed angle stays inside the principal branch."""
    x, y = ex.Var(0), ex.Var(1)
    forward = (
        ex.call("sqrt", ex.add(ex.powi(x, 2), ex.powi(y, 2))),
        ex.call("atan", ex.div(y, x)),
    )
    r, th = ex.Var(0), ex.Var(1)
    inverse = (ex.mul(r, ex.call("cos", th)), ex.mul(r, ex.call("sin", th)))
    return CoordinateMap(
        2, forward, inverse,
        domain_primed=Box((0.2, -1.3), (3.0, 1.3)),
        domain_canonical=Box((0.3, -1.0), (3.0, 1.0)),
    )


BUILTIN_FIXTURES = {
    "zero": zero_fixture,
    "polar": polar_fixture,
    "sphere": sphere_fixture,
    "torsionful": torsionful_fixture,
}


def _load_box(obj, dim: int) -> Box:
    try:
        lo = tuple(float(v) for v in obj["lo"])
        hi = tuple(float(v) for v in obj["hi"])
    except (KeyError, TypeError) as err:
        raise ConfigError(f"domain must have numeric 'lo' and 'hi' lists: {err}") from None
    if len(lo) != dim or len(hi) != dim:
        raise ConfigError(f"domain bounds must have {dim} entries")
    exclusions = tuple((int(a), float(v)) for a, v in obj.get("exclusions", []))
    return Box(lo, hi, exclusions, float(obj.get("margin", 0.05)))


def _parse_expr(src, dim: int) -> ex.Expr:
    if not isinstance(src, str):
        raise ConfigError(f"expected an expression string, got {src!r}")
    return ex.parse(src, dim)


def load_map(obj) -> CoordinateMap:
    try:
        dim = int(obj["dim"])
        forward_src = obj["forward"]
        inverse_src = obj["inverse"]
        domain = obj["domain"]
    except (KeyError, TypeError) as err:
        raise ConfigError(f"map needs 'dim', 'forward', 'inverse' and 'domain': {err}") from None
    forward = tuple(_parse_expr(s, dim) for s in forward_src)
    inverse = tuple(_parse_expr(s, dim) for s in inverse_src)
    canonical = obj.get("domain_canonical")
    return CoordinateMap(dim, forward, inverse, _load_box(domain, dim),
                         _load_box(canonical, dim) if canonical else None)


def load_map_file(path) -> CoordinateMap:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as err:
            raise ConfigError(f"invalid JSON in {path}: {err}") from None
    return load_map(obj)


def _load_connection(spec, dim: int, domain: Box) -> ConnectionField:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError("connection spec must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "coefficients":
        entries = {}
        for key, src in spec.get("coefficients", {}).items():
            try:
                g, a, b = (int(part) for part in key.split(","))
            except ValueError:
                raise ConfigError(f"bad coefficient key {key!r}; expected 'g,a,b'") from None
            if not all(0 <= idx < dim for idx in (g, a, b)):
                raise ConfigError(f"coefficient index {key!r} out of range for dim {dim}")
            entries[(g, a, b)] = _parse_expr(src, dim)
        return ConnectionField.from_entries(dim, entries, domain)
    if kind == "metric":
        matrix = spec.get("matrix")
        if not matrix or len(matrix) != dim:
            raise ConfigError(f"metric matrix must be {dim}x{dim}")
        rows = [[_parse_expr(c, dim) for c in row] for row in matrix]
        return levi_civita_from_metric(rows, domain)
    if kind == "transform":
        base_spec = spec.get("base")
        if isinstance(base_spec, str):
            try:
                base = BUILTIN_FIXTURES[base_spec]().conn
            except KeyError:
                raise ConfigError(f"unknown base fixture {base_spec!r}") from None
            if base.dim != dim:
                raise ConfigError(f"base fixture {base_spec!r} has dim {base.dim}, expected {dim}")
        else:
            base = _load_connection(base_spec, dim, domain)
        cmap = load_map(spec.get("map"))
        return transform_connection(base, cmap)
    raise ConfigError(f"unknown connection kind {kind!r}")


def load_fixture(obj) -> FixtureConfig:
    if not isinstance(obj, dict):
        raise ConfigError("fixture config must be a JSON object")
    try:
        dim = int(obj["dim"])
        seed = int(obj["seed"])
    except (KeyError, TypeError, ValueError) as err:
        raise ConfigError(f"fixture needs integer 'dim' and 'seed': {err}") from None
    domain = _load_box(obj.get("domain", {"lo": [-1.5] * dim, "hi": [1.5] * dim}), dim)
    conn = _load_connection(obj.get("connection", {"kind": "coefficients"}), dim, domain)
    tolerance = float(obj.get("tolerance", 1e-8))
    if tolerance <= 0:
        raise ConfigError("tolerance must be positive")
    coordinates = tuple(obj.get("coordinates", [f"x{i}" for i in range(dim)]))
    if len(coordinates) != dim:
        raise ConfigError(f"expected {dim} coordinate names")
    return FixtureConfig(str(obj.get("name", "fixture")), dim, coordinates, conn, domain,
                         int(obj.get("samples", 50)), seed, tolerance)


def load_fixture_file(path) -> FixtureConfig:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as err:
            raise ConfigError(f"invalid JSON in {path}: {err}") from None
    return load_fixture(obj)

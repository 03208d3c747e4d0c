"""Audit configuration: a TOML document with nested tables.

Grammar (all tables optional except [battery]):

    [battery]
    alphas = [0.0, 0.5]                 # each > -1/2
    inequalities = ["PITT_HWT", ...]    # ids, or "all"

    [[wavelets]]                        # repeated; Bessel-hat parameters
    k = 2
    sigma = 2.0

    [[functions]]                       # repeated
    family = "gaussian"                 # gaussian | poly_gaussian
    width = 1.0
    degree = 1                          # poly_gaussian only: x^(2 degree) e^(-x^2/(2 width^2))

    [params]
    pitt_beta = [0.0, 0.5]              # each 0 <= beta < alpha+1 for every alpha
    s_beta = [[1.0, 1.0]]               # HEIS_HWT_SUM / HEIS_HWT_PROD exponents
    mellin_s_beta = [[0.5, 1.0]]        # extra HEIS_HWT_MELLIN rows reported as info
    lieb_p = [3.0, 4.0]                 # LIEB_LP, each > 2
    support_p = [3.0]                   # LIEB_SUPPORT, each > 2
    regions = [[[0.25, 4.0, 0.0, 6.0]]] # DONOHO_STARK / LIEB_SUPPORT; list of rectangle lists
    annihilation_regions = [[[0.5, 1.0, 0.0, 1.0]]]

    [grid]                              # position grid and scale band
    core_radius, core_panels, nodes_per_panel, radius, tail_growth, tail_nodes,
    origin_levels, origin_nodes, a_min, a_max, nodes_per_octave

    [tolerances]
    nu = 1e-3                           # scale-position functionals
    mu = 1e-6                           # half-line functionals

    [output]
    dir = "audit_out"
    json = "report.json"
    csv = "summary.csv"
    figures = true
"""

import math
from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .audit.inequalities import ALL_IDS
from .errors import ConfigError
from .families import FunctionSpec

_SECTIONS = {
    "battery": {"alphas", "inequalities"},
    "wavelets": {"k", "sigma"},
    "functions": {"family", "width", "degree"},
    "params": {"pitt_beta", "s_beta", "mellin_s_beta", "lieb_p", "support_p", "regions", "annihilation_regions"},
    "grid": {"core_radius", "core_panels", "nodes_per_panel", "radius", "tail_growth", "tail_nodes",
             "origin_levels", "origin_nodes", "a_min", "a_max", "nodes_per_octave"},
    "tolerances": {"nu", "mu"},
    "output": {"dir", "json", "csv", "figures"},
}

DEFAULT_GRID = {
    "core_radius": 12.0, "core_panels": 32, "nodes_per_panel": 32, "radius": 160.0,
    "tail_growth": 1.25, "tail_nodes": 16, "origin_levels": 4, "origin_nodes": 16,
    "a_min": 1.0 / 256, "a_max": 1024.0, "nodes_per_octave": 8,
}


@dataclass
class AuditConfig:
    alphas: list
    inequalities: list
    wavelets: list
    functions: list
    pitt_beta: list = field(default_factory=list)
    s_beta: list = field(default_factory=list)
    mellin_s_beta: list = field(default_factory=list)
    lieb_p: list = field(default_factory=list)
    support_p: list = field(default_factory=list)
    regions: list = field(default_factory=list)
    annihilation_regions: list = field(default_factory=list)
    grid: dict = field(default_factory=lambda: dict(DEFAULT_GRID))
    tol_nu: float = 1e-3
    tol_mu: float = 1e-6
    out_dir: str = "audit_out"
    json_name: str = "report.json"
    csv_name: str = "summary.csv"
    figures: bool = True
    source: str = ""

    def settings(self):
        """Plain-data summary stored in the report."""
        return {
            "alphas": list(self.alphas),
            "inequalities": list(self.inequalities),
            "wavelets": [list(w) for w in self.wavelets],
            "functions": [f.label for f in self.functions],
            "grid": dict(self.grid),
            "tolerances": {"nu": self.tol_nu, "mu": self.tol_mu},
        }


def bundled_config_path():
    return Path(__file__).with_name("data") / "default_audit.toml"


def load_config(path):
    """Read and validate a config file; errors are ConfigError with key diagnostics."""
    name = str(path)
    if name in ("default_audit", "default"):
        path = bundled_config_path()
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    cfg = parse_config(data)
    cfg.source = str(path)
    return cfg


def _num_list(value, key):
    if not isinstance(value, list):
        raise ConfigError(f"{key} must be a list")
    out = []
    for v in value:
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise ConfigError(f"{key} entries must be finite numbers, got {v!r}")
        out.append(float(v))
    return out


def _pairs(value, key):
    if not isinstance(value, list):
        raise ConfigError(f"{key} must be a list of [s, beta] pairs")
    out = []
    for pair in value:
        vals = _num_list(pair, key)
        if len(vals) != 2 or min(vals) <= 0:
            raise ConfigError(f"{key} entries must be pairs of positive numbers, got {pair!r}")
        out.append(tuple(vals))
    return out


def _regions(value, key):
    if not isinstance(value, list):
        raise ConfigError(f"{key} must be a list of regions")
    out = []
    for region in value:
        if not isinstance(region, list) or not region:
            raise ConfigError(f"{key}: each region is a non-empty list of [a1, a2, x1, x2] rectangles")
        rects = []
        for rect in region:
            r = _num_list(rect, key)
            if len(r) != 4 or not (0 < r[0] < r[1] and 0 <= r[2] < r[3]):
                raise ConfigError(f"{key}: bad rectangle {rect!r}; need 0 < a1 < a2 and 0 <= x1 < x2")
            rects.append(r)
        out.append(rects)
    return out


def parse_config(data):
    unknown = []
    for section, body in data.items():
        if section not in _SECTIONS:
            unknown.append(section)
            continue
        items = body if isinstance(body, list) else [body]
        for item in items:
            if not isinstance(item, dict):
                raise ConfigError(f"[{section}] must be a table")
            unknown += [f"{section}.{k}" for k in item if k not in _SECTIONS[section]]
    if unknown:
        raise ConfigError("unknown config keys: " + ", ".join(sorted(unknown)))

    battery = data.get("battery")
    if battery is None:
        raise ConfigError("missing [battery] table")
    alphas = _num_list(battery.get("alphas", []), "battery.alphas")
    for a in alphas:
        if not a > -0.5:
            raise ConfigError(f"battery.alphas: alpha must be > -1/2, got {a}")
    ids = battery.get("inequalities", [])
    if ids == "all":
        ids = list(ALL_IDS)
    if not isinstance(ids, list):
        raise ConfigError("battery.inequalities must be a list of ids or \"all\"")
    bad = [i for i in ids if i not in ALL_IDS]
    if bad:
        raise ConfigError("battery.inequalities: unknown ids " + ", ".join(map(str, bad)))

    wavelets = []
    for i, wv in enumerate(data.get("wavelets", [])):
        k, sigma = wv.get("k"), wv.get("sigma")
        if isinstance(k, bool) or not isinstance(k, int) or k < 1:
            raise ConfigError(f"wavelets[{i}].k must be an integer >= 1 (admissibility), got {k!r}")
        if isinstance(sigma, bool) or not isinstance(sigma, (int, float)) or not sigma > 0:
            raise ConfigError(f"wavelets[{i}].sigma must be > 0, got {sigma!r}")
        wavelets.append((int(k), float(sigma)))

    functions = []
    for i, fv in enumerate(data.get("functions", [])):
        try:
            functions.append(FunctionSpec(fv.get("family", ""), float(fv.get("width", 1.0)), int(fv.get("degree", 0))))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"functions[{i}]: {exc}") from exc
        except ConfigError as exc:
            raise ConfigError(f"functions[{i}]: {exc}") from exc
        if functions[-1].family == "zero":
            raise ConfigError(f"functions[{i}]: the zero function has ||f|| < 1e-12 and cannot be audited")

    params = data.get("params", {})
    pitt_beta = _num_list(params.get("pitt_beta", []), "params.pitt_beta")
    for b in pitt_beta:
        for a in alphas:
            if not (0 <= b < a + 1):
                raise ConfigError(
                    f"params.pitt_beta = {b} violates the Pitt bound 0 <= beta < alpha+1 (alpha = {a})"
                )
    lieb_p = _num_list(params.get("lieb_p", []), "params.lieb_p")
    support_p = _num_list(params.get("support_p", []), "params.support_p")
    for key, vals in (("params.lieb_p", lieb_p), ("params.support_p", support_p)):
        for p in vals:
            if not p > 2:
                raise ConfigError(f"{key}: p must be > 2, got {p}")

    grid = dict(DEFAULT_GRID)
    grid.update(data.get("grid", {}))
    for key in ("core_panels", "nodes_per_panel", "tail_nodes", "origin_levels", "origin_nodes", "nodes_per_octave"):
        if isinstance(grid[key], bool) or not isinstance(grid[key], int) or grid[key] < (0 if key == "origin_levels" else 1):
            raise ConfigError(f"grid.{key} must be a positive integer, got {grid[key]!r}")
    for key in ("core_radius", "radius", "tail_growth", "a_min", "a_max"):
        if isinstance(grid[key], bool) or not isinstance(grid[key], (int, float)) or not grid[key] > 0:
            raise ConfigError(f"grid.{key} must be a positive number, got {grid[key]!r}")
        grid[key] = float(grid[key])
    if not grid["a_max"] > grid["a_min"]:
        raise ConfigError("grid.a_max must exceed grid.a_min")
    if not grid["radius"] >= grid["core_radius"]:
        raise ConfigError("grid.radius must be at least grid.core_radius")
    if not grid["tail_growth"] >= 1:
        raise ConfigError("grid.tail_growth must be >= 1")

    regions = _regions(params.get("regions", []), "params.regions")
    annihilation = _regions(params.get("annihilation_regions", []), "params.annihilation_regions")
    for key, group in (("params.regions", regions), ("params.annihilation_regions", annihilation)):
        for region in group:
            for a1, a2, x1, x2 in region:
                if a1 < grid["a_min"] or a2 > grid["a_max"] or x2 > grid["radius"]:
                    raise ConfigError(f"{key}: rectangle {[a1, a2, x1, x2]} leaves the grid box")

    tol = data.get("tolerances", {})
    out = data.get("output", {})
    cfg = AuditConfig(
        alphas=alphas, inequalities=list(ids), wavelets=wavelets, functions=functions,
        pitt_beta=pitt_beta, s_beta=_pairs(params.get("s_beta", []), "params.s_beta"),
        mellin_s_beta=_pairs(params.get("mellin_s_beta", []), "params.mellin_s_beta"),
        lieb_p=lieb_p, support_p=support_p, regions=regions, annihilation_regions=annihilation, grid=grid,
        tol_nu=float(tol.get("nu", 1e-3)), tol_mu=float(tol.get("mu", 1e-6)),
        out_dir=str(out.get("dir", "audit_out")), json_name=str(out.get("json", "report.json")),
        csv_name=str(out.get("csv", "summary.csv")), figures=bool(out.get("figures", True)),
    )
    for key, val in (("tolerances.nu", cfg.tol_nu), ("tolerances.mu", cfg.tol_mu)):
        if not (0 <= val < 1):
            raise ConfigError(f"{key} must lie in [0, 1)")
    return cfg

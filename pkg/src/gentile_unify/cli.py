"""Command-line front end: ``analyze``, ``sweep`` and ``verify``.

Config files are JSON objects, either nested
(``{"system1": {"alpha": 1.1, ...}}``) or flat with dotted keys
(``{"system1.alpha": 1.1, ...}``). Unknown keys are rejected.
"""

import argparse
import concurrent.futures
import csv
import io
import itertools
import json
import math
import os
import re
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import GentileUnifyError, NoSolutionError
from .oracle import verify_energy_asymptotic, verify_g_integral, verify_gentile_limits
from .system_model import SolverSettings, SystemState, RegimeTag, classify_regime, order_pair
from .transfer import analyze_transfer, scan_alpha_f
from .unify import unify_case1, unify_case2

SCHEMA_VERSION = 1
THREADS_ENV = "GENTILE_UNIFY_THREADS"
DEFAULT_MAX_CELLS = 10_000

_SYSTEM_KEYS = ("alpha", "temperature", "particle_count", "kappa")
_REQUIRED_SYSTEM_KEYS = ("alpha", "temperature", "particle_count")
_SETTINGS_KEYS = tuple(SolverSettings.__dataclass_fields__)
ALLOWED_KEYS = frozenset(
    [f"system{i}.{k}" for i in (1, 2) for k in _SYSTEM_KEYS]
    + [f"settings.{k}" for k in _SETTINGS_KEYS]
    + ["output_format", "interpretation"]
)

LABELS = {
    "physics": {
        "T": "temperature",
        "alpha": "half-dimension",
        "k": "particle count",
        "kappa": "chemical potential magnitude",
        "E": "energy",
        "S": "entropy",
    },
    "economics": {
        "T": "capital turnover rate",
        "alpha": "half-dimension",
        "k": "capital units (banknotes)",
        "kappa": "nominal interest rate",
        "E": "energy",
        "S": "entropy",
    },
}

SWEEP_AXES = {
    "T1": "system1.temperature",
    "T2": "system2.temperature",
    "alpha1": "system1.alpha",
    "alpha2": "system2.alpha",
    "k1": "system1.particle_count",
}

CSV_COLUMNS = (
    "schema_version", "T1", "T2", "alpha1", "alpha2", "k1", "k2",
    "regime", "status", "T_unified", "alpha_unified", "E_unified", "S_unified", "tau",
    "energy_residual", "entropy_residual", "ordering_ok", "refined_T", "refined_alpha",
    "kappa1", "q1", "H1", "H2", "H3", "lambda_value", "no_flow_margin", "direction",
    "delta_k", "relative_transfer", "relative_lower_bound", "n_warnings",
)


class ConfigError(GentileUnifyError, ValueError):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    system1: SystemState
    system2: SystemState
    settings: SolverSettings = field(default_factory=SolverSettings)
    output_format: str = "json"
    interpretation: str = "physics"


def _line_of(text, key):
    leaf = key.rsplit(".", 1)[-1]
    for pattern in (re.escape(json.dumps(key)), re.escape(json.dumps(leaf))):
        m = re.search(pattern + r"\s*:", text)
        if m:
            return text.count("\n", 0, m.start()) + 1
    return 1


def _flatten(obj, prefix=""):
    flat = {}
    for k, v in obj.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            flat.update(_flatten(v, key + "."))
        else:
            flat[key] = v
    return flat


def parse_config(text, source="<config>"):
    """Parse and validate a scenario config. Errors name ``source:line``."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}:{exc.lineno}: invalid JSON: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"{source}:1: top level must be a JSON object")
    flat = _flatten(raw)
    for key in flat:
        if key not in ALLOWED_KEYS:
            raise ConfigError(f"{source}:{_line_of(text, key)}: unknown key {key!r}")
    return config_from_flat(flat, text, source)


def config_from_flat(flat, text="", source="<config>"):
    systems = []
    for i in (1, 2):
        for k in _REQUIRED_SYSTEM_KEYS:
            if f"system{i}.{k}" not in flat:
                raise ConfigError(f"{source}:1: missing required key 'system{i}.{k}'")
        fields = {k: flat[f"system{i}.{k}"] for k in _SYSTEM_KEYS if f"system{i}.{k}" in flat}
        try:
            systems.append(SystemState(**fields))
        except (GentileUnifyError, TypeError, ValueError) as exc:
            raise ConfigError(f"{source}:{_line_of(text, f'system{i}.alpha')}: system{i}: {exc}") from None
    overrides = {k: flat[f"settings.{k}"] for k in _SETTINGS_KEYS if f"settings.{k}" in flat}
    try:
        settings = SolverSettings(**overrides)
    except (GentileUnifyError, TypeError) as exc:
        key = next(iter(overrides), "settings")
        raise ConfigError(f"{source}:{_line_of(text, 'settings.' + key)}: {exc}") from None
    fmt = flat.get("output_format", "json")
    if fmt not in ("json", "csv"):
        raise ConfigError(f"{source}:{_line_of(text, 'output_format')}: output_format must be json or csv")
    interp = flat.get("interpretation", "physics")
    if interp not in LABELS:
        raise ConfigError(f"{source}:{_line_of(text, 'interpretation')}: interpretation must be physics or economics")
    return ScenarioConfig(systems[0], systems[1], settings, fmt, interp)


def _clean(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _dedupe(items):
    return list(dict.fromkeys(items))


def analyze_document(config):
    """Build the report document for one scenario. Returns ``(document, exit_code)``."""
    s1, s2, settings = config.system1, config.system2, config.settings
    regime = classify_regime(s1, s2)
    lo, _ = order_pair(s1, s2)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "interpretation": config.interpretation,
        "labels": LABELS[config.interpretation],
        "inputs": {
            "system1": asdict(s1),
            "system2": asdict(s2),
            "settings": asdict(settings),
        },
        "lower_dimension_system": "system1" if lo is s1 else "system2",
        "regime": {"tag": regime.tag.value, "detail": regime.detail},
        "status": "ok",
        "unification": None,
        "transfer": None,
        "error": None,
    }
    warnings = []
    code = 0
    if regime.tag is RegimeTag.UNSUPPORTED:
        doc["status"] = "unsupported"
        doc["error"] = f"unsupported regime: {regime.detail}"
        code = 2
    else:
        solver = unify_case1 if regime.tag is RegimeTag.CASE1_SAME_SIDE else unify_case2
        try:
            report = solver(s1, s2, settings)
        except NoSolutionError as exc:
            doc["status"] = "no_solution"
            doc["error"] = str(exc)
            curve = exc.diagnostics.get("residual_curve")
            if curve:
                doc["residual_curve"] = curve
            code = 1
        except GentileUnifyError as exc:
            doc["status"] = "error"
            doc["error"] = str(exc)
            code = 1
        else:
            u = report.to_dict()
            warnings.extend(u.pop("warnings"))
            doc["unification"] = u
            if regime.tag is RegimeTag.CASE1_SAME_SIDE:
                try:
                    t = analyze_transfer(lo, report, settings).to_dict()
                except GentileUnifyError as exc:
                    warnings.append(f"transfer analysis failed: {exc}")
                else:
                    warnings.extend(t.pop("warnings"))
                    doc["transfer"] = t
            else:
                warnings.append("transfer laws are derived for the same-side regime only; no transfer report")
    doc["warnings"] = _dedupe(warnings)
    return _clean(doc), code


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "%.12g" % v
    return str(v)


def document_to_row(doc):
    inp = doc["inputs"]
    u = doc.get("unification") or {}
    t = doc.get("transfer") or {}
    refined = u.get("refined") or {}
    row = {
        "schema_version": doc["schema_version"],
        "T1": inp["system1"]["temperature"],
        "T2": inp["system2"]["temperature"],
        "alpha1": inp["system1"]["alpha"],
        "alpha2": inp["system2"]["alpha"],
        "k1": inp["system1"]["particle_count"],
        "k2": inp["system2"]["particle_count"],
        "regime": doc["regime"]["tag"],
        "status": doc["status"],
        "refined_T": refined.get("T"),
        "refined_alpha": refined.get("alpha"),
        "n_warnings": len(doc["warnings"]),
    }
    for key in ("T_unified", "alpha_unified", "E_unified", "S_unified", "tau",
                "energy_residual", "entropy_residual", "ordering_ok"):
        row[key] = u.get(key)
    for key in ("kappa1", "q1", "H1", "H2", "H3", "lambda_value", "no_flow_margin",
                "direction", "delta_k", "relative_transfer", "relative_lower_bound"):
        row[key] = t.get(key)
    return [_fmt(row[c]) for c in CSV_COLUMNS]


def _write_csv(rows, stream):
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    w.writerows(rows)


def render(doc, fmt):
    if fmt == "csv":
        buf = io.StringIO()
        _write_csv([document_to_row(doc)], buf)
        return buf.getvalue()
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _read_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), source=path)


def parse_grid(spec):
    """Parse ``axis=lo:hi:n`` into ``(axis, values)``."""
    m = re.fullmatch(r"\s*(\w+)\s*=\s*([^:]+):([^:]+):(\d+)\s*", spec)
    if not m:
        raise ConfigError(f"bad grid spec {spec!r}; expected axis=lo:hi:n")
    axis, lo, hi, n = m.group(1), float(m.group(2)), float(m.group(3)), int(m.group(4))
    if axis not in SWEEP_AXES:
        raise ConfigError(f"unknown sweep axis {axis!r}; choose from {', '.join(SWEEP_AXES)}")
    return axis, np.linspace(lo, hi, n).tolist()


def resolve_threads(explicit=None):
    n = explicit
    if n is None:
        n = int(os.environ.get(THREADS_ENV, "0") or 0)
    if n <= 0:
        n = os.cpu_count() or 1
    return n


def _sweep_point(args):
    base_flat, overrides = args
    flat = dict(base_flat)
    flat.update(overrides)
    try:
        config = config_from_flat(flat)
    except ConfigError as exc:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "inputs": {
                f"system{i}": {k: flat.get(f"system{i}.{k}") for k in _SYSTEM_KEYS} for i in (1, 2)
            },
            "regime": {"tag": "", "detail": ""},
            "status": "invalid",
            "warnings": [str(exc)],
        }
        return document_to_row(doc)
    doc, _ = analyze_document(config)
    return document_to_row(doc)


def sweep_rows(config, grids, threads=1, max_cells=DEFAULT_MAX_CELLS):
    """Evaluate the cartesian grid; rows come back in lexicographic grid-index order."""
    cells = math.prod(len(v) for _, v in grids) if grids else 0
    if cells > max_cells:
        raise ConfigError(f"grid has {cells} cells, above the cap of {max_cells}")
    if cells == 0:
        return []
    base = {
        **{f"system1.{k}": v for k, v in asdict(config.system1).items() if v is not None},
        **{f"system2.{k}": v for k, v in asdict(config.system2).items() if v is not None},
        **{f"settings.{k}": v for k, v in asdict(config.settings).items()},
    }
    axes = [SWEEP_AXES[a] for a, _ in grids]
    jobs = [(base, dict(zip(axes, combo))) for combo in itertools.product(*(v for _, v in grids))]
    if threads <= 1:
        return [_sweep_point(j) for j in jobs]
    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_sweep_point, jobs))


def verify_document(settings, grid_density=3):
    """Run the oracle suites. Returns ``(document, all_hard_checks_passed)``."""
    checks = []

    def hard(name, fn):
        try:
            passed, detail = fn()
        except GentileUnifyError as exc:
            passed, detail = False, f"tolerance not met: {exc}"
        checks.append({"name": name, "hard": True, "passed": bool(passed), "detail": detail})

    n = max(int(grid_density), 1)
    alphas = np.linspace(0.5, 1.5, n).tolist() if n > 1 else [1.0]

    def energy():
        rows = verify_energy_asymptotic(alphas, [1.0, 10.0, 100.0], settings)
        worst = max(r.rel_error for r in rows)
        return all(r.passed for r in rows), {
            "max_rel_error": worst, "bound": 10 * settings.quad_rel_tol,
            "table": [asdict(r) for r in rows],
        }

    def g_integral():
        hi = 1.0 - settings.delta_guard
        grid = np.linspace(0.5, hi, n).tolist() if n > 1 else [0.5]
        rows = verify_g_integral(grid, settings)
        ok = all(math.isfinite(r.g_integral) and r.g_integral > 0 and r.g_approx > 0 for r in rows)
        return ok, {"table": [asdict(r) for r in rows]}

    def gentile():
        fermi, bose = verify_gentile_limits()
        return fermi <= 1e-14 and bose <= 1e-6, {"fermi_max_rel_dev": fermi, "bose_max_abs_dev": bose}

    hard("energy_law_quadrature", energy)
    hard("g_integral_quadrature", g_integral)
    hard("gentile_limits", gentile)

    scan = scan_alpha_f(1.0, 1.5, max(n, 51))
    checks.append({
        "name": "alpha_f_range",
        "hard": False,
        "passed": scan.printed_range_reproduced,
        "detail": {
            "min": scan.minimum, "max": scan.maximum, "note": scan.note,
            "table": scan.table.tolist(),
        },
    })
    ok = all(c["passed"] for c in checks if c["hard"])
    return _clean({"schema_version": SCHEMA_VERSION, "settings": asdict(settings),
                   "checks": checks, "all_hard_checks_passed": ok}), ok


def build_parser():
    p = argparse.ArgumentParser(prog="gentile-unify", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="unify two systems and report the transfer")
    a.add_argument("--config", required=True)
    a.add_argument("--format", choices=("json", "csv"))
    a.add_argument("--econ", action="store_true", help="label outputs with the economics reading")

    s = sub.add_parser("sweep", help="evaluate a parameter grid into CSV")
    s.add_argument("--config", required=True)
    s.add_argument("--grid", action="append", default=[], metavar="AXIS=LO:HI:N")
    s.add_argument("--out", default="-")
    s.add_argument("--threads", type=int, help=f"worker threads (default ${THREADS_ENV}, 0 = auto)")
    s.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)

    v = sub.add_parser("verify", help="run the quadrature oracle suite")
    v.add_argument("--tol", type=float, help="quadrature relative tolerance")
    v.add_argument("--grid-density", type=int, default=3)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            config = _read_config(args.config)
            if args.econ:
                config = ScenarioConfig(config.system1, config.system2, config.settings,
                                        config.output_format, "economics")
            doc, code = analyze_document(config)
            sys.stdout.write(render(doc, args.format or config.output_format))
            if doc["error"]:
                print(doc["error"], file=sys.stderr)
            return code
        if args.command == "sweep":
            config = _read_config(args.config)
            grids = [parse_grid(g) for g in args.grid]
            rows = sweep_rows(config, grids, resolve_threads(args.threads), args.max_cells)
            if args.out == "-":
                _write_csv(rows, sys.stdout)
            else:
                with open(args.out, "w", newline="", encoding="utf-8") as fh:
                    _write_csv(rows, fh)
            return 0
        settings = SolverSettings() if args.tol is None else SolverSettings(quad_rel_tol=args.tol)
        doc, ok = verify_document(settings, args.grid_density)
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        for c in doc["checks"]:
            tag = "PASS" if c["passed"] else ("FAIL" if c["hard"] else "INFO")
            print(f"{tag} {c['name']}", file=sys.stderr)
        return 0 if ok else 1
    except (GentileUnifyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

"""Command-line interface: job parsing, catalog dispatch, table emission.

Subcommands
-----------
spectrum          closed-form and/or grid spectra, side by side
check-pseudo      shift-conjugation residual check for a potential family
orthogonality     Gram matrix of bound states under a chosen pairing
laguerre-integral one weighted Laguerre product integral, both methods
converge          grid-refinement error table with empirical orders

Invocation is flag-based, by JSON job file (``--job``), or both; explicit
flags override job-file fields.  Exit codes: 0 success (and any requested
check passed), 1 a requested check failed, 2 invalid input or job file,
3 eigensolver or quadrature non-convergence, 4 no known shift angle for the
requested family parameters.  The environment variable PSEUDOSPEC_SEED is
reserved; nothing reads it today because every pipeline is deterministic.
Output for a fixed job file is byte-identical across runs: floats are
printed with 17 significant digits in JSON and fixed formats elsewhere.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .gridsolver import (
    Discretization,
    EigenConvergenceError,
    convergence_study,
    imag_tol,
    solve_spectrum,
)
from .potentials import (
    FAMILIES,
    BranchAmbiguityError,
    NoKnownShiftError,
    evaluate_on_grid,
    from_params,
    natural_domain,
    pseudo_shift_angle,
)
from .quadrature import (
    NonConvergenceError,
    gram_matrix,
    laguerre_overlap_exact,
    laguerre_overlap_quadrature,
)
from .shiftop import check_pseudo_hermitian
from .spectra import (
    NonRealParameterError,
    eckart_spectrum,
    ho_spectrum,
    morse_spectrum,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NONCONVERGENCE = 3
EXIT_NO_SHIFT = 4

_FORMATS = ("table", "json", "csv")
_METHODS = ("exact", "grid", "both")
_PAIRINGS = ("eta", "pt", "plain")

# potential parameters accepted as flags; V1/V2 parse as complex numbers
_REAL_PARAMS = ("A", "B", "C", "beta", "gamma", "alpha", "zeta", "M", "kappa")
_COMPLEX_PARAMS = ("V1", "V2")

# reference grids giving the documented accuracy for each family
_REFERENCE_N = {
    "morse-complex": 1600,
    "morse-general": 1600,
    "ho-shifted": 1200,
    "eckart-shifted": 1200,
    "khare-mandal": 800,
}

_JOB_KEYS = {"command", "potential", "discretization", "tolerances", "output", "options"}
_JOB_POTENTIAL_KEYS = {"name", "parameters"}
_JOB_DISC_KEYS = {"x_min", "x_max", "n_points", "order"}
_JOB_TOL_KEYS = {"tol"}
_JOB_OUTPUT_KEYS = {"format"}
_JOB_OPTION_KEYS = {
    "method",
    "k",
    "pairing",
    "m_max",
    "theta_override",
    "grid_points",
    "refinements",
    "m",
    "n",
    "c",
    "quad_method",
    "plot_data",
}


class UsageError(ValueError):
    """Invalid flags or job-file contents."""


# ---------------------------------------------------------------------------
# deterministic serialization


def _f17(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        return json.dumps(str(x))
    return format(x, ".17g")


def _jdump(obj) -> str:
    """JSON with fixed key order (insertion) and 17-significant-digit floats."""
    if isinstance(obj, dict):
        inner = ", ".join(json.dumps(str(k)) + ": " + _jdump(v) for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)) or isinstance(obj, np.ndarray):
        return "[" + ", ".join(_jdump(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _f17(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return '{"re": ' + _f17(obj.real) + ', "im": ' + _f17(obj.imag) + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _t(x: float) -> str:
    return format(float(x), ".12g")


def _tc(z: complex) -> str:
    z = complex(z)
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _emit(doc: dict, fmt: str, table_lines: list[str], csv_lines: list[str]) -> None:
    if fmt == "json":
        sys.stdout.write(_jdump(doc) + "\n")
    elif fmt == "csv":
        sys.stdout.write("\n".join(csv_lines) + "\n")
    else:
        sys.stdout.write("\n".join(table_lines) + "\n")


# ---------------------------------------------------------------------------
# job-file loading and flag merging


def _check_keys(mapping: dict, allowed: set, where: str) -> None:
    unknown = sorted(set(mapping) - allowed)
    if unknown:
        raise UsageError(f"unknown {where} key(s): {', '.join(unknown)}")


def _load_job(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            job = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read job file {path}: {exc}") from exc
    if not isinstance(job, dict):
        raise UsageError("job file must hold a JSON object")
    _check_keys(job, _JOB_KEYS, "job")
    cfg: dict = {}
    if "command" in job:
        cfg["command"] = job["command"]
    pot = job.get("potential", {})
    if not isinstance(pot, dict):
        raise UsageError("job potential must be an object")
    _check_keys(pot, _JOB_POTENTIAL_KEYS, "potential")
    if "name" in pot:
        cfg["potential"] = pot["name"]
    params = pot.get("parameters", {})
    if not isinstance(params, dict):
        raise UsageError("job potential parameters must be an object")
    for key, val in params.items():
        if key not in _REAL_PARAMS and key not in _COMPLEX_PARAMS:
            raise UsageError(f"unknown potential parameter {key!r}")
        cfg[key] = val
    for section, allowed in (
        ("discretization", _JOB_DISC_KEYS),
        ("tolerances", _JOB_TOL_KEYS),
        ("output", _JOB_OUTPUT_KEYS),
        ("options", _JOB_OPTION_KEYS),
    ):
        block = job.get(section, {})
        if not isinstance(block, dict):
            raise UsageError(f"job {section} must be an object")
        _check_keys(block, allowed, section)
        cfg.update(block)
    return cfg


def _merge(args: argparse.Namespace) -> dict:
    cfg = _load_job(args.job) if args.job else {}
    for key, val in vars(args).items():
        if key == "job" or val is None:
            continue
        if key == "command":
            cfg["command"] = val  # the command line wins over the job file
        else:
            cfg[key] = val
    return cfg


def _as_complex(value) -> complex:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float, complex)):
        return complex(value)
    if isinstance(value, str):
        return complex(value.replace(" ", ""))
    raise UsageError(f"cannot parse complex parameter from {value!r}")


def _build_spec(cfg: dict):
    name = cfg.get("potential")
    if not name:
        raise UsageError("no potential selected; pass --potential or a job file")
    if name not in FAMILIES:
        raise UsageError(
            f"unknown family {name!r}; known: {', '.join(sorted(FAMILIES))}"
        )
    params = {}
    for key in _REAL_PARAMS:
        if cfg.get(key) is not None:
            params[key] = float(cfg[key])
    for key in _COMPLEX_PARAMS:
        if cfg.get(key) is not None:
            params[key] = _as_complex(cfg[key])
    try:
        return from_params(name, **params)
    except TypeError as exc:
        raise UsageError(f"bad parameters for {name}: {exc}") from exc


def _build_disc(cfg: dict, spec, default_n: int) -> Discretization:
    lo, hi = natural_domain(spec)
    x_min = float(cfg.get("x_min", lo))
    x_max = float(cfg.get("x_max", hi))
    n_points = cfg.get("n_points", default_n)
    order = cfg.get("order", "fd4")
    return Discretization(x_min, x_max, n_points, order)


def _fmt_of(cfg: dict) -> str:
    fmt = cfg.get("format", "table")
    if fmt not in _FORMATS:
        raise UsageError(f"unknown format {fmt!r}; choose from {', '.join(_FORMATS)}")
    return fmt


def _closed_form_states(spec, count: int):
    """Lowest closed-form bound states, or None for families without one."""
    name = type(spec).__name__
    if name in ("MorseComplex", "MorseGeneral"):
        return morse_spectrum(spec)[:count]
    if name == "HarmonicShifted":
        return ho_spectrum(spec, n_max=count - 1)
    if name == "EckartShifted":
        return eckart_spectrum(spec)[:count]
    return None


def _default_k(spec) -> int:
    states = _closed_form_states(spec, 5)
    return len(states) if states else 5


# ---------------------------------------------------------------------------
# subcommands


def _write_plot_data(path: str, spec, states, x_min: float, x_max: float) -> None:
    if states is None or not states:
        raise UsageError(
            "plot data needs a closed-form eigenfunction; "
            f"{type(spec).__name__} has none"
        )
    x = np.linspace(x_min, x_max, 2001)
    v = evaluate_on_grid(spec, x.astype(np.complex128))
    psi = states[0].psi(x.astype(np.complex128))
    lines = ["x,ReV,ImV,RePsi,ImPsi"]
    for j in range(x.size):
        lines.append(
            ",".join(
                _f17(val)
                for val in (x[j], v[j].real, v[j].imag, psi[j].real, psi[j].imag)
            )
        )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def cmd_spectrum(cfg: dict) -> int:
    spec = _build_spec(cfg)
    fmt = _fmt_of(cfg)
    method = cfg.get("method")
    has_exact = type(spec).__name__ != "KhareMandal"
    if method is None:
        method = "exact" if has_exact else "grid"
    if method not in _METHODS:
        raise UsageError(f"unknown method {method!r}; choose from {', '.join(_METHODS)}")
    if method == "exact" and not has_exact:
        raise UsageError(f"{cfg['potential']} has no closed-form spectrum; use --method grid")
    k = int(cfg.get("k", _default_k(spec)))
    if k < 1:
        raise UsageError(f"k must be a positive integer, got {k}")

    exact = _closed_form_states(spec, k) if has_exact and method != "grid" else None
    grid_res = None
    disc = None
    if method in ("grid", "both"):
        disc = _build_disc(cfg, spec, _REFERENCE_N[cfg["potential"]])
        grid_res = solve_spectrum(spec, disc, k)

    n_rows = max(len(exact) if exact else 0, len(grid_res.eigenvalues) if grid_res is not None else 0)
    rows = []
    for i in range(n_rows):
        e_exact = complex(exact[i].energy) if exact and i < len(exact) else None
        e_grid = (
            complex(grid_res.eigenvalues[i])
            if grid_res is not None and i < len(grid_res.eigenvalues)
            else None
        )
        delta = abs(e_grid - e_exact) if e_exact is not None and e_grid is not None else None
        im_abs = abs(e_grid.imag) if e_grid is not None else None
        rows.append(
            {"n": i, "E_exact": e_exact, "E_grid": e_grid, "delta_abs": delta, "im_abs": im_abs}
        )

    if cfg.get("plot_data"):
        lo, hi = natural_domain(spec)
        x_min = float(cfg.get("x_min", lo))
        x_max = float(cfg.get("x_max", hi))
        _write_plot_data(cfg["plot_data"], spec, _closed_form_states(spec, k), x_min, x_max)

    inputs = {
        "potential": cfg["potential"],
        "parameters": {f.name: getattr(spec, f.name) for f in spec.__dataclass_fields__.values()},
        "method": method,
        "k": k,
    }
    diagnostics: dict = {}
    if disc is not None:
        inputs["discretization"] = {
            "x_min": disc.x_min,
            "x_max": disc.x_max,
            "n_points": disc.n_points,
            "order": disc.order,
        }
        diagnostics = {
            "bound_found": len(grid_res.eigenvalues),
            "residual_norm_max": float(np.max(grid_res.residual_norms)) if len(grid_res.residual_norms) else 0.0,
            "imag_tol": imag_tol(disc, kappa=spec.kappa),
        }
    doc = {"command": "spectrum", "inputs": inputs, "results": {"rows": rows}, "diagnostics": diagnostics}

    header = f"{'n':>3}  {'E_exact':>32}  {'E_grid':>32}  {'|dE|':>12}  {'|Im E_grid|':>12}"
    table = [header, "-" * len(header)]
    csv_lines = ["n,E_exact_re,E_exact_im,E_grid_re,E_grid_im,delta_abs,im_abs"]
    for row in rows:
        e_e = _tc(row["E_exact"]) if row["E_exact"] is not None else "-"
        e_g = _tc(row["E_grid"]) if row["E_grid"] is not None else "-"
        d = _t(row["delta_abs"]) if row["delta_abs"] is not None else "-"
        im = _t(row["im_abs"]) if row["im_abs"] is not None else "-"
        table.append(f"{row['n']:>3}  {e_e:>32}  {e_g:>32}  {d:>12}  {im:>12}")
        csv_lines.append(
            ",".join(
                [
                    str(row["n"]),
                    _f17(row["E_exact"].real) if row["E_exact"] is not None else "",
                    _f17(row["E_exact"].imag) if row["E_exact"] is not None else "",
                    _f17(row["E_grid"].real) if row["E_grid"] is not None else "",
                    _f17(row["E_grid"].imag) if row["E_grid"] is not None else "",
                    _f17(row["delta_abs"]) if row["delta_abs"] is not None else "",
                    _f17(row["im_abs"]) if row["im_abs"] is not None else "",
                ]
            )
        )
    _emit(doc, fmt, table, csv_lines)
    return EXIT_OK


def cmd_check_pseudo(cfg: dict) -> int:
    spec = _build_spec(cfg)
    fmt = _fmt_of(cfg)
    if cfg.get("theta_override") is not None:
        theta = float(cfg["theta_override"])
        theta_source = "override"
    else:
        theta = pseudo_shift_angle(spec)  # NoKnownShiftError -> exit 4
        theta_source = "family"
    lo, hi = natural_domain(spec)
    x_min = float(cfg.get("x_min", lo))
    x_max = float(cfg.get("x_max", hi))
    n = int(cfg.get("grid_points", cfg.get("n_points", 2001)))
    grid = np.linspace(x_min, x_max, n)
    tol = float(cfg.get("tol", 1e-10))
    verdict = check_pseudo_hermitian(spec, theta, grid, tol=tol)

    doc = {
        "command": "check-pseudo",
        "inputs": {
            "potential": cfg["potential"],
            "theta": verdict.theta_used,
            "theta_source": theta_source,
            "tol": verdict.tol,
            "grid": {"x_min": x_min, "x_max": x_max, "n_points": n},
        },
        "results": {
            "passed": verdict.passed,
            "max_residual": verdict.max_residual,
            "scale": verdict.scale,
        },
        "diagnostics": {"grid_points": verdict.grid_points},
    }
    table = [
        f"theta        = {_t(verdict.theta_used)}  ({theta_source})",
        f"max residual = {_t(verdict.max_residual)}  (scale {_t(verdict.scale)}, tol {_t(verdict.tol)})",
        "PASS" if verdict.passed else "FAIL",
    ]
    csv_lines = [
        "theta,max_residual,scale,tol,passed",
        ",".join(
            [
                _f17(verdict.theta_used),
                _f17(verdict.max_residual),
                _f17(verdict.scale),
                _f17(verdict.tol),
                "1" if verdict.passed else "0",
            ]
        ),
    ]
    _emit(doc, fmt, table, csv_lines)
    return EXIT_OK if verdict.passed else EXIT_CHECK_FAILED


def cmd_orthogonality(cfg: dict) -> int:
    spec = _build_spec(cfg)
    fmt = _fmt_of(cfg)
    pairing = cfg.get("pairing", "eta")
    if pairing not in _PAIRINGS:
        raise UsageError(f"unknown pairing {pairing!r}; choose from {', '.join(_PAIRINGS)}")
    m_max = int(cfg.get("m_max", 4))
    if m_max < 0:
        raise UsageError(f"m_max must be >= 0, got {m_max}")
    states = _closed_form_states(spec, m_max + 1)
    if states is None:
        raise UsageError(f"{cfg['potential']} has no closed-form eigenfunctions")
    tol = float(cfg.get("tol", 1e-12))
    report = gram_matrix(spec, states, pairing, tol=tol)

    doc = {
        "command": "orthogonality",
        "inputs": {
            "potential": cfg["potential"],
            "pairing": pairing,
            "m_max": m_max,
            "tol": tol,
        },
        "results": {
            "gram": [list(row) for row in report.gram],
            "off_diag_max_rel": report.off_diag_max_rel,
        },
        "diagnostics": {"states": len(states)},
    }
    k = len(states)
    table = [f"pairing = {pairing}, states 0..{k - 1}"]
    for a in range(k):
        table.append("  ".join(f"{_tc(report.gram[a, b]):>28}" for b in range(k)))
    table.append(f"off_diag_max_rel = {_t(report.off_diag_max_rel)}")
    csv_lines = ["m,n,re,im"]
    for a in range(k):
        for b in range(k):
            csv_lines.append(
                f"{a},{b},{_f17(report.gram[a, b].real)},{_f17(report.gram[a, b].imag)}"
            )
    csv_lines.append(f"off_diag_max_rel,,{_f17(report.off_diag_max_rel)},")
    _emit(doc, fmt, table, csv_lines)
    return EXIT_OK


def cmd_laguerre_integral(cfg: dict) -> int:
    fmt = _fmt_of(cfg)
    for key in ("m", "n", "c"):
        if cfg.get(key) is None:
            raise UsageError(f"laguerre-integral needs --{key}")
    m = int(cfg["m"])
    n = int(cfg["n"])
    c = float(cfg["c"])
    tol = float(cfg.get("tol", 1e-12))
    method = cfg.get("quad_method", "tanh-sinh")
    exact = laguerre_overlap_exact(m, n, c)
    quad = laguerre_overlap_quadrature(m, n, c, tol=tol, method=method)
    diff = abs(complex(exact.value) - complex(quad.value))

    def _result(res):
        return {
            "value": float(np.real(res.value)),
            "method": res.method,
            "abs_error_estimate": res.abs_error_estimate,
            "evaluations": res.evaluations,
            "condition": res.condition,
            "trusted": res.trusted,
        }

    doc = {
        "command": "laguerre-integral",
        "inputs": {"m": m, "n": n, "c": c, "tol": tol},
        "results": {
            "exact": _result(exact),
            "quadrature": _result(quad),
            "difference_abs": diff,
        },
        "diagnostics": {},
    }
    table = [
        f"I({m},{n}; c={_t(c)})",
        f"  {exact.method:>16}: {_t(np.real(exact.value))}  (est err {_t(exact.abs_error_estimate)})",
        f"  {quad.method:>16}: {_t(np.real(quad.value))}  (est err {_t(quad.abs_error_estimate)}, {quad.evaluations} evals)",
        f"  |difference|    : {_t(diff)}",
    ]
    csv_lines = [
        "method,value,abs_error_estimate,evaluations",
        f"{exact.method},{_f17(np.real(exact.value))},{_f17(exact.abs_error_estimate)},{exact.evaluations}",
        f"{quad.method},{_f17(np.real(quad.value))},{_f17(quad.abs_error_estimate)},{quad.evaluations}",
        f"difference,{_f17(diff)},,",
    ]
    _emit(doc, fmt, table, csv_lines)
    return EXIT_OK


def cmd_converge(cfg: dict) -> int:
    spec = _build_spec(cfg)
    fmt = _fmt_of(cfg)
    disc = _build_disc(cfg, spec, 32)
    refinements = int(cfg.get("refinements", 2))
    rows = convergence_study(spec, disc, refinements)

    out_rows = []
    for row in rows:
        out_rows.append(
            {
                "n_points": row["n_points"],
                "h": row["h"],
                "eigenvalues": list(row["eigenvalues"]),
                "errors": list(row["errors"]),
                "ratios": list(row.get("ratios", [])),
                "orders": list(row.get("orders", [])),
            }
        )
    doc = {
        "command": "converge",
        "inputs": {
            "potential": cfg["potential"],
            "discretization": {
                "x_min": disc.x_min,
                "x_max": disc.x_max,
                "n_points": disc.n_points,
                "order": disc.order,
            },
            "refinements": refinements,
        },
        "results": {"rows": out_rows},
        "diagnostics": {"tracked_levels": len(rows[0]["errors"])},
    }
    table = [f"{'n_points':>8}  {'h':>12}  {'max error':>12}  {'ratios':>24}  {'orders':>20}"]
    csv_lines = ["n_points,h,level,error,ratio,order"]
    for row in out_rows:
        ratios = " ".join(_t(r) for r in row["ratios"]) or "-"
        orders = " ".join(_t(o) for o in row["orders"]) or "-"
        table.append(
            f"{row['n_points']:>8}  {_t(row['h']):>12}  {_t(max(row['errors'])):>12}  {ratios:>24}  {orders:>20}"
        )
        for lev in range(len(row["errors"])):
            csv_lines.append(
                ",".join(
                    [
                        str(row["n_points"]),
                        _f17(row["h"]),
                        str(lev),
                        _f17(row["errors"][lev]),
                        _f17(row["ratios"][lev]) if row["ratios"] else "",
                        _f17(row["orders"][lev]) if row["orders"] else "",
                    ]
                )
            )
    _emit(doc, fmt, table, csv_lines)
    return EXIT_OK


_DISPATCH = {
    "spectrum": cmd_spectrum,
    "check-pseudo": cmd_check_pseudo,
    "orthogonality": cmd_orthogonality,
    "laguerre-integral": cmd_laguerre_integral,
    "converge": cmd_converge,
}


# ---------------------------------------------------------------------------
# argument parsing


def _add_potential(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--potential", choices=sorted(FAMILIES), help="potential family")
    for name in _REAL_PARAMS:
        sp.add_argument(f"--{name}", type=float, help=f"parameter {name}")
    for name in _COMPLEX_PARAMS:
        sp.add_argument(f"--{name}", type=str, help=f"complex parameter {name}, e.g. '3+4j'")


def _add_disc(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--x-min", dest="x_min", type=float, help="interval left endpoint")
    sp.add_argument("--x-max", dest="x_max", type=float, help="interval right endpoint")
    sp.add_argument("--n-points", dest="n_points", type=int, help="interior grid points")
    sp.add_argument("--order", choices=("fd2", "fd4"), help="finite-difference order")


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--format", choices=_FORMATS, help="output format (default table)")
    sp.add_argument("--tol", type=float, help="tolerance for the underlying computation")
    sp.add_argument("--job", help="JSON job file; explicit flags override its fields")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pseudospec",
        description="Spectra and conjugation-symmetry checks for complex 1D potentials.",
        epilog=(
            "exit codes: 0 success/check passed, 1 check failed, 2 invalid input, "
            "3 non-convergence, 4 no known shift angle"
        ),
    )
    p.add_argument("--job", help="JSON job file naming the command and inputs")
    sub = p.add_subparsers(dest="command")

    sp = sub.add_parser("spectrum", help="closed-form and/or grid spectrum table")
    _add_potential(sp)
    _add_disc(sp)
    _add_common(sp)
    sp.add_argument("--method", choices=_METHODS, help="exact, grid, or both")
    sp.add_argument("--k", type=int, help="number of levels requested")
    sp.add_argument(
        "--plot-data",
        dest="plot_data",
        metavar="PATH",
        help="write CSV columns x,ReV,ImV,RePsi,ImPsi for the lowest state",
    )

    cp = sub.add_parser("check-pseudo", help="shift-conjugation residual check")
    _add_potential(cp)
    _add_common(cp)
    cp.add_argument("--theta-override", dest="theta_override", type=float, help="use this shift angle instead of the family's")
    cp.add_argument("--grid-points", dest="grid_points", type=int, help="check-grid size (default 2001)")
    cp.add_argument("--x-min", dest="x_min", type=float, help="check-grid left endpoint")
    cp.add_argument("--x-max", dest="x_max", type=float, help="check-grid right endpoint")

    op = sub.add_parser("orthogonality", help="Gram matrix of closed-form bound states")
    _add_potential(op)
    _add_common(op)
    op.add_argument("--pairing", choices=_PAIRINGS, help="pairing (default eta)")
    op.add_argument("--m-max", dest="m_max", type=int, help="largest state index (default 4)")

    lp = sub.add_parser("laguerre-integral", help="one weighted Laguerre product integral, both methods")
    _add_common(lp)
    lp.add_argument("--m", type=int, help="first polynomial degree")
    lp.add_argument("--n", type=int, help="second polynomial degree")
    lp.add_argument("--c", type=float, help="spectral parameter c")
    lp.add_argument(
        "--quad-method",
        dest="quad_method",
        choices=("tanh-sinh", "gauss-legendre"),
        help="quadrature rule (default tanh-sinh)",
    )

    vp = sub.add_parser("converge", help="grid-refinement error table")
    _add_potential(vp)
    _add_disc(vp)
    _add_common(vp)
    vp.add_argument("--refinements", type=int, help="number of grid doublings (default 2)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge(args)
        command = cfg.get("command")
        if not command:
            parser.print_usage(sys.stderr)
            print("pseudospec: no command given (subcommand or job file)", file=sys.stderr)
            return EXIT_USAGE
        if command not in _DISPATCH:
            raise UsageError(
                f"unknown command {command!r}; known: {', '.join(sorted(_DISPATCH))}"
            )
        return _DISPATCH[command](cfg)
    except NoKnownShiftError as exc:
        print(f"pseudospec: {exc}", file=sys.stderr)
        return EXIT_NO_SHIFT
    except (EigenConvergenceError, NonConvergenceError) as exc:
        print(f"pseudospec: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (UsageError, NonRealParameterError, BranchAmbiguityError, ValueError, TypeError, OverflowError) as exc:
        print(f"pseudospec: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line front end.

Every command writes one artifact (CSV or JSON) whose first line or first
member carries the SHA-256 of the effective configuration. Exit codes: 0 on
success, 2 when a numerical invariant is violated, 3 on usage errors.
"""

import argparse
import hashlib
import json
import math
import os
import sys

import numpy as np

from . import eigenbasis, quasiprob, states, witnesses
from .errors import DomainError, RangeError, TruncationError, UnsupportedStateError, UsageError
from .fockspace import SELECTORS, TruncatedBasis, algebra_report

EXIT_OK, EXIT_INVARIANT, EXIT_USAGE = 0, 2, 3

COMMANDS = (
    "algebra-check", "eigen", "eigen-check", "state", "dual-check", "stats",
    "squeeze", "quadrature-dist", "quasiprob", "pfunction", "canonical-stats",
)
JSON_COMMANDS = ("algebra-check", "eigen-check", "dual-check", "pfunction")
STATE_COMMANDS = ("state", "quadrature-dist", "quasiprob")
ALPHA_COMMANDS = ("stats", "dual-check", "pfunction")
ZETA_COMMANDS = ("canonical-stats",)

DEFAULTS = {
    "n_max": 200,
    "tol": 1e-10,
    "alpha": None,
    "zeta": None,
    "r": None,
    "theta": None,
    "window": None,
    "resolution": None,
    "s": None,
    "kind": "wigner",
    "out": None,
    "format": None,
}

EIGEN_LEVELS = (0, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12)
EIGEN_LIMITS = {
    "orthonormality": 1e-8,
    "schrodinger": 1e-6,
    "ladder_lower": 1e-6,
    "ladder_raise": 1e-6,
    "lower_psi3": 1e-6,
    "lower_psi0": 1e-6,
    "raise_psi0": 1e-6,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="isonlcs", description="Nonlinear coherent states of the generalized isotonic oscillator.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--alpha", nargs=2, type=float, metavar=("RE", "IM"))
    p.add_argument("--zeta", nargs=2, type=float, metavar=("RE", "IM"))
    p.add_argument("--r", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--window", nargs=4, type=float, metavar=("X0", "X1", "Y0", "Y1"))
    p.add_argument("--resolution", nargs=2, type=int, metavar=("NX", "NY"))
    p.add_argument("--s", type=float)
    p.add_argument("--kind", choices=("wigner", "husimi", "sgeneral"))
    p.add_argument("--out")
    p.add_argument("--config")
    p.add_argument("--format", choices=("csv", "json"))
    return p


def parse_config(argv) -> dict:
    """Effective configuration: flags override the JSON file, which overrides defaults."""
    args = build_parser().parse_args(argv)
    cfg = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                from_file = json.load(fh)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config file {args.config}: {exc}") from exc
        if not isinstance(from_file, dict):
            raise UsageError("config file must hold a JSON object")
        unknown = sorted(set(from_file) - set(DEFAULTS))
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(unknown)}")
        cfg.update(from_file)
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    cfg["command"] = args.command
    if cfg["format"] is None:
        cfg["format"] = "json" if args.command in JSON_COMMANDS else "csv"
    _validate(cfg)
    return cfg


def _validate(cfg):
    if not isinstance(cfg["n_max"], int) or cfg["n_max"] < 16:
        raise UsageError(f"n_max must be an integer >= 16, got {cfg['n_max']!r}")
    tol = cfg["tol"]
    if not isinstance(tol, (int, float)) or not 0.0 < tol <= 1e-4:
        raise UsageError(f"tolerance must lie in (0, 1e-4], got {tol!r}")
    if cfg["format"] not in ("csv", "json"):
        raise UsageError(f"format must be csv or json, got {cfg['format']!r}")
    if cfg["kind"] not in ("wigner", "husimi", "sgeneral"):
        raise UsageError(f"kind must be wigner, husimi or sgeneral, got {cfg['kind']!r}")
    for key, size in (("alpha", 2), ("zeta", 2), ("window", 4), ("resolution", 2)):
        val = cfg[key]
        if val is not None and (not isinstance(val, (list, tuple)) or len(val) != size):
            raise UsageError(f"{key} must hold {size} numbers")
    cmd = cfg["command"]
    has_a, has_z = cfg["alpha"] is not None, cfg["zeta"] is not None
    if cmd in STATE_COMMANDS and has_a == has_z:
        raise UsageError(f"{cmd} needs exactly one of --alpha or --zeta")
    if cmd in ALPHA_COMMANDS and (not has_a or has_z):
        raise UsageError(f"{cmd} needs --alpha (and no --zeta)")
    if cmd in ZETA_COMMANDS and (not has_z or has_a):
        raise UsageError(f"{cmd} needs --zeta (and no --alpha)")
    if cmd == "squeeze" and cfg["r"] is None and not has_a:
        raise UsageError("squeeze needs --r or --alpha")
    if cmd == "quasiprob" and cfg["kind"] == "sgeneral" and cfg["s"] is None:
        raise UsageError("quasiprob --kind sgeneral needs --s")


def config_hash(cfg: dict) -> str:
    payload = {k: v for k, v in cfg.items() if k != "out"}
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


# formatting


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return format(x, ".17g")


def _json_value(v) -> str:
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    if v is None:
        return "null"
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, (float, np.floating)) and not math.isfinite(v):
        return "null"
    return fmt(v)


class Table:
    def __init__(self, columns, rows):
        self.columns = list(columns)
        self.rows = rows


def render(result, cfg: dict) -> str:
    digest = config_hash(cfg)
    if cfg["format"] == "json":
        body = {"config_sha256": digest}
        if isinstance(result, Table):
            body.update({"columns": result.columns, "rows": result.rows})
        else:
            body.update(result)
        return _json_value(body) + "\n"
    lines = [f"# config-sha256: {digest}"]
    if isinstance(result, Table):
        lines.append(",".join(result.columns))
        lines.extend(",".join(fmt(v) for v in row) for row in result.rows)
    else:
        lines.append("key,value")
        for k, v in result.items():
            if isinstance(v, (list, tuple, np.ndarray)):
                v = ";".join(fmt(x) for x in v)
            lines.append(f"{k},{fmt(v) if v is not None else ''}")
    return "\n".join(lines) + "\n"


# commands


def _complex(pair):
    return complex(pair[0], pair[1]) if pair is not None else None


def _state(cfg, basis):
    if cfg["alpha"] is not None:
        return states.nlcs_build(_complex(cfg["alpha"]), basis)
    return states.canonical_build(_complex(cfg["zeta"]), basis)


def _grid_axes(window, resolution):
    return np.linspace(window[0], window[1], resolution[0]), np.linspace(window[2], window[3], resolution[1])


def cmd_algebra_check(cfg, basis):
    report = algebra_report(basis)
    bad = [k for k in SELECTORS if not report[k] < cfg["tol"]]
    return report, bad


def cmd_eigen(cfg, basis):
    window = cfg["window"] or (-8.0, 8.0, 0.0, 0.0)
    nx = (cfg["resolution"] or (401, 1))[0]
    x = np.linspace(window[0], window[1], nx)
    cols = [eigenbasis.psi(n, x) for n in EIGEN_LEVELS]
    rows = [[x[i]] + [c[i] for c in cols] for i in range(nx)]
    return Table(["x"] + [f"psi_{n}" for n in EIGEN_LEVELS], rows), []


def cmd_eigen_check(cfg, basis):
    report = eigenbasis.eigen_check(EIGEN_LEVELS)
    bad = [k for k, lim in EIGEN_LIMITS.items() if not report[k] < lim]
    return report, bad


def cmd_state(cfg, basis):
    st = _state(cfg, basis)
    rows = [[n, a.real, a.imag, abs(a) ** 2] for n, a in enumerate(st.amplitudes)]
    return Table(["n", "re", "im", "probability"], rows), []


def cmd_dual_check(cfg, basis):
    rep = states.dual_series_diagnose(_complex(cfg["alpha"]))
    tail = rep.ratio_trend[-5:]
    out = {
        "alpha_modulus": rep.alpha_modulus,
        "verdict": rep.verdict,
        "n_terms": rep.n_terms,
        "extended": rep.extended,
        "last_log_ratios": list(tail),
        "last_log_term": float(rep.term_log_magnitudes[-1]),
        "notes": list(rep.notes),
    }
    bad = [] if rep.verdict == "diverges" or rep.alpha_modulus == 0 else ["dual-series verdict"]
    return out, bad


def cmd_stats(cfg, basis):
    alpha = _complex(cfg["alpha"])
    st = states.nlcs_build(alpha, basis)
    ladders = witnesses.Ladders.build(basis)
    ms = witnesses.moment_set(st, ladders)
    a3 = witnesses.a3_parameter(ms)
    q, g2 = witnesses.mandel_g2(st, ladders)
    m_ser, mu_ser = witnesses.nlcs_moments_series(alpha)
    cols = ["alpha_re", "alpha_im", "A3", "det_m", "det_mu", "Q", "g2"]
    cols += [f"m{j}" for j in range(1, 5)] + [f"mu{j}" for j in range(1, 5)]
    cols += [f"m{j}_series" for j in range(1, 5)] + [f"mu{j}_series" for j in range(1, 5)]
    row = [alpha.real, alpha.imag, a3.value, a3.det_m, a3.det_mu, q, g2, *ms.m, *ms.mu, *m_ser, *mu_ser]
    bad = []
    for a, b in zip(ms.m + ms.mu, tuple(m_ser) + tuple(mu_ser)):
        if abs(a - b) > cfg["tol"] * max(1.0, abs(b)):
            bad.append("matrix/series moment agreement")
            break
    return Table(cols, [row]), bad


def cmd_squeeze(cfg, basis):
    if cfg["r"] is not None:
        r = cfg["r"]
        thetas = [cfg["theta"]] if cfg["theta"] is not None else witnesses.theta_grid()
    else:
        alpha = _complex(cfg["alpha"])
        r, thetas = abs(alpha), [math.atan2(alpha.imag, alpha.real)]
    reports = witnesses.quad_squeeze(r, thetas, basis)
    cols = ["r", "theta", "I1", "I2", "I3", "I4", "var_x", "var_p", "var_X", "var_P"]
    rows = [[rep.r, rep.theta, rep.I1, rep.I2, rep.I3, rep.I4, rep.var_x, rep.var_p, rep.var_X, rep.var_P] for rep in reports]
    return Table(cols, rows), []


def cmd_quadrature_dist(cfg, basis):
    st = _state(cfg, basis)
    window = cfg["window"] or (-8.0, 8.0, 0.0, 2.0 * math.pi)
    resolution = cfg["resolution"] or (201, 73)
    xs, phis = _grid_axes(window, resolution)
    grid = quasiprob.quadrature_distribution(st, xs, phis)
    rows = [[xs[i], phis[j], grid.values[i, j]] for i in range(len(xs)) for j in range(len(phis))]
    return Table(["x", "phi", "value"], rows), []


def cmd_quasiprob(cfg, basis):
    st = _state(cfg, basis)
    kind = cfg["kind"]
    s = {"wigner": 0.0, "husimi": -1.0}.get(kind, cfg["s"])
    window = cfg["window"] or quasiprob.default_window(st)
    resolution = cfg["resolution"] or quasiprob.DEFAULT_RESOLUTION
    grid = quasiprob.s_grid(st, s, window, resolution, "s_general" if kind == "sgeneral" else kind)
    xs, ps = grid.xs, grid.ys
    rows = [[xs[i], ps[j], grid.values[i, j]] for i in range(len(xs)) for j in range(len(ps))]
    bad = []
    if kind == "husimi" and grid.values.min() < -1e-12:
        bad.append("husimi values >= -1e-12")
    return Table(["x", "p", "value"], rows), bad


def cmd_pfunction(cfg, basis):
    st = states.nlcs_build(_complex(cfg["alpha"]), basis)
    sp = quasiprob.p_function_coefficients(st)
    return {"order": sp.max_order, "coefficients": list(sp.coefficients)}, []


def cmd_canonical_stats(cfg, basis):
    zeta = _complex(cfg["zeta"])
    st = states.canonical_build(zeta, basis)
    ladders = witnesses.Ladders.build(basis)
    q, g2 = witnesses.mandel_g2(st, ladders)
    a3 = witnesses.a3_parameter(witnesses.moment_set(st, ladders))
    rep = witnesses.squeeze_report(st, ladders)
    cols = ["zeta_re", "zeta_im", "Q", "g2", "A3", "var_x", "var_p", "var_X", "var_P"]
    row = [zeta.real, zeta.imag, q, g2, a3.value, rep.var_x, rep.var_p, rep.var_X, rep.var_P]
    return Table(cols, [row]), []


HANDLERS = {
    "algebra-check": cmd_algebra_check,
    "eigen": cmd_eigen,
    "eigen-check": cmd_eigen_check,
    "state": cmd_state,
    "dual-check": cmd_dual_check,
    "stats": cmd_stats,
    "squeeze": cmd_squeeze,
    "quadrature-dist": cmd_quadrature_dist,
    "quasiprob": cmd_quasiprob,
    "pfunction": cmd_pfunction,
    "canonical-stats": cmd_canonical_stats,
}


def _output_path(cfg):
    out_dir = os.environ.get("ISONLCS_OUT_DIR")
    out = cfg["out"]
    if out is None:
        if not out_dir:
            return None
        out = f"{cfg['command']}.{cfg['format']}"
    if out_dir and not os.path.isabs(out):
        out = os.path.join(out_dir, out)
    return out


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def run(cfg: dict) -> int:
    """Execute one command; returns the exit status."""
    basis = TruncatedBasis(cfg["n_max"])
    result, bad = HANDLERS[cfg["command"]](cfg, basis)
    text = render(result, cfg)
    path = _output_path(cfg)
    if path is None:
        sys.stdout.write(text)
    else:
        _write(path, text)
        _write(path + ".config.json", json.dumps(cfg, sort_keys=True, indent=2) + "\n")
    if bad:
        print(f"isonlcs: invariant violated: {', '.join(bad)}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
        return run(cfg)
    except TruncationError as exc:
        hint = f" (try n_max >= {exc.suggested_n_max})" if getattr(exc, "suggested_n_max", None) else ""
        print(f"isonlcs: invariant violated: {exc}{hint}", file=sys.stderr)
        return EXIT_INVARIANT
    except (UsageError, DomainError, RangeError, UnsupportedStateError) as exc:
        print(f"isonlcs: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"isonlcs: usage error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

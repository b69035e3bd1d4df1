"""Command-line pipeline driver.

Subcommands: expand (canonical Fourier form), series (Lie-series dump),
field (CSV of the conformal factor at one time), signmap (PGM, optional
CSV mirror), errmap (diagonal truncation-error table), critical
(degeneration-time search), flow (numeric flow oracle).

Exit codes: 0 success (including "no degeneration in range"), 2 usage
errors, 3 parse/validation errors.  Output files are written atomically
and start with a `#` metadata header, so identical configurations give
byte-identical files.

Options may also come from a flat key=value --config file; explicit flags
win over the config file, which wins over the KGF_THREADS environment
variable and built-in defaults.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .conformal import (
    DEFAULT_EPS_BLOWUP,
    build_conformal_series,
)
from .errors import InputError, NoDegenerationError
from .expressions import parse_hamiltonian
from .fields import (
    DEFAULT_BISECT_TOL,
    DEFAULT_COARSE_STEP,
    DEFAULT_CRITICAL_GRID,
    GridEvaluator,
    critical_time,
    diagonal_errmap,
    real_flow_oracle,
    resolve_threads,
    sign_map,
)
from .fileio import (
    atomic_write_text,
    errmap_csv_text,
    field_csv_text,
    fmt,
    metadata_lines,
    series_dump_text,
    signmap_csv_text,
    signmap_pgm_text,
)
from .lieseries import build_lie_series

_SUPPRESS = argparse.SUPPRESS

_CONVERTERS = {
    "hamiltonian": str,
    "hamiltonian_file": str,
    "order": int,
    "grid": int,
    "t": float,
    "t_min": float,
    "t_max": float,
    "samples_s": int,
    "samples_t": int,
    "mode": str,
    "threads": int,
    "eps_blowup": float,
    "log_base": float,
    "direction": str,
    "coarse_step": float,
    "tol": float,
    "which": str,
    "x0": float,
    "y0": float,
    "output": str,
    "csv": str,
}

_DEFAULTS = {
    "hamiltonian": None,
    "hamiltonian_file": None,
    "order": 12,
    "grid": 50,
    "t": None,
    "t_min": -1.0,
    "t_max": 1.0,
    "samples_s": 50,
    "samples_t": 81,
    "mode": "rational",
    "threads": None,
    "eps_blowup": DEFAULT_EPS_BLOWUP,
    "log_base": None,
    "direction": "pos",
    "coarse_step": DEFAULT_COARSE_STEP,
    "tol": DEFAULT_BISECT_TOL,
    "which": "z",
    "x0": None,
    "y0": None,
    "output": None,
    "csv": None,
    "config": None,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--hamiltonian", default=_SUPPRESS,
                        help="Hamiltonian expression text")
    common.add_argument("--hamiltonian-file", default=_SUPPRESS,
                        help="read the Hamiltonian expression from a file")
    common.add_argument("--order", type=int, default=_SUPPRESS,
                        help="Lie-series truncation order (default 12)")
    common.add_argument("--threads", type=int, default=_SUPPRESS)
    common.add_argument("--eps-blowup", type=float, default=_SUPPRESS)
    common.add_argument("--config", default=_SUPPRESS,
                        help="flat key=value option file")

    parser = argparse.ArgumentParser(
        prog="kgflow",
        description="truncated Lie-series flow of torus Hamiltonians",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("expand", parents=[common],
                   help="print the canonical Fourier form"
                   ).add_argument("--output", default=_SUPPRESS)

    p = sub.add_parser("series", parents=[common],
                       help="dump Lie-series coefficients w_1..w_N")
    p.add_argument("--which", choices=("z", "zbar"), default=_SUPPRESS)
    p.add_argument("--output", default=_SUPPRESS)

    p = sub.add_parser("field", parents=[common],
                       help="evaluate the conformal factor on a lattice")
    p.add_argument("--t", type=float, default=_SUPPRESS, help="time")
    p.add_argument("--grid", type=int, default=_SUPPRESS)
    p.add_argument("--mode", choices=("rational", "polynomial"),
                   default=_SUPPRESS)
    p.add_argument("--output", default=_SUPPRESS, help="CSV path (default stdout)")

    p = sub.add_parser("signmap", parents=[common],
                       help="sign classification as PGM (and optional CSV)")
    p.add_argument("--t", type=float, default=_SUPPRESS)
    p.add_argument("--grid", type=int, default=_SUPPRESS)
    p.add_argument("--mode", choices=("rational", "polynomial"),
                   default=_SUPPRESS)
    p.add_argument("--output", default=_SUPPRESS, help="PGM path (default stdout)")
    p.add_argument("--csv", default=_SUPPRESS, help="also mirror as CSV")

    p = sub.add_parser("errmap", parents=[common],
                       help="truncation-error indicator on the diagonal")
    p.add_argument("--samples-s", type=int, default=_SUPPRESS)
    p.add_argument("--samples-t", type=int, default=_SUPPRESS)
    p.add_argument("--t-min", type=float, default=_SUPPRESS)
    p.add_argument("--t-max", type=float, default=_SUPPRESS)
    p.add_argument("--log-base", type=float, default=_SUPPRESS)
    p.add_argument("--output", default=_SUPPRESS)

    p = sub.add_parser("critical", parents=[common],
                       help="earliest metric-degeneration time")
    p.add_argument("--direction", choices=("pos", "neg"), default=_SUPPRESS)
    p.add_argument("--grid", type=int, default=_SUPPRESS)
    p.add_argument("--t-max", type=float, default=_SUPPRESS)
    p.add_argument("--coarse-step", type=float, default=_SUPPRESS)
    p.add_argument("--tol", type=float, default=_SUPPRESS)

    p = sub.add_parser("flow", parents=[common],
                       help="integrate the real-time flow numerically")
    p.add_argument("--x0", type=float, default=_SUPPRESS)
    p.add_argument("--y0", type=float, default=_SUPPRESS)
    p.add_argument("--t", type=float, default=_SUPPRESS)

    return parser


def _read_config(path):
    out = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise InputError(
                    f"{path}:{lineno}: expected key=value, got {line!r}"
                )
            key, _, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if key not in _CONVERTERS:
                raise InputError(f"{path}:{lineno}: unknown option {key!r}")
            out[key] = _CONVERTERS[key](value.strip())
    return out


def _resolve(args):
    """Merge explicit flags over config file over defaults."""
    given = vars(args)
    command = given.pop("command")
    cfg = dict(_DEFAULTS)
    if command == "critical":
        cfg["grid"] = DEFAULT_CRITICAL_GRID
        cfg["t_max"] = 0.5
    if "config" in given:
        cfg.update(_read_config(given["config"]))
    cfg.update(given)
    return command, cfg


def _hamiltonian(cfg):
    text = cfg.get("hamiltonian")
    if cfg.get("hamiltonian_file"):
        if text is not None:
            raise InputError(
                "give either --hamiltonian or --hamiltonian-file, not both"
            )
        with open(cfg["hamiltonian_file"], encoding="utf-8") as handle:
            text = handle.read().strip()
    if text is None:
        raise InputError("a Hamiltonian is required "
                         "(--hamiltonian or --hamiltonian-file)")
    return text, parse_hamiltonian(text)


def _meta(cfg, text, **extra):
    meta = {
        "version": __version__,
        "hamiltonian": text,
        "order": cfg["order"],
        "eps_blowup": cfg["eps_blowup"],
        "threads": resolve_threads(cfg.get("threads")),
    }
    meta.update(extra)
    return meta


def _emit(text, path):
    if path:
        atomic_write_text(path, text)
    else:
        sys.stdout.write(text)


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        command, cfg = _resolve(args)
        return _dispatch(command, cfg)
    except NoDegenerationError:
        print("no degeneration in range")
        return 0
    except InputError as exc:
        print(f"kgflow: error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"kgflow: error: {exc}", file=sys.stderr)
        return 3


def _dispatch(command, cfg):
    text, poly = _hamiltonian(cfg)

    if command == "expand":
        body = poly.debug_text()
        header = "\n".join(metadata_lines(_meta(cfg, text)))
        _emit(header + "\n" + body + ("\n" if body else ""), cfg.get("output"))
        return 0

    if command == "series":
        series = build_lie_series(poly, cfg["which"], cfg["order"])
        meta = _meta(cfg, text, which=cfg["which"])
        _emit(series_dump_text(series, meta), cfg.get("output"))
        return 0

    if command == "flow":
        for key in ("x0", "y0", "t"):
            if cfg.get(key) is None:
                raise InputError(f"flow requires --{key}")
        x, y = real_flow_oracle(poly, cfg["x0"], cfg["y0"], cfg["t"])
        print(f"{fmt(x)} {fmt(y)}")
        return 0

    cs = build_conformal_series(poly, cfg["order"], digest=text)

    if command == "critical":
        value = critical_time(
            cs, cfg["direction"], G=cfg["grid"], t_max=cfg["t_max"],
            coarse_step=cfg["coarse_step"], tol=cfg["tol"],
            eps_blowup=cfg["eps_blowup"], threads=cfg.get("threads"),
        )
        print(fmt(value))
        return 0

    if command == "errmap":
        rows = diagonal_errmap(
            cs, samples_s=cfg["samples_s"], t_min=cfg["t_min"],
            t_max=cfg["t_max"], samples_t=cfg["samples_t"],
            log_base=cfg.get("log_base"),
        )
        meta = _meta(cfg, text, grid=cfg["samples_s"], mode="polynomial",
                     t=f"{cfg['t_min']}..{cfg['t_max']}",
                     samples_t=cfg["samples_t"])
        if cfg.get("log_base") is not None:
            meta["log_base"] = cfg["log_base"]
        _emit(errmap_csv_text(rows, meta), cfg.get("output"))
        return 0

    if cfg.get("t") is None:
        raise InputError(f"{command} requires --t")
    evaluator = GridEvaluator(cs, cfg["grid"])
    fg = evaluator.field(cfg["t"], cfg["mode"], cfg.get("threads"),
                         cfg["eps_blowup"])
    fg.meta = _meta(cfg, text, grid=cfg["grid"], t=cfg["t"],
                    mode=cfg["mode"])

    if command == "field":
        _emit(field_csv_text(fg), cfg.get("output"))
        return 0

    if command == "signmap":
        sm = sign_map(fg)
        _emit(signmap_pgm_text(sm), cfg.get("output"))
        if cfg.get("csv"):
            atomic_write_text(cfg["csv"], signmap_csv_text(sm))
        return 0

    raise InputError(f"unknown command {command!r}")


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

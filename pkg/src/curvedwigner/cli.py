"""Command-line front end.

Subcommands: eigen, wavefun, wigner, figure1, verify.  Configuration comes
from flags and optionally a JSON file (--config); flags override the file.
Exit codes: 0 success, 2 configuration error, 3 numeric nonconvergence,
4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConfigError, CurvedWignerError, exit_code_for
from .oscillator import (
    BoundStateLabel,
    OscillatorParams,
    bound_state_count,
    energy,
    psi_bound,
    psi_momentum,
)
from .wigner import (
    WignerGrid,
    marginal_momentum_integrated,
    marginal_position_integrated,
    reflect_quadrant,
    wigner_grid,
)
from .artifacts import emit_csv, emit_grid_csv, emit_pgm, write_manifest

__all__ = ["GridSpec", "RunConfig", "main",
           "run_eigen", "run_wavefun", "run_wigner", "run_figure1", "run_verify"]

FIGURE1_DEPTHS = (4.0, 30.0)
FIGURE1_GRID_EXTENT = 4.0
FIGURE1_GRID_POINTS = 256


@dataclass(frozen=True)
class GridSpec:
    """Rectangular evaluation grid.  For the figure1 command the axes are in
    scaled units (chi sqrt(s), pR / sqrt(s)); elsewhere they are raw
    (chi, pR)."""

    chi_min: float
    chi_max: float
    n_chi: int
    p_min: float
    p_max: float
    n_p: int

    def __post_init__(self):
        if self.n_chi < 2 or self.n_p < 2:
            raise ConfigError("grid needs at least 2 points per axis")
        if not (self.chi_max > self.chi_min and self.p_max > self.p_min):
            raise ConfigError("grid extents must be increasing")

    def chi_axis(self):
        return np.linspace(self.chi_min, self.chi_max, self.n_chi)

    def p_axis(self):
        return np.linspace(self.p_min, self.p_max, self.n_p)


@dataclass(frozen=True)
class RunConfig:
    command: str
    mu: float = 1.0
    omega: float | None = None
    s: float | None = None
    radius: float = 1.0
    n_list: tuple = (0, 1, 2, 3)
    grid: GridSpec | None = None
    evaluator: str = "closed"
    out_dir: str | None = None
    formats: tuple = ("csv", "pgm")
    tol: float = 1.0
    workers: int = 1

    def __post_init__(self):
        if self.command not in ("eigen", "wavefun", "wigner", "figure1", "verify"):
            raise ConfigError(f"unknown command {self.command!r}")
        if self.evaluator not in ("closed", "quad"):
            raise ConfigError("evaluator must be 'closed' or 'quad'")
        if self.omega is not None and self.s is not None:
            raise ConfigError("give either --omega or --s, not both")
        if self.mu <= 0 or self.radius <= 0:
            raise ConfigError("mu and R must be positive")
        if self.tol <= 0:
            raise ConfigError("tolerance scale must be positive")
        if any(n < 0 or n != int(n) for n in self.n_list):
            raise ConfigError("mode list must contain non-negative integers")
        if not self.formats or any(f not in ("csv", "pgm") for f in self.formats):
            raise ConfigError("formats must be a non-empty subset of {csv, pgm}")

    def params(self) -> OscillatorParams:
        if self.s is not None:
            return OscillatorParams.from_depth(self.s, mu=self.mu, R=self.radius)
        if self.omega is None:
            raise ConfigError("need --omega or --s to fix the oscillator")
        return OscillatorParams(self.mu, self.omega, self.radius)

    def evaluator_tag(self) -> str:
        return "closed_form" if self.evaluator == "closed" else "quadrature"


def _parse_grid(text: str) -> GridSpec:
    try:
        chi_part, p_part = text.split(",")
        c0, c1, nc = chi_part.split(":")
        p0, p1, npts = p_part.split(":")
        return GridSpec(float(c0), float(c1), int(nc), float(p0), float(p1), int(npts))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"bad --grid (want CHI_MIN:CHI_MAX:N,P_MIN:P_MAX:N): {exc}") from exc


def _load_config_file(path: str) -> dict:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    known = {f.name for f in fields(RunConfig)}
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(f"{path}: unknown config keys {sorted(unknown)}")
    if "grid" in doc and doc["grid"] is not None:
        try:
            doc["grid"] = GridSpec(**doc["grid"])
        except TypeError as exc:
            raise ConfigError(f"{path}: bad grid object ({exc})") from exc
    if "n_list" in doc:
        doc["n_list"] = tuple(doc["n_list"])
    if "formats" in doc:
        doc["formats"] = tuple(doc["formats"])
    return doc


def _out_dir(config: RunConfig) -> Path:
    if config.out_dir is None:
        raise ConfigError("this command needs --out DIR")
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _checked_state(n: int, params: OscillatorParams) -> BoundStateLabel:
    count = bound_state_count(params)
    if n >= count or params.s - n <= 1e-12 * max(1.0, params.s):
        raise ConfigError(
            f"mode n={n} is outside the normalizable bound range for s={params.s:g} "
            f"({count} level(s), the top one at threshold when s is an integer)")
    return BoundStateLabel(int(n), params)


def _config_echo(config: RunConfig) -> dict:
    doc = asdict(config)
    doc["n_list"] = list(config.n_list)
    doc["formats"] = list(config.formats)
    if config.grid is not None:
        doc["grid"] = asdict(config.grid)
    return doc


def run_eigen(config: RunConfig, echo=print) -> list[tuple[int, float]]:
    """Print (and optionally write) the bound spectrum."""
    params = config.params()
    count = bound_state_count(params)
    rows = [(n, energy(n, params)) for n in range(count)]
    echo(f"s = {params.s:.15g}")
    echo(f"E0 (binding threshold) = {params.E0:.15g}")
    echo(f"bound states: {count}")
    if count == 0:
        echo("(the omega = 0 well is empty: its only candidate level sits at "
             "threshold with a vanishing profile)")
    for n, e in rows:
        marker = "  (threshold level: zero-norm profile)" if params.s - n <= 0 else ""
        echo(f"  n={n:3d}  E={e:.15g}{marker}")
    if config.out_dir is not None:
        out = _out_dir(config)
        emit_csv(out / "eigen.csv", ["n", "E"],
                 [[float(n) for n, _ in rows], [e for _, e in rows]],
                 comments=[f"s={params.s!r} E0={params.E0!r}"])
    return rows


def _wavefun_files(config: RunConfig, out: Path) -> list[tuple[Path, str]]:
    params = config.params()
    grid = config.grid or GridSpec(0.0, 5.0, 256, 0.0, 8.0, 256)
    chi = grid.chi_axis()
    qs = grid.p_axis()
    files = []
    for n in config.n_list:
        state = _checked_state(int(n), params)
        psi = psi_bound(state, chi)
        f1 = emit_csv(out / f"wavefun_n{n}.csv", ["chi", "psi"], [chi, psi],
                      comments=[f"n={n} s={params.s!r} R={params.R!r}"])
        psit = [psi_momentum(state, q / params.R) for q in qs]
        f2 = emit_csv(out / f"wavefun_momentum_n{n}.csv",
                      ["pR", "re_psit", "im_psit", "abs2_psit"],
                      [qs, [z.real for z in psit], [z.imag for z in psit],
                       [abs(z) ** 2 for z in psit]],
                      comments=[f"n={n} s={params.s!r} R={params.R!r}"])
        files += [(f1, "wavefun_csv"), (f2, "wavefun_momentum_csv")]
    return files


def run_wavefun(config: RunConfig) -> Path:
    out = _out_dir(config)
    files = _wavefun_files(config, out)
    return write_manifest(out, files, _config_echo(config), __version__)


def _emit_panel(grid: WignerGrid, out: Path, stem: str, formats) -> list[tuple[Path, str]]:
    files = []
    if "csv" in formats:
        files.append((emit_grid_csv(grid, out / f"{stem}.csv"), "wigner_csv"))
    if "pgm" in formats:
        chi_f, q_f, v_f = reflect_quadrant(grid)
        full = WignerGrid(chi_f, q_f, v_f, grid.evaluator_tag, grid.state_meta,
                          grid.max_imag_residue, grid.fallback_points)
        files.append((emit_pgm(full, out / f"{stem}.pgm"), "wigner_pgm"))
    return files


def _marginal_files(grid: WignerGrid, R: float, out: Path, stem: str) -> list[tuple[Path, str]]:
    mx = marginal_momentum_integrated(grid, R)
    mp = marginal_position_integrated(grid, R)
    f1 = emit_csv(out / f"{stem}_marginal_position.csv", ["chi", "prob_density"],
                  [grid.chi_axis, mx])
    f2 = emit_csv(out / f"{stem}_marginal_momentum.csv", ["pR", "prob_density"],
                  [grid.pR_axis, mp])
    return [(f1, "marginal_csv"), (f2, "marginal_csv")]


def run_wigner(config: RunConfig) -> Path:
    """Wigner grids on a raw (chi, pR) grid for each requested mode."""
    params = config.params()
    out = _out_dir(config)
    grid_spec = config.grid or GridSpec(0.0, 3.0, 128, 0.0, 8.0, 128)
    files = []
    for n in config.n_list:
        state = _checked_state(int(n), params)
        grid = wigner_grid(state, grid_spec.chi_axis(), grid_spec.p_axis(),
                           evaluator=config.evaluator_tag(), workers=config.workers)
        stem = f"wigner_n{n}"
        files += _emit_panel(grid, out, stem, config.formats)
        files += _marginal_files(grid, params.R, out, stem)
    return write_manifest(out, files, _config_echo(config), __version__)


def run_figure1(config: RunConfig) -> Path:
    """Reproduce the figure-1 artifact set: per (mode, depth) one grayscale
    panel on scaled axes (chi sqrt(s), pR / sqrt(s)) plus the grid CSV and
    the two marginal projections."""
    out = _out_dir(config)
    depths = (config.s,) if config.s is not None else FIGURE1_DEPTHS
    grid = config.grid or GridSpec(0.0, FIGURE1_GRID_EXTENT, FIGURE1_GRID_POINTS,
                                   0.0, FIGURE1_GRID_EXTENT, FIGURE1_GRID_POINTS)
    files = []
    for s in depths:
        params = OscillatorParams.from_depth(float(s), mu=config.mu, R=config.radius)
        root_s = math.sqrt(params.s)
        chi_axis = grid.chi_axis() / root_s
        q_axis = grid.p_axis() * root_s
        for n in config.n_list:
            state = _checked_state(int(n), params)
            panel = wigner_grid(state, chi_axis, q_axis,
                                evaluator=config.evaluator_tag(), workers=config.workers)
            stem = f"figure1_s{s:g}_n{n}"
            files += _emit_panel(panel, out, stem, config.formats)
            files += _marginal_files(panel, params.R, out, stem)
    return write_manifest(out, files, _config_echo(config), __version__)


def run_verify(config: RunConfig, echo=print) -> int:
    """Run the acceptance suite; returns the process exit code."""
    from .verify import run_all, write_report

    results, ok = run_all(tol_scale=config.tol, echo=echo)
    if config.out_dir is not None:
        out = _out_dir(config)
        write_report(results, out / "verify_report.json", tol_scale=config.tol)
        echo(f"report: {out / 'verify_report.json'}")
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvedwigner",
        description="Wigner functions of the conic (Poschl-Teller) oscillator "
                    "on a hyperbola.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("eigen", "bound spectrum"),
        ("wavefun", "wavefunction tables (position and momentum)"),
        ("wigner", "Wigner grids on a raw (chi, pR) grid"),
        ("figure1", "figure-1 panels on scaled axes"),
        ("verify", "acceptance verification suite"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--mu", type=float, default=None)
        p.add_argument("--omega", type=float, default=None)
        p.add_argument("--s", type=float, default=None)
        p.add_argument("--R", dest="radius", type=float, default=None)
        p.add_argument("--n", dest="n_list", type=str, default=None,
                       help="comma-separated mode list, e.g. 0,1,2,3")
        p.add_argument("--grid", type=str, default=None,
                       help="CHI_MIN:CHI_MAX:N,P_MIN:P_MAX:N")
        p.add_argument("--evaluator", choices=("closed", "quad"), default=None)
        p.add_argument("--out", dest="out_dir", type=str, default=None)
        p.add_argument("--format", dest="formats", type=str, default=None,
                       help="comma-separated subset of csv,pgm")
        p.add_argument("--config", type=str, default=None, help="JSON config file")
        p.add_argument("--tol", type=float, default=None,
                       help="tolerance scale for verify (1.0 = nominal)")
        p.add_argument("--workers", type=int, default=None)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    doc: dict = {}
    if args.config:
        doc.update(_load_config_file(args.config))
    overrides = {
        "mu": args.mu,
        "omega": args.omega,
        "s": args.s,
        "radius": args.radius,
        "evaluator": args.evaluator,
        "out_dir": args.out_dir,
        "tol": args.tol,
        "workers": args.workers,
    }
    if args.n_list is not None:
        try:
            overrides["n_list"] = tuple(int(tok) for tok in args.n_list.split(","))
        except ValueError as exc:
            raise ConfigError(f"bad --n list: {exc}") from exc
    if args.grid is not None:
        overrides["grid"] = _parse_grid(args.grid)
    if args.formats is not None:
        overrides["formats"] = tuple(tok for tok in args.formats.split(",") if tok)
    doc.update({k: v for k, v in overrides.items() if v is not None})
    doc["command"] = args.command
    try:
        return RunConfig(**doc)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        if config.command == "eigen":
            run_eigen(config)
        elif config.command == "wavefun":
            print(run_wavefun(config))
        elif config.command == "wigner":
            print(run_wigner(config))
        elif config.command == "figure1":
            print(run_figure1(config))
        elif config.command == "verify":
            return run_verify(config)
        return 0
    except CurvedWignerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: grids in, CSV/JSON data plus manifests out.

Subcommands: spectrum, potential, states, piv, verify.  Complex scalars on
the command line use the RE+IMi grammar ("2+1i", "-0.5i", "i"); every data
file is accompanied by <file>.manifest.json echoing the resolved
configuration, the library version and the kernel backend.  Exit codes:
0 success, 1 validation error, 2 residual-certification failure.
"""

import argparse
import csv
import dataclasses
import json
import re
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, backend_name
from .errors import (
    DegenerateSolution,
    DegenerateTriple,
    DeletedLevel,
    EmptyGrid,
    NoValidAssignment,
    SusypivError,
    ZeroCrossing,
)
from .numerics import linear_grid
from .oscillator import Frequency, SeedSpec
from .painleve import (
    ANALYTIC_TOL,
    DELTA_G,
    FD_TOL,
    asymptotic_decay,
    g_first_order,
    g_higher_order,
    piv_residual,
)
from .presets import PRESETS, PresetJob
from .susy import (
    DELTA_W,
    Chain,
    Domain,
    created_state,
    normalize_on_grid,
    partner_potential,
    spectrum,
    transformed_state,
    wronskian_derivatives,
)

_CERTIFICATION_ERRORS = (DegenerateSolution, DegenerateTriple, NoValidAssignment, EmptyGrid, ZeroCrossing)

_NUMBER = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(
    rf"^(?P<real>[+-]?{_NUMBER})?(?P<imag>[+-](?:{_NUMBER})?)?(?P<unit>[ij])?$"
)


def parse_complex(text: str) -> complex:
    """Parse the RE+IMi grammar; accepts j as the unit and unicode minus."""
    s = text.strip().replace("−", "-").replace(" ", "")
    m = _COMPLEX_RE.match(s)
    if not m or not s:
        raise ValueError(f"cannot parse complex number {text!r}")
    real_s, imag_s, unit = m.group("real"), m.group("imag"), m.group("unit")
    if unit is None:
        if imag_s is not None:
            raise ValueError(f"cannot parse complex number {text!r}")
        return complex(float(real_s), 0.0) if real_s is not None else _fail(text)
    if imag_s is None:
        # the single number (or bare sign) belongs to the imaginary part
        if real_s is None:
            return complex(0.0, 1.0)
        return complex(0.0, float(real_s))
    if imag_s in ("+", "-"):
        imag = 1.0 if imag_s == "+" else -1.0
    else:
        imag = float(imag_s)
    return complex(float(real_s) if real_s is not None else 0.0, imag)


def _fail(text):
    raise ValueError(f"cannot parse complex number {text!r}")


def format_complex(z) -> str:
    z = complex(z)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def parse_grid(text: str) -> tuple:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError("grid must be MIN:MAX:N")
    lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    if n < 16:
        raise ValueError("grid needs at least 16 points")
    if hi <= lo:
        raise ValueError("grid needs MAX > MIN")
    return lo, hi, n


@dataclass(frozen=True)
class RunConfig:
    """Resolved parameters of one run; echoed verbatim into every manifest."""

    command: str
    theta: float
    epsilon: complex | None
    nu: complex
    order: int
    seed_kind: str
    j: int
    grid: tuple
    output_format: str
    extremal: int | None = None
    levels: tuple = field(default_factory=tuple)
    created: tuple = field(default_factory=tuple)
    preset: str | None = None
    delta_w: float = DELTA_W
    delta_g: float = DELTA_G
    analytic_tol: float = ANALYTIC_TOL
    fd_tol: float = FD_TOL

    def to_jsonable(self) -> dict:
        out = asdict(self)
        out["epsilon"] = None if self.epsilon is None else format_complex(self.epsilon)
        out["nu"] = format_complex(self.nu)
        out["grid"] = list(self.grid)
        out["levels"] = list(self.levels)
        out["created"] = list(self.created)
        return out


def _seed_spec(config: RunConfig) -> SeedSpec:
    kind = config.seed_kind
    if kind == "general":
        if config.epsilon is None:
            raise ValueError("--seed general requires --epsilon")
        return SeedSpec.general(config.epsilon, config.nu)
    if kind == "bound-even":
        return SeedSpec.bound_even(config.j)
    if kind == "bound-odd":
        return SeedSpec.bound_odd(config.j)
    if kind == "ams":
        return SeedSpec.ams(config.nu)
    raise ValueError(f"unknown seed kind {kind!r}")


def _chain(config: RunConfig) -> Chain:
    return Chain(_seed_spec(config), Frequency(config.theta), config.order)


def _default_grid(chain: Chain) -> tuple:
    if chain.domain is Domain.HALF_LINE:
        return (1e-3, 8.0, 1200)
    return (-8.0, 8.0, 1601)


def _resolve_grid(config: RunConfig, chain: Chain):
    """Grid array plus the config with the resolved extents echoed back in."""
    lo, hi, n = config.grid if config.grid else _default_grid(chain)
    if chain.domain is Domain.HALF_LINE and lo <= 0:
        raise ValueError("half-line chain needs a grid with MIN > 0")
    return linear_grid(lo, hi, n), dataclasses.replace(config, grid=(lo, hi, n))


def _write_manifest(path: Path, config: RunConfig, columns, extra=None):
    manifest = {
        "config": config.to_jsonable(),
        "columns": list(columns),
        "version": __version__,
        "backend": backend_name(),
    }
    if extra:
        manifest.update(extra)
    mpath = Path(str(path) + ".manifest.json")
    mpath.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return mpath


def _write_table(path: Path, config: RunConfig, columns, rows, extra=None):
    path.parent.mkdir(parents=True, exist_ok=True)
    if config.output_format == "json":
        payload = {name: [row[i] for row in rows] for i, name in enumerate(columns)}
        path.write_text(json.dumps(payload, indent=2) + "\n")
    else:
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(columns)
            writer.writerows(rows)
    _write_manifest(path, config, columns, extra)
    return path


def _fmt(v: float) -> str:
    return repr(float(v))


def cmd_spectrum(config: RunConfig, out: Path | None, n_max: int) -> int:
    chain = _chain(config)
    entries = spectrum(chain, n_max=n_max)
    lines = []
    for e in entries:
        lines.append(f"{e.label!s:>6}  {format_complex(e.energy):>28}  {e.status.value}")
    print(f"spectrum of the order-{chain.k} partner ({chain.domain.value}):")
    print("\n".join(lines))
    if out is not None:
        rows = [
            [str(e.label), _fmt(e.energy.real), _fmt(e.energy.imag), e.status.value]
            for e in entries
        ]
        _write_table(out, config, ("label", "re", "im", "status"), rows)
    return 0


def cmd_potential(config: RunConfig, out: Path) -> int:
    chain = _chain(config)
    grid, config = _resolve_grid(config, chain)
    (w, dw, d2w), mask = wronskian_derivatives(chain, grid, 2, config.delta_w)
    v = 0.5 * chain.freq.omega**2 * grid**2 - (d2w / w - (dw / w) ** 2)
    rows = [[_fmt(x), _fmt(val.real), _fmt(val.imag)] for x, val in zip(grid, v)]
    flagged = [float(x) for x in grid[mask]]
    _write_table(out, config, ("x", "re", "im"), rows, extra={"flagged_singular_x": flagged})
    if flagged:
        print(f"warning: {len(flagged)} grid points flagged singular (see manifest)", file=sys.stderr)
    print(f"wrote {out}")
    return 0


def _state_files(out: Path, tag) -> Path:
    return out.with_name(f"{out.stem}_{tag}{out.suffix or '.csv'}")


def cmd_states(config: RunConfig, out: Path) -> int:
    chain = _chain(config)
    grid, config = _resolve_grid(config, chain)
    failures = 0
    for n in config.levels:
        target = _state_files(out, f"n{n}")
        try:
            psi = transformed_state(chain, int(n), grid)
            dens = normalize_on_grid(psi, grid)
        except (DeletedLevel, SusypivError) as exc:
            print(f"level {n}: {exc}", file=sys.stderr)
            failures += 1
            continue
        rows = [[_fmt(x), _fmt(d)] for x, d in zip(grid, dens)]
        _write_table(target, config, ("x", "density"), rows, extra={"level": int(n)})
        print(f"wrote {target}")
    for j in config.created:
        target = _state_files(out, f"eps{j}")
        psi = created_state(chain, int(j), grid)
        dens = normalize_on_grid(psi, grid)
        rows = [[_fmt(x), _fmt(d)] for x, d in zip(grid, dens)]
        _write_table(target, config, ("x", "density"), rows, extra={"created_index": int(j)})
        print(f"wrote {target}")
    return 1 if failures else 0


def _build_candidate(config: RunConfig, chain: Chain):
    if chain.k == 1:
        extremal = config.extremal if config.extremal is not None else 2
        return g_first_order(chain, extremal)
    return g_higher_order(chain, tol=config.analytic_tol)


def cmd_piv(config: RunConfig, out: Path, parametric: bool = False) -> int:
    chain = _chain(config)
    grid, config = _resolve_grid(config, chain)
    candidate = _build_candidate(config, chain)
    g = candidate.g(grid)
    rep_an = piv_residual(candidate, grid, "analytic", delta_g=config.delta_g)
    rep_fd = piv_residual(candidate, grid, "fd", delta_g=config.delta_g)
    certified = rep_an.max_residual < config.analytic_tol and rep_fd.max_residual < config.fd_tol

    columns = ("x", "re_g", "im_g") if parametric else ("x", "re", "im")
    rows = [[_fmt(x), _fmt(val.real), _fmt(val.imag)] for x, val in zip(grid, g)]
    report = {
        "a": format_complex(candidate.a),
        "b": format_complex(candidate.b),
        "extremal_energies": [format_complex(e) for e in candidate.energies],
        "role_index": candidate.role_index,
        "analytic_max_residual": rep_an.max_residual,
        "fd_max_residual": rep_fd.max_residual,
        "analytic_tolerance": config.analytic_tol,
        "fd_tolerance": config.fd_tol,
        "excluded_x": [float(x) for x in rep_an.excluded],
        "certified": bool(certified),
    }
    if parametric:
        report["decay"] = {str(X): asymptotic_decay(candidate, X) for X in (6.0, 8.0, 10.0)}
    _write_table(out, config, columns, rows, extra={"residual_report": report})
    rpath = Path(str(out) + ".report.json")
    rpath.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    print(
        f"wrote {out} (analytic {rep_an.max_residual:.3e}, fd {rep_fd.max_residual:.3e}, "
        f"{len(rep_an.excluded)} excluded)"
    )
    if not certified:
        print("residual certification FAILED", file=sys.stderr)
        return 2
    return 0


def cmd_verify(out: Path | None) -> int:
    from . import verify

    results = verify.run_all()
    for r in results:
        print(r.line())
    summary = verify.summarize(results)
    print(
        f"{summary['passed']}/{summary['total']} checks passed in {summary['seconds']}s "
        f"(backend: {backend_name()})"
    )
    if out is not None:
        payload = {
            "summary": summary,
            "checks": [
                {
                    "criterion": r.criterion,
                    "name": r.name,
                    "passed": r.passed,
                    "measured": r.measured,
                    "threshold": r.threshold,
                    "seconds": round(r.seconds, 3),
                    "negative_control": r.negative_control,
                }
                for r in results
            ],
            "version": __version__,
            "backend": backend_name(),
        }
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        print(f"wrote {out}")
    return 0 if all(r.passed for r in results) else 2


def _config_from_args(args, command: str) -> RunConfig:
    return RunConfig(
        command=command,
        theta=args.theta,
        epsilon=args.epsilon,
        nu=args.nu,
        order=args.order,
        seed_kind=args.seed,
        j=args.j,
        grid=args.grid,
        output_format=args.format,
        extremal=getattr(args, "extremal", None),
        levels=tuple(getattr(args, "levels", ()) or ()),
        created=(),
        delta_w=args.delta_w,
        delta_g=args.delta_g,
        analytic_tol=args.analytic_tol,
        fd_tol=args.fd_tol,
    )


def _config_from_job(job: PresetJob, name: str, fmt: str) -> RunConfig:
    return RunConfig(
        command=job.command,
        theta=job.theta,
        epsilon=job.epsilon,
        nu=job.nu,
        order=job.order,
        seed_kind=job.seed,
        j=job.j,
        grid=job.grid,
        output_format=fmt,
        extremal=job.extremal,
        levels=job.levels,
        created=job.created,
        preset=name,
    )


def _run_preset(name: str, out: Path, fmt: str) -> int:
    try:
        jobs = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}")
    status = 0
    for job in jobs:
        config = _config_from_job(job, name, fmt)
        target = out.with_name(out.stem + job.suffix + (out.suffix or ".csv"))
        if job.command == "potential":
            status = max(status, cmd_potential(config, target))
        elif job.command == "states":
            status = max(status, cmd_states(config, target))
        elif job.command == "piv":
            status = max(status, cmd_piv(config, target))
        elif job.command == "parametric":
            status = max(status, cmd_piv(config, target, parametric=True))
    return status


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--theta", type=float, default=0.0, help="frequency phase in radians")
    parser.add_argument("--epsilon", type=parse_complex, default=None, help="factorization energy, RE+IMi")
    parser.add_argument("--nu", type=parse_complex, default=0j, help="seed deformation, RE+IMi, |nu| < 1")
    parser.add_argument("--order", type=int, default=1, help="transformation order k")
    parser.add_argument(
        "--seed",
        choices=("general", "bound-even", "bound-odd", "ams"),
        default="general",
        help="seed kind",
    )
    parser.add_argument("--j", type=int, default=0, help="bound-state index for bound seeds")
    parser.add_argument("--grid", type=parse_grid, default=None, help="MIN:MAX:N (domain default otherwise)")
    parser.add_argument("--preset", default=None, help="figure preset name (fig3..fig13)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", type=Path, default=None, help="output file path")
    parser.add_argument("--delta-w", dest="delta_w", type=float, default=DELTA_W)
    parser.add_argument("--delta-g", dest="delta_g", type=float, default=DELTA_G)
    parser.add_argument("--analytic-tol", dest="analytic_tol", type=float, default=ANALYTIC_TOL)
    parser.add_argument("--fd-tol", dest="fd_tol", type=float, default=FD_TOL)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="susypiv",
        description="Darboux partners of the complex oscillator and certified Painleve IV candidates",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="list partner spectrum bookkeeping")
    _add_common(p)
    p.add_argument("--n-max", type=int, default=10, help="levels to enumerate")

    p = sub.add_parser("potential", help="sample a partner potential on a grid")
    _add_common(p)

    p = sub.add_parser("states", help="normalized densities of transformed states")
    _add_common(p)
    p.add_argument(
        "--levels", type=lambda s: tuple(int(v) for v in s.split(",")), default=(0,),
        help="comma-separated level labels",
    )

    p = sub.add_parser("piv", help="construct and certify a Painleve IV candidate")
    _add_common(p)
    p.add_argument("--extremal", type=int, default=None, help="extremal index 1..3 (k = 1 only)")

    p = sub.add_parser("verify", help="run the full verification suite")
    p.add_argument("--all", action="store_true", help="run every check (the default)")
    p.add_argument("--out", type=Path, default=None, help="write a JSON report")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args.out)
        preset = getattr(args, "preset", None)
        out = args.out if args.out is not None else Path(f"{preset or args.command}.csv")
        if preset:
            return _run_preset(preset, out, args.format)
        config = _config_from_args(args, args.command)
        if args.command == "spectrum":
            return cmd_spectrum(config, args.out, args.n_max)
        if args.command == "potential":
            return cmd_potential(config, out)
        if args.command == "states":
            return cmd_states(config, out)
        if args.command == "piv":
            return cmd_piv(config, out)
        parser.error(f"unhandled command {args.command}")
    except _CERTIFICATION_ERRORS as exc:
        print(f"certification failure: {exc}", file=sys.stderr)
        return 2
    except (SusypivError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: ``lattice-ent <subcommand> [flags]``.

All temperatures are scaled, 2 k_B T / (hbar omega). Exit status is 0 on
success, 1 for an invalid request and 2 when a single-point computation
fails.
"""
from __future__ import annotations

import argparse
import sys


from . import __version__
from .covariance import ZERO, canonical_separation, two_site_covariance
from .entanglement import DEFAULT_SCAN_MAX, DEFAULT_TOL, critical_temperature, log_negativity, separability_functions
from .errors import InvalidRequest, InvalidSpec, LatticeError
from .model import lattice, mode_table
from .sweep import (
    AxisSpec,
    Observable,
    SweepRequest,
    _pad,
    emit,
    phase_diagram,
    run_sweep,
    separation_label,
    sweep_metadata,
    LITERATURE,
)
from .verify import run_verification
from .witness import default_convention, internal_energy, witness_verdict

EXIT_OK, EXIT_INVALID, EXIT_COMPUTE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def parse_separations(text: str) -> tuple[tuple[int, ...], ...]:
    """``1,2`` or ``1:0,1:1`` -> ((1,), (2,)) or ((1, 0), (1, 1))."""
    try:
        return tuple(tuple(int(c) for c in item.split(":")) for item in text.split(",") if item)
    except ValueError:
        raise InvalidRequest(f"bad separation list {text!r}") from None


def parse_range(text: str) -> AxisSpec:
    """``lo:hi:count[:spacing]`` for the temperature axis."""
    return AxisSpec.parse("temperature:" + text)


def _add_lattice_flags(p, sites_default=None, delta_default=None):
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--sites", type=int, default=sites_default, required=sites_default is None)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=delta_default, required=delta_default is None,
                   help="trap frequency delta (same units as --omega)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default="-")


def _add_temp_flags(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--temp", type=float, default=None, help="scaled temperature; 0 is the ground state")
    g.add_argument("--temp-range", default=None, help="lo:hi:count[:linear|log]")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lattice-ent", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="phonon frequencies x_l = omega_l/omega")
    _add_lattice_flags(p)

    for name, help_ in (("covariance", "two-site covariance entries"), ("negativity", "S1, S2 and E_N")):
        p = sub.add_parser(name, help=help_)
        _add_lattice_flags(p)
        _add_temp_flags(p)
        p.add_argument("--r", default="1")

    p = sub.add_parser("tcrit", help="critical temperature of two-site entanglement")
    _add_lattice_flags(p)
    p.add_argument("--r", default="1")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--scan-max", type=float, default=DEFAULT_SCAN_MAX)

    p = sub.add_parser("witness", help="energy witness verdict")
    _add_lattice_flags(p)
    _add_temp_flags(p)
    p.add_argument("--bound-convention", choices=("paper", "mean"), default=None)
    p.add_argument("--energy-model", choices=("equipartition", "exact"), default="equipartition")

    p = sub.add_parser("sweep", help="grid over one or two parameter axes")
    _add_lattice_flags(p)
    p.add_argument("--axis1", required=True, help="name:lo:hi:count[:spacing]; name in temperature, trap_ratio, sites, dimension")
    p.add_argument("--axis2", default=None)
    p.add_argument("--temp", type=float, default=ZERO, help="fixed scaled temperature when not on an axis")
    p.add_argument("--r", default="1,2")
    p.add_argument("--observables", default="negativity")
    p.add_argument("--bound-convention", choices=("paper", "mean"), default=None)
    p.add_argument("--energy-model", choices=("equipartition", "exact"), default="equipartition")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--literature", action="store_true", help="add literature thresholds to metadata")

    p = sub.add_parser("phase-diagram", help="T_nn and T_EW versus delta/omega")
    _add_lattice_flags(p, sites_default=49, delta_default=0.0)
    p.add_argument("--delta-range", default="1e-4:3.1622776601683795:20:log", help="lo:hi:count[:spacing] of delta/omega")
    p.add_argument("--r", default="1")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--scan-max", type=float, default=DEFAULT_SCAN_MAX)
    p.add_argument("--literature", action="store_true")

    p = sub.add_parser("verify", help="run the oracle equivalence suites")
    p.add_argument("--skip-fock", action="store_true")
    return parser


def _spec(args):
    return lattice(args.dim, args.sites, args.omega, args.delta)


def _temperatures(args) -> list[float]:
    if args.temp_range is not None:
        axis = parse_range(args.temp_range)
        if not 2 <= axis.count <= 10_000 or not 0 < axis.lo <= axis.hi:
            raise InvalidRequest(f"bad temperature range {args.temp_range!r}")
        return axis.values()
    return [ZERO if args.temp is None else args.temp]


def _meta(args, **extra):
    meta = {"tool": "lattice_entanglement", "version": __version__, "seed": 0, "command": args.command}
    meta.update(extra)
    return meta


def _pointwise(args, compute) -> tuple[list[dict], bool]:
    """Evaluate ``compute(spec, t)`` for every requested temperature.

    A single --temp propagates errors; a --temp-range records them per row.
    """
    spec = _spec(args)
    temps = _temperatures(args)
    single = args.temp_range is None
    records = []
    for t in temps:
        try:
            rows = compute(spec, t)
        except LatticeError as exc:
            if single:
                raise
            rows = [{"temperature": t, "error": f"{type(exc).__name__}: {exc}"}]
        records.extend(rows)
    columns = []
    for rec in records:
        columns += [k for k in rec if k not in columns]
    if "error" not in columns:
        columns.append("error")
    return [{c: rec.get(c, "" if c == "error" else None) for c in columns} for rec in records], single


def _cmd_spectrum(args):
    spec = _spec(args)
    indices, x = mode_table(spec)
    records = [
        {**{f"l{j + 1}": int(v) for j, v in enumerate(idx)}, "x": float(xv), "omega_l": float(xv) * spec.coupling}
        for idx, xv in zip(indices, x)
    ]
    return records, _meta(args)


def _cmd_covariance(args):
    seps = parse_separations(args.r)

    def compute(spec, t):
        rows = []
        for r in seps:
            cov = two_site_covariance(spec, t, canonical_separation(_pad(r, spec.dimension), spec.side))
            rows.append({"temperature": t, "r": separation_label(r), "a": cov.a, "b": cov.b, "e": cov.e, "f": cov.f})
        return rows

    records, _ = _pointwise(args, compute)
    return records, _meta(args)


def _cmd_negativity(args):
    seps = parse_separations(args.r)

    def compute(spec, t):
        rows = []
        for r in seps:
            pair = separability_functions(
                two_site_covariance(spec, t, canonical_separation(_pad(r, spec.dimension), spec.side))
            )
            res = log_negativity(pair)
            rows.append({"temperature": t, "r": separation_label(r), "s1": pair.s1, "s2": pair.s2,
                         "negativity": res.value, "entangled": res.entangled})
        return rows

    records, _ = _pointwise(args, compute)
    return records, _meta(args)


def _cmd_tcrit(args):
    spec = _spec(args)
    records = []
    for r in parse_separations(args.r):
        t = critical_temperature(spec, canonical_separation(_pad(r, spec.dimension), spec.side),
                                 scan_max=args.scan_max, tol=args.tol)
        records.append({"r": separation_label(r), "t_crit": t})
    return records, _meta(args, tolerance=args.tol, scan_max=args.scan_max)


def _cmd_witness(args):
    convention = args.bound_convention

    def compute(spec, t):
        rep = witness_verdict(spec, t, convention, args.energy_model)
        return [{"temperature": t, "internal_energy": rep.internal_energy, "exact_energy": internal_energy(spec, t),
                 "separable_bound": rep.separable_bound, "witness_temperature": rep.witness_temperature,
                 "verdict": rep.verdict.value}]

    records, _ = _pointwise(args, compute)
    spec = _spec(args)
    conv = convention or default_convention(spec).value
    return records, _meta(args, bound_convention=str(getattr(conv, "value", conv)), energy_model=args.energy_model)


def _cmd_sweep(args):
    spec = _spec(args)
    req = SweepRequest(
        base=spec,
        axis1=AxisSpec.parse(args.axis1),
        axis2=None if args.axis2 is None else AxisSpec.parse(args.axis2),
        separations=parse_separations(args.r),
        observables=tuple(o for o in args.observables.split(",") if o),
        temperature=args.temp,
        convention=args.bound_convention,
        energy_model=args.energy_model,
        tol=args.tol,
    )
    meta = sweep_metadata(req, literature=args.literature)
    return run_sweep(req), meta


def _cmd_phase_diagram(args):
    spec = _spec(args)
    ratios = AxisSpec.parse("trap_ratio:" + args.delta_range)
    if not 2 <= ratios.count <= 10_000 or not 0 < ratios.lo <= ratios.hi:
        raise InvalidRequest(f"bad delta range {args.delta_range!r}")
    seps = parse_separations(args.r)
    if len(seps) != 1:
        raise InvalidRequest("phase-diagram takes exactly one separation")
    records = phase_diagram(spec, ratios.values(), seps[0], scan_max=args.scan_max, tol=args.tol)
    meta = _meta(args, tolerance=args.tol, scan_max=args.scan_max, sites=spec.side, dimension=spec.dimension)
    if args.literature:
        meta["literature"] = LITERATURE
    return records, meta


def _cmd_verify(args):
    checks = run_verification(include_fock=not args.skip_fock)
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status}  {c.name}: max error {c.max_error:.3e} (tolerance {c.tolerance:.0e})")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_COMPUTE


COMMANDS = {
    "spectrum": _cmd_spectrum,
    "covariance": _cmd_covariance,
    "negativity": _cmd_negativity,
    "tcrit": _cmd_tcrit,
    "witness": _cmd_witness,
    "sweep": _cmd_sweep,
    "phase-diagram": _cmd_phase_diagram,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "verify":
        return _cmd_verify(args)
    try:
        records, meta = COMMANDS[args.command](args)
    except (InvalidRequest, InvalidSpec) as exc:
        print(f"lattice-ent: invalid request: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (LatticeError, ValueError, ArithmeticError) as exc:
        print(f"lattice-ent: computation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    try:
        emit(records, args.format, args.out, metadata=meta)
    except LatticeError as exc:
        print(f"lattice-ent: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

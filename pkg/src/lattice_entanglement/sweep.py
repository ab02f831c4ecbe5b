"""Parameter grids over (T, delta/omega, n, d) and their CSV/JSON emission."""
from __future__ import annotations

import csv
import enum
import io
import itertools
import json
import math
import sys
from dataclasses import dataclass, replace
from typing import Any, Iterable, Sequence

import numpy as np

from . import __version__
from .covariance import ZERO, canonical_separation, two_site_covariance
from .entanglement import DEFAULT_SCAN_MAX, DEFAULT_TOL, critical_temperature, log_negativity, separability_functions
from .errors import InvalidRequest, IoFailure, LatticeError
from .model import LatticeSpec, lattice
from .witness import (
    BoundConvention,
    EnergyModel,
    default_convention,
    exact_witness_temperature,
    internal_energy,
    witness_temperature,
    witness_verdict,
)

SEED = 0
MAX_COUNT = 10_000

# Literature thresholds, annotation only; scaled by k_B T / (hbar omega).
LITERATURE = {
    "T_blocks": {"value_kT_over_hbar_omega": 0.63, "trap_ratio": 1.0 / math.sqrt(20.0), "source": "literature"},
    "T_crit": {"value_kT_over_hbar_omega": 1.0 / 1.2, "trap_ratio": 0.0, "source": "literature"},
}


class Axis(str, enum.Enum):
    TEMPERATURE = "temperature"
    TRAP_RATIO = "trap_ratio"
    SITES = "sites"
    DIMENSION = "dimension"


class Observable(str, enum.Enum):
    NEGATIVITY = "negativity"
    S1 = "s1"
    S2 = "s2"
    COVARIANCE_ENTRIES = "covariance_entries"
    WITNESS_VERDICT = "witness_verdict"
    INTERNAL_ENERGY = "internal_energy"


@dataclass(frozen=True)
class AxisSpec:
    axis: Axis
    lo: float
    hi: float
    count: int
    spacing: str = "linear"

    @classmethod
    def parse(cls, text: str) -> "AxisSpec":
        """``name:lo:hi:count[:linear|log]``."""
        parts = text.split(":")
        if len(parts) not in (4, 5):
            raise InvalidRequest(f"axis must be name:lo:hi:count[:spacing], got {text!r}")
        try:
            axis = Axis(parts[0].replace("-", "_"))
            spacing = parts[4] if len(parts) == 5 else "linear"
            return cls(axis, float(parts[1]), float(parts[2]), int(parts[3]), spacing)
        except ValueError as exc:
            raise InvalidRequest(f"bad axis {text!r}: {exc}") from None

    def values(self) -> list:
        if self.spacing == "log":
            raw = np.geomspace(self.lo, self.hi, self.count)
        else:
            raw = np.linspace(self.lo, self.hi, self.count)
        if self.axis is Axis.SITES:
            return [int(2 * round((v - 1) / 2) + 1) for v in raw]
        if self.axis is Axis.DIMENSION:
            return [int(round(v)) for v in raw]
        return [float(v) for v in raw]


@dataclass(frozen=True)
class SweepRequest:
    base: LatticeSpec
    axis1: AxisSpec
    axis2: AxisSpec | None = None
    separations: tuple[tuple[int, ...], ...] = ((1,), (2,))
    observables: tuple[Observable, ...] = (Observable.NEGATIVITY,)
    temperature: float = ZERO
    convention: BoundConvention | None = None
    energy_model: EnergyModel = EnergyModel.EQUIPARTITION
    tol: float = DEFAULT_TOL


def validate_request(req: SweepRequest) -> SweepRequest:
    if not req.observables:
        raise InvalidRequest("at least one observable is required")
    try:
        observables = tuple(Observable(o) for o in req.observables)
    except ValueError as exc:
        raise InvalidRequest(str(exc)) from None
    if not req.separations:
        raise InvalidRequest("at least one separation is required")
    axes = [a for a in (req.axis1, req.axis2) if a is not None]
    if len(axes) == 2 and axes[0].axis == axes[1].axis:
        raise InvalidRequest("axes must be distinct")
    for a in axes:
        if a.spacing not in ("linear", "log"):
            raise InvalidRequest(f"spacing must be linear or log, got {a.spacing!r}")
        if not 2 <= a.count <= MAX_COUNT:
            raise InvalidRequest(f"count must be in [2, {MAX_COUNT}], got {a.count}")
        if not (0 < a.lo <= a.hi) or not math.isfinite(a.hi):
            raise InvalidRequest(f"axis {a.axis.value} range must satisfy 0 < lo <= hi, got [{a.lo}, {a.hi}]")
        vals = a.values()
        if a.axis in (Axis.SITES, Axis.DIMENSION) and len(set(vals)) != len(vals):
            raise InvalidRequest(f"axis {a.axis.value} grid collapses to repeated integer values")
        if a.axis is Axis.DIMENSION and not set(vals) <= {1, 2, 3}:
            raise InvalidRequest("dimension axis must stay within 1..3")
    if req.temperature < 0:
        raise InvalidRequest("temperature must be >= 0")
    try:
        convention = None if req.convention is None else BoundConvention(req.convention)
        energy_model = EnergyModel(req.energy_model)
    except ValueError as exc:
        raise InvalidRequest(str(exc)) from None
    separations = tuple(tuple(int(c) for c in r) for r in req.separations)
    return replace(req, observables=observables, separations=separations,
                   convention=convention, energy_model=energy_model)


def separation_label(r: Sequence[int]) -> str:
    return "r" + "-".join(str(int(c)) for c in r)


def _pad(r: Sequence[int], dimension: int) -> tuple[int, ...]:
    r = tuple(int(c) for c in r)
    if len(r) > dimension:
        if any(r[dimension:]):
            raise InvalidRequest(f"separation {r} has more components than dimension {dimension}")
        return r[:dimension]
    return r + (0,) * (dimension - len(r))


def _columns(req: SweepRequest) -> list[str]:
    cols = ["dimension", "sites", "trap_ratio", "temperature"]
    obs = set(req.observables)
    for r in req.separations:
        lab = separation_label(r)
        if Observable.NEGATIVITY in obs:
            cols.append(f"negativity_{lab}")
        if Observable.S1 in obs:
            cols.append(f"s1_{lab}")
        if Observable.S2 in obs:
            cols.append(f"s2_{lab}")
        if Observable.COVARIANCE_ENTRIES in obs:
            cols += [f"{k}_{lab}" for k in ("a", "b", "e", "f")]
    if Observable.WITNESS_VERDICT in obs:
        cols += ["witness_verdict", "witness_energy", "separable_bound", "witness_temperature"]
    if Observable.INTERNAL_ENERGY in obs:
        cols.append("internal_energy")
    cols.append("error")
    return cols


def _evaluate(req: SweepRequest, spec: LatticeSpec, temperature: float) -> dict[str, Any]:
    obs = set(req.observables)
    row: dict[str, Any] = {}
    pair_needed = obs & {Observable.NEGATIVITY, Observable.S1, Observable.S2, Observable.COVARIANCE_ENTRIES}
    if pair_needed:
        for r in req.separations:
            lab = separation_label(r)
            sep = canonical_separation(_pad(r, spec.dimension), spec.side)
            cov = two_site_covariance(spec, temperature, sep)
            pair = separability_functions(cov)
            if Observable.NEGATIVITY in obs:
                row[f"negativity_{lab}"] = log_negativity(pair).value
            if Observable.S1 in obs:
                row[f"s1_{lab}"] = pair.s1
            if Observable.S2 in obs:
                row[f"s2_{lab}"] = pair.s2
            if Observable.COVARIANCE_ENTRIES in obs:
                row.update({f"a_{lab}": cov.a, f"b_{lab}": cov.b, f"e_{lab}": cov.e, f"f_{lab}": cov.f})
    if Observable.WITNESS_VERDICT in obs:
        rep = witness_verdict(spec, temperature, req.convention, req.energy_model)
        row.update(
            witness_verdict=rep.verdict.value,
            witness_energy=rep.internal_energy,
            separable_bound=rep.separable_bound,
            witness_temperature=rep.witness_temperature,
        )
    if Observable.INTERNAL_ENERGY in obs:
        row["internal_energy"] = internal_energy(spec, temperature)
    return row


def run_sweep(req: SweepRequest) -> list[dict[str, Any]]:
    """One flat record per grid point, axis1 outermost, in grid order."""
    req = validate_request(req)
    columns = _columns(req)
    axes = [a for a in (req.axis1, req.axis2) if a is not None]
    records = []
    for point in itertools.product(*(a.values() for a in axes)):
        params = {
            "dimension": req.base.dimension,
            "sites": req.base.side,
            "trap_ratio": req.base.trap_ratio,
            "temperature": float(req.temperature),
        }
        for a, v in zip(axes, point):
            params[a.axis.value] = v
        row = dict.fromkeys(columns)
        row.update(params)
        row["error"] = ""
        try:
            spec = lattice(params["dimension"], params["sites"], req.base.coupling,
                           params["trap_ratio"] * req.base.coupling)
            row.update(_evaluate(req, spec, params["temperature"]))
        except (LatticeError, ValueError) as exc:
            row["error"] = f"{type(exc).__name__}: {exc}"
        records.append(row)
    return records


def sweep_metadata(req: SweepRequest, literature: bool = False) -> dict[str, Any]:
    req = validate_request(req)
    axes = [a for a in (req.axis1, req.axis2) if a is not None]
    convention = req.convention or default_convention(req.base)
    meta = {
        "tool": "lattice_entanglement",
        "version": __version__,
        "seed": SEED,
        "bound_convention": BoundConvention(convention).value,
        "energy_model": EnergyModel(req.energy_model).value,
        "tolerance": req.tol,
        "coupling": req.base.coupling,
        "axes": [f"{a.axis.value}:{a.lo!r}:{a.hi!r}:{a.count}:{a.spacing}" for a in axes],
        "separations": [separation_label(r) for r in req.separations],
        "observables": [Observable(o).value for o in req.observables],
        "temperature_unit": "2 k_B T / (hbar omega)",
        "energy_unit": "hbar omega",
    }
    if literature:
        meta["literature"] = LITERATURE
    return meta


def phase_diagram(
    spec: LatticeSpec,
    trap_ratios: Iterable[float],
    separation: Sequence[int] = (1,),
    scan_max: float = DEFAULT_SCAN_MAX,
    tol: float = DEFAULT_TOL,
) -> list[dict[str, Any]]:
    """Nearest-neighbour and witness thresholds versus delta/omega."""
    records = []
    for ratio in trap_ratios:
        row: dict[str, Any] = {
            "trap_ratio": float(ratio),
            "t_nn": None,
            "t_ew_paper": None,
            "t_ew_mean": None,
            "t_ew_exact": None,
            "error": "",
        }
        errors = []
        try:
            s = spec.with_(trap=float(ratio) * spec.coupling)
        except (LatticeError, ValueError) as exc:
            row["error"] = f"{type(exc).__name__}: {exc}"
            records.append(row)
            continue
        row["t_ew_paper"] = witness_temperature(s, BoundConvention.PAPER)
        row["t_ew_mean"] = witness_temperature(s, BoundConvention.MEAN)
        for key, compute in (
            ("t_nn", lambda: critical_temperature(s, _pad(separation, s.dimension), scan_max=scan_max, tol=tol)),
            ("t_ew_exact", lambda: exact_witness_temperature(s)),
        ):
            try:
                row[key] = compute()
            except (LatticeError, ValueError) as exc:
                errors.append(f"{key}: {type(exc).__name__}: {exc}")
        row["error"] = "; ".join(errors)
        records.append(row)
    return records


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, enum.Enum):
        return str(value.value)
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else repr(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return value


def format_csv(records: Sequence[dict[str, Any]]) -> str:
    if not records:
        raise ValueError("no records to emit")
    buf = io.StringIO()
    columns = list(records[0])
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(columns)
    for rec in records:
        writer.writerow([_cell(rec.get(c)) for c in columns])
    return buf.getvalue()


def format_json(records: Sequence[dict[str, Any]], metadata: dict[str, Any] | None = None) -> str:
    if not records:
        raise ValueError("no records to emit")
    payload = [{"metadata": _json_value(metadata or {})}] + [_json_value(r) for r in records]
    return json.dumps(payload, indent=1, allow_nan=False) + "\n"


def parse_json(text: str) -> tuple[dict[str, Any], list[dict[str, Any]]]:
    payload = json.loads(text)
    return payload[0]["metadata"], payload[1:]


def emit(records, fmt: str = "csv", destination=None, metadata: dict[str, Any] | None = None) -> bytes:
    """Serialize ``records`` and write them to ``destination`` (path, text stream, or stdout)."""
    if fmt == "csv":
        text = format_csv(records)
    elif fmt == "json":
        text = format_json(records, metadata)
    else:
        raise InvalidRequest(f"format must be csv or json, got {fmt!r}")
    data = text.encode("utf-8")
    try:
        if destination is None or destination == "-":
            sys.stdout.write(text)
            sys.stdout.flush()
        elif hasattr(destination, "write"):
            destination.write(text)
        else:
            with open(destination, "wb") as fh:
                fh.write(data)
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    return data

"""Nearest-neighbour negativity of a 49-site chain vs temperature for delta/omega = 1e-4 .. sqrt(10)."""
import argparse

from lattice_entanglement.model import lattice
from lattice_entanglement.sweep import AxisSpec, SweepRequest, emit, run_sweep, sweep_metadata

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--out", default="figure2.csv")
parser.add_argument("--format", choices=("csv", "json"), default="csv")
args = parser.parse_args()

req = SweepRequest(
    base=lattice(1, 49, 1.0, 1e-4),
    axis1=AxisSpec.parse("trap_ratio:1e-4:3.1622776601683795:10:log"),
    axis2=AxisSpec.parse("temperature:0.01:3.0:150"),
    separations=((1,),),
    observables=("negativity",),
)
emit(run_sweep(req), args.format, args.out, metadata=sweep_metadata(req))

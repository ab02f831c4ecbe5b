"""Nearest and next-nearest neighbour negativity vs temperature for chains n = 3..51."""
import argparse

from lattice_entanglement.model import lattice
from lattice_entanglement.sweep import AxisSpec, SweepRequest, emit, run_sweep, sweep_metadata

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--out", default="figure1.csv")
parser.add_argument("--format", choices=("csv", "json"), default="csv")
args = parser.parse_args()

req = SweepRequest(
    base=lattice(1, 3, 1.0, 1e-4),
    axis1=AxisSpec.parse("sites:3:51:25"),
    axis2=AxisSpec.parse("temperature:0.01:3.0:150"),
    separations=((1,), (2,)),
    observables=("negativity",),
)
emit(run_sweep(req), args.format, args.out, metadata=sweep_metadata(req))

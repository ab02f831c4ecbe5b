"""Thresholds T_nn and T_EW of a 49-site chain vs delta/omega, with literature annotations."""
import argparse

import numpy as np

from lattice_entanglement.model import lattice
from lattice_entanglement.sweep import LITERATURE, emit, phase_diagram

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--points", type=int, default=40)
parser.add_argument("--out", default="figure4.json")
parser.add_argument("--format", choices=("csv", "json"), default="json")
args = parser.parse_args()

ratios = np.logspace(-4, 0.5, args.points)
records = phase_diagram(lattice(1, 49, 1.0, 0.0), ratios)
emit(records, args.format, args.out, metadata={"sites": 49, "dimension": 1, "literature": LITERATURE})

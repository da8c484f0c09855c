#!/usr/bin/env python3
"""Emit the gate-error-versus-displacement sweep data files.

Produces sweep_electron.csv (gate a, four K values), sweep_nuclear.csv
(gate b, five K values) and sweep_neighbor.csv (gate b while the other
atom is displaced).
"""
import sys

from donorpair.cli import main

if __name__ == "__main__":
    outdir = sys.argv[1] if len(sys.argv) > 1 else "."
    rc = main(["sweep", "--gate", "a", "--K", "1,2,3,4",
               "--out", f"{outdir}/sweep_electron.csv"])
    rc |= main(["sweep", "--gate", "b", "--K", "700,2000,5000,10000,30000",
                "--out", f"{outdir}/sweep_nuclear.csv"])
    rc |= main(["sweep", "--gate", "b", "--K", "2000", "--displaced-atom", "2",
                "--out", f"{outdir}/sweep_neighbor.csv"])
    sys.exit(rc)

#!/usr/bin/env python3
"""Run the ensemble initialization experiment and emit its summary CSV.

Default scale (2000 chains x 8 realizations) finishes in well under a
minute on a laptop; pass --chains 10000 --realizations 40 for full scale.
"""
import argparse
import sys

from donorpair.cli import main

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--chains", type=int, default=2000)
parser.add_argument("--realizations", type=int, default=8)
parser.add_argument("--Kn", default="700,2000,5000,10000")
parser.add_argument("--seed", type=int, default=0)
parser.add_argument("--threads", type=int, default=None)
parser.add_argument("--out", default="ensemble.csv")
args = parser.parse_args()

cli_args = ["ensemble", "--chains", str(args.chains),
            "--realizations", str(args.realizations),
            "--law", "A,B,none", "--Kn", args.Kn,
            "--seed", str(args.seed), "--out", args.out]
if args.threads is not None:
    cli_args += ["--threads", str(args.threads)]
sys.exit(main(cli_args))

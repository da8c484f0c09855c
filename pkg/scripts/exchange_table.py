#!/usr/bin/env python3
"""Emit the exchange-coupling table J(N) for the working separation range."""
import sys

from donorpair.cli import main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "exchange_table.csv"
    sys.exit(main(["jtable", "40", "51", "--out", out]))

#!/usr/bin/env python3
"""Drive the command-line front end to produce a reproducible sweep CSV.

The CSV (fixed 28-column schema, config echoed as a JSON comment) is the
hand-off format for plotting with external tools; this script generates a
candidate-set-size sweep, reparses the config comment, and summarizes a few
columns.
"""

import csv
import tempfile
from pathlib import Path

from twohopsec.cli import main, parse_config_comment

out = Path(tempfile.mkdtemp()) / "k_sweep.csv"
args = [
    "sweep",
    "--case", "equal",
    "--n", "6", "--m", "1",
    "--tau", "0.4", "--gamma-e", "1.0",
    "--trials", "20000", "--seed", "7",
    "--sweep-param", "k", "--sweep-from", "1", "--sweep-to", "6", "--sweep-steps", "6",
    "--out", str(out),
]
code = main(args)
print(f"cli exit code: {code}")
print(f"csv written to: {out}\n")

lines = out.read_text().splitlines()
config = parse_config_comment(lines[0])
print(f"config echo round-trips: seed={config.seed}, trials={config.trials}, "
      f"sweep={config.sweep.param} {config.sweep.start}..{config.sweep.stop}")

rows = list(csv.DictReader(lines[1:]))
print(f"\n{'k':>3} {'p_t_hat':>9} {'p_s_hat':>9} {'bound_t':>9} {'bound_s':>9} {'feasible':>9}")
for row in rows:
    print(f"{row['k']:>3} {float(row['p_t_hat']):>9.4f} {float(row['p_s_hat']):>9.4f} "
          f"{float(row['bound_t']):>9.4f} {float(row['bound_s']):>9.4f} "
          f"{row['feasible']:>9}")

print("\nRe-running the same arguments reproduces this file byte for byte;")
print("sweeps reuse one seed per grid point, so rows share random numbers and")
print("parameter effects are not drowned by sampling noise.  bound_s here uses")
print("the mean jammer count, which at moderate tau can sit below the estimate")
print("(see demo 02 for the variant that keeps the jammer count binomial).")

#!/usr/bin/env python3
"""Produce a CSV sweep like the command line does, scaled down to run in seconds.

The equivalent shell invocation for the full study:

    trasa --nodes 20,40,60,80,100 --runs 40 --seed 1 --out sweep.csv
"""

import tempfile
from pathlib import Path

from trasa import ExperimentConfig, emit_csv, run_experiment

config = ExperimentConfig(n_values=[20, 40, 60], runs=10, base_seed=1)
table = run_experiment(config)

out = Path(tempfile.gettempdir()) / "trasa_sweep.csv"
emit_csv(table, out)
print(f"wrote {out} ({len(table)} rows)")

print("\nper-size means (run_index == -1):")
for row in table:
    if row["run_index"] == -1:
        print(
            f"  n={row['n']:>3}  cycle={row['cycle_length']:6.1f}"
            f"  reuse={row['slot_reuse']:.2f}  delay={row['avg_delay']:6.1f}"
            f"  max_buffer={row['max_buffer']:.1f}"
        )

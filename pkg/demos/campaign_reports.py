"""A tiny campaign written to CSV and JSON, then read back."""

import tempfile
from pathlib import Path

from otnsga import RunConfig, run_campaign, write_reports
from otnsga.bench import read_summary_csv

cfg = RunConfig("SCH", pop_size=20, generations=20)
summary, reports = run_campaign(cfg, seeds=[0, 1, 2], problems=["SCH", "FON"], algorithms=["nsga2", "otnsga2"])

for row in summary.rows:
    print(f"{row.problem:4s} {row.algorithm:8s} GD mean {row.gd_mean:.3e} best {row.gd_best:.3e} std {row.gd_std:.1e}")

out = Path(tempfile.mkdtemp())
files = write_reports(reports, summary, out, cfg)
print(len(files), "files in", out)
print((out / "sch_otnsga2_s0_trace.csv").read_text().splitlines()[-3:])

# the summary file parses back to the same numbers
assert read_summary_csv(out / "summary.csv") == summary

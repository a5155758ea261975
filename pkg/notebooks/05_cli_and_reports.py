"""
Configurations, runs and report files
=====================================

A run configuration in TOML, the same run through the library and
through the command line, and the files it writes.
"""

# %%
import subprocess
import sys
import tempfile
from pathlib import Path

from holder_resolvent import parse_config, serialize_config
from holder_resolvent.reporting import emit_plot_data, write_reports
from holder_resolvent.suite import plan, run, run_meta

TEXT = """\
dim = 2
p = 1.5
r_values = [0.1, 1.0, 10.0]
checks = ["phi_identity", "theorem_main1", "fnt", "holder_fit_resolvent"]

[sampler]
seed = 42
count = 2000

[operator]
kind = "sum"

[[operator.terms]]
kind = "grad_quadratic"
b = [0.0, 0.0]
lambda = 1.0

[[operator.terms]]
kind = "subgrad_l1"
gamma = 0.3
"""
cfg = parse_config(TEXT)
print(serialize_config(cfg))
print(plan(cfg))

# %%
out = Path(tempfile.mkdtemp())
result = run(cfg)
for path in write_reports(result.reports, out / "lib", "csv", run_meta(cfg), result.exit_code):
    print(path.name)
for path in emit_plot_data(result.fits, out / "lib"):
    print(path.name, path.read_text().splitlines()[:2])

# %% [markdown]
# Same through the console entry point.  Exit status 2 would mean a
# violation confirmed in high precision.

# %%
(out / "run.toml").write_text(TEXT)
proc = subprocess.run([sys.executable, "-m", "holder_resolvent.cli", "verify", "--config",
                       str(out / "run.toml"), "--out", str(out / "cli")], capture_output=True, text=True)
print(proc.stdout)
print("exit status", proc.returncode)

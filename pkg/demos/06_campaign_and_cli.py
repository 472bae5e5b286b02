# A small randomized campaign, then the same scenario through the CLI.
import json
import subprocess
import sys
import tempfile
from pathlib import Path

from jacobi_spectra.verification import run_interlacing_campaign

res = run_interlacing_campaign(min_triples=200, seed=1)
print(f"triples {res.triples}, failures {len(res.failures)}, "
      f"theta > 1 {res.swapped}, shared eigenvalue in gap {res.with_common}")

scenario = {
    "system": {"masses": [1, 1, 1, 1, 1], "springs": [1, 1, 1, 1, 1, 1]},
    "perturbation": {"site": 2, "theta": 0.5, "shift": 0.0},
    "grid": {"re": {"start": -4.5, "stop": 0.5, "num": 6}, "im": [0.1]},
    "commands": ["spectrum", "verify"],
    "seed": 7,
}
with tempfile.TemporaryDirectory() as tmp:
    cfg = Path(tmp) / "uniform5.json"
    cfg.write_text(json.dumps(scenario))
    for cmd, fmt in (("spectrum", "csv"), ("green", "csv"), ("verify", "json")):
        proc = subprocess.run([sys.executable, "-m", "jacobi_spectra", cmd,
                               "--config", str(cfg), "--format", fmt],
                              capture_output=True, text=True)
        print(f"\n$ spectra {cmd} --config uniform5.json --format {fmt}   (exit {proc.returncode})")
        out = proc.stdout
        if fmt == "json":
            rep = json.loads(out)
            print("verdicts:", [(v["name"], v["passed"]) for v in rep["verdicts"]])
        else:
            print(out.strip())

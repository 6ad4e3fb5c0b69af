"""Drive the command-line interface and read back its artifacts.

Every command writes a CSV table with a fixed header plus a JSON
summary, and reruns are byte-identical, so downstream tooling can diff
results across versions.  The same entry point is installed as the
`lplab` console script.
"""

import json
import pathlib
import tempfile

from lplab.cli import main

workdir = pathlib.Path(tempfile.mkdtemp(prefix="lplab-demo-"))

print("materializing the test corpus as raw float64 field files...")
main(["corpus", "--grid-dim", "1", "--grid-n", "256",
      "--out", str(workdir / "corpus")])
members = sorted(p.name for p in (workdir / "corpus").glob("*.bin"))
print(f"  wrote {len(members)} fields: {', '.join(members[:4])}, ...\n")

print("computing a quasinorm of one of them via the CLI:")
code = main([
    "norm", "--grid-dim", "1", "--grid-n", "256",
    "--in", str(workdir / "corpus" / "band_mid.bin"),
    "--characterization", "diff", "--s", "0.5",
    "--out", str(workdir / "norm"),
])
print(f"\nexit status {code}")

print("\nrunning an equivalence experiment twice and comparing bytes:")
for tag in ("a", "b"):
    main(["verify", "equivalence", "--grid-dim", "1", "--grid-n", "256",
          "--pair", "lp,diff", "--theorem", "T2i", "--s", "0.5",
          "--out", str(workdir / tag)])
same = all(
    (workdir / "a" / name).read_bytes() == (workdir / "b" / name).read_bytes()
    for name in ("verify_equivalence.csv", "verify_equivalence_summary.json")
)
print(f"  byte-identical reruns: {same}")

summary = json.loads((workdir / "a" / "verify_equivalence_summary.json").read_text())
print(f"  verdict {summary['verdict']}, ratio spread {summary['spread']:.4f}")
print(f"\nartifacts live under {workdir}")

"""Compute the census up to a crossing number and print the comparison tables.

Run:  python demos/reproduce_tables.py [max_crossings]   (default 8, about 10 s)

At 10 crossings the computation takes a few minutes on one core; every printed
row then matches the published tables.
"""

import sys
import tempfile
from pathlib import Path

from qknots.cli import main

max_n = sys.argv[1] if len(sys.argv) > 1 else "8"
with tempfile.TemporaryDirectory() as tmp:
    store = Path(tmp) / "store"
    out = Path(tmp) / "reports"
    main(["compute", "--max-crossings", max_n, "--store", str(store)])
    main(["report", "all", "--store", str(store), "--out", str(out)])
    for name in ("unique_percent", "max_coefficient", "average_span",
                 "max_abs_root", "pure_roots", "annulus_roots"):
        print(f"-- {name}")
        print((out / f"{name}.csv").read_text())

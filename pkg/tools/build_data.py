"""Regenerate the bundled census files from a KnotInfo CSV dump.

    python3 tools/build_data.py path/to/knotinfo_data_complete.csv

The dump ships inside the ``database_knotinfo`` wheel
(``database_knotinfo/csv_data/knotinfo_data_complete.csv``).  Writes

* ``src/qknots/data/prime_knots.txt.gz``      name;PD[...] for 3..13 crossings
* ``src/qknots/data/seifert_matrices.txt.gz`` name;[[...]] for the same knots
* ``tests/data/knotinfo_reference.json.gz``   published Jones, Alexander,
  rational Khovanov and HOMFLY values for n <= 11, used only as test oracles

sympy is needed here (to read the published polynomial strings) but not by
the package itself.
"""

import csv
import gzip
import io
import json
import re
import sys
from pathlib import Path

import sympy

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from qknots.knotdata import convert_knotinfo_csv  # noqa: E402

REF_MAX = 11

t, q, v, z, T = sympy.symbols("t q v z T")


def _poly_terms(text, gens):
    """Published polynomial string -> sorted [[exponents..., coeff], ...]."""
    text = text.strip()
    if not text:
        return None
    expr = sympy.sympify(text.replace("^", "**"), locals={"t": t, "q": q, "v": v, "z": z, "T": T})
    expr = sympy.expand(expr)
    terms = {}
    for mon, c in expr.as_coefficients_dict().items():
        powers = mon.as_powers_dict()
        key = tuple(int(powers.get(g, 0)) for g in gens)
        terms[key] = terms.get(key, 0) + int(c)
    return sorted([list(k) + [c] for k, c in terms.items() if c])


def _khovanov_rational(text):
    # terms carrying T^k record torsion; the rational part is the rest
    text = text.strip()
    if not text:
        return None
    parts = re.split(r"(?<=[^\^(*])(?=[+-])", text.replace(" ", ""))
    keep = [p for p in parts if p and "T" not in p]
    return _poly_terms("".join(keep), (q, t))


def _gz_write(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    with gzip.GzipFile(path, "wb", mtime=0) as g:
        g.write(text.encode("utf-8"))


def main(csv_path):
    csv.field_size_limit(1 << 30)
    with open(csv_path, newline="", encoding="utf-8") as src:
        out = io.StringIO()
        out.write("# prime knots with 3-13 crossings, one chirality each, in census order\n")
        out.write("# source: KnotInfo (pd_notation column)\n")
        k = convert_knotinfo_csv(src, out, min_crossings=3)
    _gz_write(ROOT / "src/qknots/data/prime_knots.txt.gz", out.getvalue())
    print("census records:", k)

    with open(csv_path, newline="", encoding="utf-8") as src:
        rows = [r for r in csv.DictReader(src, delimiter="|") if r["crossing_number"].isdigit()]
    rows = [r for r in rows if int(r["crossing_number"]) >= 3]

    seif = io.StringIO()
    seif.write("# Seifert matrices (KnotInfo seifert_matrix column), same order as prime_knots\n")
    for r in rows:
        m = json.loads(r["seifert_matrix"].replace(" ", ""))
        seif.write(f"{r['name']};{json.dumps(m, separators=(',', ':'))}\n")
    _gz_write(ROOT / "src/qknots/data/seifert_matrices.txt.gz", seif.getvalue())

    ref = []
    for r in rows:
        if int(r["crossing_number"]) > REF_MAX:
            break
        ref.append({
            "name": r["name"],
            "jones": _poly_terms(r["jones_polynomial"], (t,)),
            "alexander": _poly_terms(r["alexander_polynomial"], (t,)),
            "khovanov": _khovanov_rational(r["khovanov_unreduced_integral_polynomial"]),
            "homfly": _poly_terms(r["homfly_polynomial"], (v, z)),
        })
    _gz_write(ROOT / "tests/data/knotinfo_reference.json.gz", json.dumps(ref, separators=(",", ":")))
    print("reference records:", len(ref))


if __name__ == "__main__":
    main(sys.argv[1])

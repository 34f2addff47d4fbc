"""Two readings of "expected draws until two knots share an invariant".

distinct     ordered pairs of different knots drawn until one shares a value;
             the mean is 1/rho for a colliding-pair fraction rho, and is
             infinite when every knot has its own value.
replacement  two knots drawn independently, possibly the same one; the count of
             failures before a match has mean N^2 / sum(c^2) - 1.

The published pair table is reproduced by the second reading.  This demo prints
both exact tables for n <= 8 next to a Monte Carlo estimate.

Run:  python demos/pair_protocols.py
"""

from qknots.cli import COLS_ALL, HEAD_UNIQUE, _combined, evaluate_invariant
from qknots.knotdata import load_census
from qknots.stats import (
    PAIR_PROTOCOLS,
    ClassPartition,
    pair_expectation_exact,
    pair_expectation_sampled,
)

table = load_census(8)
knots = list(table)
cols = {inv: [evaluate_invariant(d, inv) for _, d in knots] for inv in COLS_ALL}
ns = [d.n for _, d in knots]

for proto in PAIR_PROTOCOLS:
    print(f"-- {proto}")
    print("n    " + "".join(f"{k:>10}" for k in HEAD_UNIQUE[1:]))
    for n in range(4, 9):
        cells = []
        for key in HEAD_UNIQUE[1:]:
            vals = [v for v, m in zip(_combined(cols, key), ns) if m <= n]
            cells.append(float(pair_expectation_exact(ClassPartition.from_values(vals), proto)))
        print(f"{n:<5}" + "".join(f"{c:>10.2f}" for c in cells))
    print()

part = ClassPartition.from_values(cols["J"])
for proto in PAIR_PROTOCOLS:
    est = pair_expectation_sampled(part, trials=20000, seed=1, protocol=proto)
    print(f"Jones, n<=8, {proto}: exact {float(pair_expectation_exact(part, proto)):.3f}, "
          f"sampled {est.mean:.3f} +- {est.stderr:.3f}")

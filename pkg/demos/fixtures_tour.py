"""Every invariant of the trefoil and the figure-eight knot, by every engine.

Run:  python demos/fixtures_tour.py
"""

from qknots import parse_pd
from qknots.alexander import alexander
from qknots.bracket import jones
from qknots.khovanov import euler_to_jones, khovanov, specialize
from qknots.rmatrix import a2, b1, jones_rmatrix
from qknots.roots import classify, poly_roots

KNOTS = {
    "3_1": "PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]",
    "4_1": "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]",
}

for name, pd in KNOTS.items():
    d = parse_pd(pd, name)  # the Seifert engine looks matrices up by census id
    print(f"== {name}  ({d.n} crossings)")
    j = jones(d)
    print("  Jones (state sum)   ", j)
    print("  Jones (R-matrix)    ", jones_rmatrix(d), " agree:", j == jones_rmatrix(d))
    print("  Alexander (Fox)     ", alexander(d, engine="fox"))
    print("  Alexander (Seifert) ", alexander(d, engine="seifert"))
    print("  A2 (unreduced)      ", a2(d))
    print("  B1 (unreduced)      ", b1(d))
    kh = khovanov(d)
    print("  Khovanov            ", kh)
    kt1, euler = specialize(kh)
    print("  Khovanov at t=1     ", kt1)
    print("  Euler char -> Jones ", euler_to_jones(euler), " agree:", euler_to_jones(euler) == j)
    st = classify(poly_roots(j))
    print(f"  Jones roots: {st.count} total, {st.pure} on an axis, "
          f"{st.annulus} near |z|=1, largest |z| = {st.max_abs:.4f}")
    print()

"""Walk through the link invariants on a few small knots and links."""

from __future__ import annotations

from skeinlab import knot
from skeinlab.poly import Q


def main() -> None:
    hopf = knot.hopf()
    print("Hopf bracket:", knot.kauffman_bracket(hopf))
    assert knot.kauffman_bracket(hopf) == Q ** 3 + Q + Q ** -1 + Q ** -3

    for name, pd in (("trefoil", knot.trefoil()), ("figure-eight", knot.figure_eight())):
        j = knot.jones(pd)
        print(f"{name}: Jones {j}")
        print(f"{name}: mirror Jones {knot.jones(knot.mirror(pd))}")
        print(f"{name}: amphichiral by Jones? {j == j.mirror()}")
        print(f"{name}: Kauffman {knot.kauffman_polynomial(pd)}")

    # colored Jones of the Hopf link is the sl2 S matrix entry
    for colors in ((1, 1), (1, 2), (2, 2)):
        print(f"Hopf colored {colors}:", knot.colored_jones(hopf, colors))

    # the R-matrix state sum and the skein route agree
    b = knot.BraidWord(3, (1, -2, 1, -2))
    print("figure-eight braid via R-matrix:", knot.jones_via_rmatrix(b))
    print("figure-eight braid via skein:   ", knot.jones(knot.braid_closure_pd(b)))

    print("trefoil Alexander:", knot.alexander_from_seifert([[1, 0], [-1, 1]]))


if __name__ == "__main__":
    main()

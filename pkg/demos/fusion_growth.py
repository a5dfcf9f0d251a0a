"""Tensor-power growth in a few fusion rings against the Perron-Frobenius prediction."""

from __future__ import annotations

from skeinlab import fusion


def main() -> None:
    cases = [
        (fusion.fib(), "L"),
        (fusion.s3(), "L_s"),
        (fusion.dihedral8(), "V"),
        (fusion.ty(3), "X"),
    ]
    for ring, x in cases:
        lam = fusion.pfdim(ring, x)
        b = fusion.growth_bn(ring, x, 24)
        a = fusion.growth_asymptotic(ring, x)
        print(f"{ring.name} / {x}: PFdim {lam:.6f}, period {a.period}")
        print("  b_n:", b[:12])
        for n in (8, 16, 24):
            print(f"  n = {n:2d}  b_n = {b[n]:>12d}  a(n) = {a(n):16.3f}  ratio {b[n] / a(n):.6f}")

    # the sl2 cutoffs approach the untruncated value 2 from below
    f = fusion.pfdim_filtered(fusion.verlinde_sl2, range(3, 13), 1)
    print("PFdim(L1) in sl2 cutoffs:", " ".join(f"{v:.4f}" for v in f.values))


if __name__ == "__main__":
    main()

"""Build sl2 modular data, check the identities and recover fusion rules from S."""

from __future__ import annotations

import numpy as np

from skeinlab import verlinde


def main() -> None:
    for k in (3, 4, 5, 8):
        d = verlinde.modular_data_sl2(k)
        print(f"k = {k}: rank {d.rank}, dim {d.global_dim.real:.6f}")
        print("  dims:", np.round(d.dims.real, 6).tolist())
        for line in verlinde.verify_modular_identities(d).lines():
            print("  " + line)
        vf = verlinde.verlinde_formula_check(d)
        print(f"  Verlinde formula: {'PASS' if vf.passed else 'FAIL'} over {len(vf.checks)} constants")

    print("level-5 even block:")
    print(np.round(verlinde.fib_block(5).real, 6))


if __name__ == "__main__":
    main()

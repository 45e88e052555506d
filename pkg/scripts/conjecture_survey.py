#!/usr/bin/env python3
"""Small-field survey: permutation status and differential uniformity of
C_u for every nonzero u, per extension degree.

Permutation status uses the exhaustive occupancy scan; the uniformity
column uses the full table where affordable (6m <= 36) and the early-exit
disprover (reported as ">2") above that.

Usage: python scripts/conjecture_survey.py [--max-m 7]
"""

import argparse
import time

from cu_lab import cu_analysis as cua, field2m as f2


def survey(m: int) -> None:
    field = f2.make_field(m)
    q = field.q
    t0 = time.time()
    n_perm = 0
    rows = []
    for bits in range(1, q):
        u = field.element(bits)
        ok, _ = cua.is_permutation(field, u)
        n_perm += ok
        if 6 * m <= 18:  # full table is cheap only for tiny fields
            uni = cua.differential_uniformity(field, u).uniformity
            uni_s = str(uni)
        else:
            rep = cua.differential_uniformity(field, u, early_exit_above=2)
            uni_s = str(rep.uniformity) if rep.exhaustive else f">{2}"
        rows.append((bits, ok, uni_s))
    dt = time.time() - t0
    print(f"\nGF(2^{m})  modulus {field.modulus:#x}  ({dt:.1f}s)")
    print(f"  permutations: {n_perm}/{q - 1} nonzero u")
    if m <= 4:
        for bits, ok, uni in rows:
            print(f"  u={bits:#04x}  {'perm' if ok else 'coll'}  uniformity {uni}")
    else:
        apn = [b for b, _, uni in rows if uni == "2"]
        print(f"  uniformity 2 instances: {apn if apn else 'none'}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-m", type=int, default=6)
    args = ap.parse_args()
    for m in range(3, args.max_m + 1):
        survey(m)


if __name__ == "__main__":
    main()

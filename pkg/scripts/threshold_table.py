#!/usr/bin/env python3
"""Print the exact sign table of the certified-point lower bound
q^3 - 650 q^(5/2) - 7971615 q^2 - 312 q (q-1) for m = 1..40, plus the
size condition q > 2(r+1) delta^2 and the resulting threshold degree.

Usage: python scripts/threshold_table.py
"""

from cu_lab import lwbound


def main() -> None:
    print(f"{'m':>3} {'sign':>9} {'applicable':>11} {'float estimate':>16}  note")
    for m in range(1, 41):
        r = lwbound.theta_lower_bound(m)
        print(f"{m:>3} {r.sign:>9} {str(r.applicable):>11} {r.float_estimate:>16.3e}  {r.note}")
    print(f"\nsmallest odd m with a positive bound: {lwbound.find_min_odd_m()}")
    print("size condition first holds at m = 13 (2^13 = 8192 > 5832)")


if __name__ == "__main__":
    main()

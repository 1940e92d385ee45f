#!/usr/bin/env python3
"""Size comparison of the union-code constructions against the best known
competitors, with rates and the distance-(2k-2) Johnson bound."""

from fractions import Fraction

from cyclic_cdc import orbit_codes as oc

ROWS = [
    (2, 2, 2, "odd"), (2, 2, 2, "even"),
    (3, 3, 2, "odd"), (3, 3, 3, "odd"),
    (5, 3, 8, "even"), (2, 5, 2, "even"),
]


def main():
    for q, k, r, parity in ROWS:
        row = oc.compare_sizes(q, k, r, parity)
        jo = oc.johnson_bound(q, row["n"], k, 2 * k - 2)
        print(
            f"q={q} k={k} r={r} {parity:4} n={row['n']:3}  "
            f"ours {row['ours']}  vs known {row['best_known']}  "
            f"(+{row['difference']})  rate {row['rate_ours']:.3f}  "
            f"fills {row['ours']/jo:.3f} of the Johnson bound"
        )
        if "known_5k" in row:
            print(f"{'':14}n=5k competitor {row['known_5k']} (rate {row['rate_known_5k']:.3f})")

    print("\nratio of the n=4k construction to the common bound value:")
    for k in range(2, 9):
        ratio = oc.ratio_to_bound(2, k)
        gap = float(Fraction(1, 2) - ratio)
        print(f"  k={k}: {ratio} = {float(ratio):.5f}  (1/2 - ratio = {gap:.5f})")


if __name__ == "__main__":
    main()

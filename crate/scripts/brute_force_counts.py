#!/usr/bin/env python3
"""Counts admissible systems and nested pairs on small idempotent chains.

Stand-alone: an interval is a pair (i, j) of chain positions with i <= j; a
system is a set of pairwise strictly separated intervals with idempotent
lower bounds (all primes are idempotent here, and completeness is automatic
for finite sets). Nesting means every interval sits inside one of the bigger
system.
"""

from itertools import combinations


def systems(n):
    intervals = [(i, j) for i in range(n) for j in range(i, n)]
    out = []
    for k in range(len(intervals) + 1):
        for chosen in combinations(intervals, k):
            if all(b < c or d < a for (a, b), (c, d) in combinations(chosen, 2)):
                out.append(chosen)
    return out


def nested(small, big):
    return all(any(k <= i and j <= l for k, l in big) for i, j in small)


def main():
    two = systems(2)
    three = systems(3)
    pairs = sum(1 for x in two for y in two if nested(x, y))
    print(f"systems on the 2-chain: {len(two)}")
    print(f"systems on the 3-chain: {len(three)}")
    print(f"nested pairs on the 2-chain: {pairs}")


if __name__ == "__main__":
    main()

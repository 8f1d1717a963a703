"""Compare the closed-form maximal concurrence with the brute-force oracle."""
import argparse
import math

import numpy as np

from entcap.capability import brute_force_max_concurrence, is_perfect_entangler, max_concurrence


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--grid", type=int, default=48)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    gaps = {True: [], False: []}
    for _ in range(args.samples):
        a = tuple(sorted(rng.uniform(0, math.pi / 4, 3), reverse=True))
        gap = abs(max_concurrence(a) - brute_force_max_concurrence(a, args.grid)[0])
        gaps[is_perfect_entangler(a)].append(gap)
    for pe, g in gaps.items():
        if g:
            label = "perfect entanglers" if pe else "other gates"
            print(f"{label:20s} n={len(g):4d}  max |delta| {max(g):.2e}  mean {np.mean(g):.2e}")


if __name__ == "__main__":
    main()

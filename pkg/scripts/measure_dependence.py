"""Best ancilla-assisted inputs under different measures.

For U_d(a, a, a) on a grid of a, prints the optimal Schmidt sines (sa, sb)
and value for each measure, alongside the two reference inputs.
"""
import argparse
import math

import numpy as np

from entcap.ancilla import AncillaInput, optimize_measure, output_measure


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--points", type=int, default=5)
    p.add_argument("--budget", type=int, default=8)
    p.add_argument("--measures", default="renyi,entropy,schmidt,monotone:1,monotone:2,monotone:3")
    args = p.parse_args(argv)

    refs = {"product": AncillaInput.local_product(), "m.e.": AncillaInput.local_maximally_entangled()}
    print(f"{'alpha/pi':>8s} {'measure':>11s} {'sa':>7s} {'sb':>7s} {'best':>9s} {'product':>9s} {'m.e.':>9s}")
    for a in np.linspace(0.02, 0.25, args.points) * math.pi:
        alpha = (a, a, a)
        for m in args.measures.split(","):
            res = optimize_measure(alpha, m, args.budget)
            ref = [output_measure(alpha, r, m) for r in refs.values()]
            print(
                f"{a / math.pi:8.4f} {m:>11s} {res.best.sa:7.4f} {res.best.sb:7.4f} "
                f"{res.value:9.6f} {ref[0]:9.6f} {ref[1]:9.6f}"
            )


if __name__ == "__main__":
    main()

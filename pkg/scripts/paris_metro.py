"""Price and traffic ratios of neighbouring classes as c falls, alpha = -2, s = 1/2.

Prints one row per c: number of classes, p1/p0 and the weighted-traffic
ratio, next to their c -> 0 limits.
"""

import argparse

import numpy as np

from qosm import (
    MarketConfig,
    PowerLaw,
    Rational,
    class_outcome,
    first_threshold,
    price_ratio_limit,
    snapshot,
    traffic_ratio_limit,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--beta", type=float, default=6.0)
    parser.add_argument("--decades", type=int, default=6)
    args = parser.parse_args()

    f, h, s = PowerLaw(-2.0), Rational(args.beta, 1.0), 0.5
    c0 = first_threshold(f, h, s)
    print(f"c0 = {c0:.6g}; limits: price ratio {price_ratio_limit(f, s):g}, "
          f"traffic ratio {traffic_ratio_limit(f, s):g}")
    print(f"{'c/c0':>10} {'classes':>8} {'p1/p0':>12} {'t1/t0':>12}")
    for frac in np.geomspace(0.5, 10.0 ** -args.decades, 4 * args.decades):
        cfg = MarketConfig(f, h, s, c0 * frac)
        n = len(snapshot(cfg, max_classes=1000).classes)
        if n < 2:
            print(f"{frac:10.3g} {n:8d}")
            continue
        k0, k1 = class_outcome(cfg, 0), class_outcome(cfg, 1)
        print(f"{frac:10.3g} {n:8d} {k1.price / k0.price:12.8f} "
              f"{k1.weighted_traffic / k0.weighted_traffic:12.8f}")


if __name__ == "__main__":
    main()

"""Print a character map of the UC / BDC / UDC regimes over (alpha, s).

U = universal class, B = bounded differentiated classes,
D = unbounded differentiated classes. The price response is fixed by
--beta (Rational family), so B and D trade places as beta changes.
"""

import argparse

import numpy as np

from qosm import PowerLaw, Rational, Regime, classify_regime

SYMBOL = {Regime.UC: "U", Regime.BDC: "B", Regime.UDC: "D"}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--beta", type=float, default=3.0)
    parser.add_argument("--rows", type=int, default=24)
    parser.add_argument("--cols", type=int, default=64)
    args = parser.parse_args()

    h = Rational(args.beta, 1.0)
    alphas = np.linspace(-4.0, 3.0, args.cols)
    for s in np.linspace(0.97, 0.03, args.rows):
        line = "".join(SYMBOL[classify_regime(PowerLaw(a), h, s).regime] for a in alphas)
        print(f"s={s:4.2f} {line}")
    print(f"{'':7}alpha from {alphas[0]:g} to {alphas[-1]:g}")


if __name__ == "__main__":
    main()

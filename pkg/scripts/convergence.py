"""Energy error of leapfrog versus dt for the oscillator (second-order check)."""

import argparse

from hodgephase.algebra import Signature
from hodgephase.dynamics import HamiltonianSpec, PairRef, PhaseState, integrate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t-end", type=float, default=10.0)
    ap.add_argument("--levels", type=int, default=5)
    ap.add_argument("--scheme", default="leapfrog")
    args = ap.parse_args()

    h = HamiltonianSpec.from_terms([(0.5, 2, 0), (0.5, 0, 2)], PairRef.first(Signature(3), 1))
    prev = None
    print(f"{'dt':>10} {'max |dH|':>12} {'ratio':>8}")
    for i in range(args.levels):
        dt = 1e-2 / 2 ** i
        steps = round(args.t_end / dt)
        err = integrate(h, PhaseState(1.0, 0.0), dt, steps, args.scheme).energy_error
        ratio = f"{prev / err:8.3f}" if prev else " " * 8
        print(f"{dt:10.3e} {err:12.4e} {ratio}")
        prev = err


if __name__ == "__main__":
    main()

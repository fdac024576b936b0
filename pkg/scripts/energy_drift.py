"""Compare energy error of leapfrog, symplectic Euler and RK4 on the oscillator.

    python3 scripts/energy_drift.py --dt 0.1 --steps 20000
"""

import argparse

from hodgephase.algebra import Signature
from hodgephase.dynamics import SCHEMES, HamiltonianSpec, PairRef, PhaseState, integrate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dt", type=float, default=0.1)
    ap.add_argument("--steps", type=int, default=20_000)
    ap.add_argument("--checkpoints", type=int, default=5)
    args = ap.parse_args()

    h = HamiltonianSpec.from_terms([(0.5, 2, 0), (0.5, 0, 2)], PairRef.first(Signature(3), 1))
    stride = args.steps // args.checkpoints
    print(f"dt={args.dt} steps={args.steps}")
    print(f"{'scheme':>18} " + " ".join(f"{'t=' + format(stride * i * args.dt, 'g'):>11}" for i in range(1, args.checkpoints + 1)))
    for scheme in SCHEMES:
        traj = integrate(h, PhaseState(1.0, 0.0), args.dt, stride * args.checkpoints, scheme, stride)
        h0 = traj.samples[0].H
        print(f"{scheme:>18} " + " ".join(f"{s.H - h0:+11.3e}" for s in traj.samples[1:]))


if __name__ == "__main__":
    main()

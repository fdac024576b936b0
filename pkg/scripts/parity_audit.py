"""Print the commutation-class audit and the SPHA summary for Cl(4) and Cl(3,1)."""

import argparse

from hodgephase.algebra import Signature
from hodgephase.phase_space import audit_paper_claims
from hodgephase.spha import build_generators, verify_spha


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=8)
    args = ap.parse_args()

    print(audit_paper_claims(args.n_max).to_text())
    for sig in (Signature(4), Signature(3, 1, negative_first=True)):
        rep = verify_spha(build_generators(sig))
        consts = ", ".join(f"{k}={v.constant}" for k, v in rep.lines.items())
        print(f"{sig}: closure={rep.closure} jacobi={rep.jacobi} uniform={rep.all_lines_uniform}")
        print(f"  constants: {consts}")
        print(f"  consistency: {rep.consistency}")


if __name__ == "__main__":
    main()

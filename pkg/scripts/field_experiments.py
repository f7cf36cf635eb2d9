"""Compare zero sets of the constructed systems with the parametrised points
over several small finite fields and print one row per experiment."""

import argparse
import time

from toric_ara.construct import almost_sci_triple
from toric_ara.gluing import stci_pair_example35, stci_pair_prime_power
from toric_ara.model import Variety
from toric_ara.verify import FIELD_CAP, SCAN_CAP, FieldSpec, equality_experiment

EX14 = Variety.uniform(4, (8, 0, 1), (0, 12, 3))
EX35 = Variety.mixed3((5, 3, 6), (2, 0, 3), (0, 1, 1))

SYSTEMS = {
    "ex14-pair": (EX14, list(stci_pair_prime_power(EX14))),
    "ex14-triple": (EX14, almost_sci_triple(EX14).binomials),
    "ex35-pair": (EX35, list(stci_pair_example35(EX35))),
}

FIELDS = [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--extmax", type=int, default=3,
                    help="largest parameter extension degree (lowered per field to respect the caps)")
    args = ap.parse_args()
    print(f"{'system':<12} {'field':<8} {'ext':>3} {'image':>7} {'zeros':>7} {'excess':>7}  status")
    for name, (v, polys) in SYSTEMS.items():
        for p, m in FIELDS:
            t0 = time.perf_counter()
            q, ext = p**m, args.extmax
            while ext > 1 and ((q**ext) ** v.n > SCAN_CAP or q**ext > FIELD_CAP):
                ext -= 1
            rep = equality_experiment(v, polys, FieldSpec(p, m), ext)
            dt = time.perf_counter() - t0
            print(f"{name:<12} {rep.field:<8} {rep.ext_max:>3} {rep.image_count:>7} {rep.zero_count:>7} "
                  f"{len(rep.excess):>7}  {rep.status} ({dt:.2f}s)")


if __name__ == "__main__":
    main()

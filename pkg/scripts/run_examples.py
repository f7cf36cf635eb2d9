"""Run the full analysis on the worked example varieties and print reports."""

import argparse

from toric_ara.analyze import analyze
from toric_ara.construct import almost_sci_triple
from toric_ara.model import Variety

EXAMPLES = {
    "ex14": Variety.uniform(4, (8, 0, 1), (0, 12, 3)),
    "d6": Variety.uniform(6, (6, 0, 1), (0, 6, 5)),
    "ex35": Variety.mixed3((5, 3, 6), (2, 0, 3), (0, 1, 1)),
    "ex36": Variety.mixed3((5, 1, 6), (2, 0, 1), (0, 1, 1)),
    "d1": Variety.uniform(1, (2, 1), (1, 3)),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", choices=[[], *EXAMPLES], default=list(EXAMPLES))
    ap.add_argument("--kmax", type=int, default=None)
    args = ap.parse_args()
    for name in args.names or EXAMPLES:
        v = EXAMPLES[name]
        cond, evidence, report = analyze(v, args.kmax)
        print(f"=== {name}: {v.to_json()}")
        print(cond.render())
        for p, tree in evidence.items():
            print(f"--- {p}-gluing " + ("certificate" if tree else "not found"))
            if tree:
                print(tree.render())
        if v.shape == "uniform":
            t = almost_sci_triple(v)
            print(f"--- triple: {t.f1}, {t.f2}, {t.f3} (g1={t.g1}, g2={t.g2}, e={t.e})")
        print(report.render())
        print()


if __name__ == "__main__":
    main()

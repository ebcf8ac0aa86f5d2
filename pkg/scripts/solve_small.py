"""Time the exact solver on small instances and report memo statistics."""

import argparse
import json
import time

from mql.core import Model
from mql.solver import Solver


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--model", choices=[m.value for m in Model], default="yn")
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--no-relabel", action="store_true", help="key states without ball relabeling")
    args = p.parse_args()

    for n in range(args.n_min, args.n_max + 1):
        t0 = time.perf_counter()
        solver = Solver(n, args.k, args.model, relabel=False if args.no_relabel else None)
        value = solver.solve()
        row = {"n": n, "k": args.k, "model": args.model, "value": str(value),
               "seconds": round(time.perf_counter() - t0, 2), **solver.stats()}
        print(json.dumps(row), flush=True)


if __name__ == "__main__":
    main()

"""Play every questioner against every applicable adversary and print forced query counts."""

import argparse

from mql.adversaries import ConsistencyGuard, ExactAdversary, GreedyPairingAdversary, PartitionAdversary
from mql.core import Model
from mql.knowledge import build_pairing_graph, certifies, graph_certifies, knowledge_of
from mql.questioners import run_majority3, run_majority3_with_gap, run_pairing_bins
from mql.solver import MAX_N_MASK, Solver, optimal_questioner


def matchups(n):
    yn = {"majority3": run_majority3, "majority3-gap": run_majority3_with_gap}
    pairing = {"pairing-bins": run_pairing_bins, "majority3": run_majority3}
    if n <= 7:
        yn["optimal"] = optimal_questioner(Solver(n, 3, Model.YN))
    pairing["optimal"] = optimal_questioner(Solver(n, 3, Model.PAIRING))

    for qname, q in yn.items():
        advs = {"exact": lambda: ExactAdversary(n, 3, Model.YN)} if n <= MAX_N_MASK - 1 else {}
        if n % 2 == 0:
            advs["partition"] = lambda: PartitionAdversary(n)
        for aname, make in advs.items():
            run = q(ConsistencyGuard(make(), n, Model.YN), n, model=Model.YN)
            ok = certifies(knowledge_of(run.transcript), run.verdict)
            yield "yn", qname, aname, run.query_count, ok
    for qname, q in pairing.items():
        for aname, make in {"greedy": lambda: GreedyPairingAdversary(n),
                            "exact": lambda: ExactAdversary(n, 3, Model.PAIRING)}.items():
            run = q(ConsistencyGuard(make(), n, Model.PAIRING), n, model=Model.PAIRING)
            ok = graph_certifies(build_pairing_graph(run.transcript), run.verdict)
            yield "pairing", qname, aname, run.query_count, ok


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, nargs="+", default=[4, 5, 6, 7, 8])
    args = p.parse_args()
    print("n,model,questioner,adversary,queries,certified")
    for n in args.n:
        for model, qname, aname, count, ok in matchups(n):
            print(f"{n},{model},{qname},{aname},{count},{ok}")


if __name__ == "__main__":
    main()

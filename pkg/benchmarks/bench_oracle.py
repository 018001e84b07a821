"""Compare the compiled and numpy brute-force oracle backends.

    python3 benchmarks/bench_oracle.py [--repeat N]

Each instance is an unsatisfiable truncation, so both backends enumerate
the whole coloring space.
"""

import argparse
import time

from lclkit import kernels
from lclkit.engine import exhaustive_oracle
from lclkit.regtree import parse_automaton, truncate
from lclkit.sigma_pi import ComponentSpec, build_component, pi_problem, sigma_problem, truncation_mode

ZERO = parse_automaton({"states": ["q"], "initial": "q", "delta": {"q": {"0": "q"}}})
FULL = parse_automaton({"states": ["q"], "initial": "q", "delta": {"q": {"0": "q", "1": "q"}}})


def instances():
    for d, k in ((3, 4), (4, 5), (5, 6)):
        T = truncate(ZERO, d)
        yield f"sigma zero-tree d={d} k={k}", T, sigma_problem(), truncation_mode(T, d), k
    T = truncate(FULL, 2)
    yield "sigma full-tree d=2 k=3", T, sigma_problem(), truncation_mode(T, 2), 3
    for d in (3, 4):
        G = build_component(ComponentSpec(ZERO, ZERO, d))
        yield f"pi zero/zero d={d} k=4", G, pi_problem(), truncation_mode(G, d), 4


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"{'instance':32} {'colorings':>10} " + " ".join(f"{b + ' s':>10}" for b in backends) + "   speedup")
    for label, G, P, mode, k in instances():
        times, results = [], []
        for b in backends:
            best = float("inf")
            for _ in range(args.repeat):
                start = time.perf_counter()
                res = exhaustive_oracle(G, P, k, mode, cap=10**9, backend=b)
                best = min(best, time.perf_counter() - start)
            times.append(best)
            results.append(res)
        assert all(r == results[0] for r in results), label
        speedup = f"{times[1] / times[0]:8.1f}x" if len(times) == 2 else "       -"
        print(f"{label:32} {results[0].examined:>10} " + " ".join(f"{t:10.4f}" for t in times) + f"  {speedup}")


if __name__ == "__main__":
    main()

"""Benchmark the campaign kernels: pure Python versus the compiled extension.

Runs the same verification campaign through every importable backend,
checks the results agree bit for bit, and prints a timing table.

    python3 benchmarks/bench_campaign.py --samples 200000 --repeats 3
"""

import argparse
import time

from confound_kit.kernel import available_backends
from confound_kit.theorems import CLAUSES, _campaign_codes, clause_lookup


def time_backend(impl, args, samples, repeats):
    model, rep, eq, conclusion = args
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = impl.run_campaign(model, rep, eq, conclusion, 0, samples, 0, 1e-10, 1000)
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--theorem", default="T2", help="catalog theorem (default T2)")
    parser.add_argument("--clause", default="a", help="catalog clause (default a)")
    parser.add_argument("--samples", type=int, default=200_000)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--all-clauses", action="store_true",
                        help="sweep the whole catalog instead of one clause")
    opts = parser.parse_args()

    backends = available_backends()
    clauses = list(CLAUSES) if opts.all_clauses else [clause_lookup(opts.theorem, opts.clause)]

    print(f"backends: {', '.join(backends)}")
    print(f"samples per campaign: {opts.samples}, best of {opts.repeats}")
    print()
    header = f"{'clause':8}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}"
    print(header)
    print("-" * len(header))

    for clause in clauses:
        codes = _campaign_codes(clause)
        timings = {}
        results = {}
        for name, impl in backends.items():
            timings[name], results[name] = time_backend(impl, codes, opts.samples, opts.repeats)
        baseline = next(iter(results.values()))
        for name, result in results.items():
            if result != baseline:
                raise SystemExit(f"backend {name} disagrees on {clause.theorem}({clause.clause})")
        row = f"{clause.theorem}({clause.clause})".ljust(8)
        row += "".join(f"{timings[name] * 1e3:>10.2f}ms" for name in backends)
        if "pure" in timings and "compiled" in timings:
            row += f"{timings['pure'] / timings['compiled']:>9.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

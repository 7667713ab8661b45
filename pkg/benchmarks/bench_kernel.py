"""Compiled vs pure-Python search kernel on validity-check workloads.

Run: python benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import itertools
import random
import time

from pbmod import _pykernel
from pbmod.core import Op, PBConstraint
from pbmod.encoding import EncoderSpec, translate
from pbmod.kernel import BACKEND, Kernel


def workload(seed=1, count=12):
    """(clauses, num_vars, assumption lists) from random constraint translations."""
    rng = random.Random(seed)
    jobs = []
    for i in range(count):
        n = rng.randint(5, 8)
        terms = [(rng.randint(-20, 20) or 1, v) for v in range(1, n + 1)]
        q = PBConstraint(terms, list(Op)[i % 5], rng.randint(0, 40))
        t = translate(q, EncoderSpec(("modular-dp", "modular-via-pb", "bdd")[i % 3]))
        xs = sorted(t.input_vars)
        cases = [[x if b else -x for x, b in zip(xs, bits)] + [sign * t.root]
                 for bits in itertools.product((False, True), repeat=len(xs)) for sign in (1, -1)]
        jobs.append((list(t.clauses), t.num_vars, cases))
    return jobs


def run(cls, jobs):
    start = time.perf_counter()
    checks = 0
    for clauses, num_vars, cases in jobs:
        k = cls(clauses, num_vars)
        for lits in cases:
            k.check(lits, 10 ** 6)
            checks += 1
    return time.perf_counter() - start, checks


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--count", type=int, default=12, help="number of translated constraints")
    args = parser.parse_args()
    jobs = workload(count=args.count)
    backends = [("python", _pykernel.Kernel)]
    if BACKEND == "compiled":
        backends.insert(0, ("compiled", Kernel))
    else:
        print("compiled kernel not built; timing the pure-Python kernel only")
    times = {}
    for name, cls in backends:
        best = min(run(cls, jobs)[0] for _ in range(args.repeat))
        times[name] = best
        print("%-9s %8.3fs  (%d checks)" % (name, best, sum(len(j[2]) for j in jobs)))
    if len(times) == 2:
        print("speedup  %8.1fx" % (times["python"] / times["compiled"]))


if __name__ == "__main__":
    main()

"""Time the finite-set table composition kernel, compiled against pure Python.

Usage: python benchmarks/bench_kernel.py [--repeat N] [--seed S]
"""

import argparse
import random
import timeit

from vcat import _kernel_py
from vcat.finord import OrdMap
from vcat.vfinset import KERNEL, FinSet, _compiled_compose_tables

CASES = {
    # name: (index map values, inner source sizes per fiber, inner targets, outer target)
    "unary chain 64": ((1,), [(64,)], [64], 64),
    "binary of binaries": ((1, 1, 2, 2), [(4, 4), (4, 4)], [6, 6], 5),
    "shuffle 4 args": ((2, 1, 2, 1), [(3, 3), (3, 3)], [5, 5], 4),
    "wide nullary mix": ((1, 1, 1, 3, 3), [(3, 3, 3), (), (3, 3)], [4, 7, 4], 3),
}


def build_case(case, rng):
    values, inner_sources, inner_targets, target = case
    phi = OrdMap(len(values), len(inner_sources), values)
    V = FinSet(kernel=_kernel_py.compose_tables)
    gs = [V.random_morphism(src, tgt, rng) for src, tgt in zip(inner_sources, inner_targets)]
    f = V.random_morphism(tuple(inner_targets), target, rng)
    return phi, gs, f


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rng = random.Random(args.seed)
    python = FinSet(kernel=_kernel_py.compose_tables)
    compiled = FinSet(kernel=_compiled_compose_tables) if _compiled_compose_tables else None
    print(f"default kernel: {KERNEL}")
    print(f"{'case':<22}{'table':>8}{'python us':>12}{'compiled us':>13}{'speedup':>9}")
    for name, case in CASES.items():
        phi, gs, f = build_case(case, rng)
        out = python.raw_compose(phi, gs, f)
        t_py = timeit.timeit(lambda: python.raw_compose(phi, gs, f), number=args.repeat) / args.repeat
        if compiled is None:
            print(f"{name:<22}{len(out.table):>8}{t_py * 1e6:>12.1f}{'n/a':>13}{'':>9}")
            continue
        assert compiled.raw_compose(phi, gs, f) == out
        t_c = timeit.timeit(lambda: compiled.raw_compose(phi, gs, f), number=args.repeat) / args.repeat
        print(f"{name:<22}{len(out.table):>8}{t_py * 1e6:>12.1f}{t_c * 1e6:>13.1f}{t_py / t_c:>8.1f}x")


if __name__ == "__main__":
    main()

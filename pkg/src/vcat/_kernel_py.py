"""Pure-Python table composition kernel (fallback for the compiled one)."""

from __future__ import annotations

from itertools import product
from typing import Sequence


def compose_tables(
    values: Sequence[int],
    n_inner: int,
    g_sources: Sequence[Sequence[int]],
    g_tables: Sequence[Sequence[int]],
    f_sources: Sequence[int],
    f_table: Sequence[int],
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Tabulate ``x -> f(g_1(x|fiber 1), ..., g_J(x|fiber J))``.

    ``values`` is the index map: composite source ``i`` feeds inner table
    ``values[i-1]``, and each inner table reads its sources in increasing
    order.  Tables are laid out mixed-radix with the first argument most
    significant and hold 1-based values.  Returns the composite source sizes
    and its table.
    """
    n_sources = len(values)
    src = [0] * n_sources
    owner = [0] * n_sources
    gstride = [0] * n_sources
    left = [len(s) for s in g_sources]
    running = [1] * n_inner
    # right to left, so each source finds its position within its fiber
    for i in range(n_sources - 1, -1, -1):
        j = values[i] - 1
        left[j] -= 1
        if left[j] < 0:
            raise ValueError("fiber larger than the arity of its inner table")
        src[i] = g_sources[j][left[j]]
        owner[i] = j
        gstride[i] = running[j]
        running[j] *= src[i]
    if any(left):
        raise ValueError("fiber smaller than the arity of its inner table")
    f_strides = [0] * n_inner
    stride = 1
    for j in range(n_inner - 1, -1, -1):
        f_strides[j] = stride
        stride *= f_sources[j]
    out = []
    append = out.append
    pairs = list(zip(owner, gstride))
    for x in product(*[range(s) for s in src]):
        gidx = [0] * n_inner
        for (j, st), xi in zip(pairs, x):
            gidx[j] += xi * st
        fi = 0
        for j in range(n_inner):
            fi += (g_tables[j][gidx[j]] - 1) * f_strides[j]
        append(f_table[fi])
    return tuple(src), tuple(out)

"""Finite sets and multimaps: the cartesian ground instance.

An object is a size ``n`` standing for ``{1, ..., n}``.  A multimap stores its
values as a flat table laid out mixed-radix with the first argument most
significant.  Internal homs encode a table as a single integer in the same
mixed-radix convention.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product as cartesian
from math import prod
from typing import Iterator, Sequence

from .finord import OrdMap
from .multicat import Multicategory, NotAFork, SignatureError, SizeBoundExceeded, then

try:  # compiled kernel when the extension was built
    from ._kernel import compose_tables as _compiled_compose_tables
except ImportError:  # pragma: no cover - depends on the build
    _compiled_compose_tables = None
from ._kernel_py import compose_tables as _python_compose_tables

KERNEL = "compiled" if _compiled_compose_tables is not None else "python"
compose_tables = _compiled_compose_tables or _python_compose_tables

DEFAULT_SIZE_BOUND = 10**6


@dataclass(frozen=True)
class MultiMap:
    sources: tuple[int, ...]
    target: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sources", tuple(int(s) for s in self.sources))
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != prod(self.sources):
            raise ValueError(f"table has {len(self.table)} entries, expected {prod(self.sources)}")
        for v in self.table:
            if not 1 <= v <= self.target:
                raise ValueError(f"table entry {v} outside 1..{self.target}")

    @classmethod
    def trusted(cls, sources: tuple[int, ...], target: int, table: tuple[int, ...]) -> "MultiMap":
        """Construct without validation; for internally computed tables."""
        m = object.__new__(cls)
        object.__setattr__(m, "sources", sources)
        object.__setattr__(m, "target", target)
        object.__setattr__(m, "table", table)
        return m

    def to_json(self) -> dict:
        return {"sources": list(self.sources), "target": self.target, "table": list(self.table)}

    @classmethod
    def from_json(cls, data: dict) -> "MultiMap":
        return cls(tuple(data["sources"]), int(data["target"]), tuple(data["table"]))

    def __repr__(self) -> str:
        return f"MultiMap({list(self.sources)}->{self.target}: {list(self.table)})"


def mixed_index(sizes: Sequence[int], args: Sequence[int]) -> int:
    """0-based table position of 1-based ``args``."""
    idx = 0
    for s, a in zip(sizes, args):
        if not 1 <= a <= s:
            raise ValueError(f"argument {a} outside 1..{s}")
        idx = idx * s + (a - 1)
    return idx


def mixed_digits(sizes: Sequence[int], idx: int) -> tuple[int, ...]:
    """Inverse of :func:`mixed_index`; returns 1-based digits."""
    out = []
    for s in reversed(sizes):
        out.append(idx % s + 1)
        idx //= s
    return tuple(reversed(out))


def fs_apply(m: MultiMap, args: Sequence[int]) -> int:
    if len(args) != len(m.sources):
        raise ValueError(f"expected {len(m.sources)} arguments")
    return m.table[mixed_index(m.sources, args)]


def from_function(sources: Sequence[int], target: int, fn) -> MultiMap:
    """Tabulate a Python callable on 1-based arguments."""
    sizes = tuple(sources)
    table = tuple(fn(*args) for args in cartesian(*[range(1, s + 1) for s in sizes]))
    return MultiMap(sizes, target, table)


def encode_table(table: Sequence[int], z: int) -> int:
    code = 0
    for v in table:
        code = code * z + (v - 1)
    return code + 1


def decode_table(code: int, n_entries: int, z: int) -> tuple[int, ...]:
    c = code - 1
    out = []
    for _ in range(n_entries):
        out.append(c % z + 1)
        c //= z
    return tuple(reversed(out))


class FinSet(Multicategory):
    """Finite sets with multimaps; closed and complete."""

    name = "FinSet"
    closed = True
    complete = True

    def __init__(self, size_bound: int = DEFAULT_SIZE_BOUND, kernel=None):
        self.size_bound = size_bound
        self._kernel = kernel or compose_tables
        self._identities: dict[int, MultiMap] = {}

    def _guard(self, size: int, what: str) -> None:
        if size > self.size_bound:
            raise SizeBoundExceeded(f"{what} has size {size} > bound {self.size_bound}")

    def sources(self, m: MultiMap) -> tuple[int, ...]:
        return m.sources

    def target(self, m: MultiMap) -> int:
        return m.target

    def identity(self, x: int) -> MultiMap:
        m = self._identities.get(x)
        if m is None:
            m = self._identities[x] = MultiMap((x,), x, tuple(range(1, x + 1)))
        return m

    def raw_compose(self, phi: OrdMap, gs: Sequence[MultiMap], f: MultiMap) -> MultiMap:
        self._guard(prod([s for g in gs for s in g.sources]), "composite table")
        src, table = self._kernel(
            phi.values, phi.target_size, [g.sources for g in gs], [g.table for g in gs], f.sources, f.table
        )
        return MultiMap.trusted(src, f.target, table)

    def hom_size(self, xs: Sequence[int], y: int) -> int:
        return y ** prod(xs)

    def homs(self, xs: Sequence[int], y: int) -> Iterator[MultiMap]:
        n = prod(xs)
        self._guard(y**n, "hom enumeration")
        for table in cartesian(range(1, y + 1), repeat=n):
            yield MultiMap(tuple(xs), y, table)

    def random_morphism(self, xs: Sequence[int], y: int, rng: random.Random) -> MultiMap:
        n = prod(xs)
        if y == 0 and n > 0:
            raise ValueError("empty hom")
        return MultiMap.trusted(tuple(xs), y, tuple(rng.choices(range(1, y + 1), k=n)))

    # closed structure

    def underhom(self, xs: Sequence[int], z: int) -> int:
        size = z ** prod(xs)
        self._guard(size, "internal hom")
        return size

    def ev(self, xs: Sequence[int], z: int) -> MultiMap:
        n = prod(xs)
        u = self.underhom(xs, z)
        self._guard(n * u, "evaluation table")
        table = []
        for r in range(n):
            weight = z ** (n - 1 - r)
            for code in range(1, u + 1):
                table.append(((code - 1) // weight) % z + 1)
        return MultiMap(tuple(xs) + (u,), z, tuple(table))

    def curry(self, f: MultiMap, n_args: int) -> MultiMap:
        xs, ys = f.sources[:n_args], f.sources[n_args:]
        n, m = prod(xs), prod(ys)
        u = self.underhom(xs, f.target)
        table = []
        for s in range(m):
            column = [f.table[r * m + s] for r in range(n)]
            table.append(encode_table(column, f.target))
        return MultiMap(tuple(ys), u, tuple(table))

    # complete structure

    def product(self, objs: Sequence[int]) -> tuple[int, list[MultiMap]]:
        sizes = tuple(objs)
        size = prod(sizes)
        self._guard(size, "product")
        projs = []
        for k in range(len(sizes)):
            table = tuple(mixed_digits(sizes, p)[k] for p in range(size))
            projs.append(MultiMap((size,), sizes[k], table))
        return size, projs

    def into_product(self, fs: Sequence[MultiMap], objs: Sequence[int], xs: Sequence[int] | None = None) -> MultiMap:
        sizes = tuple(objs)
        if xs is None:
            if not fs:
                raise SignatureError("sources are needed to tuple an empty family")
            xs = fs[0].sources
        xs = tuple(xs)
        for k, f in enumerate(fs):
            if f.sources != xs or f.target != sizes[k]:
                raise SignatureError("tupled morphisms must share sources and match the factors", k + 1)
        n = prod(xs)
        table = tuple(mixed_index(sizes, [f.table[r] for f in fs]) + 1 for r in range(n))
        return MultiMap(xs, prod(sizes), table)

    def equalizer(self, f: MultiMap, g: MultiMap) -> tuple[int, MultiMap]:
        if f.sources != g.sources or f.target != g.target or len(f.sources) != 1:
            raise SignatureError("equalizer needs a parallel pair of unary maps")
        keep = tuple(x for x in range(1, f.sources[0] + 1) if f.table[x - 1] == g.table[x - 1])
        return len(keep), MultiMap((len(keep),), f.sources[0], keep)

    def factor_through_equalizer(self, h: MultiMap, f: MultiMap, g: MultiMap) -> MultiMap:
        if then(self, h, f) != then(self, h, g):
            raise NotAFork("morphism does not equalize the pair")
        size, incl = self.equalizer(f, g)
        where = {x: k for k, x in enumerate(incl.table, start=1)}
        return MultiMap(h.sources, size, tuple(where[v] for v in h.table))

    def elements(self, x: int) -> list[MultiMap]:
        return [MultiMap((), x, (v,)) for v in range(1, x + 1)]

    def points(self, x: int) -> list[MultiMap]:
        return self.elements(x)


def element(x: int, v: int) -> MultiMap:
    """The nullary map picking ``v`` in ``{1..x}``."""
    return MultiMap((), x, (v,))


def value_of(point: MultiMap) -> int:
    return point.table[0]

"""Maps between finite ordinals ``n = {1 < ... < n}``.

All indexing in the package is 1-based.  Composition is written in
diagrammatic order: ``compose_map(f, g)`` first applies ``f`` then ``g``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, Sequence


def _fibers(values: tuple[int, ...], target_size: int) -> tuple[tuple[int, ...], ...]:
    out: list[list[int]] = [[] for _ in range(target_size)]
    for i, v in enumerate(values, start=1):
        out[v - 1].append(i)
    return tuple([tuple(f) for f in out])


@dataclass(frozen=True)
class OrdMap:
    """A map ``source_size -> target_size``; ``values[i-1]`` is the image of ``i``.

    ``fibers[j-1]`` lists the preimage of ``j`` in increasing order.
    """

    source_size: int
    target_size: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.source_size < 0 or self.target_size < 0:
            raise ValueError("ordinal sizes must be non-negative")
        if len(self.values) != self.source_size:
            raise ValueError(
                f"expected {self.source_size} values, got {len(self.values)}"
            )
        for v in self.values:
            if not 1 <= v <= self.target_size:
                raise ValueError(f"value {v} outside 1..{self.target_size}")

    @classmethod
    def trusted(cls, source_size: int, target_size: int, values: tuple[int, ...]) -> "OrdMap":
        """Construct without validation; for internally computed values."""
        m = object.__new__(cls)
        object.__setattr__(m, "source_size", source_size)
        object.__setattr__(m, "target_size", target_size)
        object.__setattr__(m, "values", values)
        return m

    @property
    def fibers(self) -> tuple[tuple[int, ...], ...]:
        # memoized by hand: functools.cached_property locks on every access
        try:
            return self.__dict__["_fibers"]
        except KeyError:
            fib = self.__dict__["_fibers"] = _fibers(self.values, self.target_size)
            return fib

    def __call__(self, i: int) -> int:
        return self.values[i - 1]

    def is_monotone(self) -> bool:
        return all(a <= b for a, b in zip(self.values, self.values[1:]))

    def is_bijection(self) -> bool:
        return (
            self.source_size == self.target_size
            and sorted(self.values) == list(range(1, self.target_size + 1))
        )

    def inverse(self) -> "OrdMap":
        try:
            return self.__dict__["_inverse"]
        except KeyError:
            pass
        if not self.is_bijection():
            raise ValueError("only bijections are invertible")
        inv = [0] * self.source_size
        for i, v in enumerate(self.values, start=1):
            inv[v - 1] = i
        out = self.__dict__["_inverse"] = OrdMap.trusted(self.source_size, self.source_size, tuple(inv))
        return out

    def fiber(self, j: int) -> tuple[int, ...]:
        """Source indices sent to ``j``, in increasing order."""
        return self.fibers[j - 1]

    def to_json(self) -> dict:
        return {"source": self.source_size, "target": self.target_size, "values": list(self.values)}

    @classmethod
    def from_json(cls, data: dict) -> "OrdMap":
        return cls(int(data["source"]), int(data["target"]), tuple(data["values"]))

    def __repr__(self) -> str:
        return f"OrdMap({list(self.values)}:{self.source_size}->{self.target_size})"


def ordmap(values: Sequence[int], target: int | None = None) -> OrdMap:
    """Convenience constructor; the target defaults to ``max(values)``."""
    vals = tuple(values)
    if target is None:
        target = max(vals, default=0)
    return OrdMap(len(vals), target, vals)


def identity_map(n: int) -> OrdMap:
    return OrdMap.trusted(n, n, tuple(range(1, n + 1)))


def compose_map(f: OrdMap, g: OrdMap) -> OrdMap:
    """First ``f`` then ``g``."""
    if f.target_size != g.source_size:
        raise ValueError(
            f"cannot compose {f.source_size}->{f.target_size} with "
            f"{g.source_size}->{g.target_size}"
        )
    gv = g.values
    return OrdMap.trusted(f.source_size, g.target_size, tuple([gv[v - 1] for v in f.values]))


def preimage(f: OrdMap, j: int) -> OrdMap:
    """The monotone injection onto the fiber of ``j``."""
    if not 1 <= j <= f.target_size:
        raise ValueError(f"{j} is not in 1..{f.target_size}")
    fib = f.fiber(j)
    return OrdMap(len(fib), f.source_size, fib)


def restrict(f: OrdMap, domain: Sequence[int], codomain: Sequence[int]) -> OrdMap:
    """Restriction of ``f`` to ``domain -> codomain``, both reindexed monotonically.

    Every element of ``domain`` must land in ``codomain``.
    """
    pos = {c: k for k, c in enumerate(codomain, start=1)}
    fv = f.values
    try:
        vals = tuple([pos[fv[i - 1]] for i in domain])
    except KeyError as exc:
        raise ValueError("restriction does not land in the given codomain") from exc
    return OrdMap.trusted(len(domain), len(codomain), vals)


def sigma_t(h: OrdMap) -> tuple[OrdMap, OrdMap]:
    """Factor ``h`` as a bijection followed by a monotone map.

    Source elements are sorted by ``(h(k), k)``; ``sigma`` sends ``k`` to its
    rank and ``t`` lists the sorted images.
    """
    order = sorted(range(1, h.source_size + 1), key=lambda k: (h(k), k))
    sigma = [0] * h.source_size
    for rank, k in enumerate(order, start=1):
        sigma[k - 1] = rank
    t = tuple(h(k) for k in order)
    return (
        OrdMap.trusted(h.source_size, h.source_size, tuple(sigma)),
        OrdMap.trusted(h.source_size, h.target_size, t),
    )


def disjoint_union(f: OrdMap, g: OrdMap) -> OrdMap:
    vals = f.values + tuple([v + f.target_size for v in g.values])
    return OrdMap.trusted(f.source_size + g.source_size, f.target_size + g.target_size, vals)


def disjoint_union_all(maps: Sequence[OrdMap]) -> OrdMap:
    vals: list[int] = []
    size = target = 0
    for m in maps:
        vals.extend([v + target for v in m.values])
        size += m.source_size
        target += m.target_size
    return OrdMap.trusted(size, target, tuple(vals))


def nabla(n: int) -> OrdMap:
    if n < 0:
        raise ValueError("ordinal sizes must be non-negative")
    return OrdMap.trusted(n, 1, (1,) * n)


def inj1(n: int, m: int) -> OrdMap:
    """The first summand ``n -> n + m``."""
    return OrdMap(n, n + m, tuple(range(1, n + 1)))


def inj2(n: int, m: int) -> OrdMap:
    """The second summand ``m -> n + m``."""
    return OrdMap(m, n + m, tuple(range(n + 1, n + m + 1)))


def shuffle(n: int) -> OrdMap:
    """Interleaving ``2n -> 2n``: ``k -> 2k - 1`` on the first half, ``k -> 2(k - n)`` on the second."""
    vals = [2 * k - 1 for k in range(1, n + 1)] + [2 * k for k in range(1, n + 1)]
    return OrdMap(2 * n, 2 * n, tuple(vals))


def chi(n: int) -> OrdMap:
    """Folding ``2n -> n`` that identifies the two halves."""
    return OrdMap(2 * n, n, tuple(list(range(1, n + 1)) * 2))


def block_swap(n: int, m: int) -> OrdMap:
    """The permutation ``n + m -> m + n`` exchanging the two blocks."""
    vals = [m + k for k in range(1, n + 1)] + [k for k in range(1, m + 1)]
    return OrdMap(n + m, n + m, tuple(vals))


def constant(n: int, target: int, value: int) -> OrdMap:
    return OrdMap(n, target, (value,) * n)


_CANONICAL = {
    "nabla": nabla,
    "inj1": inj1,
    "inj2": inj2,
    "shuffle": shuffle,
    "chi": chi,
    "block_swap": block_swap,
}


def canonical(kind: str, *params: int) -> OrdMap:
    try:
        builder = _CANONICAL[kind]
    except KeyError:
        raise ValueError(f"unknown canonical map {kind!r}") from None
    return builder(*params)


def all_maps(n: int, m: int) -> Iterator[OrdMap]:
    for vals in product(range(1, m + 1), repeat=n):
        yield OrdMap(n, m, vals)


def all_bijections(n: int) -> Iterator[OrdMap]:
    for vals in permutations(range(1, n + 1)):
        yield OrdMap(n, n, vals)


def all_monotone_maps(n: int, m: int) -> Iterator[OrdMap]:
    for f in all_maps(n, m):
        if f.is_monotone():
            yield f

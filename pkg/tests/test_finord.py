from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from vcat.finord import (
    OrdMap,
    all_bijections,
    all_maps,
    all_monotone_maps,
    canonical,
    chi,
    compose_map,
    disjoint_union,
    identity_map,
    nabla,
    preimage,
    restrict,
    shuffle,
    sigma_t,
)


def maps(max_source=5, max_target=5):
    return st.integers(0, max_target).flatmap(
        lambda m: st.lists(st.integers(1, max(m, 1)), max_size=max_source if m else 0).map(
            lambda vs: OrdMap(len(vs), m, tuple(vs))))


def test_compose_with_identity():
    g = OrdMap(3, 2, (2, 1, 1))
    assert compose_map(identity_map(3), g) == g


def test_compose_involution():
    s = OrdMap(2, 2, (2, 1))
    assert compose_map(s, s) == identity_map(2)


def test_compose_pointwise():
    assert compose_map(OrdMap(2, 1, (1, 1)), OrdMap(1, 3, (3,))) == OrdMap(2, 3, (3, 3))


def test_preimage_examples():
    assert preimage(OrdMap(3, 2, (1, 1, 2)), 1) == OrdMap(2, 3, (1, 2))
    assert preimage(identity_map(4), 3) == OrdMap(1, 4, (3,))
    assert preimage(OrdMap(2, 2, (2, 2)), 1) == OrdMap(0, 2, ())


def test_sigma_t_examples():
    s, t = sigma_t(OrdMap(3, 2, (2, 1, 1)))
    assert s.values == (3, 1, 2) and t.values == (1, 1, 2)
    s, t = sigma_t(identity_map(4))
    assert s == identity_map(4) and t == identity_map(4)
    h = OrdMap(3, 2, (1, 1, 2))
    assert sigma_t(h) == (identity_map(3), h)


def test_canonical_maps():
    assert nabla(3) == OrdMap(3, 1, (1, 1, 1))
    assert shuffle(2).values == (1, 3, 2, 4)
    assert chi(2) == OrdMap(4, 2, (1, 2, 1, 2))
    assert canonical("nabla", 2) == nabla(2)


def test_disjoint_union_examples():
    assert disjoint_union(identity_map(1), identity_map(1)) == identity_map(2)
    assert disjoint_union(nabla(2), identity_map(1)) == OrdMap(3, 2, (1, 1, 2))
    f = OrdMap(2, 3, (3, 1))
    assert disjoint_union(OrdMap(0, 0, ()), f) == f


def test_rejects_out_of_range_values():
    with pytest.raises(ValueError):
        OrdMap(2, 2, (1, 3))
    with pytest.raises(ValueError):
        OrdMap(2, 2, (1,))


def test_enumeration_counts():
    assert sum(1 for _ in all_maps(3, 2)) == 8
    assert sum(1 for _ in all_bijections(4)) == 24
    assert sum(1 for _ in all_monotone_maps(3, 2)) == 4


@given(maps())
def test_sigma_t_factorization(h):
    s, t = sigma_t(h)
    assert s.is_bijection() and t.is_monotone()
    assert compose_map(s, t) == h
    for fiber in h.fibers:
        assert [s(i) for i in fiber] == sorted(s(i) for i in fiber)


@given(maps(4, 4))
def test_sigma_t_unique_among_bijections(h):
    s, _ = sigma_t(h)
    n = h.source_size
    found = []
    for p in permutations(range(1, n + 1)):
        t = [0] * n
        for k in range(n):
            t[p[k] - 1] = h.values[k]
        monotone = all(t[r] <= t[r + 1] for r in range(n - 1))
        keeps_order = all(p[a] < p[b] for a in range(n) for b in range(a + 1, n) if h.values[a] == h.values[b])
        if monotone and keeps_order:
            found.append(p)
    assert found == [s.values]


@given(maps(4, 3), st.data())
def test_compose_associative(f, data):
    g = OrdMap(f.target_size, 3, tuple(data.draw(st.integers(1, 3)) for _ in range(f.target_size)))
    h = OrdMap(3, 2, tuple(data.draw(st.integers(1, 2)) for _ in range(3)))
    assert compose_map(compose_map(f, g), h) == compose_map(f, compose_map(g, h))


@given(maps(5, 4))
def test_restrict_to_fibers(f):
    if f.target_size == 0:
        return
    dom = tuple(range(1, f.source_size + 1))
    cod = tuple(range(1, f.target_size + 1))
    assert restrict(f, dom, cod) == f


def test_json_round_trip():
    f = OrdMap(3, 2, (2, 1, 1))
    assert OrdMap.from_json(f.to_json()) == f

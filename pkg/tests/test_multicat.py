import random

import pytest

from vcat.finord import OrdMap, compose_map, identity_map, nabla
from vcat.multicat import (
    AxiomBounds,
    Fragment,
    NotClosed,
    Report,
    SignatureError,
    check_associativity,
    check_axioms,
    check_group_action,
    compose,
    exhaustive_unique_factor,
    limit,
    r_sigma,
    then,
)
from vcat.vfinset import FinSet, MultiMap

SMALL = AxiomBounds(max_index=2, object_pool=(1, 2), max_perm=3)


class CorruptedFinSet(FinSet):
    """Composition that breaks as soon as an inner map is nullary."""

    def raw_compose(self, phi, gs, f):
        out = super().raw_compose(phi, gs, f)
        if any(not g.sources for g in gs) and out.target > 1 and out.table:
            table = (out.table[0] % out.target + 1,) + out.table[1:]
            return MultiMap.trusted(out.sources, out.target, table)
        return out


def test_finset_axioms_pass_at_small_bounds():
    rep = check_axioms(FinSet(), SMALL, laws=["associativity", "units", "group_action", "closedness"])
    assert rep.ok
    assert set(rep.checked) >= {"associativity", "unit_outer", "unit_inner", "r_identity", "r_composite"}


def test_group_action_over_all_bijections_of_four():
    rep = check_group_action(FinSet(), AxiomBounds(max_perm=4, object_pool=(1, 2)))
    assert rep.ok and rep.checked["r_composite"] > 24 * 24 // 2


def test_corrupted_composition_is_reported():
    rep = check_associativity(CorruptedFinSet(), SMALL)
    assert not rep.ok
    witness = rep.failures[0]
    assert witness.law == "associativity"
    assert "phi" in witness.detail


def test_compose_validates_signatures():
    V = FinSet()
    with pytest.raises(SignatureError):
        compose(V, nabla(2), [V.identity(2), V.identity(2)], V.identity(2))
    with pytest.raises(SignatureError):
        compose(V, identity_map(1), [V.identity(3)], V.identity(2))


def test_r_sigma_composite_rule():
    V = FinSet()
    f = MultiMap((1, 2, 3), 3, tuple(range(1, 4)) * 2)
    s, t = OrdMap(3, 3, (2, 3, 1)), OrdMap(3, 3, (2, 1, 3))
    assert r_sigma(V, compose_map(s, t), f) == r_sigma(V, s, r_sigma(V, t, f))


def test_limit_of_single_object_and_parallel_pair():
    V = FinSet()
    lim, incl, cone = limit(V, [3], [])
    assert lim == 3 and incl == V.identity(3)
    f, g = MultiMap((3,), 2, (1, 1, 2)), MultiMap((3,), 2, (1, 2, 2))
    lim, incl, cone = limit(V, [3, 2], [(0, 1, f), (0, 1, g)])
    size, eq = V.equalizer(f, g)
    assert lim == size
    assert [then(V, incl, p).table for p in V.product((3, 2))[1]][0] == eq.table


def test_exhaustive_unique_factor_finds_the_factor():
    V = FinSet()
    f, g = MultiMap((3,), 2, (1, 1, 2)), MultiMap((3,), 2, (1, 2, 2))
    size, eq = V.equalizer(f, g)
    h = MultiMap((2,), 3, (3, 1))
    found = exhaustive_unique_factor(V, V.homs((2,), size), lambda q: then(V, q, eq) == h)
    assert found == [V.factor_through_equalizer(h, f, g)]


def test_fragment_bounds_arity():
    frag = Fragment(FinSet(), (1, 2), 1)
    assert list(frag.homs((1, 1), 2)) == []
    assert len(frag.signatures()) == 2 + 4
    with pytest.raises(SignatureError):
        frag.raw_compose(nabla(2), [frag.base.identity(1), frag.base.identity(1)], frag.base.identity(1))


def test_fragment_is_not_closed():
    with pytest.raises(NotClosed):
        Fragment(FinSet(), (1,), 1).underhom((1,), 1)


def test_report_merge_and_json():
    a, b = Report("a"), Report("b")
    a.record("x", True)
    b.record("x", False, where=1)
    a.merge(b)
    assert a.total() == 2 and not a.ok
    js = a.to_json()
    assert js["n_failures"] == 1 and js["failures"][0]["where"] == 1


def test_random_morphisms_are_reproducible():
    V = FinSet()
    assert V.random_morphism((2, 2), 3, random.Random(5)) == V.random_morphism((2, 2), 3, random.Random(5))

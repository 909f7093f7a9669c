import random
from itertools import product as cartesian

import pytest
from hypothesis import given, settings, strategies as st

from vcat import _kernel_py
from vcat.finord import OrdMap, all_maps, identity_map, inj1, nabla
from vcat.multicat import AxiomBounds, NotAFork, compose, r_sigma, uncurry
from vcat.vfinset import FinSet, MultiMap, decode_table, fs_apply, from_function

AND = MultiMap((2, 2), 2, (1, 1, 1, 2))
NOT = MultiMap((2,), 2, (2, 1))
V = FinSet()


def tables(max_args=3, max_size=2, max_target=3):
    sizes = st.lists(st.integers(0, max_size), max_size=max_args)
    return st.tuples(sizes, st.integers(1, max_target)).flatmap(
        lambda st_: st.lists(st.integers(1, st_[1]), min_size=_prod(st_[0]), max_size=_prod(st_[0])).map(
            lambda tab: MultiMap(tuple(st_[0]), st_[1], tuple(tab))))


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def test_apply_examples():
    assert fs_apply(MultiMap((), 3, (2,)), ()) == 2
    assert fs_apply(AND, (2, 2)) == 2
    assert fs_apply(V.identity(3), (2,)) == 2


def test_nand_by_composition():
    nand = compose(V, nabla(2), [AND], NOT)
    assert nand == MultiMap((2, 2), 2, (2, 2, 2, 1))


def test_unit_laws_on_examples():
    g = from_function((2, 3), 3, lambda a, b: (a * b) % 3 + 1)
    assert compose(V, nabla(2), [g], V.identity(3)) == g
    assert compose(V, identity_map(2), [V.identity(2), V.identity(3)], g) == g


def test_symmetric_action_swaps_arguments():
    f = from_function((2, 3), 3, lambda a, b: (a + 2 * b) % 3 + 1)
    swapped = r_sigma(V, OrdMap(2, 2, (2, 1)), f)
    assert swapped == from_function((3, 2), 3, lambda b, a: (a + 2 * b) % 3 + 1)
    assert r_sigma(V, identity_map(2), f) == f


def test_underhom_sizes():
    assert V.underhom((), 3) == 3
    assert V.underhom((2,), 2) == 4


def test_ev_decodes_exhaustively():
    for x, z in cartesian(range(1, 4), repeat=2):
        ev = V.ev((x,), z)
        for code in range(1, V.underhom((x,), z) + 1):
            table = decode_table(code, x, z)
            for a in range(1, x + 1):
                assert fs_apply(ev, (a, code)) == table[a - 1]


def test_curry_builds_table_of_tables():
    f = from_function((2, 3), 4, lambda a, b: (a + b) % 4 + 1)
    c = V.curry(f, 1)
    for b in range(1, 4):
        assert decode_table(fs_apply(c, (b,)), 2, 4) == tuple(fs_apply(f, (a, b)) for a in range(1, 3))


def test_nullary_curry_names_the_map():
    g = from_function((2,), 3, lambda a: 3 - a)
    name = V.curry(g, 1)
    assert name.sources == ()
    assert compose(V, inj1(1, 1), [V.identity(2), name], V.ev((2,), 3)) == g
    assert uncurry(V, name, (2,), 3) == g


def test_uncurry_of_identity_name_is_ev():
    u = V.underhom((2,), 3)
    assert uncurry(V, V.identity(u), (2,), 3) == V.ev((2,), 3)


def test_product_and_equalizer_examples():
    size, projs = V.product((2, 3))
    assert size == 6 and len(projs) == 2
    size, projs = V.product((4,))
    assert size == 4 and projs[0] == V.identity(4)
    f, g = MultiMap((3,), 2, (1, 1, 2)), MultiMap((3,), 2, (1, 2, 2))
    k, incl = V.equalizer(f, g)
    assert k == 2 and incl.table == (1, 3)
    k, incl = V.equalizer(f, f)
    assert k == 3 and incl == V.identity(3)


def test_factor_through_equalizer_rejects_non_forks():
    f, g = MultiMap((3,), 2, (1, 1, 2)), MultiMap((3,), 2, (1, 2, 2))
    with pytest.raises(NotAFork):
        V.factor_through_equalizer(V.identity(3), f, g)
    h = MultiMap((2,), 3, (3, 1))
    q = V.factor_through_equalizer(h, f, g)
    assert compose(V, nabla(1), [q], V.equalizer(f, g)[1]) == h


@given(tables())
def test_curry_uncurry_inverse(f):
    for n in range(len(f.sources) + 1):
        xs = f.sources[:n]
        c = V.curry(f, n)
        assert uncurry(V, c, xs, f.target) == f


@settings(max_examples=60)
@given(st.integers(0, 3), st.integers(1, 3), st.integers(0, 2**16))
def test_compiled_and_python_kernels_agree(n_outer, m, seed):
    rng = random.Random(seed)
    compiled = FinSet()
    python = FinSet(kernel=_kernel_py.compose_tables)
    for phi in all_maps(rng.randint(0, 3), n_outer):
        gs = [python.random_morphism(tuple(rng.randint(1, 2) for _ in phi.fiber(j)), rng.randint(1, 3), rng)
              for j in range(1, n_outer + 1)]
        f = python.random_morphism(tuple(g.target for g in gs), m, rng)
        assert compiled.raw_compose(phi, gs, f) == python.raw_compose(phi, gs, f)


def test_fixed_associativity_bounds_pass():
    from vcat.multicat import check_associativity, check_units

    rep = check_associativity(V, AxiomBounds(max_index=2, object_pool=(1, 2)))
    check_units(V, AxiomBounds(max_index=2, object_pool=(1, 2)), rep)
    assert rep.ok and rep.total() > 0

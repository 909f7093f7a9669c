from itertools import product as cartesian

from hypothesis import assume, given, settings, strategies as st

from vcat.finord import OrdMap, all_maps, compose_map, identity_map, nabla, restrict
from vcat.multicat import AxiomBounds, Fragment, check_axioms, compose
from vcat.prop import FreeProp, Multifunctor, PropMorphism, UMorphism, theta, theta_inverse, u_functor
from vcat.vfinset import FinSet, MultiMap

V = FinSet()
P = FreeProp(V)
AND = MultiMap((2, 2), 2, (1, 1, 1, 2))
NOT = MultiMap((2,), 2, (2, 1))


def single(m):
    xs = tuple(V.sources(m))
    return PropMorphism(xs, (V.target(m),), nabla(len(xs)), (m,))


def identity_multifunctor():
    return Multifunctor(lambda x: x, single)


def test_identity_is_neutral():
    m = single(AND)
    assert P.equal(P.compose(P.identity((2, 2)), m), m)
    assert P.equal(P.compose(m, P.identity((2,))), m)


def test_symmetries_compose_to_the_composite_permutation():
    there = P.symmetry((1, 2), (3,))
    back = P.symmetry((3,), (1, 2))
    assert P.equal(P.compose(there, back), P.identity((1, 2, 3)))
    three = P.compose(P.symmetry((1,), (2, 3)), P.symmetry((2,), (3, 1)))
    assert three.index == compose_map(P.symmetry((1,), (2, 3)).index, P.symmetry((2,), (3, 1)).index)


def test_and_then_not_is_nand():
    out = P.compose(single(AND), single(NOT))
    assert out.index == nabla(2)
    assert out.components == (MultiMap((2, 2), 2, (2, 2, 2, 1)),)


def test_tensor_examples():
    assert P.equal(P.tensor([]), P.identity(()))
    assert P.equal(P.tensor([P.identity((1, 2)), P.identity((3,))]), P.identity((1, 2, 3)))
    t = P.tensor([single(AND), P.identity((2,))])
    assert t.index == OrdMap(3, 2, (1, 1, 2))


def test_regrouping_examples():
    ws = [(1, 2), (3,), ()]
    assert P.equal(P.lam(identity_map(3), ws), P.identity((1, 2, 3)))
    assert P.equal(P.lam(nabla(3), ws), P.identity((1, 2, 3)))
    assert P.equal(P.lam(OrdMap(2, 2, (2, 1)), [(1,), (2,)]), P.symmetry((1,), (2,)))


def test_underlying_multicategory_contains_ground_homs():
    U = u_functor(P)
    homs = list(U.homs((2,), 2))
    assert {m.arrow.components[0] for m in homs} == set(V.homs((2,), 2))


def test_identity_composition_is_tensor_then_compose():
    U = u_functor(P)
    g1, g2 = UMorphism(single(AND)), UMorphism(single(NOT))
    f = UMorphism(single(MultiMap((2, 2), 2, (1, 2, 2, 2))))
    via_mu = compose(U, OrdMap(3, 2, (1, 1, 2)), [g1, g2], f)
    direct = P.compose(P.tensor([g1.arrow, g2.arrow]), f.arrow)
    assert P.equal(via_mu.arrow, direct)


def test_underlying_multicategory_axioms():
    U = u_functor(FreeProp(Fragment(V, (1, 2), 2)))
    rep = check_axioms(U, AxiomBounds(max_index=2, object_pool=(1, 2), max_perm=3),
                       laws=["associativity", "units", "group_action"])
    assert rep.ok


def test_theta_of_identity_round_trips():
    F = identity_multifunctor()
    G = theta(F, P)
    back = theta_inverse(G, P)
    for m in (AND, NOT, V.identity(3), MultiMap((), 2, (1,))):
        assert P.equal(back.on_morphisms(m), F.on_morphisms(m))


def draw_map(data, n, m):
    assume(m > 0 or n == 0)
    return OrdMap(n, m, tuple(data.draw(st.integers(1, m)) for _ in range(n)))


def draw_words(data, n):
    return [tuple(data.draw(st.lists(st.integers(1, 2), max_size=2))) for _ in range(n)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_theta_sends_regroupings_to_regroupings(n, m, data):
    f = draw_map(data, n, m)
    words = draw_words(data, n)
    G = theta(identity_multifunctor(), P)
    assert P.equal(G.on_morphisms(P.lam(f, words)), P.lam(f, words))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.data())
def test_regrouping_coherence(ni, nj, nk, data):
    f, g = draw_map(data, ni, nj), draw_map(data, nj, nk)
    xs = draw_words(data, ni)
    ws = [tuple(x for i in f.fiber(j) for x in xs[i - 1]) for j in range(1, nj + 1)]
    fg = compose_map(f, g)
    top = P.compose(P.lam(f, xs), P.lam(g, ws))
    blocks = [P.lam(restrict(f, fg.fiber(k), g.fiber(k)), [xs[i - 1] for i in fg.fiber(k)])
              for k in range(1, nk + 1)]
    assert P.equal(top, P.compose(P.lam(fg, xs), P.tensor(blocks)))


def test_homs_enumerate_every_index_map():
    homs = list(P.homs((2, 1), (2,)))
    assert len(homs) == 4
    assert {m.index for m in homs} == set(all_maps(2, 1))
    assert all(len(m.components) == 1 for m in homs)


def test_monotone_regrouping_is_identity_exhaustively():
    from vcat.finord import all_monotone_maps

    words = [(), (1,), (1, 2)]
    for n, m in cartesian(range(4), repeat=2):
        for f in all_monotone_maps(n, m):
            for ws in cartesian(words, repeat=n):
                flat = tuple(x for w in ws for x in w)
                assert P.equal(P.lam(f, ws), P.identity(flat))

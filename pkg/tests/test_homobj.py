from itertools import product as cartesian

from vcat.enriched import (
    check_category,
    check_functor,
    check_naturality,
    identity_functor,
    identity_transformation,
    object_tuples,
)
from vcat.finord import OrdMap
from vcat.fixtures import arrow_category, cyclic_two, idempotent, parallel_pair, set_functor, terminal
from vcat.homobj import (
    end_hom,
    ev_functor,
    hom_category,
    left_whisker,
    mu_und,
    phi,
    point_from_transformation,
    psi,
    right_whisker,
    transformation_from_point,
)
from vcat.oracles import end_families, natural_families
from vcat.vfinset import FinSet, MultiMap

V = FinSet()
ONE = OrdMap(1, 1, (1,))


def constant(A, C, x):
    ident = C.labels[x, x][C.ident[x].table[0] - 1]
    return set_functor((A,), C, lambda a: x, lambda f: ident, name=f"const {x}")


def test_end_over_terminal_source_is_the_hom_set():
    C = parallel_pair()
    F, G = constant(terminal(), C, "0"), constant(terminal(), C, "1")
    e = end_hom(V, F, G)
    assert e.obj == C.hom["0", "1"] == 2
    assert sorted(end_families(e)) == sorted(natural_families(F, G))


def test_identity_end_of_the_arrow_category():
    F = identity_functor(V, arrow_category())
    assert end_hom(V, F, F).obj == 1


def test_constant_functors_have_one_transformation():
    A = arrow_category()
    F, G = constant(A, A, "0"), constant(A, A, "1")
    assert end_hom(V, F, G).obj == 1
    assert end_hom(V, G, F).obj == 0


def test_points_and_transformations_correspond():
    A, C = cyclic_two(), idempotent()
    for F, G in cartesian(hom_category(V, (A,), C).category.objects, repeat=2):
        e = end_hom(V, F, G)
        assert sorted(end_families(e)) == sorted(natural_families(F, G))
        for k in range(1, e.obj + 1):
            point = MultiMap((), e.obj, (k,))
            t = transformation_from_point(V, e, point)
            assert check_naturality(V, t).ok
            assert point_from_transformation(V, e, t) == point


def test_functor_category_is_lawful_and_contains_identities():
    A = arrow_category()
    hc = hom_category(V, (A,), A)
    assert check_category(V, hc.category).ok
    F = identity_functor(V, A)
    assert F in hc.category.objects
    assert hc.category.hom[F, F] >= 1
    t = transformation_from_point(V, hc.ends[F, F], hc.category.ident[F])
    assert t.components == identity_transformation(F).components


def test_evaluation_presentations_agree():
    hc = hom_category(V, (cyclic_two(),), idempotent())
    ev = ev_functor(V, hc)
    assert ev == ev_functor(V, hc, alternative=True)
    assert check_functor(V, ev).ok


def test_currying_round_trips():
    A, B, C = arrow_category(), cyclic_two(), idempotent()
    hc = hom_category(V, (A,), C)
    g = set_functor((A, B), C, lambda a, b: "*", lambda u, s: "p" if u == "u" else "1")
    assert check_functor(V, g).ok
    f = psi(V, g, 1, hc=hc)
    assert check_functor(V, f).ok
    assert phi(V, f, hc) == g
    for f in hom_category(V, (B,), hc.category).category.objects:
        assert psi(V, phi(V, f, hc), 1, hc=hc) == f


def test_composition_of_transformations_agrees_on_objects():
    A, B = arrow_category(), cyclic_two()
    AB, BB = hom_category(V, (A,), B), hom_category(V, (B,), B)
    mu = mu_und(V, ONE, [AB], BB)
    assert check_functor(V, mu).ok
    for F, G in cartesian(AB.category.objects, BB.category.objects):
        H = mu.obj_map[F, G]
        assert all(H.obj_map[a] == G.obj_map[(F.obj_map[a],)] for a in object_tuples((A,)))


def test_whiskering_by_identities_is_the_identity():
    A = cyclic_two()
    AA = hom_category(V, (A,), A)
    idA = identity_functor(V, A)
    lw = left_whisker(V, ONE, [idA], [AA], AA, AA)
    rw = right_whisker(V, ONE, idA, [AA], AA, AA)
    assert lw == identity_functor(V, AA.category)
    assert rw == identity_functor(V, AA.category)

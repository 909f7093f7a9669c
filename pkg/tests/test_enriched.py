import pytest

from vcat.acceptance import corrupted_category, non_natural_family
from vcat.enriched import (
    VCatMulticategory,
    check_category,
    check_functor,
    check_naturality,
    compose_functors,
    enumerate_functors,
    identity_functor,
    identity_transformation,
    nullary_functor,
    nullary_object,
    vcat_equalizer,
    vcat_factor,
    vcat_into_product,
    vcat_product,
)
from vcat.finord import identity_map, inj1, nabla
from vcat.fixtures import (
    arrow_category,
    cyclic_two,
    discrete,
    idempotent,
    parallel_pair,
    set_category,
    set_functor,
    small_categories,
    terminal,
)
from vcat.multicat import NotAFork, SignatureError
from vcat.vfinset import FinSet

V = FinSet()


def chain3():
    objs = ("0", "1", "2")
    arrows = {(a, b): (f"{a}{b}",) for a in objs for b in objs if a <= b}
    return set_category(objs, arrows, lambda f, g: f[0] + g[1], {o: o + o for o in objs}, name="3")


@pytest.mark.parametrize("C", small_categories() + [chain3()], ids=lambda c: c.name)
def test_catalogue_categories_are_lawful(C):
    assert check_category(V, C).ok


def test_corrupted_composition_breaks_a_unit_law():
    rep = check_category(V, corrupted_category())
    assert not rep.ok
    assert {f.law for f in rep.failures} & {"left unit", "right unit"}


def test_identity_functor_is_neutral():
    C = cyclic_two()
    F = set_functor((C,), idempotent(), lambda x: "*", lambda f: "1" if f == "e" else "1")
    idC, idD = identity_functor(V, C), identity_functor(V, F.target)
    assert check_functor(V, idC).ok
    assert compose_functors(V, nabla(1), [idC], F) == F
    assert compose_functors(V, nabla(1), [F], idD) == F


def test_functor_enumeration_counts_monoid_maps():
    # endomorphisms of Z/2 as a monoid: trivial and identity
    assert len(enumerate_functors(V, (cyclic_two(),), cyclic_two())) == 2
    # arrow category into the parallel pair: two constants plus a and b
    assert len(enumerate_functors(V, (arrow_category(),), parallel_pair())) == 4


def test_nullary_functor_round_trip_and_partial_application():
    B = arrow_category()
    p = nullary_functor(B, "1")
    assert nullary_object(p) == "1"
    assert check_functor(V, p).ok
    with pytest.raises(ValueError):
        nullary_functor(B, "missing")
    with pytest.raises(SignatureError):
        nullary_object(identity_functor(V, B))
    A = arrow_category("a", "b", "v")
    two_place = set_functor((A, B), B, lambda x, y: y, lambda f, g: g)
    fixed = compose_functors(V, inj1(1, 1), [identity_functor(V, A), p], two_place)
    assert fixed.sources == (A,)
    assert all(v == "1" for v in fixed.obj_map.values())


def test_identity_transformation_is_natural():
    F = identity_functor(V, parallel_pair())
    assert check_naturality(V, identity_transformation(F)).ok


def test_non_natural_family_is_rejected():
    *_, t = non_natural_family()
    rep = check_naturality(V, t)
    assert not rep.ok and rep.failures[0].law == "naturality"


def test_product_has_pairs_of_objects():
    A, B = arrow_category(), discrete(3)
    P, projs = vcat_product(V, [A, B])
    assert len(P.objects) == 6
    assert check_category(V, P).ok
    assert all(check_functor(V, p).ok for p in projs)
    back = vcat_into_product(V, projs, P, [A, B])
    assert back == identity_functor(V, P)


def test_equalizer_of_equal_functors_is_the_source():
    A = parallel_pair()
    F = identity_functor(V, A)
    K, e = vcat_equalizer(V, F, F)
    assert K.objects == A.objects
    assert all(K.hom[k] == A.hom[k] for k in A.hom)


def test_equalizer_factor_is_unique():
    A, C = arrow_category(), parallel_pair()
    F = set_functor((A,), C, lambda x: x, lambda f: {"id0": "id0", "id1": "id1", "u": "a"}[f])
    G = set_functor((A,), C, lambda x: x, lambda f: {"id0": "id0", "id1": "id1", "u": "b"}[f])
    K, e = vcat_equalizer(V, F, G)
    assert K.hom["0", "1"] == 0
    H = set_functor((terminal(),), A, lambda x: "0", lambda f: "id0")
    q = vcat_factor(V, H, F, G, K)
    assert compose_functors(V, nabla(1), [q], e) == H
    forks = [Q for Q in enumerate_functors(V, H.sources, K) if compose_functors(V, nabla(1), [Q], e) == H]
    assert forks == [q]
    with pytest.raises(NotAFork):
        vcat_factor(V, identity_functor(V, A), F, G, K)


def test_vcat_multicategory_identity_and_units():
    W = VCatMulticategory(V)
    C = cyclic_two()
    F = set_functor((C, C), C, lambda x, y: "*", lambda f, g: "e" if f == g else "s")
    assert check_functor(V, F).ok
    assert W.raw_compose(identity_map(2), [W.identity(C), W.identity(C)], F) == F

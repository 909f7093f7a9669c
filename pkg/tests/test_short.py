from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from vcat import short as sh
from vcat.finord import OrdMap, identity_map, nabla
from vcat.multicat import AxiomBounds, NotAFork, check_axioms, uncurry
from vcat.oracles import minkowski_by_bases, seminorm_value

R = sh.real_line()
X = sh.sup_space(2)
F = Fraction

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def vectors(d):
    return st.tuples(*[fractions] * d)


def test_sup_norm_example():
    assert X.value((3, -1)) == 3
    assert sh.seminorm_eval(X, (F(1, 2), F(-2, 3))) == F(2, 3)
    with pytest.raises(ValueError):
        sh.seminorm_eval(X, (1,))


def test_seminorm_off_its_subspace_is_infinite():
    s = sh.poly_seminorm(2, [(1, 0)], span=[(1, 0)])
    assert s.value((2, 0)) == 2
    assert s.value((0, 1)) == sh.INF


def test_minkowski_examples():
    assert sh.minkowski([(1, 0), (0, 1)], (1, 1)) == 2
    assert sh.minkowski([(1, 0)], (0, 1)) == sh.INF
    assert sh.minkowski([(1, 0)], (0, 0)) == 0
    assert sh.minkowski([(1, 1), (1, -1)], (2, 0)) == 2
    assert sh.minkowski([(1, 1), (1, -1)], (1, 0)) == 1


def test_short_checks_and_hom_seminorms():
    ident = sh.identity_short(R)
    double = ident.scaled(2)
    mul = sh.short_map((R, R), R, [1])
    assert sh.check_short(ident) == (True, None)
    assert sh.check_short(mul) == (True, None)
    ok, w = sh.check_short(double)
    assert not ok and w.value == 2 and abs(w.vertices[0][0]) == 1
    assert [sh.hom_seminorm(f) for f in (ident, double, mul)] == [1, 2, 1]
    assert sh.hom_seminorm(sh.short_map((R, R), R, [3])) == 3


def test_map_from_function_matches_the_tensor():
    f = sh.map_from_function((X, R), R, lambda x, y: (3 * x[0] * y[0] - x[1] * y[0],))
    assert f.coeffs == (3, -1)
    assert f((1, 1), (2,)) == (4,)
    assert sh.hom_seminorm(f) == 4


def test_product_norm_and_projections():
    P, projs = sh.short_product([R, R])
    assert P.value((1, -2)) == 2
    assert all(sh.hom_seminorm(p) <= 1 for p in projs)
    assert sh.short_product([R, X])[0].dim == 3


def test_kernel_examples():
    K, incl = sh.short_kernel(sh.linear_map(X, R, [[1, -1]]))
    assert K.dim == 1
    assert incl((1,)) == (1, 1)
    assert sh.hom_seminorm(incl) == 1
    whole, _ = sh.short_kernel(sh.linear_map(X, R, [[0, 0]]))
    assert whole.dim == 2
    zero, _ = sh.short_kernel(sh.identity_short(X))
    assert zero.dim == 0
    with pytest.raises(NotAFork):
        sh.factor_through_kernel(sh.identity_short(X), incl)


def test_pullback_of_scalings():
    ident = sh.identity_short(R)
    L, incl, cone = sh.short_limit([R, R, R], [(0, 2, ident), (1, 2, ident.scaled(2))])
    assert L.dim == 1
    (v,) = [incl((1,))]
    assert v[0] == v[2] and v[0] == 2 * v[1]


def test_projective_norm_examples():
    e1e2 = (0, 1, 0, 0)
    assert sh.projective_norm(e1e2, [X, X]) == 1
    assert sh.projective_norm(tuple(3 * x for x in e1e2), [X, X]) == 3
    # the sum of two elementary tensors with disjoint supports
    assert sh.projective_norm((1, 0, 0, 1), [X, X]) == 1
    assert sh.projective_norm((1, 1), [R, X]) == 1


def test_filtered_space_round_trip():
    filt = {0: [(1, 0), (0, 1)], 1: [(1, 0)], 2: []}
    S = sh.filtered_embed(2, filt)
    assert S.value((5, 0), 1) == 0
    assert S.value((0, 1), 1) == sh.INF
    assert S.value((0, 1), -3) == 0
    assert [len(v) for v in sh.filtration_of(S).values()] == [2, 1, 0]
    with pytest.raises(sh.NormBallUnbounded):
        sh.ball_vertices(S, 1)
    with pytest.raises(ValueError):
        sh.filtered_embed(2, {0: [(1, 0)]})
    with pytest.raises(ValueError):
        sh.filtered_embed(2, {0: [(1, 0), (0, 1)], 1: [(1, 0)], 2: [(0, 1)]})


def test_integer_levels():
    one = sh.poly_seminorm(1, [(1,)])
    two = sh.poly_seminorm(1, [(2,)])
    S = sh.short_space(1, {0: one, 1: two}, sh.INTEGERS)
    ident = sh.identity_short(S)
    assert sh.hom_seminorm(ident, 0) == 1
    assert sh.hom_seminorm(ident, 1) == 2
    assert sh.hom_seminorm(ident, -1) == 1
    with pytest.raises(ValueError):
        sh.short_space(1, {0: two, 1: one}, sh.INTEGERS)


def test_short_multicategory_axioms():
    V = sh.Short()
    bounds = AxiomBounds(max_index=2, object_pool=(R, X), max_perm=3)
    rep = check_axioms(V, bounds, laws=["associativity", "units", "group_action", "closedness"])
    assert rep.ok and rep.total() > 0


def test_ev_of_the_internal_hom():
    V = sh.Short()
    mul = sh.short_map((R, R), R, [1])
    c = V.curry(mul, 1)
    assert uncurry(V, c, (R,), R) == mul
    assert sh.hom_seminorm(c) <= 1


def test_json_round_trip():
    f = sh.short_map((X, R), R, [F(1, 2), -3])
    assert sh.map_from_json(sh.map_to_json(f)) == f
    assert sh.extended_to_json(sh.INF) == "inf"


@settings(max_examples=50, deadline=None)
@given(vectors(2), vectors(2), fractions)
def test_seminorm_is_homogeneous_and_subadditive(x, y, c):
    s = sh.poly_seminorm(2, [(1, 2), (3, -1), (1, 1)])
    assert s.value(tuple(c * v for v in x)) == abs(c) * s.value(x)
    assert s.value(tuple(a + b for a, b in zip(x, y))) <= s.value(x) + s.value(y)
    assert s.value(x) == seminorm_value(s.functionals, s.basis, x)


@settings(max_examples=30, deadline=None)
@given(st.lists(fractions, min_size=4, max_size=4), vectors(2), vectors(2))
def test_hom_seminorm_bounds_every_value(coeffs, x, y):
    f = sh.short_map((X, X), R, coeffs)
    c = sh.hom_seminorm(f)
    assert abs(f(x, y)[0]) <= c * X.value(x) * X.value(y)


@settings(max_examples=30, deadline=None)
@given(st.lists(fractions, min_size=2, max_size=2))
def test_curry_of_a_short_map_is_short(coeffs):
    V = sh.Short()
    f = sh.short_map((X, R), R, coeffs)
    c = sh.hom_seminorm(f)
    if c > 1:
        f = f.scaled(1 / c)
    assert sh.check_short(V.curry(f, 1))[0]


@settings(max_examples=30, deadline=None)
@given(vectors(2), st.integers(-2, 3))
def test_values_grow_with_the_level(x, level):
    S = sh.short_space(2, {0: sh.poly_seminorm(2, [(1, 0), (0, 1)]),
                           1: sh.poly_seminorm(2, [(2, 0), (0, 1)], span=[(1, 0), (0, 1)]),
                           2: sh.poly_seminorm(2, [(2, 0)], span=[(1, 0)])}, sh.INTEGERS)
    assert S.value(x, level) <= S.value(x, level + 1)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2), vectors(2))
def test_kernel_membership(row, x):
    K, incl = sh.short_kernel(sh.linear_map(X, R, [row]))
    in_kernel = row[0] * x[0] + row[1] * x[1] == 0
    if in_kernel and any(x):
        j = sh.linear_map(R, X, [[x[0]], [x[1]]])
        n = sh.factor_through_kernel(j, incl)
        assert sh.short_compose(nabla(1), [n], incl).coeffs == j.coeffs
    assert K.dim == 2 - (1 if any(row) else 0)


@settings(max_examples=20, deadline=None)
@given(vectors(2))
def test_minkowski_agrees_with_basis_search(x):
    verts = sh.poly_seminorm(2, [(1, 0), (0, 1), (1, 1)]).vertices()
    assert sh.minkowski(verts, x) == minkowski_by_bases(verts, x)


def test_composition_uses_the_index_map():
    mul = sh.short_map((R, R), R, [1])
    swapped = sh.short_compose(identity_map(2), [sh.identity_short(R), sh.identity_short(R)], mul)
    assert swapped == mul
    square = sh.short_compose(OrdMap(2, 1, (1, 1)), [mul], sh.identity_short(R))
    assert square == mul


def test_composite_with_scaling_has_seminorm_three():
    mul = sh.short_map((R, R), R, [1])
    triple = sh.identity_short(R).scaled(3)
    f = sh.short_compose(nabla(2), [mul], triple)
    assert f.coeffs == (3,)
    assert sh.hom_seminorm(f) == 3
    assert sh.check_short(sh.short_compose(nabla(2), [mul], sh.identity_short(R)))[0]


def test_zero_vectors_and_trivial_filtration():
    assert sh.projective_norm((0, 0, 0, 0), [X, X]) == 0
    S = sh.filtered_embed(2, {0: [(1, 0), (0, 1)], 1: [(1, 0), (0, 1)]})
    assert all(S.value(x, lvl) == 0 for x in [(1, 0), (3, -2)] for lvl in (-1, 0, 1, 2))
    assert X.value((0, 0)) == 0


def test_discrete_limit_is_the_product():
    L, incl, cone = sh.short_limit([R, X], [])
    P, _ = sh.short_product([R, X])
    assert L.dim == P.dim == 3
    assert all(L.value(x) == P.value(x) for x in [(1, 2, -3), (F(1, 2), 0, 0)])


def test_tupling_short_bilinear_maps_is_short():
    mul = sh.short_map((R, R), R, [1])
    half = mul.scaled(F(1, 2))
    assert sh.check_short(sh.into_product([mul, half]))[0]


def test_hom_seminorm_is_nondecreasing_in_the_level():
    one = sh.poly_seminorm(1, [(1,)])
    S = sh.short_space(1, {0: one, 1: sh.poly_seminorm(1, [(2,)]), 2: sh.poly_seminorm(1, [(5,)])}, sh.INTEGERS)
    f = sh.short_map((S, S), S, [1])
    values = [sh.hom_seminorm(f, lvl) for lvl in range(-3, 4)]
    assert values == sorted(values)


def test_short_equivariance_on_small_squares():
    from vcat.multicat import check_equivariance

    rep = check_equivariance(sh.Short(), AxiomBounds(object_pool=(R, X)), max_source=3, max_target=3)
    assert rep.ok and rep.total() > 0


def test_categories_enriched_in_short_spaces():
    from vcat.enriched import VCategory, check_category

    def one_object(scale):
        return VCategory(("*",), {("*", "*"): R}, {("*", "*", "*"): sh.short_map((R, R), R, [scale])},
                         {"*": sh.short_map((), R, [1])})

    assert check_category(sh.Short(), one_object(1)).ok
    assert not check_category(sh.Short(), one_object(2)).ok

"""Internal homs of the multicategory of ``V``-categories: ends of hom
objects, functor categories, evaluation, the currying bijection, enriched
composition of transformations, and whiskering."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Any, Sequence

from .enriched import (
    DEFAULT_FUNCTOR_BUDGET,
    MultiEntryFunctor,
    VCategory,
    VNatTransformation,
    compose_functors,
    enumerate_functors,
    identity_functor,
    nullary_functor,
    object_tuples,
)
from .finord import OrdMap, disjoint_union, identity_map, inj1, inj2, nabla
from .multicat import Multicategory, SignatureError, compose, then


@dataclass(eq=False)
class EndHom:
    """The object of transformations ``F => G`` as an equalizer.

    ``product`` is the ground product of ``C(F(A), G(A))`` over object tuples
    ``A`` (in ``tuples`` order), ``inclusion`` the equalizer map into it and
    ``p[A]`` the composite of the inclusion with the projection.
    """

    source: MultiEntryFunctor
    target: MultiEntryFunctor
    obj: Any
    inclusion: Any
    product: Any
    projections: list
    tuples: list
    p: dict
    beta: Any
    gamma: Any


def _arity(F: MultiEntryFunctor) -> int:
    return len(F.sources)


def beta_dagger(V: Multicategory, F: MultiEntryFunctor, G: MultiEntryFunctor, pD: Any, a: tuple, d: tuple) -> Any:
    """``(A_i(a_i, d_i))_i, P -> C(F a, G d)``: apply ``F`` then the ``d`` component."""
    n = _arity(F)
    C = F.target
    phi = OrdMap(n + 1, 2, (1,) * n + (2,))
    return compose(V, phi, [F.components[a, d], pD], C.kappa[F.obj_map[a], F.obj_map[d], G.obj_map[d]])


def gamma_dagger(V: Multicategory, F: MultiEntryFunctor, G: MultiEntryFunctor, pA: Any, a: tuple, d: tuple) -> Any:
    """``(A_i(a_i, d_i))_i, P -> C(F a, G d)``: the ``a`` component then ``G``."""
    n = _arity(F)
    C = F.target
    phi = OrdMap(n + 1, 2, (2,) * n + (1,))
    return compose(V, phi, [pA, G.components[a, d]], C.kappa[F.obj_map[a], G.obj_map[a], G.obj_map[d]])


def build_beta_gamma(V: Multicategory, F: MultiEntryFunctor, G: MultiEntryFunctor,
                     projections: dict, a: tuple, d: tuple) -> tuple[Any, Any]:
    """Curried forms ``P -> underhom((A_i(a_i, d_i))_i; C(F a, G d))`` of both paths."""
    n = _arity(F)
    bd = beta_dagger(V, F, G, projections[d], a, d)
    gd = gamma_dagger(V, F, G, projections[a], a, d)
    return V.curry(bd, n), V.curry(gd, n)


def end_hom(V: Multicategory, F: MultiEntryFunctor, G: MultiEntryFunctor) -> EndHom:
    """Equalizer of the two canonical maps out of the product of component objects."""
    if F.sources != G.sources or F.target != G.target:
        raise SignatureError("functors are not parallel")
    C = F.target
    tuples = object_tuples(F.sources)
    factors = [C.hom[F.obj_map[a], G.obj_map[a]] for a in tuples]
    P, projs = V.product(factors)
    proj_of = dict(zip(tuples, projs))
    pairs = list(cartesian(tuples, repeat=2))
    betas, gammas, targets = [], [], []
    for a, d in pairs:
        b, g = build_beta_gamma(V, F, G, proj_of, a, d)
        betas.append(b)
        gammas.append(g)
        targets.append(V.target(b))
    beta = V.into_product(betas, targets, (P,))
    gamma = V.into_product(gammas, targets, (P,))
    E, incl = V.equalizer(beta, gamma)
    p = {a: then(V, incl, proj_of[a]) for a in tuples}
    return EndHom(F, G, E, incl, P, projs, tuples, p, beta, gamma)


def transformation_from_point(V: Multicategory, end: EndHom, point: Any) -> VNatTransformation:
    """The family of components named by a nullary morphism into the end."""
    return VNatTransformation(end.source, end.target, {a: then(V, point, end.p[a]) for a in end.tuples})


def point_from_transformation(V: Multicategory, end: EndHom, t: VNatTransformation) -> Any:
    """Inverse of :func:`transformation_from_point` for natural families."""
    C = end.source.target
    factors = [C.hom[end.source.obj_map[a], end.target.obj_map[a]] for a in end.tuples]
    into = V.into_product([t.components[a] for a in end.tuples], factors, ())
    return V.factor_through_equalizer(into, end.beta, end.gamma)


@dataclass(eq=False)
class HomCategory:
    """Functor category: objects are functors, hom objects are ends."""

    sources: tuple
    target: VCategory
    category: VCategory
    ends: dict


def _end_composite(V: Multicategory, e_fg: EndHom, e_gh: EndHom, e_fh: EndHom) -> Any:
    """The composition ``E(F,G), E(G,H) -> E(F,H)`` as a factor through the end."""
    C = e_fg.source.target
    F, G, H = e_fg.source, e_fg.target, e_gh.target
    parts, factors = [], []
    for a in e_fh.tuples:
        kappa = C.kappa[F.obj_map[a], G.obj_map[a], H.obj_map[a]]
        parts.append(compose(V, identity_map(2), [e_fg.p[a], e_gh.p[a]], kappa))
        factors.append(C.hom[F.obj_map[a], H.obj_map[a]])
    h = V.into_product(parts, factors, (e_fg.obj, e_gh.obj))
    return V.factor_through_equalizer(h, e_fh.beta, e_fh.gamma)


def _end_identity(V: Multicategory, e_ff: EndHom) -> Any:
    C = e_ff.source.target
    F = e_ff.source
    factors = [C.hom[F.obj_map[a], F.obj_map[a]] for a in e_ff.tuples]
    into = V.into_product([C.ident[F.obj_map[a]] for a in e_ff.tuples], factors, ())
    return V.factor_through_equalizer(into, e_ff.beta, e_ff.gamma)


_HOM_CACHE: dict = {}


def hom_category(V: Multicategory, sources: Sequence[VCategory], C: VCategory,
                 budget: int = DEFAULT_FUNCTOR_BUDGET, functors: Sequence[MultiEntryFunctor] | None = None) -> HomCategory:
    """The ``V``-category of functors ``sources -> C`` and transformations.

    Objects are all functors found by :func:`enumerate_functors` unless
    ``functors`` is given.  Results are memoized per ground instance and input.
    """
    sources = tuple(sources)
    key = (id(V), sources, C, None if functors is None else tuple(functors))
    hit = _HOM_CACHE.get(key)
    if hit is not None and hit[0] is V:
        return hit[1]
    objs = tuple(enumerate_functors(V, sources, C, budget) if functors is None else functors)
    ends = {(f, g): end_hom(V, f, g) for f, g in cartesian(objs, repeat=2)}
    hom = {k: e.obj for k, e in ends.items()}
    kappa = {(f, g, h): _end_composite(V, ends[f, g], ends[g, h], ends[f, h])
             for f, g, h in cartesian(objs, repeat=3)}
    ident = {f: _end_identity(V, ends[f, f]) for f in objs}
    cat = VCategory(objs, hom, kappa, ident, name=f"[{', '.join(s.name or '?' for s in sources)}; {C.name or '?'}]")
    out = HomCategory(sources, C, cat, ends)
    _HOM_CACHE[key] = (V, out)
    return out


def clear_cache() -> None:
    _HOM_CACHE.clear()


def ev_functor(V: Multicategory, hc: HomCategory, alternative: bool = False) -> MultiEntryFunctor:
    """Evaluation ``(A_i)_i, [(A_i); C] -> C``.

    The default components apply the functor then the transformation; with
    ``alternative`` they apply the transformation then the second functor.
    The two presentations agree.
    """
    sources = hc.sources + (hc.category,)
    n = len(hc.sources)
    C = hc.target
    obj_map = {}
    tuples = object_tuples(hc.sources)
    for a in tuples:
        for f in hc.category.objects:
            obj_map[a + (f,)] = f.obj_map[a]
    comps = {}
    for a, d in cartesian(tuples, repeat=2):
        for f, g in cartesian(hc.category.objects, repeat=2):
            e = hc.ends[f, g]
            if alternative:
                phi = OrdMap(n + 1, 2, (2,) * n + (1,))
                m = compose(V, phi, [e.p[a], g.components[a, d]], C.kappa[f.obj_map[a], g.obj_map[a], g.obj_map[d]])
            else:
                phi = OrdMap(n + 1, 2, (1,) * n + (2,))
                m = compose(V, phi, [f.components[a, d], e.p[d]], C.kappa[f.obj_map[a], f.obj_map[d], g.obj_map[d]])
            comps[a + (f,), d + (g,)] = m
    return MultiEntryFunctor(sources, C, obj_map, comps, name="ev")


def phi(V: Multicategory, f: MultiEntryFunctor, hc: HomCategory) -> MultiEntryFunctor:
    """Uncurry ``f: (B_j) -> [(A_i); C]`` to ``(A_i), (B_j) -> C``."""
    if f.target != hc.category:
        raise SignatureError("functor does not land in the given functor category")
    n, m = len(hc.sources), len(f.sources)
    idx = disjoint_union(identity_map(n), nabla(m))
    inner = [identity_functor(V, A) for A in hc.sources] + [f]
    return compose_functors(V, idx, inner, ev_functor(V, hc))


def partial_functor(V: Multicategory, g: MultiEntryFunctor, n: int, b: tuple) -> MultiEntryFunctor:
    """Fix the last entries of ``g`` at the objects ``b``."""
    a_cats, b_cats = g.sources[:n], g.sources[n:]
    tuples = object_tuples(a_cats)
    idx = inj1(n, len(b_cats))
    obj_map = {a: g.obj_map[a + b] for a in tuples}
    comps = {}
    for a, e in cartesian(tuples, repeat=2):
        inner = [V.identity(A.hom[a[i], e[i]]) for i, A in enumerate(a_cats)]
        inner += [B.ident[b[j]] for j, B in enumerate(b_cats)]
        comps[a, e] = compose(V, idx, inner, g.components[a + b, e + b])
    return MultiEntryFunctor(tuple(a_cats), g.target, obj_map, comps)


def psi(V: Multicategory, g: MultiEntryFunctor, n: int,
        budget: int = DEFAULT_FUNCTOR_BUDGET, hc: HomCategory | None = None) -> MultiEntryFunctor:
    """Curry ``g: (A_i)_{i<=n}, (B_j) -> C`` to ``(B_j) -> [(A_i); C]``."""
    a_cats, b_cats = g.sources[:n], g.sources[n:]
    hc = hc or hom_category(V, a_cats, g.target, budget)
    objects = {f: f for f in hc.category.objects}
    b_tuples = object_tuples(b_cats)
    a_tuples = object_tuples(a_cats)
    obj_map = {}
    for b in b_tuples:
        fb = partial_functor(V, g, n, b)
        if fb not in objects:
            raise SignatureError("partial functor missing from the functor category")
        obj_map[b] = objects[fb]
    idx = inj2(n, len(b_cats))
    comps = {}
    for b, d in cartesian(b_tuples, repeat=2):
        fb, fd = obj_map[b], obj_map[d]
        e = hc.ends[fb, fd]
        xs = tuple(B.hom[b[j], d[j]] for j, B in enumerate(b_cats))
        parts, factors = [], []
        for a in a_tuples:
            inner = [A.ident[a[i]] for i, A in enumerate(a_cats)]
            inner += [V.identity(x) for x in xs]
            parts.append(compose(V, idx, inner, g.components[a + b, a + d]))
            factors.append(g.target.hom[g.obj_map[a + b], g.obj_map[a + d]])
        h = V.into_product(parts, factors, xs)
        comps[b, d] = V.factor_through_equalizer(h, e.beta, e.gamma)
    return MultiEntryFunctor(tuple(b_cats), hc.category, obj_map, comps)


def mu_und(V: Multicategory, phi_map: OrdMap, inner: Sequence[HomCategory], outer: HomCategory,
           result: HomCategory | None = None) -> MultiEntryFunctor:
    """Composition of transformations along ``phi_map``.

    Sources are ``[inner[j]]_j`` then ``outer``; on objects it substitutes
    functors, on hom objects it composes the inner transformations through
    the source functor of the outer one, then applies the outer one.
    """
    J = phi_map.target_size
    if len(inner) != J or len(outer.sources) != J:
        raise SignatureError("index map does not match the functor categories")
    a_cats: list = [None] * phi_map.source_size
    for j, hc in enumerate(inner, start=1):
        for i, A in zip(phi_map.fiber(j), hc.sources):
            a_cats[i - 1] = A
    a_cats = tuple(a_cats)
    C = outer.target
    cats = [hc.category for hc in inner] + [outer.category]
    obj_map = {}
    for objs in object_tuples(cats):
        obj_map[objs] = compose_functors(V, phi_map, list(objs[:J]), objs[J])
    result = result or hom_category(V, a_cats, C, functors=_distinct(obj_map.values()))
    index_of = {f: f for f in result.category.objects}
    obj_map = {k: index_of[v] for k, v in obj_map.items()}
    a_tuples = object_tuples(a_cats)
    comps = {}
    for src, dst in cartesian(object_tuples(cats), repeat=2):
        fs, g = src[:J], src[J]
        fs2, g2 = dst[:J], dst[J]
        h, h2 = obj_map[src], obj_map[dst]
        ends = [inner[j].ends[fs[j], fs2[j]] for j in range(J)]
        e_out = outer.ends[g, g2]
        xs = tuple(e.obj for e in ends) + (e_out.obj,)
        parts, factors = [], []
        for a in a_tuples:
            parts_a = [tuple(a[i - 1] for i in phi_map.fiber(j)) for j in range(1, J + 1)]
            fa = tuple(fs[j].obj_map[parts_a[j]] for j in range(J))
            f2a = tuple(fs2[j].obj_map[parts_a[j]] for j in range(J))
            through = compose(V, identity_map(J), [ends[j].p[parts_a[j]] for j in range(J)], g.components[fa, f2a])
            body = compose(V, OrdMap(J + 1, 2, (1,) * J + (2,)), [through, e_out.p[f2a]],
                           C.kappa[g.obj_map[fa], g.obj_map[f2a], g2.obj_map[f2a]])
            parts.append(body)
            factors.append(C.hom[h.obj_map[a], h2.obj_map[a]])
        into = V.into_product(parts, factors, xs)
        e_res = result.ends[h, h2]
        comps[src, dst] = V.factor_through_equalizer(into, e_res.beta, e_res.gamma)
    return MultiEntryFunctor(tuple(cats), result.category, obj_map, comps, name="mu_und")


def _distinct(items) -> list:
    out, seen = [], set()
    for x in items:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def left_whisker(V: Multicategory, phi_map: OrdMap, Fs: Sequence[MultiEntryFunctor], inner: Sequence[HomCategory],
                 outer: HomCategory, result: HomCategory | None = None) -> MultiEntryFunctor:
    """``G |-> (F^j) . G`` on the functor category ``outer``, with ``Fs`` fixed."""
    J = phi_map.target_size
    mu = mu_und(V, phi_map, inner, outer, result)
    points = [nullary_functor(hc.category, F) for hc, F in zip(inner, Fs)]
    idx = OrdMap(1, J + 1, (J + 1,))
    return compose_functors(V, idx, points + [identity_functor(V, outer.category)], mu)


def right_whisker(V: Multicategory, phi_map: OrdMap, H: MultiEntryFunctor, inner: Sequence[HomCategory],
                  outer: HomCategory, result: HomCategory | None = None) -> MultiEntryFunctor:
    """``(F^j) |-> (F^j) . H`` on the functor categories ``inner``, with ``H`` fixed."""
    J = phi_map.target_size
    mu = mu_und(V, phi_map, inner, outer, result)
    ids = [identity_functor(V, hc.category) for hc in inner]
    return compose_functors(V, inj1(J, 1), ids + [nullary_functor(outer.category, H)], mu)

"""Categories enriched in a symmetric multicategory ``V``: quivers, categories,
multi-entry functors, natural transformations, and the multicategory they form.

Every function takes the ground instance ``V`` explicitly.  Checks return
:class:`~vcat.multicat.Report` values and never raise on a failed law.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Any, Sequence

from .finord import OrdMap, chi, disjoint_union, identity_map, nabla, ordmap
from .multicat import (
    Multicategory,
    NotAFork,
    Report,
    SignatureError,
    SizeBoundExceeded,
    compose,
)
from .search import BudgetExceeded, Constraint, backtrack

DEFAULT_FUNCTOR_BUDGET = 10**4


@dataclass(eq=False)
class VQuiver:
    """Objects plus a ground object for every ordered pair of them."""

    objects: tuple
    hom: dict

    def __post_init__(self) -> None:
        self.objects = tuple(self.objects)
        missing = [(a, b) for a in self.objects for b in self.objects if (a, b) not in self.hom]
        if missing:
            raise ValueError(f"hom object missing for {missing[0]}")


@dataclass(eq=False)
class VCategory:
    """A ``V``-category.

    ``kappa[(X, Y, Z)]`` is a ground morphism ``hom(X,Y), hom(Y,Z) -> hom(X,Z)``
    and ``ident[X]`` a nullary ground morphism into ``hom(X,X)``.  ``labels``
    optionally names the elements of hom objects for display.
    """

    objects: tuple
    hom: dict
    kappa: dict
    ident: dict
    name: str = ""
    labels: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.objects = tuple(self.objects)
        VQuiver(self.objects, self.hom)

    @property
    def quiver(self) -> VQuiver:
        return VQuiver(self.objects, self.hom)

    def _key(self) -> tuple:
        try:
            return self.__dict__["_cached_key"]
        except KeyError:
            key = self.__dict__["_cached_key"] = (
                self.objects,
                tuple(self.hom[a, b] for a in self.objects for b in self.objects),
            )
            return key

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, VCategory):
            return NotImplemented
        return (
            self._key() == other._key()
            and self.kappa == other.kappa
            and self.ident == other.ident
        )

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        label = self.name or "VCategory"
        return f"<{label}: {len(self.objects)} objects>"


def object_tuples(cats: Sequence[VCategory]) -> list[tuple]:
    return list(cartesian(*[c.objects for c in cats]))


@dataclass(eq=False)
class MultiEntryFunctor:
    """A multi-entry ``V``-functor (or, unchecked, a multi-entry quiver morphism).

    ``obj_map`` sends a tuple of source objects to a target object;
    ``components[(A, E)]`` is a ground morphism
    ``(sources[i].hom[A[i], E[i]])_i -> target.hom[F(A), F(E)]``.
    """

    sources: tuple
    target: VCategory
    obj_map: dict
    components: dict
    name: str = ""

    def __post_init__(self) -> None:
        self.sources = tuple(self.sources)

    def __call__(self, *objs: Any) -> Any:
        return self.obj_map[tuple(objs)]

    def _key(self) -> tuple:
        try:
            return self.__dict__["_cached_key"]
        except KeyError:
            key = self.__dict__["_cached_key"] = (
                len(self.sources),
                frozenset(self.obj_map.items()),
                frozenset(self.components.items()),
            )
            return key

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, MultiEntryFunctor):
            return NotImplemented
        return (
            self._key() == other._key()
            and self.target == other.target
            and self.sources == other.sources
        )

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        label = self.name or "functor"
        return f"<{label}: {len(self.sources)} sources, {len(self.obj_map)} object images>"


@dataclass(eq=False)
class VNatTransformation:
    """A family of nullary ground morphisms ``components[A]: () -> C(F(A), G(A))``."""

    source: MultiEntryFunctor
    target: MultiEntryFunctor
    components: dict


# categories


def category_laws(V: Multicategory, C: VCategory) -> list[tuple[str, dict, Any, Any]]:
    """Every associativity and unit instance as ``(law, where, lhs, rhs)``."""
    out = []
    obs = C.objects
    for w, x, y, z in cartesian(obs, repeat=4):
        lhs = compose(V, ordmap([1, 2, 2]), [V.identity(C.hom[w, x]), C.kappa[x, y, z]], C.kappa[w, x, z])
        rhs = compose(V, ordmap([1, 1, 2]), [C.kappa[w, x, y], V.identity(C.hom[y, z])], C.kappa[w, y, z])
        out.append(("associativity", {"objects": (w, x, y, z)}, lhs, rhs))
    for x, y in cartesian(obs, repeat=2):
        one = V.identity(C.hom[x, y])
        left = compose(V, OrdMap(1, 2, (2,)), [C.ident[x], one], C.kappa[x, x, y])
        right = compose(V, OrdMap(1, 2, (1,)), [one, C.ident[y]], C.kappa[x, y, y])
        out.append(("left unit", {"objects": (x, y)}, left, one))
        out.append(("right unit", {"objects": (x, y)}, right, one))
    return out


def check_category(V: Multicategory, C: VCategory, report: Report | None = None) -> Report:
    report = report or Report(f"category {C.name}".strip())
    for law, where, lhs, rhs in category_laws(V, C):
        report.record(law, V.equal(lhs, rhs), **where)
    return report


# functors


def identity_functor(V: Multicategory, C: VCategory) -> MultiEntryFunctor:
    comps = {((a,), (b,)): V.identity(C.hom[a, b]) for a, b in cartesian(C.objects, repeat=2)}
    return MultiEntryFunctor((C,), C, {(x,): x for x in C.objects}, comps, name=f"id {C.name}".strip())


def nullary_functor(B: VCategory, b: Any) -> MultiEntryFunctor:
    """The functor with no sources picking the object ``b``."""
    if b not in B.objects:
        raise ValueError(f"{b!r} is not an object")
    return MultiEntryFunctor((), B, {(): b}, {((), ()): B.ident[b]}, name=f"point {b!r}")


def nullary_object(F: MultiEntryFunctor) -> Any:
    if F.sources:
        raise SignatureError("functor has sources")
    return F.obj_map[()]


def functor_laws(V: Multicategory, F: MultiEntryFunctor) -> list[tuple[str, dict, Any, Any]]:
    """Composition (``lb = tr``) and unit instances as ``(law, where, lhs, rhs)``."""
    n = len(F.sources)
    B = F.target
    out = []
    tuples = object_tuples(F.sources)
    for a, d, e in cartesian(tuples, repeat=3):
        lb = compose(V, disjoint_union(nabla(n), nabla(n)), [F.components[a, d], F.components[d, e]],
                     B.kappa[F.obj_map[a], F.obj_map[d], F.obj_map[e]])
        kappas = [F.sources[i].kappa[a[i], d[i], e[i]] for i in range(n)]
        tr = compose(V, chi(n), kappas, F.components[a, e])
        out.append(("composition", {"objects": (a, d, e)}, lb, tr))
    for a in tuples:
        ids = [F.sources[i].ident[a[i]] for i in range(n)]
        lhs = compose(V, OrdMap(0, n, ()), ids, F.components[a, a])
        out.append(("unit", {"objects": a}, lhs, B.ident[F.obj_map[a]]))
    return out


def check_functor(V: Multicategory, F: MultiEntryFunctor, report: Report | None = None) -> Report:
    report = report or Report(f"functor {F.name}".strip())
    for law, where, lhs, rhs in functor_laws(V, F):
        report.record(law, V.equal(lhs, rhs), **where)
    return report


def quiver_compose(V: Multicategory, phi: OrdMap, Fs: Sequence[MultiEntryFunctor],
                   G: MultiEntryFunctor) -> MultiEntryFunctor:
    """Substitute ``Fs[j]`` into the ``j``-th entry of ``G`` along ``phi``."""
    if len(Fs) != phi.target_size or len(G.sources) != phi.target_size:
        raise SignatureError("index map does not match the number of functors")
    sources: list = [None] * phi.source_size
    for j, F in enumerate(Fs, start=1):
        fib = phi.fiber(j)
        if len(fib) != len(F.sources):
            raise SignatureError("functor arity does not match the fiber", j)
        if F.target != G.sources[j - 1]:
            raise SignatureError("functor target does not match the outer source", j)
        for i, c in zip(fib, F.sources):
            sources[i - 1] = c

    def restrict_to(a: tuple, j: int) -> tuple:
        return tuple(a[i - 1] for i in phi.fiber(j))

    obj_map = {}
    tuples = object_tuples(sources)
    for a in tuples:
        obj_map[a] = G.obj_map[tuple(F.obj_map[restrict_to(a, j)] for j, F in enumerate(Fs, start=1))]
    comps = {}
    for a, e in cartesian(tuples, repeat=2):
        inner = [F.components[restrict_to(a, j), restrict_to(e, j)] for j, F in enumerate(Fs, start=1)]
        fa = tuple(F.obj_map[restrict_to(a, j)] for j, F in enumerate(Fs, start=1))
        fe = tuple(F.obj_map[restrict_to(e, j)] for j, F in enumerate(Fs, start=1))
        comps[a, e] = compose(V, phi, inner, G.components[fa, fe])
    return MultiEntryFunctor(tuple(sources), G.target, obj_map, comps)


def compose_functors(V: Multicategory, phi: OrdMap, Fs: Sequence[MultiEntryFunctor],
                     G: MultiEntryFunctor) -> MultiEntryFunctor:
    """Composition in the multicategory of ``V``-categories."""
    return quiver_compose(V, phi, Fs, G)


def enumerate_functors(V: Multicategory, sources: Sequence[VCategory], target: VCategory,
                       budget: int = DEFAULT_FUNCTOR_BUDGET) -> list[MultiEntryFunctor]:
    """Every multi-entry functor ``sources -> target`` in canonical order.

    Object maps are tried in lexicographic order, then components by
    backtracking against the functor laws.  ``budget`` caps the candidate
    values tried per object map; exceeding it raises
    :class:`SizeBoundExceeded`.
    """
    sources = tuple(sources)
    n = len(sources)
    tuples = object_tuples(sources)
    found = []
    for images in cartesian(target.objects, repeat=len(tuples)):
        obj_map = dict(zip(tuples, images))
        pairs = list(cartesian(tuples, repeat=2))
        domains = {}
        for a, e in pairs:
            xs = tuple(sources[i].hom[a[i], e[i]] for i in range(n))
            hs = V.homs(xs, target.hom[obj_map[a], obj_map[e]])
            if hs is None:
                raise TypeError(f"{V.name} homs are not enumerable")
            domains[a, e] = list(hs)
        constraints = []
        for a in tuples:
            ids = [sources[i].ident[a[i]] for i in range(n)]
            want = target.ident[obj_map[a]]
            constraints.append(Constraint(frozenset([(a, a)]), lambda asg, a=a, ids=ids, want=want: V.equal(
                compose(V, OrdMap(0, n, ()), ids, asg[a, a]), want)))
        for a, d, e in cartesian(tuples, repeat=3):
            kappas = [sources[i].kappa[a[i], d[i], e[i]] for i in range(n)]
            outer = target.kappa[obj_map[a], obj_map[d], obj_map[e]]

            def holds(asg, a=a, d=d, e=e, kappas=kappas, outer=outer):
                lb = compose(V, disjoint_union(nabla(n), nabla(n)), [asg[a, d], asg[d, e]], outer)
                tr = compose(V, chi(n), kappas, asg[a, e])
                return V.equal(lb, tr)

            constraints.append(Constraint(frozenset([(a, d), (d, e), (a, e)]), holds))
        try:
            for asg in backtrack(pairs, domains, constraints, budget=budget):
                found.append(MultiEntryFunctor(sources, target, dict(obj_map), asg))
        except BudgetExceeded as exc:
            raise SizeBoundExceeded(f"functor enumeration: {exc}") from None
    return found


# natural transformations


def naturality_instances(V: Multicategory, t: VNatTransformation) -> list[tuple[dict, Any, Any]]:
    F, G = t.source, t.target
    C = F.target
    n = len(F.sources)
    out = []
    for a, d in cartesian(object_tuples(F.sources), repeat=2):
        fa, fd, ga, gd = F.obj_map[a], F.obj_map[d], G.obj_map[a], G.obj_map[d]
        b = compose(V, OrdMap(n, 2, (1,) * n), [F.components[a, d], t.components[d]], C.kappa[fa, fd, gd])
        g = compose(V, OrdMap(n, 2, (2,) * n), [t.components[a], G.components[a, d]], C.kappa[fa, ga, gd])
        out.append(({"objects": (a, d)}, b, g))
    return out


def check_naturality(V: Multicategory, t: VNatTransformation, report: Report | None = None) -> Report:
    report = report or Report("naturality")
    for where, b, g in naturality_instances(V, t):
        report.record("naturality", V.equal(b, g), **where)
    return report


def identity_transformation(F: MultiEntryFunctor) -> VNatTransformation:
    C = F.target
    return VNatTransformation(F, F, {a: C.ident[F.obj_map[a]] for a in object_tuples(F.sources)})


# products and equalizers


def vcat_product(V: Multicategory, cats: Sequence[VCategory]) -> tuple[VCategory, list[MultiEntryFunctor]]:
    """Product category with hom objects the ground products."""
    cats = tuple(cats)
    objs = object_tuples(cats)
    hom, projs_of = {}, {}
    for x, y in cartesian(objs, repeat=2):
        factors = [c.hom[x[k], y[k]] for k, c in enumerate(cats)]
        hom[x, y], projs_of[x, y] = V.product(factors)
    kappa, ident = {}, {}
    for x, y, z in cartesian(objs, repeat=3):
        parts = [
            compose(V, identity_map(2), [projs_of[x, y][k], projs_of[y, z][k]], c.kappa[x[k], y[k], z[k]])
            for k, c in enumerate(cats)
        ]
        kappa[x, y, z] = V.into_product(parts, [c.hom[x[k], z[k]] for k, c in enumerate(cats)],
                                        (hom[x, y], hom[y, z]))
    for x in objs:
        ident[x] = V.into_product([c.ident[x[k]] for k, c in enumerate(cats)],
                                  [c.hom[x[k], x[k]] for k, c in enumerate(cats)], ())
    P = VCategory(tuple(objs), hom, kappa, ident, name=" x ".join(c.name or "?" for c in cats))
    projections = []
    for k, c in enumerate(cats):
        comps = {((x,), (y,)): projs_of[x, y][k] for x, y in cartesian(objs, repeat=2)}
        projections.append(MultiEntryFunctor((P,), c, {(x,): x[k] for x in objs}, comps, name=f"pr{k + 1}"))
    return P, projections


def vcat_into_product(V: Multicategory, Fs: Sequence[MultiEntryFunctor], P: VCategory,
                      cats: Sequence[VCategory], sources: Sequence[VCategory] | None = None) -> MultiEntryFunctor:
    """The functor into the product whose projections are ``Fs``."""
    if sources is None:
        if not Fs:
            raise SignatureError("sources are needed to tuple an empty family")
        sources = Fs[0].sources
    sources = tuple(sources)
    for k, F in enumerate(Fs):
        if F.sources != sources or F.target != cats[k]:
            raise SignatureError("tupled functors must share sources and match the factors", k + 1)
    tuples = object_tuples(sources)
    obj_map = {a: tuple(F.obj_map[a] for F in Fs) for a in tuples}
    comps = {}
    for a, e in cartesian(tuples, repeat=2):
        xs = tuple(s.hom[a[i], e[i]] for i, s in enumerate(sources))
        comps[a, e] = V.into_product([F.components[a, e] for F in Fs],
                                     [c.hom[obj_map[a][k], obj_map[e][k]] for k, c in enumerate(cats)], xs)
    return MultiEntryFunctor(sources, P, obj_map, comps)


def vcat_equalizer(V: Multicategory, F: MultiEntryFunctor, G: MultiEntryFunctor) -> tuple[VCategory, MultiEntryFunctor]:
    """Equalizer of two parallel unary functors."""
    if len(F.sources) != 1 or F.sources != G.sources or F.target != G.target:
        raise SignatureError("equalizer needs parallel unary functors")
    (A,) = F.sources
    keep = tuple(x for x in A.objects if F.obj_map[(x,)] == G.obj_map[(x,)])
    hom, incl = {}, {}
    for x, y in cartesian(keep, repeat=2):
        hom[x, y], incl[x, y] = V.equalizer(F.components[(x,), (y,)], G.components[(x,), (y,)])
    kappa, ident = {}, {}
    for x, y, z in cartesian(keep, repeat=3):
        h = compose(V, identity_map(2), [incl[x, y], incl[y, z]], A.kappa[x, y, z])
        kappa[x, y, z] = V.factor_through_equalizer(h, F.components[(x,), (z,)], G.components[(x,), (z,)])
    for x in keep:
        ident[x] = V.factor_through_equalizer(A.ident[x], F.components[(x,), (x,)], G.components[(x,), (x,)])
    K = VCategory(keep, hom, kappa, ident, name=f"eq({A.name})")
    e = MultiEntryFunctor((K,), A, {(x,): x for x in keep},
                          {((x,), (y,)): incl[x, y] for x, y in cartesian(keep, repeat=2)}, name="incl")
    return K, e


def vcat_factor(V: Multicategory, H: MultiEntryFunctor, F: MultiEntryFunctor, G: MultiEntryFunctor,
                K: VCategory) -> MultiEntryFunctor:
    """Factor a fork ``H`` through the equalizer ``K`` of ``F`` and ``G``."""
    hf = compose_functors(V, nabla(len(H.sources)), [H], F)
    hg = compose_functors(V, nabla(len(H.sources)), [H], G)
    if hf != hg:
        raise NotAFork("functor does not equalize the pair")
    tuples = object_tuples(H.sources)
    comps = {}
    for a, e in cartesian(tuples, repeat=2):
        x, y = H.obj_map[a], H.obj_map[e]
        comps[a, e] = V.factor_through_equalizer(H.components[a, e], F.components[(x,), (y,)],
                                                 G.components[(x,), (y,)])
    return MultiEntryFunctor(H.sources, K, dict(H.obj_map), comps)


# the multicategory of V-categories


class VCatMulticategory(Multicategory):
    """``V``-categories and multi-entry functors.

    Closed and complete whenever ``V`` is; the closed structure uses the
    functor categories built in :mod:`vcat.homobj`.
    """

    def __init__(self, V: Multicategory, functor_budget: int = DEFAULT_FUNCTOR_BUDGET):
        self.V = V
        self.functor_budget = functor_budget
        self.name = f"{V.name}-Cat"
        self.closed = V.closed and V.complete
        self.complete = V.complete
        self._hom_cache: dict = {}
        self._identity_cache: dict = {}

    def sources(self, m: MultiEntryFunctor) -> tuple:
        return m.sources

    def target(self, m: MultiEntryFunctor) -> VCategory:
        return m.target

    def identity(self, C: VCategory) -> MultiEntryFunctor:
        key = id(C)
        hit = self._identity_cache.get(key)
        if hit is None or hit[0] is not C:
            hit = self._identity_cache[key] = (C, identity_functor(self.V, C))
        return hit[1]

    def raw_compose(self, phi: OrdMap, gs: Sequence[MultiEntryFunctor], f: MultiEntryFunctor) -> MultiEntryFunctor:
        return compose_functors(self.V, phi, gs, f)

    def homs(self, xs: Sequence[VCategory], y: VCategory) -> list[MultiEntryFunctor]:
        key = (tuple(xs), y)
        hit = self._hom_cache.get(key)
        if hit is None:
            hit = self._hom_cache[key] = enumerate_functors(self.V, xs, y, self.functor_budget)
        return hit

    # closed structure

    def underhom(self, xs: Sequence[VCategory], z: VCategory) -> VCategory:
        from .homobj import hom_category

        return hom_category(self.V, tuple(xs), z, self.functor_budget).category

    def ev(self, xs: Sequence[VCategory], z: VCategory) -> MultiEntryFunctor:
        from .homobj import ev_functor, hom_category

        return ev_functor(self.V, hom_category(self.V, tuple(xs), z, self.functor_budget))

    def curry(self, f: MultiEntryFunctor, n_args: int) -> MultiEntryFunctor:
        from .homobj import psi

        return psi(self.V, f, n_args, self.functor_budget)

    # complete structure

    def product(self, objs: Sequence[VCategory]) -> tuple[VCategory, list[MultiEntryFunctor]]:
        return vcat_product(self.V, objs)

    def into_product(self, fs: Sequence[MultiEntryFunctor], objs: Sequence[VCategory],
                     xs: Sequence[VCategory] | None = None) -> MultiEntryFunctor:
        P, _ = vcat_product(self.V, objs)
        return vcat_into_product(self.V, fs, P, objs, xs)

    def equalizer(self, f: MultiEntryFunctor, g: MultiEntryFunctor) -> tuple[VCategory, MultiEntryFunctor]:
        return vcat_equalizer(self.V, f, g)

    def factor_through_equalizer(self, h: MultiEntryFunctor, f: MultiEntryFunctor,
                                 g: MultiEntryFunctor) -> MultiEntryFunctor:
        K, _ = vcat_equalizer(self.V, f, g)
        return vcat_factor(self.V, h, f, g, K)

"""The free colored prop on a symmetric multicategory, the underlying
multicategory of a prop, and the bijection between multifunctors into the
underlying multicategory and prop functors out of the free prop."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Any, Callable, Iterator, Sequence

from .finord import (
    OrdMap,
    all_maps,
    block_swap,
    compose_map,
    disjoint_union_all,
    identity_map,
    nabla,
    restrict,
    sigma_t,
)
from .multicat import Multicategory, SignatureError, compose

Word = tuple


@dataclass(frozen=True)
class PropMorphism:
    """A morphism ``source -> target`` of the free prop.

    ``components[j-1]`` is a ground morphism from the letters of ``source`` in
    the fiber of ``j`` to ``target[j-1]``.
    """

    source: Word
    target: Word
    index: OrdMap
    components: tuple

    def to_json(self) -> dict:
        return {
            "source": list(map(_json_obj, self.source)),
            "target": list(map(_json_obj, self.target)),
            "index": self.index.to_json(),
            "components": [_json_obj(c) for c in self.components],
        }


def _json_obj(x: Any) -> Any:
    return x.to_json() if hasattr(x, "to_json") else x


def grouping(lengths: Sequence[int]) -> OrdMap:
    """Monotone map sending each letter to the word it belongs to."""
    vals = tuple([i for i, n in enumerate(lengths, start=1) for _ in range(n)])
    return OrdMap.trusted(len(vals), len(lengths), vals)


class FreeProp:
    """The free colored prop on ``mc``; its colors are the objects of ``mc``."""

    def __init__(self, mc: Multicategory):
        self.mc = mc
        self._lam_cache: dict = {}

    def identity(self, word: Word) -> PropMorphism:
        word = tuple(word)
        n = len(word)
        return PropMorphism(word, word, identity_map(n), tuple(self.mc.identity(x) for x in word))

    def check(self, m: PropMorphism) -> None:
        """Raise unless the components fit the fibers of the index."""
        if m.index.source_size != len(m.source) or m.index.target_size != len(m.target):
            raise SignatureError("index map does not match the word lengths")
        if len(m.components) != len(m.target):
            raise SignatureError("one component per target letter is required")
        for j, c in enumerate(m.components, start=1):
            want = tuple(m.source[i - 1] for i in m.index.fiber(j))
            got = tuple(self.mc.sources(c))
            if len(got) != len(want) or not all(self.mc.same_object(a, b) for a, b in zip(got, want)):
                raise SignatureError("component sources do not match the fiber", j)
            if not self.mc.same_object(self.mc.target(c), m.target[j - 1]):
                raise SignatureError("component target does not match", j)

    def compose(self, a: PropMorphism, b: PropMorphism) -> PropMorphism:
        """First ``a`` then ``b``."""
        if len(a.target) != len(b.source) or not all(
            self.mc.same_object(x, y) for x, y in zip(a.target, b.source)
        ):
            raise SignatureError("words do not match")
        phi, psi = a.index, b.index
        xi = compose_map(phi, psi)
        xi_fibers = xi.fibers
        ac, bc = a.components, b.components
        raw = self.mc.raw_compose
        comps = []
        # component signatures already match because the words match
        for k, js in enumerate(psi.fibers):
            phi_k = restrict(phi, xi_fibers[k], js)
            comps.append(raw(phi_k, [ac[j - 1] for j in js], bc[k]))
        return PropMorphism(a.source, b.target, xi, tuple(comps))

    def compose_all(self, ms: Sequence[PropMorphism]) -> PropMorphism:
        out = ms[0]
        for m in ms[1:]:
            out = self.compose(out, m)
        return out

    def tensor(self, ms: Sequence[PropMorphism]) -> PropMorphism:
        ms = list(ms)
        source = tuple(x for m in ms for x in m.source)
        target = tuple(y for m in ms for y in m.target)
        index = disjoint_union_all([m.index for m in ms])
        comps = tuple(c for m in ms for c in m.components)
        return PropMorphism(source, target, index, comps)

    def lam(self, f: OrdMap, words: Sequence[Word]) -> PropMorphism:
        """Regroup ``words`` (indexed by the source of ``f``) along ``f``.

        The result goes from the concatenation of ``words`` to the
        concatenation over ``j`` of the words in the fiber of ``j``.
        """
        words = [tuple(w) for w in words]
        if len(words) != f.source_size:
            raise SignatureError("one word per element of the source is required")
        g = grouping([len(w) for w in words])
        return self.lam_grouped(f, g, tuple(x for w in words for x in w))

    def lam_grouped(self, f: OrdMap, g: OrdMap, letters: Word) -> PropMorphism:
        """``g`` is a monotone grouping of ``letters`` into words indexed by the source of ``f``."""
        letters = tuple(letters)
        key = (f, g, letters)
        hit = self._lam_cache.get(key)
        if hit is not None:
            return hit
        if not g.is_monotone():
            raise ValueError("the grouping map must be monotone")
        sigma, _ = sigma_t(compose_map(g, f))
        target = [None] * len(letters)
        for k, x in enumerate(letters, start=1):
            target[sigma(k) - 1] = x
        target = tuple(target)
        out = PropMorphism(tuple(letters), target, sigma, tuple(self.mc.identity(x) for x in target))
        self._lam_cache[key] = out
        return out

    def symmetry(self, left: Word, right: Word) -> PropMorphism:
        left, right = tuple(left), tuple(right)
        sigma = block_swap(len(left), len(right))
        target = right + left
        return PropMorphism(left + right, target, sigma, tuple(self.mc.identity(x) for x in target))

    def equal(self, a: PropMorphism, b: PropMorphism) -> bool:
        return (
            a.source == b.source
            and a.target == b.target
            and a.index == b.index
            and all(self.mc.equal(x, y) for x, y in zip(a.components, b.components))
        )

    def homs(self, source: Word, target: Word) -> Iterator[PropMorphism]:
        source, target = tuple(source), tuple(target)
        for phi in all_maps(len(source), len(target)):
            pools = []
            for j in range(1, len(target) + 1):
                xs = tuple(source[i - 1] for i in phi.fiber(j))
                hs = self.mc.homs(xs, target[j - 1])
                if hs is None:
                    raise TypeError("ground homs are not enumerable")
                pools.append(list(hs))
            for comps in cartesian(*pools):
                yield PropMorphism(source, target, phi, tuple(comps))


@dataclass(frozen=True)
class UMorphism:
    """A morphism of the underlying multicategory: a prop morphism into one color."""

    arrow: PropMorphism


class UnderlyingMulticategory(Multicategory):
    """The multicategory whose objects are colors and whose homs are prop
    morphisms into a single color."""

    name = "underlying multicategory"

    def __init__(self, prop: FreeProp):
        self.prop = prop

    def sources(self, m: UMorphism) -> tuple:
        return m.arrow.source

    def target(self, m: UMorphism) -> Any:
        (y,) = m.arrow.target
        return y

    def identity(self, x: Any) -> UMorphism:
        return UMorphism(self.prop.identity((x,)))

    def raw_compose(self, phi: OrdMap, gs: Sequence[UMorphism], f: UMorphism) -> UMorphism:
        letters = [None] * phi.source_size
        for j, g in enumerate(gs, start=1):
            for i, x in zip(phi.fiber(j), g.arrow.source):
                letters[i - 1] = x
        lam = self.prop.lam(phi, [(x,) for x in letters])
        body = self.prop.tensor([g.arrow for g in gs])
        return UMorphism(self.prop.compose_all([lam, body, f.arrow]))

    def equal(self, a: UMorphism, b: UMorphism) -> bool:
        return self.prop.equal(a.arrow, b.arrow)

    def homs(self, xs, y):
        return (UMorphism(m) for m in self.prop.homs(tuple(xs), (y,)))


def u_functor(prop: FreeProp) -> UnderlyingMulticategory:
    return UnderlyingMulticategory(prop)


@dataclass
class Multifunctor:
    """A multifunctor ``V -> U P`` given by a color map and a morphism map.

    ``on_morphisms`` sends a ground morphism to a prop morphism into one color.
    """

    on_objects: Callable[[Any], Any]
    on_morphisms: Callable[[Any], PropMorphism]


@dataclass
class PropFunctor:
    """A prop functor out of the free prop, strict monoidal on colors."""

    on_colors: Callable[[Any], Any]
    on_morphisms: Callable[[PropMorphism], PropMorphism]

    def on_word(self, word: Word) -> Word:
        return tuple(self.on_colors(x) for x in word)


def theta(F: Multifunctor, target: FreeProp) -> PropFunctor:
    """Extend a multifunctor to the free prop: regroup, then apply ``F`` piecewise."""

    def on_morphisms(m: PropMorphism) -> PropMorphism:
        images = [F.on_objects(x) for x in m.source]
        lam = target.lam(m.index, [(x,) for x in images])
        body = target.tensor([F.on_morphisms(c) for c in m.components])
        return target.compose(lam, body)

    return PropFunctor(F.on_objects, on_morphisms)


def theta_inverse(G: PropFunctor, source: FreeProp) -> Multifunctor:
    """Restrict a prop functor to morphisms indexed by the terminal map."""

    def on_morphisms(f: Any) -> PropMorphism:
        xs = tuple(source.mc.sources(f))
        y = source.mc.target(f)
        return G.on_morphisms(PropMorphism(xs, (y,), nabla(len(xs)), (f,)))

    return Multifunctor(lambda x: G.on_colors(x), on_morphisms)


def check_multifunctor(F: Multifunctor, V: Multicategory, UP: UnderlyingMulticategory,
                       compositions: Sequence[tuple[OrdMap, Sequence, Any]], objects: Sequence,
                       first_only: bool = False) -> list[dict]:
    """Failures of unit preservation and of the composition square on the given inputs."""
    failures = []
    for x in objects:
        if not UP.prop.equal(F.on_morphisms(V.identity(x)), UP.prop.identity((F.on_objects(x),))):
            failures.append({"law": "identity", "object": x})
            if first_only:
                return failures
    for phi, gs, f in compositions:
        if first_only and failures:
            return failures
        lhs = F.on_morphisms(compose(V, phi, gs, f))
        rhs = compose(UP, phi, [UMorphism(F.on_morphisms(g)) for g in gs], UMorphism(F.on_morphisms(f))).arrow
        if not UP.prop.equal(lhs, rhs):
            failures.append({"law": "composition", "phi": phi})
    return failures


def check_prop_functor(G: PropFunctor, source: FreeProp, target: FreeProp,
                       morphisms: Sequence[PropMorphism], words: Sequence[Word],
                       first_only: bool = False) -> list[dict]:
    """Failures of the prop-functor laws on the given finite pool.

    Symmetries and tensors are only checked when the result stays within the
    longest word of the pool.
    """
    failures = []
    for w in words:
        if not target.equal(G.on_morphisms(source.identity(w)), target.identity(G.on_word(w))):
            failures.append({"law": "identity", "word": w})
            if first_only:
                return failures
        for v in words:
            if len(w) + len(v) <= max(len(x) for x in words):
                got = G.on_morphisms(source.symmetry(w, v))
                if not target.equal(got, target.symmetry(G.on_word(w), G.on_word(v))):
                    failures.append({"law": "symmetry", "words": (w, v)})
                    if first_only:
                        return failures
    by_source: dict = {}
    for m in morphisms:
        by_source.setdefault(m.source, []).append(m)
    for a in morphisms:
        for b in by_source.get(a.target, []):
            lhs = G.on_morphisms(source.compose(a, b))
            rhs = target.compose(G.on_morphisms(a), G.on_morphisms(b))
            if not target.equal(lhs, rhs):
                failures.append({"law": "composition", "pair": (a, b)})
                if first_only:
                    return failures
    max_len = max(len(x) for x in words)
    for a in morphisms:
        for b in morphisms:
            if len(a.source) + len(b.source) <= max_len and len(a.target) + len(b.target) <= max_len:
                lhs = G.on_morphisms(source.tensor([a, b]))
                rhs = target.tensor([G.on_morphisms(a), G.on_morphisms(b)])
                if not target.equal(lhs, rhs):
                    failures.append({"law": "tensor", "pair": (a, b)})
                    if first_only:
                        return failures
    return failures


# enumeration of both sides of the bijection over a finite fragment


@dataclass(frozen=True)
class GeneratorTable:
    """A color map together with an image for every generating ground morphism."""

    colors: tuple
    images: tuple  # pairs (ground morphism, image ground morphism)

    def color(self, x: Any) -> Any:
        return dict(self.colors)[x]

    def as_multifunctor(self, V) -> Multifunctor:
        return _table_multifunctor(V, dict(self.colors), dict(self.images))


def _table_multifunctor(V, colors: dict, images: dict) -> Multifunctor:
    def on_morphisms(f: Any) -> PropMorphism:
        xs = tuple(colors[x] for x in V.sources(f))
        return PropMorphism(xs, (colors[V.target(f)],), nabla(len(xs)), (images[f],))

    return Multifunctor(lambda x: colors[x], on_morphisms)


def _generator_domains(V, colors: dict) -> tuple[list, dict]:
    gens = [m for xs, y in V.signatures() for m in V.homs(xs, y)]
    domains = {}
    for m in gens:
        xs = tuple(colors[x] for x in V.sources(m))
        domains[m] = list(V.homs(xs, colors[V.target(m)]))
    return gens, domains


def _fragment_compositions(V) -> list[tuple[OrdMap, list, Any]]:
    """All composable ``(phi, gs, f)`` whose inputs and composite lie in the fragment."""
    out = []
    sigs = V.signatures()
    for xs, y in sigs:
        for f in V.homs(xs, y):
            pools = [[(s, g) for s, t in sigs if V.same_object(t, x) for g in V.homs(s, t)] for x in xs]
            for picks in cartesian(*pools):
                n = sum(len(s) for s, _ in picks)
                if n > V.max_arity:
                    continue
                vals = tuple(j for j, (s, _) in enumerate(picks, start=1) for _ in s)
                for phi in _maps_with_fiber_sizes(vals, len(xs)):
                    out.append((phi, [g for _, g in picks], f))
    return out


def _maps_with_fiber_sizes(monotone_values: tuple, target: int) -> Iterator[OrdMap]:
    """Every map whose fiber sizes match those of the given monotone map."""
    from itertools import permutations

    seen = set()
    for perm in permutations(monotone_values):
        if perm not in seen:
            seen.add(perm)
            yield OrdMap(len(perm), target, perm)


def multifunctors_by_search(V, color_maps: Sequence[dict]) -> list[GeneratorTable]:
    """Multifunctors from the fragment ``V`` to the underlying multicategory of
    its free prop, found by constrained search over generator images."""
    from .search import Constraint, backtrack

    prop = FreeProp(V)
    UP = UnderlyingMulticategory(prop)
    found = []
    compositions = _fragment_compositions(V)
    for colors in color_maps:
        gens, domains = _generator_domains(V, colors)
        constraints = []
        for x in V.objects:
            ident = V.identity(x)
            constraints.append(Constraint(
                frozenset([ident]),
                lambda a, ident=ident, x=x: a[ident] == V.identity(colors[x]),
            ))
        for phi, gs, f in compositions:
            comp = compose(V, phi, gs, f)
            scope = frozenset(list(gs) + [f, comp])

            def holds(a, phi=phi, gs=gs, f=f, comp=comp, colors=colors):
                F = _table_multifunctor(V, colors, a)
                lhs = F.on_morphisms(comp)
                rhs = compose(UP, phi, [UMorphism(F.on_morphisms(g)) for g in gs], UMorphism(F.on_morphisms(f)))
                return prop.equal(lhs, rhs.arrow)

            constraints.append(Constraint(scope, holds))
        for a in backtrack(gens, domains, constraints):
            found.append(GeneratorTable(tuple(sorted(colors.items())), tuple((m, a[m]) for m in gens)))
    return found


def prop_functors_by_search(V, color_maps: Sequence[dict], max_word: int = 2) -> list[GeneratorTable]:
    """Prop functors from the free prop on ``V`` to itself, found by search.

    A prop functor preserves tensor and symmetry, so it is fixed by its values
    on morphisms indexed by a terminal map; those values are the search
    variables.  Every prop-functor law is then checked on all morphisms
    between words of length at most ``max_word``.
    """
    from itertools import product as words_of

    from .search import Constraint, backtrack

    prop = FreeProp(V)
    words = [w for n in range(max_word + 1) for w in words_of(V.objects, repeat=n)]
    morphisms = [m for w in words for v in words for m in prop.homs(w, v)]
    found = []
    for colors in color_maps:
        gens, domains = _generator_domains(V, colors)

        def functor(a, colors=colors):
            return theta(_table_multifunctor(V, colors, a), prop)

        constraints = []
        for w in words:
            ident = prop.identity(w)
            constraints.append(Constraint(
                frozenset(ident.components),
                lambda a, ident=ident, w=w, colors=colors: prop.equal(
                    functor(a).on_morphisms(ident), prop.identity(tuple(colors[x] for x in w))),
            ))
            for v in words:
                if len(w) + len(v) <= max_word:
                    sym = prop.symmetry(w, v)
                    constraints.append(Constraint(
                        frozenset(sym.components),
                        lambda a, sym=sym, w=w, v=v, colors=colors: prop.equal(
                            functor(a).on_morphisms(sym),
                            prop.symmetry(tuple(colors[x] for x in w), tuple(colors[x] for x in v))),
                    ))
        by_source: dict = {}
        for m in morphisms:
            by_source.setdefault(m.source, []).append(m)
        for a_m in morphisms:
            for b_m in by_source.get(a_m.target, []):
                ab = prop.compose(a_m, b_m)
                scope = frozenset(a_m.components + b_m.components + ab.components)
                constraints.append(Constraint(scope, lambda a, x=a_m, y=b_m, xy=ab: prop.equal(
                    functor(a).on_morphisms(xy),
                    prop.compose(functor(a).on_morphisms(x), functor(a).on_morphisms(y)))))
            for b_m in morphisms:
                if len(a_m.source) + len(b_m.source) <= max_word and len(a_m.target) + len(b_m.target) <= max_word:
                    t = prop.tensor([a_m, b_m])
                    constraints.append(Constraint(frozenset(t.components), lambda a, x=a_m, y=b_m, t=t: prop.equal(
                        functor(a).on_morphisms(t),
                        prop.tensor([functor(a).on_morphisms(x), functor(a).on_morphisms(y)]))))
        for a in backtrack(gens, domains, constraints):
            found.append(GeneratorTable(tuple(sorted(colors.items())), tuple((m, a[m]) for m in gens)))
    return found


def all_color_maps(colors: Sequence) -> list[dict]:
    return [dict(zip(colors, image)) for image in cartesian(colors, repeat=len(colors))]

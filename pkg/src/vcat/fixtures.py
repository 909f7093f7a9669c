"""Small named categories over finite sets and the two-object 2-category used
by the test suites.  Categories are built from labelled arrows."""

from __future__ import annotations

from itertools import permutations, product as cartesian
from typing import Any, Callable, Sequence

from .enriched import MultiEntryFunctor, VCategory, VCatMulticategory, nullary_functor
from .search import Constraint, backtrack
from .vfinset import FinSet, MultiMap


def set_category(objects: Sequence[Any], arrows: dict, composite: Callable[[Any, Any], Any] | dict,
                 identities: dict, name: str = "") -> VCategory:
    """Build a category over finite sets.

    ``arrows[(A, B)]`` lists arrow labels; a missing pair means no arrows.
    ``composite(f, g)`` is ``g`` after ``f`` (first ``f``).  Element ``k`` of
    the hom object ``(A, B)`` is ``arrows[(A, B)][k-1]``.
    """
    objects = tuple(objects)
    comp = (lambda f, g: composite[f, g]) if isinstance(composite, dict) else composite
    labels = {(a, b): tuple(arrows.get((a, b), ())) for a in objects for b in objects}
    hom = {k: len(v) for k, v in labels.items()}
    kappa = {}
    for x, y, z in cartesian(objects, repeat=3):
        table = []
        for f in labels[x, y]:
            for g in labels[y, z]:
                table.append(labels[x, z].index(comp(f, g)) + 1)
        kappa[x, y, z] = MultiMap((hom[x, y], hom[y, z]), hom[x, z], tuple(table))
    ident = {x: MultiMap((), hom[x, x], (labels[x, x].index(identities[x]) + 1,)) for x in objects}
    return VCategory(objects, hom, kappa, ident, name=name, labels=labels)


def arrow_label(C: VCategory, a: Any, b: Any, k: int) -> Any:
    return C.labels[a, b][k - 1] if C.labels else k


def set_functor(sources: Sequence[VCategory], target: VCategory, on_objects: Callable[..., Any],
                on_arrows: Callable[..., Any], name: str = "") -> MultiEntryFunctor:
    """A multi-entry functor between labelled categories from rules on labels.

    ``on_arrows`` receives one arrow label per source and returns a label.
    """
    sources = tuple(sources)
    tuples = list(cartesian(*[c.objects for c in sources]))
    obj_map = {a: on_objects(*a) for a in tuples}
    comps = {}
    for a, e in cartesian(tuples, repeat=2):
        sizes = tuple(c.hom[a[i], e[i]] for i, c in enumerate(sources))
        fa, fe = obj_map[a], obj_map[e]
        table = []
        for ks in cartesian(*[range(1, s + 1) for s in sizes]):
            args = [sources[i].labels[a[i], e[i]][k - 1] for i, k in enumerate(ks)]
            table.append(target.labels[fa, fe].index(on_arrows(*args)) + 1)
        comps[a, e] = MultiMap(sizes, target.hom[fa, fe], tuple(table))
    return MultiEntryFunctor(sources, target, obj_map, comps, name=name)


def terminal() -> VCategory:
    return set_category(("*",), {("*", "*"): ("1",)}, lambda f, g: "1", {"*": "1"}, name="terminal")


def empty() -> VCategory:
    return set_category((), {}, lambda f, g: None, {}, name="empty")


def arrow_category(a: str = "0", b: str = "1", u: str = "u") -> VCategory:
    """Two objects and one non-identity arrow ``a -> b``."""
    ida, idb = f"id{a}", f"id{b}"
    arrows = {(a, a): (ida,), (b, b): (idb,), (a, b): (u,)}

    def comp(f, g):
        return g if f in (ida, idb) else f

    return set_category((a, b), arrows, comp, {a: ida, b: idb}, name=f"{a}->{b}")


def cyclic_two() -> VCategory:
    """One object whose endomorphisms form the group of order two."""
    table = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}
    return set_category(("*",), {("*", "*"): ("e", "s")}, table, {"*": "e"}, name="Z/2")


def idempotent() -> VCategory:
    """One object with endomorphisms ``{1, p}`` and ``p p = p``."""
    table = {("1", "1"): "1", ("1", "p"): "p", ("p", "1"): "p", ("p", "p"): "p"}
    return set_category(("*",), {("*", "*"): ("1", "p")}, table, {"*": "1"}, name="idempotent")


def parallel_pair() -> VCategory:
    """Two objects with two parallel arrows ``a, b: 0 -> 1``."""
    arrows = {("0", "0"): ("id0",), ("1", "1"): ("id1",), ("0", "1"): ("a", "b")}

    def comp(f, g):
        return g if f in ("id0", "id1") else f

    return set_category(("0", "1"), arrows, comp, {"0": "id0", "1": "id1"}, name="parallel")


def discrete(n: int) -> VCategory:
    objs = tuple(str(k) for k in range(n))
    return set_category(objs, {(o, o): (f"id{o}",) for o in objs}, lambda f, g: f,
                        {o: f"id{o}" for o in objs}, name=f"discrete{n}")


def small_categories() -> list[VCategory]:
    """Every category in the catalogue with at most two objects and homs of size at most two."""
    return [terminal(), discrete(2), arrow_category(), cyclic_two(), idempotent(), parallel_pair()]


def two_category() -> tuple[VCatMulticategory, VCategory]:
    """A strict 2-category as a category enriched in small categories.

    Objects ``x, y``; the hom from ``x`` to ``y`` is the arrow category
    ``f -> g`` (one 2-cell), endo-homs are terminal and there is nothing from
    ``y`` to ``x``.
    """
    V = FinSet()
    W = VCatMulticategory(V)
    one = terminal()
    two = arrow_category("f", "g", "alpha")
    none = empty()
    hom = {("x", "x"): one, ("y", "y"): one, ("x", "y"): two, ("y", "x"): none}
    kappa = {}
    for a, b, c in cartesian(("x", "y"), repeat=3):
        left, right, out = hom[a, b], hom[b, c], hom[a, c]
        if left is one and right is one:
            kappa[a, b, c] = set_functor((one, one), one, lambda p, q: "*", lambda f, g: "1")
        elif left is one and right is two:
            kappa[a, b, c] = set_functor((one, two), two, lambda p, q: q, lambda f, g: g)
        elif left is two and right is one:
            kappa[a, b, c] = set_functor((two, one), two, lambda p, q: p, lambda f, g: f)
        else:
            # a source is empty, so the functor has no objects to map
            kappa[a, b, c] = set_functor((left, right), out, lambda p, q: None, lambda f, g: None)
    ident = {a: nullary_functor(one, "*") for a in ("x", "y")}
    return W, VCategory(("x", "y"), hom, kappa, ident, name="2-category")


def _composition_tables(objects: tuple, hom: dict) -> list[dict]:
    """Every associative composition on the given hom sizes with identity ``0`` in each endo-hom.

    Arrows are ``(a, b, k)`` with ``k`` counted from ``0``; the result maps
    ``(f, g)`` (first ``f``) to the composite index.
    """
    def is_id(x, y, i):
        return x == y and i == 0

    variables, domains = [], {}
    for x, y, z in cartesian(objects, repeat=3):
        for i in range(hom[x, y]):
            for j in range(hom[y, z]):
                if is_id(x, y, i) or is_id(y, z, j):
                    continue
                if hom[x, z] == 0:
                    return []
                variables.append((x, y, z, i, j))
                domains[x, y, z, i, j] = range(hom[x, z])

    def comp(asg, x, y, z, i, j):
        if is_id(x, y, i):
            return j
        if is_id(y, z, j):
            return i
        return asg[x, y, z, i, j]

    def scope(x, y, z, i=None, j=None):
        return {v for v in variables if v[:3] == (x, y, z) and (i is None or v[3] == i) and (j is None or v[4] == j)}

    constraints = []
    for w, x, y, z in cartesian(objects, repeat=4):
        for i, j, k in cartesian(range(hom[w, x]), range(hom[x, y]), range(hom[y, z])):
            sc = scope(w, x, y, i, j) | scope(x, y, z, j, k) | scope(w, y, z, None, k) | scope(w, x, z, i, None)

            def holds(asg, w=w, x=x, y=y, z=z, i=i, j=j, k=k):
                left = comp(asg, w, y, z, comp(asg, w, x, y, i, j), k)
                right = comp(asg, w, x, z, i, comp(asg, x, y, z, j, k))
                return left == right

            constraints.append(Constraint(frozenset(sc), holds))
    out = []
    for asg in backtrack(variables, domains, constraints):
        out.append({(x, y, z, i, j): comp(asg, x, y, z, i, j)
                    for x, y, z in cartesian(objects, repeat=3)
                    for i in range(hom[x, y]) for j in range(hom[y, z])})
    return out


def _canonical_key(objects: tuple, hom: dict, table: dict) -> tuple:
    """Smallest encoding over object permutations and relabellings of non-endo homs."""
    best = None
    for perm in permutations(range(len(objects))):
        rename = {objects[k]: objects[perm[k]] for k in range(len(objects))}
        cross = [(a, b) for a in objects for b in objects if a != b and hom[a, b] > 1]
        for flips in cartesian(*[list(permutations(range(hom[p]))) for p in cross]):
            relabel = dict(zip(cross, flips))

            def lab(a, b, i):
                return relabel[a, b][i] if (a, b) in relabel else i

            sizes = {(rename[a], rename[b]): hom[a, b] for a in objects for b in objects}
            entries = {}
            for (x, y, z, i, j), v in table.items():
                entries[rename[x], rename[y], rename[z], lab(x, y, i), lab(y, z, j)] = lab(x, z, v)
            key = (tuple(sizes[a, b] for a in objects for b in objects), tuple(sorted(entries.items())))
            if best is None or key < best:
                best = key
    return best


def enumerate_categories(max_objects: int = 2, max_hom: int = 2) -> list[VCategory]:
    """One category per isomorphism class with at most ``max_objects`` objects
    and hom sets of size at most ``max_hom``, the empty category included."""
    found = [empty()]
    for n in range(1, max_objects + 1):
        objects = tuple(str(k) for k in range(n))
        pairs = list(cartesian(objects, repeat=2))
        seen = set()
        for sizes in cartesian(range(max_hom + 1), repeat=len(pairs)):
            hom = dict(zip(pairs, sizes))
            if any(hom[a, a] == 0 for a in objects):
                continue
            for table in _composition_tables(objects, hom):
                key = _canonical_key(objects, hom, table)
                if key in seen:
                    continue
                seen.add(key)
                arrows = {(a, b): tuple(f"{a}{b}{k}" for k in range(hom[a, b])) for a, b in pairs}
                lookup = {}
                for (x, y, z, i, j), v in table.items():
                    lookup[arrows[x, y][i], arrows[y, z][j]] = arrows[x, z][v]
                found.append(set_category(objects, arrows, lookup, {a: arrows[a, a][0] for a in objects},
                                          name=f"C{len(found)}"))
    return found

"""Brute-force reference computations used to cross-check the constructions.

Each oracle takes a different route from the code it checks: table lookups
instead of multicategory composition, classical cell-level descriptions
instead of enriched data, grid sampling and basis enumeration instead of
vertex enumeration and simplex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product as cartesian
from typing import Any, Sequence

from sympy import Matrix, Rational

from .enriched import MultiEntryFunctor, VCategory, object_tuples
from .finord import OrdMap
from .vfinset import MultiMap, fs_apply


# finite sets


def naive_compose(phi: OrdMap, gs: Sequence[MultiMap], f: MultiMap) -> MultiMap:
    """Composite table evaluated pointwise, argument by argument."""
    fibers = phi.fibers
    sources = [0] * phi.source_size
    for j, g in enumerate(gs):
        for i, s in zip(fibers[j], g.sources):
            sources[i - 1] = s
    table = []
    for args in cartesian(*[range(1, s + 1) for s in sources]):
        inner = [fs_apply(g, [args[i - 1] for i in fibers[j]]) for j, g in enumerate(gs)]
        table.append(fs_apply(f, inner))
    return MultiMap(tuple(sources), f.target, tuple(table))


def _apply(m: MultiMap, args: Sequence[int]) -> int:
    return fs_apply(m, list(args))


def natural_families(F: MultiEntryFunctor, G: MultiEntryFunctor) -> list[tuple[int, ...]]:
    """All families ``t_A`` of arrows with ``F(u) t_E = t_A G(u)`` for every arrow tuple ``u``.

    Arrows are 1-based element indices; families are listed in object-tuple order.
    """
    C = F.target
    tuples = object_tuples(F.sources)
    choices = [range(1, C.hom[F.obj_map[a], G.obj_map[a]] + 1) for a in tuples]
    out = []
    for family in cartesian(*choices):
        t = dict(zip(tuples, family))
        if all(_square_commutes(F, G, C, t, a, e) for a, e in cartesian(tuples, repeat=2)):
            out.append(tuple(family))
    return out


def _square_commutes(F, G, C: VCategory, t: dict, a: tuple, e: tuple) -> bool:
    fa, fe, ga, ge = F.obj_map[a], F.obj_map[e], G.obj_map[a], G.obj_map[e]
    sizes = [s.hom[a[i], e[i]] for i, s in enumerate(F.sources)]
    for u in cartesian(*[range(1, s + 1) for s in sizes]):
        left = _apply(C.kappa[fa, fe, ge], (_apply(F.components[a, e], u), t[e]))
        right = _apply(C.kappa[fa, ga, ge], (t[a], _apply(G.components[a, e], u)))
        if left != right:
            return False
    return True


def end_families(end) -> list[tuple[int, ...]]:
    """The family of components named by each element of a finite-set end."""
    size = end.obj
    return [tuple(end.p[a].table[k] for a in end.tuples) for k in range(size)]


# strict 2-categories given cell by cell


@dataclass
class TwoCategoryData:
    """A strict 2-category described by its cells.

    ``cells2[(a, b)]`` lists ``(label, source 1-cell, target 1-cell)``;
    ``vcomp(alpha, beta)`` composes vertically (``alpha`` first);
    ``hcomp1`` and ``hcomp2`` compose horizontally (first argument first).
    """

    objects: tuple
    cells1: dict
    cells2: dict
    id1: dict
    id2: dict
    vcomp: Any
    hcomp1: Any
    hcomp2: Any

    def two_cells(self, a, b, u=None, v=None) -> list:
        return [c for c in self.cells2[a, b] if (u is None or c[1] == u) and (v is None or c[2] == v)]


def fixture_two_category_data() -> TwoCategoryData:
    """Objects ``x, y``; one 2-cell ``alpha: f => g`` between the two 1-cells ``x -> y``."""
    cells1 = {("x", "x"): ["*"], ("y", "y"): ["*"], ("x", "y"): ["f", "g"], ("y", "x"): []}
    cells2 = {
        ("x", "x"): [("1", "*", "*")],
        ("y", "y"): [("1", "*", "*")],
        ("x", "y"): [("idf", "f", "f"), ("idg", "g", "g"), ("alpha", "f", "g")],
        ("y", "x"): [],
    }
    id1 = {"x": "*", "y": "*"}
    id2 = {"*": "1", "f": "idf", "g": "idg"}

    def vcomp(p, q):
        return q if p in ("idf", "idg", "1") else p

    def hcomp1(u, v):
        return v if u == "*" else u

    def hcomp2(p, q):
        return q if p == "1" else p

    return TwoCategoryData(("x", "y"), cells1, cells2, id1, id2, vcomp, hcomp1, hcomp2)


@dataclass(frozen=True)
class TwoFunctor:
    objects: tuple  # pairs (a, F a)
    ones: tuple  # ((a, b, u), F u)
    twos: tuple  # ((a, b, label), F label)

    def obj(self, a):
        return dict(self.objects)[a]

    def one(self, a, b, u):
        return dict(self.ones)[a, b, u]

    def two(self, a, b, c):
        return dict(self.twos)[a, b, c]


def two_functors(T: TwoCategoryData) -> list[TwoFunctor]:
    """Every strict 2-functor ``T -> T``, by exhaustive search over cell images."""
    out = []
    pairs = [(a, b) for a in T.objects for b in T.objects]
    for images in cartesian(T.objects, repeat=len(T.objects)):
        om = dict(zip(T.objects, images))
        slots1 = [(a, b, u) for a, b in pairs for u in T.cells1[a, b]]
        slots2 = [(a, b, c[0]) for a, b in pairs for c in T.cells2[a, b]]
        choice1 = [T.cells1[om[a], om[b]] for a, b, _ in slots1]
        for img1 in cartesian(*choice1):
            m1 = dict(zip(slots1, img1))
            if any(m1[a, a, T.id1[a]] != T.id1[om[a]] for a in T.objects):
                continue
            if not all(m1[a, c, T.hcomp1(u, v)] == T.hcomp1(m1[a, b, u], m1[b, c, v])
                       for a, b, c in cartesian(T.objects, repeat=3)
                       for u in T.cells1[a, b] for v in T.cells1[b, c]):
                continue
            choice2 = []
            for a, b, label in slots2:
                _, u, v = next(c for c in T.cells2[a, b] if c[0] == label)
                choice2.append([c[0] for c in T.two_cells(om[a], om[b], m1[a, b, u], m1[a, b, v])])
            for img2 in cartesian(*choice2):
                m2 = dict(zip(slots2, img2))
                if _preserves_two_cells(T, m1, m2):
                    out.append(TwoFunctor(tuple(om.items()), tuple(m1.items()), tuple(m2.items())))
    return out


def _preserves_two_cells(T: TwoCategoryData, m1: dict, m2: dict) -> bool:
    for a, b in [(a, b) for a in T.objects for b in T.objects]:
        for u in T.cells1[a, b]:
            if m2[a, b, T.id2[u]] != T.id2[m1[a, b, u]]:
                return False
        for p, q in cartesian(T.cells2[a, b], repeat=2):
            if p[2] == q[1] and m2[a, b, T.vcomp(p[0], q[0])] != T.vcomp(m2[a, b, p[0]], m2[a, b, q[0]]):
                return False
    for a, b, c in cartesian(T.objects, repeat=3):
        for p in T.cells2[a, b]:
            for q in T.cells2[b, c]:
                if m2[a, c, T.hcomp2(p[0], q[0])] != T.hcomp2(m2[a, b, p[0]], m2[b, c, q[0]]):
                    return False
    return True


def two_natural_transformations(T: TwoCategoryData, F: TwoFunctor, G: TwoFunctor) -> list[tuple]:
    """Families of 1-cells ``t_a: F a -> G a`` natural in 1-cells and 2-cells, strictly."""
    out = []
    for family in cartesian(*[T.cells1[F.obj(a), G.obj(a)] for a in T.objects]):
        t = dict(zip(T.objects, family))
        ok = True
        for a, b in [(a, b) for a in T.objects for b in T.objects]:
            for u in T.cells1[a, b]:
                if T.hcomp1(F.one(a, b, u), t[b]) != T.hcomp1(t[a], G.one(a, b, u)):
                    ok = False
            for c in T.cells2[a, b]:
                left = T.hcomp2(F.two(a, b, c[0]), T.id2[t[b]])
                right = T.hcomp2(T.id2[t[a]], G.two(a, b, c[0]))
                if left != right:
                    ok = False
        if ok:
            out.append(tuple(family))
    return out


def modifications(T: TwoCategoryData, F: TwoFunctor, G: TwoFunctor, s: tuple, t: tuple) -> list[tuple]:
    """Families of 2-cells ``m_a: s_a => t_a`` compatible with every 1-cell."""
    sd, td = dict(zip(T.objects, s)), dict(zip(T.objects, t))
    out = []
    for family in cartesian(*[[c[0] for c in T.two_cells(F.obj(a), G.obj(a), sd[a], td[a])] for a in T.objects]):
        m = dict(zip(T.objects, family))
        ok = all(
            T.hcomp2(T.id2[F.one(a, b, u)], m[b]) == T.hcomp2(m[a], T.id2[G.one(a, b, u)])
            for a in T.objects for b in T.objects for u in T.cells1[a, b]
        )
        if ok:
            out.append(tuple(family))
    return out


# whiskering in Set


def classical_left_whisker(F: MultiEntryFunctor, family: dict) -> dict:
    """Components ``lambda_{F(a)}`` of the precomposite."""
    return {a: family[(F.obj_map[a],)] for a in object_tuples(F.sources)}


def classical_right_whisker(H: MultiEntryFunctor, source: MultiEntryFunctor, target: MultiEntryFunctor,
                            family: dict) -> dict:
    """Components ``H(lambda_a)`` of the postcomposite."""
    out = {}
    for a in object_tuples(source.sources):
        x, y = source.obj_map[a], target.obj_map[a]
        out[a] = _apply(H.components[(x,), (y,)], (family[a],))
    return out


# seminorms


def seminorm_value(functionals: Sequence[Sequence[Fraction]], span: Sequence[Sequence[Fraction]], x):
    """Direct evaluation: membership by rank, then the largest absolute functional value."""
    x = [Fraction(v) for v in x]
    if any(x):
        base = Matrix([[Rational(v.numerator, v.denominator) for v in row] for row in span]) if span else None
        r0 = 0 if base is None else base.rank()
        rows = [list(row) for row in span] + [x]
        r1 = Matrix([[Rational(Fraction(v).numerator, Fraction(v).denominator) for v in row] for row in rows]).rank()
        if r1 > r0:
            return math.inf
    return max((abs(sum(Fraction(a) * b for a, b in zip(row, x))) for row in functionals), default=Fraction(0))


def grid(dim: int, steps: int, radius: int = 1) -> list[tuple[Fraction, ...]]:
    """Rational grid ``{k / steps : |k| <= radius * steps}^dim``."""
    ticks = [Fraction(k, steps) for k in range(-radius * steps, radius * steps + 1)]
    return list(cartesian(ticks, repeat=dim))


def grid_hom_ratio(f, steps: int = 4, level: int = 0, lams: Sequence[Sequence[int]] | None = None):
    """Largest sampled ratio ``|f(x)| / prod |x_i|`` over a dense rational grid.

    Returns ``(ratio, argument tuple)``; arguments of zero or infinite norm
    are skipped.
    """
    lams = lams or [tuple(0 for _ in f.sources)]
    best, where = Fraction(0), None
    for lam in lams:
        src = [s.seminorm(l) for s, l in zip(f.sources, lam)]
        tgt = f.target.seminorm(sum(lam) + level)
        pools = []
        for s in src:
            pts = []
            for x in grid(s.dim, steps):
                v = seminorm_value(s.functionals, s.basis, x)
                if v != 0 and v != math.inf:
                    pts.append((x, v))
            pools.append(pts)
        for combo in cartesian(*pools):
            xs = [x for x, _ in combo]
            denom = math.prod(v for _, v in combo)
            num = seminorm_value(tgt.functionals, tgt.basis, f(*xs))
            if num == math.inf:
                return math.inf, (lam, tuple(xs))
            ratio = num / denom
            if ratio > best or where is None:
                best, where = ratio, (lam, tuple(xs))
    return best, where


def is_ball_vertex(functionals: Sequence[Sequence[Fraction]], span: Sequence[Sequence[Fraction]], x) -> bool:
    """``x`` lies in the unit ball and its active constraints have full rank on ``W``."""
    if seminorm_value(functionals, span, x) != 1:
        return False
    active = [row for row in functionals if abs(sum(Fraction(a) * b for a, b in zip(row, x))) == 1]
    if not span:
        return False
    w = Matrix([[Rational(Fraction(v).numerator, Fraction(v).denominator) for v in row] for row in span])
    a = Matrix([[Rational(Fraction(v).numerator, Fraction(v).denominator) for v in row] for row in active])
    return (a * w.T).rank() == w.rank()


def minkowski_by_bases(points: Sequence[Sequence], x: Sequence):
    """Minkowski functional by enumerating basic solutions of ``sum w_i q_i = x``, ``w >= 0``
    over the signed points ``q = +-p``."""
    x = [Fraction(v) for v in x]
    if not any(x):
        return Fraction(0)
    signed = [tuple(Fraction(v) for v in p) for p in points] + [tuple(-Fraction(v) for v in p) for p in points]
    signed = [q for q in signed if any(q)]
    if not signed:
        return math.inf
    big = Matrix([[Rational(q[i].numerator, q[i].denominator) for q in signed] for i in range(len(x))])
    r = big.rank()
    target = Matrix([Rational(v.numerator, v.denominator) for v in x])
    if big.row_join(target).rank() > r:
        return math.inf
    best = None
    for cols in combinations(range(len(signed)), r):
        sub = big[:, list(cols)]
        if sub.rank() < r:
            continue
        sol = (sub.T * sub).LUsolve(sub.T * target)
        if sub * sol != target or any(v < 0 for v in sol):
            continue
        total = sum(sol)
        if best is None or total < best:
            best = total
    return Fraction(int(best.p), int(best.q))

"""Finite-dimensional rational spaces with level-indexed polyhedral seminorms
and the multicategory of short multilinear maps between them.

Scalars are :class:`fractions.Fraction`; the extended value ``INF`` is
``math.inf``.  Levels live in the trivial monoid ``{0}`` or in the integers;
an integer-levelled space stores one seminorm per level of a window
``[lo, hi]`` and is constant outside it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product as cartesian
from typing import Any, Iterable, Sequence

from sympy import Matrix, Rational
from sympy.polys.matrices import DomainMatrix
from sympy.polys.domains import QQ
from sympy.solvers.simplex import InfeasibleLPError, UnboundedLPError, linprog

from .finord import OrdMap
from .multicat import Multicategory, NotAFork, SignatureError, SizeBoundExceeded, limit

INF = math.inf
Vector = tuple  # of Fraction

MAX_BALL_DIM = 4
MAX_FUNCTIONALS = 8
MAX_HULL_POINTS = 4096

TRIVIAL = "trivial"
INTEGERS = "Z"


class NormBallUnbounded(ValueError):
    """A unit ball is not a bounded polytope, so vertex enumeration does not apply."""


# exact linear algebra


def _q(x: Fraction):
    return QQ(x.numerator, x.denominator)


def _frac(e) -> Fraction:
    return Fraction(int(e.numerator), int(e.denominator))


def _dm(rows: Sequence[Sequence[Fraction]], ncols: int) -> DomainMatrix:
    return DomainMatrix([[_q(Fraction(x)) for x in r] for r in rows], (len(rows), ncols), QQ)


def _to_rows(m: DomainMatrix) -> list[Vector]:
    return [tuple(_frac(e) for e in row) for row in m.to_list()]


def rref_basis(vectors: Iterable[Sequence[Fraction]], d: int) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
    """Reduced row echelon basis of the span and its pivot columns."""
    rows = [tuple(Fraction(x) for x in v) for v in vectors]
    if not rows or d == 0:
        return (), ()
    r, pivots = _dm(rows, d).rref()
    return tuple(_to_rows(r)[: len(pivots)]), tuple(pivots)


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vector]:
    """Basis of ``{x : r.x = 0 for every row r}``."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    if ncols == 0:
        return []
    return _to_rows(_dm(rows, ncols).nullspace())


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _vec(x: Iterable) -> Vector:
    return tuple(Fraction(v) for v in x)


def _unit(d: int, i: int) -> Vector:
    return tuple(Fraction(int(i == j)) for j in range(d))


def kron(*vectors: Sequence[Fraction]) -> Vector:
    """Flattened outer product, last factor fastest."""
    out: list[Fraction] = [Fraction(1)]
    for v in vectors:
        out = [a * b for a in out for b in v]
    return tuple(out)


def _dedupe_up_to_sign(rows: Iterable[Vector]) -> tuple[Vector, ...]:
    seen, out = set(), []
    for r in rows:
        if not any(r):
            continue
        neg = tuple(-x for x in r)
        if r in seen or neg in seen:
            continue
        seen.add(r)
        out.append(r)
    return tuple(out)


# seminorms


@dataclass(frozen=True)
class PolySeminorm:
    """``value(x) = max_i |a_i . x|`` on the subspace ``W`` and ``INF`` off it.

    ``basis`` is the reduced echelon basis of ``W`` with pivot columns
    ``pivots``; build instances with :func:`poly_seminorm`.
    """

    dim: int
    basis: tuple[Vector, ...]
    pivots: tuple[int, ...]
    functionals: tuple[Vector, ...]

    def contains(self, x: Sequence[Fraction]) -> bool:
        expected = [Fraction(0)] * self.dim
        for row, p in zip(self.basis, self.pivots):
            c = x[p]
            if c:
                for j, v in enumerate(row):
                    expected[j] += c * v
        return all(a == b for a, b in zip(expected, x))

    def value(self, x: Sequence[Fraction]):
        if len(x) != self.dim:
            raise ValueError(f"vector of length {len(x)} in a space of dimension {self.dim}")
        if not self.contains(x):
            return INF
        return max((abs(dot(a, x)) for a in self.functionals), default=Fraction(0))

    def annihilator(self) -> list[Vector]:
        """Rows vanishing exactly on ``W``."""
        return nullspace(self.basis, self.dim) if self.basis else [_unit(self.dim, i) for i in range(self.dim)]

    def coordinates(self, x: Sequence[Fraction]) -> Vector:
        """Coordinates of ``x`` in ``W`` with respect to the echelon basis."""
        return tuple(Fraction(x[p]) for p in self.pivots)

    def embed(self, y: Sequence[Fraction]) -> Vector:
        out = [Fraction(0)] * self.dim
        for c, row in zip(y, self.basis):
            for j, v in enumerate(row):
                out[j] += c * v
        return tuple(out)

    def local_functionals(self) -> list[Vector]:
        """Functionals expressed in the coordinates of ``W``."""
        return [tuple(dot(a, row) for row in self.basis) for a in self.functionals]

    def is_bounded(self) -> bool:
        k = len(self.basis)
        if k == 0:
            return True
        local = [r for r in self.local_functionals() if any(r)]
        return bool(local) and len(rref_basis(local, k)[0]) == k

    def vertices(self) -> tuple[Vector, ...]:
        """Vertices of the unit ball ``{x in W : |a_i . x| <= 1}``, in a fixed order."""
        cached = self.__dict__.get("_vertices")
        if cached is not None:
            return cached
        k = len(self.basis)
        if k == 0:
            result: tuple[Vector, ...] = (tuple(Fraction(0) for _ in range(self.dim)),)
        else:
            if not self.is_bounded():
                raise NormBallUnbounded("unit ball is unbounded: functionals do not have full rank on W")
            local = list(_dedupe_up_to_sign(tuple(r) for r in self.local_functionals()))
            if k > MAX_BALL_DIM or len(local) > MAX_FUNCTIONALS:
                raise SizeBoundExceeded(
                    f"vertex enumeration limited to dimension {MAX_BALL_DIM} and {MAX_FUNCTIONALS} functionals")
            found: list[Vector] = []
            seen = set()
            for rows in combinations(local, k):
                m = _dm(rows, k)
                if m.det() == 0:
                    continue
                inv = _to_rows(m.inv())
                for signs in cartesian((1, -1), repeat=k):
                    y = tuple(sum((inv[i][j] * signs[j] for j in range(k)), Fraction(0)) for i in range(k))
                    if all(abs(dot(a, y)) <= 1 for a in local) and y not in seen:
                        seen.add(y)
                        found.append(y)
            result = tuple(self.embed(y) for y in found)
        object.__setattr__(self, "_vertices", result)
        return result


def poly_seminorm(dim: int, functionals: Iterable[Sequence] = (), span: Iterable[Sequence] | None = None) -> PolySeminorm:
    """Seminorm from functionals (rows) and a spanning set of ``W`` (whole space when ``None``)."""
    funcs = tuple(_vec(a) for a in functionals)
    for a in funcs:
        if len(a) != dim:
            raise ValueError("functional has the wrong length")
    spanning = [_unit(dim, i) for i in range(dim)] if span is None else [_vec(v) for v in span]
    for v in spanning:
        if len(v) != dim:
            raise ValueError("spanning vector has the wrong length")
    basis, pivots = rref_basis(spanning, dim)
    return PolySeminorm(dim, basis, pivots, _dedupe_up_to_sign(funcs))


def _lp_max(objective: Sequence[Fraction], rows: Sequence[Sequence[Fraction]]):
    """``max objective . y`` subject to ``|r . y| <= 1`` with ``y`` free; ``INF`` if unbounded."""
    k = len(objective)
    if k == 0:
        return Fraction(0)
    a = [[Rational(x.numerator, x.denominator) for x in r] for r in rows]
    a += [[-x for x in r] for r in a]
    if not a:
        return INF if any(objective) else Fraction(0)
    c = [-Rational(x.numerator, x.denominator) for x in objective]
    try:
        opt, sol = linprog(c, Matrix(a), [1] * len(a), bounds=(None, None))
    except UnboundedLPError:
        return INF
    if any(v > 1 for v in Matrix(a) * Matrix(sol)):
        raise ArithmeticError("exact LP returned a point off the constraint set")
    return -Fraction(int(opt.p), int(opt.q))


# spaces


@dataclass(frozen=True)
class ShortSpace:
    """A rational space with a monotone family of polyhedral seminorms.

    ``seminorms[k]`` is the seminorm at level ``lo + k``; levels below ``lo``
    and above ``hi`` clamp.  ``monoid`` is ``TRIVIAL`` (only level 0) or
    ``INTEGERS``.
    """

    dim: int
    lo: int
    seminorms: tuple[PolySeminorm, ...]
    monoid: str = TRIVIAL

    @property
    def hi(self) -> int:
        return self.lo + len(self.seminorms) - 1

    def seminorm(self, level: int) -> PolySeminorm:
        if self.monoid == TRIVIAL and level != 0:
            raise ValueError("the trivial monoid has only the level 0")
        return self.seminorms[min(max(level, self.lo), self.hi) - self.lo]

    def value(self, x: Sequence[Fraction], level: int = 0):
        return self.seminorm(level).value(_vec(x))

    def levels(self) -> range:
        return range(self.lo, self.hi + 1)


def short_space(dim: int, levels: dict[int, PolySeminorm] | PolySeminorm, monoid: str | None = None,
                validate: bool = True) -> ShortSpace:
    """Build a space from one seminorm (trivial levels) or a window ``{level: seminorm}``."""
    if isinstance(levels, PolySeminorm):
        levels = {0: levels}
        monoid = monoid or TRIVIAL
    monoid = monoid or INTEGERS
    keys = sorted(levels)
    if not keys or keys != list(range(keys[0], keys[-1] + 1)):
        raise ValueError("levels must form a non-empty window of consecutive integers")
    if monoid == TRIVIAL and keys != [0]:
        raise ValueError("the trivial monoid has only the level 0")
    for s in levels.values():
        if s.dim != dim:
            raise ValueError("seminorm dimension differs from the space dimension")
    space = ShortSpace(dim, keys[0], tuple(levels[k] for k in keys), monoid)
    if validate:
        problem = monotonicity_witness(space)
        if problem is not None:
            raise ValueError(f"not a short space: {problem}")
    return space


def monotonicity_witness(space: ShortSpace) -> str | None:
    """``None`` when every vector is finite at the lowest level and values grow with the level."""
    bottom = space.seminorms[0]
    if len(bottom.basis) != space.dim:
        return f"level {space.lo} is not finite on the whole space"
    for level in range(space.lo, space.hi):
        low, high = space.seminorm(level), space.seminorm(level + 1)
        for v in high.basis:
            if not low.contains(v):
                return f"finite vectors at level {level + 1} are infinite at level {level}"
        local_high = high.local_functionals()
        for a in low.functionals:
            objective = tuple(dot(a, row) for row in high.basis)
            if _lp_max(objective, local_high) > 1:
                return f"a vector of norm 1 at level {level + 1} has larger norm at level {level}"
    return None


def seminorm_eval(s: ShortSpace, x: Sequence, level: int = 0):
    """Value of ``x`` at ``level``; ``INF`` off the finiteness subspace."""
    if len(x) != s.dim:
        raise ValueError(f"vector of length {len(x)} in a space of dimension {s.dim}")
    return s.value(x, level)


def normed_space(dim: int, functionals: Iterable[Sequence], monoid: str = TRIVIAL) -> ShortSpace:
    """A space with the same norm at every level."""
    return short_space(dim, {0: poly_seminorm(dim, functionals)}, monoid)


def real_line(monoid: str = TRIVIAL) -> ShortSpace:
    """The rationals with the absolute value."""
    return normed_space(1, [(1,)], monoid)


def sup_space(dim: int, monoid: str = TRIVIAL) -> ShortSpace:
    """Rational ``dim``-space with the max norm."""
    return normed_space(dim, [_unit(dim, i) for i in range(dim)], monoid)


# maps


def _shape_size(shape: Sequence[int]) -> int:
    return math.prod(shape)


def contract(coeffs: Sequence[Fraction], shape: Sequence[int], xs: Sequence[Sequence[Fraction]]) -> Vector:
    """Evaluate the multilinear map with coefficient tensor ``coeffs`` of ``shape``."""
    vals = list(coeffs)
    for x, d in zip(reversed(xs), reversed(shape[1:])):
        vals = [sum((vals[r * d + j] * x[j] for j in range(d)), Fraction(0)) for r in range(len(vals) // d)]
    return tuple(vals)


@dataclass(frozen=True)
class ShortMultiMap:
    """A multilinear map given by its coefficient tensor.

    The tensor has shape ``(target.dim, sources[0].dim, ...)`` and is stored
    flat in row-major order.  Shortness is a property checked separately.
    """

    sources: tuple[ShortSpace, ...]
    target: ShortSpace
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != _shape_size(self.shape):
            raise ValueError(f"tensor of size {len(self.coeffs)} does not fit shape {self.shape}")

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.target.dim,) + tuple(s.dim for s in self.sources)

    def __call__(self, *xs: Sequence[Fraction]) -> Vector:
        if len(xs) != len(self.sources):
            raise SignatureError(f"map of arity {len(self.sources)} applied to {len(xs)} vectors")
        for x, s in zip(xs, self.sources):
            if len(x) != s.dim:
                raise ValueError("argument has the wrong dimension")
        return contract(self.coeffs, self.shape, [_vec(x) for x in xs])

    def scaled(self, c) -> "ShortMultiMap":
        c = Fraction(c)
        return ShortMultiMap(self.sources, self.target, tuple(c * v for v in self.coeffs))

    def minus(self, other: "ShortMultiMap") -> "ShortMultiMap":
        if other.shape != self.shape:
            raise SignatureError("maps have different shapes")
        return ShortMultiMap(self.sources, self.target, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))


def short_map(sources: Sequence[ShortSpace], target: ShortSpace, coeffs: Iterable) -> ShortMultiMap:
    return ShortMultiMap(tuple(sources), target, _vec(coeffs))


def linear_map(source: ShortSpace, target: ShortSpace, matrix: Sequence[Sequence]) -> ShortMultiMap:
    """Unary map from a ``target.dim x source.dim`` matrix."""
    return short_map((source,), target, [x for row in matrix for x in row])


def identity_short(space: ShortSpace) -> ShortMultiMap:
    d = space.dim
    return linear_map(space, space, [_unit(d, i) for i in range(d)])


def map_from_function(sources: Sequence[ShortSpace], target: ShortSpace, fn) -> ShortMultiMap:
    """Coefficient tensor of a multilinear function, read off on basis vectors."""
    sources = tuple(sources)
    columns = [fn(*[_unit(s.dim, j) for s, j in zip(sources, js)])
               for js in cartesian(*[range(s.dim) for s in sources])]
    n = len(columns)
    return short_map(sources, target, [columns[c][k] for k in range(target.dim) for c in range(n)])


def _same_monoid(spaces: Iterable[ShortSpace]) -> str:
    kinds = {s.monoid for s in spaces}
    if len(kinds) > 1:
        raise ValueError("spaces use different level monoids")
    return kinds.pop() if kinds else TRIVIAL


def source_level_ranges(sources: Sequence[ShortSpace], target: ShortSpace, level: int) -> list[range]:
    """Levels ``lambda_i`` that suffice for the supremum defining the hom seminorm.

    Below ``lo_i`` the source is unchanged and the target level only drops;
    above ``hi_i`` the source is unchanged and the target level saturates once
    the total reaches ``target.hi``.
    """
    if _same_monoid(list(sources) + [target]) == TRIVIAL:
        return [range(0, 1) for _ in sources]
    total_lo = sum(s.lo for s in sources)
    return [range(s.lo, max(s.hi, target.hi - level - (total_lo - s.lo)) + 1) for s in sources]


@dataclass(frozen=True)
class HomWitness:
    """Where the hom seminorm is attained: source levels and ball vertices."""

    value: Any
    levels: tuple[int, ...]
    vertices: tuple[Vector, ...]


def hom_seminorm_witness(f: ShortMultiMap, level: int = 0, threshold=None) -> HomWitness:
    """Hom seminorm of ``f`` at ``level`` with an attaining vertex tuple.

    With ``threshold`` the search stops at the first tuple exceeding it.
    """
    best = HomWitness(Fraction(0), (), ())
    first = True
    for lams in cartesian(*source_level_ranges(f.sources, f.target, level)):
        balls = [s.seminorm(lam).vertices() for s, lam in zip(f.sources, lams)]
        out = f.target.seminorm(sum(lams) + level)
        for vs in cartesian(*balls):
            v = out.value(contract(f.coeffs, f.shape, vs))
            if first or v > best.value:
                best = HomWitness(v, tuple(lams), tuple(vs))
                first = False
                if v == INF or (threshold is not None and v > threshold):
                    return best
    return best


def hom_seminorm(f: ShortMultiMap, level: int = 0):
    """Smallest ``c`` with ``|f(x)|_{sum(lambda)+level} <= c * prod |x_i|_{lambda_i}``."""
    return hom_seminorm_witness(f, level).value


def check_short(f: ShortMultiMap) -> tuple[bool, HomWitness | None]:
    """``(True, None)`` for a short map, else ``(False, witness)`` at a violating vertex tuple."""
    w = hom_seminorm_witness(f, 0, threshold=Fraction(1))
    return (True, None) if w.value <= 1 else (False, w)


def short_compose(phi: OrdMap, gs: Sequence[ShortMultiMap], f: ShortMultiMap) -> ShortMultiMap:
    """Substitute ``gs[j]`` into input ``j`` of ``f``, inputs routed by ``phi``."""
    n = phi.target_size
    if len(gs) != n or len(f.sources) != n:
        raise SignatureError("composition arity mismatch")
    fibers = phi.fibers
    srcs: list[ShortSpace | None] = [None] * phi.source_size
    for j, g in enumerate(gs):
        if len(g.sources) != len(fibers[j]):
            raise SignatureError("inner map arity differs from its fiber", j + 1)
        if g.target != f.sources[j]:
            raise SignatureError("inner target differs from outer source", j + 1)
        for i, s in zip(fibers[j], g.sources):
            srcs[i - 1] = s
    return _substitute(phi, gs, f, tuple(srcs))


def _substitute(phi: OrdMap, gs: Sequence[ShortMultiMap], f: ShortMultiMap, srcs: tuple) -> ShortMultiMap:
    fibers = phi.fibers
    columns = []
    for js in cartesian(*[range(s.dim) for s in srcs]):
        args = [contract(g.coeffs, g.shape, [_unit(srcs[i - 1].dim, js[i - 1]) for i in fibers[k]])
                for k, g in enumerate(gs)]
        columns.append(contract(f.coeffs, f.shape, args))
    n = len(columns)
    return ShortMultiMap(srcs, f.target, tuple(columns[c][k] for k in range(f.target.dim) for c in range(n)))


# limits


def short_product(spaces: Sequence[ShortSpace]) -> tuple[ShortSpace, list[ShortMultiMap]]:
    """Direct sum with the supremum seminorms and the coordinate projections."""
    spaces = tuple(spaces)
    monoid = _same_monoid(spaces)
    dim = sum(s.dim for s in spaces)
    offsets = [sum(s.dim for s in spaces[:k]) for k in range(len(spaces))]
    if spaces:
        lo, hi = min(s.lo for s in spaces), max(s.hi for s in spaces)
    else:
        lo = hi = 0
    levels = {}
    for level in range(lo, hi + 1):
        span, funcs = [], []
        for s, off in zip(spaces, offsets):
            sn = s.seminorm(level)

            def lift(v, off=off, d=s.dim):
                return (Fraction(0),) * off + tuple(v) + (Fraction(0),) * (dim - off - d)

            span += [lift(v) for v in sn.basis]
            funcs += [lift(a) for a in sn.functionals]
        levels[level] = poly_seminorm(dim, funcs, span)
    prod_space = short_space(dim, levels, monoid, validate=False)
    projections = []
    for s, off in zip(spaces, offsets):
        rows = [_unit(dim, off + i) for i in range(s.dim)]
        projections.append(linear_map(prod_space, s, rows))
    return prod_space, projections


def into_product(hs: Sequence[ShortMultiMap], product_space: ShortSpace | None = None) -> ShortMultiMap:
    """Tuple maps with common sources into the product of their targets."""
    hs = list(hs)
    if not hs:
        raise ValueError("tupling needs at least one map or an explicit empty product")
    srcs = hs[0].sources
    for h in hs:
        if h.sources != srcs:
            raise SignatureError("tupled maps must share their sources")
    if product_space is None:
        product_space = short_product([h.target for h in hs])[0]
    return ShortMultiMap(srcs, product_space, tuple(x for h in hs for x in h.coeffs))


def short_kernel(h: ShortMultiMap) -> tuple[ShortSpace, ShortMultiMap]:
    """Kernel of a linear map with restricted seminorms, and its inclusion."""
    if len(h.sources) != 1:
        raise SignatureError("kernels are taken of unary maps")
    x = h.sources[0]
    d = x.dim
    matrix = [h.coeffs[k * d:(k + 1) * d] for k in range(h.target.dim)]
    basis, pivots = rref_basis(nullspace(matrix, d), d)
    k = len(basis)
    levels = {}
    for level in x.levels():
        sn = x.seminorm(level)
        # coordinates y with sum y_c basis_c in W
        conditions = [tuple(dot(a, b) for b in basis) for a in sn.annihilator()]
        span = nullspace(conditions, k)
        funcs = [tuple(dot(a, b) for b in basis) for a in sn.functionals]
        levels[level] = poly_seminorm(k, funcs, span)
    space = short_space(k, levels, x.monoid, validate=False)
    inclusion = linear_map(space, x, [tuple(b[i] for b in basis) for i in range(d)])
    object.__setattr__(inclusion, "_pivots", pivots)
    return space, inclusion


def short_equalizer(f: ShortMultiMap, g: ShortMultiMap) -> tuple[ShortSpace, ShortMultiMap]:
    return short_kernel(f.minus(g))


def factor_through_kernel(j: ShortMultiMap, inclusion: ShortMultiMap) -> ShortMultiMap:
    """The unique ``n`` with ``inclusion . n = j``; raises :class:`NotAFork` if none exists."""
    k_space = inclusion.sources[0]
    x = inclusion.target
    pivots = inclusion.__dict__.get("_pivots")
    if pivots is None:
        raise ValueError("inclusion was not produced by short_kernel")
    rest = _shape_size(j.shape[1:])
    coeffs = tuple(j.coeffs[p * rest:(p + 1) * rest] for p in pivots)
    n = ShortMultiMap(j.sources, k_space, tuple(v for row in coeffs for v in row))
    back = short_compose(OrdMap(len(j.sources), 1, (1,) * len(j.sources)), [n], inclusion)
    if back.coeffs != j.coeffs or j.target != x:
        raise NotAFork("map does not land in the kernel")
    return n


def short_limit(spaces: Sequence[ShortSpace], arrows: Sequence[tuple[int, int, ShortMultiMap]]):
    """Limit of a finite diagram: ``(space, inclusion into the product, cone)``."""
    return limit(Short(_same_monoid(spaces)), spaces, arrows)


# Minkowski functional and projective norm


def minkowski(points: Sequence[Sequence], x: Sequence):
    """``inf{c > 0 : x in c * hull}`` for the convex balanced hull of ``points``.

    Solved as ``min sum|z_i|`` subject to ``sum z_i p_i = x`` by exact LP.
    """
    x = _vec(x)
    if not any(x):
        return Fraction(0)
    pts = [_vec(p) for p in points if any(p)]
    if not pts:
        return INF
    d, m = len(x), len(pts)
    # independent equality rows: dependent ones trip the simplex solver
    aug, _ = rref_basis([[p[i] for p in pts] + [x[i]] for i in range(d)], m + 1)
    if any(not any(r[:m]) for r in aug):
        return INF
    eq = [[Rational(v.numerator, v.denominator) for v in r[:m]] for r in aug]
    rhs = [Rational(r[m].numerator, r[m].denominator) for r in aug]
    # z = u - v with u, v >= 0; equalities as paired inequalities
    a = [row + [-v for v in row] for row in eq]
    a += [[-v for v in row] for row in a]
    b = rhs + [-v for v in rhs]
    try:
        opt, sol = linprog([1] * (2 * m), Matrix(a), b)
    except InfeasibleLPError:
        return INF
    if list(Matrix(a) * Matrix(sol)) != b:
        raise ArithmeticError("exact LP returned a point off the constraint set")
    return Fraction(int(opt.p), int(opt.q))


def ball_vertices(space: ShortSpace | PolySeminorm, level: int = 0) -> tuple[Vector, ...]:
    sn = space if isinstance(space, PolySeminorm) else space.seminorm(level)
    return sn.vertices()


def projective_norm(x: Sequence, balls: Sequence[ShortSpace | PolySeminorm]):
    """Minkowski functional of the balanced hull of products of ball vertices."""
    vertex_sets = [ball_vertices(b) for b in balls]
    for b in balls:
        if isinstance(b, ShortSpace) and b.monoid != TRIVIAL:
            raise ValueError("projective norms are defined for trivial levels")
    count = math.prod(len(v) for v in vertex_sets)
    if count > MAX_HULL_POINTS:
        raise SizeBoundExceeded(f"{count} vertex products exceed {MAX_HULL_POINTS}")
    if len(x) != math.prod(len(v[0]) for v in vertex_sets):
        raise ValueError("tensor length does not match the spaces")
    return minkowski([kron(*vs) for vs in cartesian(*vertex_sets)], x)


# filtered spaces


def filtered_embed(dim: int, filtration: dict[int, Sequence[Sequence]], monoid: str = INTEGERS) -> ShortSpace:
    """Space whose level-``l`` seminorm is 0 on ``F^l`` and ``INF`` elsewhere.

    ``filtration[l]`` spans ``F^l``; the levels form a window, ``F`` shrinks
    as ``l`` grows and the lowest level is the whole space.
    """
    levels = {l: poly_seminorm(dim, (), span) for l, span in filtration.items()}
    keys = sorted(levels)
    for a, b in zip(keys, keys[1:]):
        if not all(levels[a].contains(v) for v in levels[b].basis):
            raise ValueError(f"filtration is not nested: level {b} is not inside level {a}")
    if keys and len(levels[keys[0]].basis) != dim:
        raise ValueError("the lowest filtration level must be the whole space")
    return short_space(dim, levels, monoid, validate=False)


def filtration_of(space: ShortSpace) -> dict[int, tuple[Vector, ...]]:
    """Recover ``F^l`` as the null spaces of a ``{0, INF}``-valued family."""
    out = {}
    for level in space.levels():
        sn = space.seminorm(level)
        if any(any(r) for r in sn.local_functionals()):
            raise ValueError(f"level {level} takes finite nonzero values")
        out[level] = sn.basis
    return out


# the multicategory


@dataclass
class _HomData:
    space: ShortSpace
    rows: tuple[Vector, ...]  # echelon basis of the admissible tensors
    pivots: tuple[int, ...]


class Short(Multicategory):
    """Short multilinear maps between spaces over one level monoid.

    Closed: the internal hom is the space of maps with some finite hom
    seminorm, levelled by the hom seminorm.  Complete: products are direct
    sums and equalizers are kernels of differences.
    """

    closed = True
    complete = True

    def __init__(self, monoid: str = TRIVIAL):
        self.monoid = monoid
        self.name = f"Short[{monoid}]"
        self._homs: dict[tuple, _HomData] = {}

    def sources(self, m: ShortMultiMap) -> tuple[ShortSpace, ...]:
        return m.sources

    def target(self, m: ShortMultiMap) -> ShortSpace:
        return m.target

    def identity(self, x: ShortSpace) -> ShortMultiMap:
        return identity_short(x)

    def raw_compose(self, phi: OrdMap, gs: Sequence[ShortMultiMap], f: ShortMultiMap) -> ShortMultiMap:
        srcs: list[ShortSpace | None] = [None] * phi.source_size
        for j, g in enumerate(gs):
            for i, s in zip(phi.fibers[j], g.sources):
                srcs[i - 1] = s
        return _substitute(phi, gs, f, tuple(srcs))

    def equal(self, a: ShortMultiMap, b: ShortMultiMap) -> bool:
        return a.sources == b.sources and a.target == b.target and a.coeffs == b.coeffs

    def random_morphism(self, xs: Sequence[ShortSpace], y: ShortSpace, rng: random.Random) -> ShortMultiMap:
        """A random short map: small integer coefficients rescaled into the unit ball."""
        size = y.dim * math.prod(x.dim for x in xs)
        for _ in range(8):
            f = short_map(xs, y, [rng.randint(-3, 3) for _ in range(size)])
            c = hom_seminorm(f)
            if c != INF:
                return f if c <= 1 else f.scaled(1 / c)
        return short_map(xs, y, [0] * size)

    # closed structure

    def _hom(self, xs: Sequence[ShortSpace], z: ShortSpace) -> _HomData:
        key = (tuple(xs), z)
        data = self._homs.get(key)
        if data is None:
            data = _internal_hom(tuple(xs), z)
            self._homs[key] = data
        return data

    def underhom(self, xs: Sequence[ShortSpace], z: ShortSpace) -> ShortSpace:
        return self._hom(xs, z).space

    def ev(self, xs: Sequence[ShortSpace], z: ShortSpace) -> ShortMultiMap:
        data = self._hom(xs, z)
        u = len(data.rows)
        size = len(data.rows[0]) if data.rows else z.dim * math.prod(x.dim for x in xs)
        coeffs = tuple(data.rows[c][t] for t in range(size) for c in range(u))
        return ShortMultiMap(tuple(xs) + (data.space,), z, coeffs)

    def curry(self, f: ShortMultiMap, n_args: int) -> ShortMultiMap:
        xs, ys = f.sources[:n_args], f.sources[n_args:]
        data = self._hom(xs, f.target)
        inner = _shape_size(x.dim for x in xs)
        outer = _shape_size(y.dim for y in ys)
        zd = f.target.dim
        columns = []
        for c in range(outer):
            tensor = tuple(f.coeffs[(k * inner + i) * outer + c] for k in range(zd) for i in range(inner))
            coords = tuple(tensor[p] for p in data.pivots)
            if _combine(data.rows, coords, len(tensor)) != tensor:
                raise ValueError("partial maps do not have finite hom seminorm")
            columns.append(coords)
        u = len(data.rows)
        return ShortMultiMap(tuple(ys), data.space, tuple(columns[c][r] for r in range(u) for c in range(outer)))

    # complete structure

    def product(self, objs: Sequence[ShortSpace]):
        return short_product(objs)

    def into_product(self, fs: Sequence[ShortMultiMap], objs: Sequence[ShortSpace],
                     xs: Sequence[ShortSpace] | None = None) -> ShortMultiMap:
        p, _ = short_product(objs)
        if not fs:
            return ShortMultiMap(tuple(xs or ()), p, ())
        return into_product(fs, p)

    def equalizer(self, f: ShortMultiMap, g: ShortMultiMap):
        return short_equalizer(f, g)

    def factor_through_equalizer(self, h: ShortMultiMap, f: ShortMultiMap, g: ShortMultiMap) -> ShortMultiMap:
        _, incl = short_equalizer(f, g)
        return factor_through_kernel(h, incl)


def _combine(rows: Sequence[Vector], coords: Sequence[Fraction], size: int) -> Vector:
    out = [Fraction(0)] * size
    for c, row in zip(coords, rows):
        if c:
            for t, v in enumerate(row):
                out[t] += c * v
    return tuple(out)


def _internal_hom(xs: tuple[ShortSpace, ...], z: ShortSpace) -> _HomData:
    """Space of maps ``xs -> z`` with some finite hom seminorm.

    At each level ``l`` the finiteness conditions and the functionals are
    ``f -> a . f(v)`` over ball vertex tuples ``v`` and admissible source
    levels; the family is constant outside ``[z.lo - sum hi, z.hi - sum lo]``.
    """
    monoid = _same_monoid(list(xs) + [z])
    size = z.dim * math.prod(x.dim for x in xs)
    if monoid == TRIVIAL:
        window = range(0, 1)
    else:
        window = range(z.lo - sum(x.hi for x in xs), z.hi - sum(x.lo for x in xs) + 1)
    zero_rows: dict[int, list[Vector]] = {}
    funcs: dict[int, list[Vector]] = {}
    for level in window:
        zeros, fs = [], []
        for lams in cartesian(*source_level_ranges(xs, z, level)):
            balls = [x.seminorm(lam).vertices() for x, lam in zip(xs, lams)]
            out = z.seminorm(sum(lams) + level)
            ann = out.annihilator()
            for vs in cartesian(*balls):
                outer = kron(*vs)
                zeros += [kron(a, outer) for a in ann]
                fs += [kron(a, outer) for a in out.functionals]
        zero_rows[level] = zeros
        funcs[level] = list(_dedupe_up_to_sign(fs))
    rows, pivots = rref_basis(nullspace(zero_rows[window[0]], size), size)
    u = len(rows)
    levels = {}
    for level in window:
        span = [tuple(v[p] for p in pivots) for v in nullspace(zero_rows[level], size)]
        local = [tuple(dot(a, r) for r in rows) for a in funcs[level]]
        levels[level] = poly_seminorm(u, local, span)
    space = short_space(u, levels, monoid, validate=False)
    return _HomData(space, rows, pivots)


def underhom_data(xs: Sequence[ShortSpace], z: ShortSpace) -> tuple[ShortSpace, tuple[Vector, ...]]:
    """The internal hom and the tensors its coordinates stand for."""
    data = _internal_hom(tuple(xs), z)
    return data.space, data.rows


# serialization


def _num(x) -> str:
    return str(Fraction(x))


def space_to_json(s: ShortSpace) -> dict:
    return {
        "dim": s.dim,
        "monoid": s.monoid,
        "levels": [
            {"l": level, "W": [[_num(v) for v in row] for row in s.seminorm(level).basis],
             "functionals": [[_num(v) for v in row] for row in s.seminorm(level).functionals]}
            for level in s.levels()
        ],
    }


def space_from_json(data: dict) -> ShortSpace:
    dim = int(data["dim"])
    monoid = data.get("monoid", TRIVIAL)
    levels = {}
    for entry in data["levels"]:
        span = entry.get("W")
        levels[int(entry.get("l", 0))] = poly_seminorm(
            dim, [[Fraction(v) for v in row] for row in entry.get("functionals", [])],
            None if span is None else [[Fraction(v) for v in row] for row in span])
    return short_space(dim, levels, monoid)


def map_to_json(f: ShortMultiMap) -> dict:
    return {
        "sources": [space_to_json(s) for s in f.sources],
        "target": space_to_json(f.target),
        "shape": list(f.shape),
        "coefficients": [_num(v) for v in f.coeffs],
    }


def map_from_json(data: dict) -> ShortMultiMap:
    f = short_map([space_from_json(s) for s in data["sources"]], space_from_json(data["target"]),
                  [Fraction(v) for v in data["coefficients"]])
    if "shape" in data and tuple(data["shape"]) != f.shape:
        raise ValueError(f"declared shape {data['shape']} differs from {list(f.shape)}")
    return f


def extended_to_json(v) -> str:
    return "inf" if v == INF else _num(v)


__all__ = [
    "INF", "TRIVIAL", "INTEGERS", "NormBallUnbounded", "PolySeminorm", "poly_seminorm", "ShortSpace",
    "short_space", "normed_space", "real_line", "sup_space", "seminorm_eval", "monotonicity_witness",
    "ShortMultiMap", "short_map", "linear_map", "identity_short", "map_from_function", "contract",
    "HomWitness", "hom_seminorm", "hom_seminorm_witness", "check_short", "short_compose",
    "source_level_ranges", "short_product", "into_product", "short_kernel", "short_equalizer",
    "factor_through_kernel", "short_limit", "minkowski", "ball_vertices", "projective_norm",
    "filtered_embed", "filtration_of", "Short", "underhom_data", "kron", "rref_basis", "nullspace",
    "space_to_json", "space_from_json", "map_to_json", "map_from_json", "extended_to_json",
]

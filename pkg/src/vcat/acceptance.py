"""End-to-end acceptance suite: eight criteria, each checked against an
independent oracle and reported as one pass/fail record."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product as cartesian
from typing import Any, Callable

from . import short as sh
from .enriched import (
    VCategory,
    VCatMulticategory,
    VNatTransformation,
    check_category,
    check_naturality,
    compose_functors,
    enumerate_functors,
    object_tuples,
    vcat_equalizer,
    vcat_factor,
    vcat_into_product,
    vcat_product,
)
from .finord import OrdMap, all_maps, all_monotone_maps, compose_map, nabla, restrict, sigma_t
from .fixtures import empty, enumerate_categories, set_functor, small_categories, two_category, arrow_category, \
    cyclic_two, parallel_pair
from .homobj import (
    clear_cache,
    end_hom,
    hom_category,
    left_whisker,
    phi as phi_functor,
    point_from_transformation,
    psi as psi_functor,
    right_whisker,
)
from .multicat import (
    AxiomBounds,
    Fragment,
    NotAFork,
    Report,
    SizeBoundExceeded,
    check_associativity,
    check_equivariance,
    check_group_action,
    check_units,
    exhaustive_unique_factor,
)
from .oracles import (
    TwoFunctor,
    classical_left_whisker,
    classical_right_whisker,
    end_families,
    fixture_two_category_data,
    grid_hom_ratio,
    is_ball_vertex,
    minkowski_by_bases,
    modifications,
    natural_families,
    two_functors,
    two_natural_transformations,
)
from .prop import (
    FreeProp,
    all_color_maps,
    multifunctors_by_search,
    prop_functors_by_search,
    theta,
    theta_inverse,
)
from .vfinset import FinSet


@dataclass
class AcceptanceConfig:
    """Sizes the suite runs at.  Values below the required sizes produce skip entries."""

    seed: int = 0
    max_index: int = 3
    object_pool: tuple = (1, 2, 3)
    max_perm: int = 4
    max_square: int = 4
    sigma_size: int = 5
    lambda_size: int = 4
    category_objects: int = 2
    category_hom: int = 2
    minkowski_points: int = 100
    enforce_time: bool = True

    required = {
        "max_index": 3, "max_perm": 4, "max_square": 4, "sigma_size": 5, "lambda_size": 4,
        "category_objects": 2, "category_hom": 2, "minkowski_points": 100,
    }

    def shortfalls(self, *names: str) -> list[str]:
        return [f"{n}={getattr(self, n)} below required {self.required[n]}"
                for n in names if getattr(self, n) < self.required[n]]


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float
    limit: float | None
    details: dict = field(default_factory=dict)
    skipped: list[str] = field(default_factory=list)
    witness: Any = None

    @property
    def status(self) -> str:
        if not self.passed:
            return "fail"
        return "partial" if self.skipped else "pass"

    def line(self) -> str:
        limit = f" / limit {self.limit:.0f}s" if self.limit else ""
        extra = f" skipped: {'; '.join(self.skipped)}" if self.skipped else ""
        return f"criterion {self.number} {self.status.upper()} {self.title} ({self.seconds:.1f}s{limit}){extra}"

    def to_json(self) -> dict:
        return {
            "criterion": self.number, "title": self.title, "status": self.status,
            "seconds": round(self.seconds, 3), "limit_seconds": self.limit,
            "details": _plain(self.details), "skipped": self.skipped, "witness": _plain(self.witness),
        }


def _plain(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return repr(x)


def _timed(number: int, title: str, limit: float | None, cfg: AcceptanceConfig,
           body: Callable[[], tuple[bool, dict, Any]], skipped: list[str]) -> CriterionResult:
    t0 = time.perf_counter()
    ok, details, witness = body()
    seconds = time.perf_counter() - t0
    if cfg.enforce_time and limit is not None and seconds > limit:
        details["time_exceeded"] = True
        ok = False
    return CriterionResult(number, title, ok, seconds, limit, details, skipped, witness)


def _report_summary(rep: Report) -> tuple[bool, dict, Any]:
    witness = None
    if rep.failures:
        f = rep.failures[0]
        witness = {"law": f.law, **{k: repr(v) for k, v in f.detail.items()}}
    return rep.ok, {"checked": dict(rep.checked), "skipped_cases": len(rep.skipped)}, witness


# 1 and 2: multicategory laws on finite sets


def criterion_1(cfg: AcceptanceConfig) -> CriterionResult:
    def body():
        V = FinSet()
        bounds = AxiomBounds(max_index=cfg.max_index, object_pool=cfg.object_pool, seed=cfg.seed)
        rep = Report("multicategory axioms")
        check_associativity(V, bounds, rep)
        check_units(V, bounds, rep)
        return _report_summary(rep)

    return _timed(1, "multicategory associativity and units on finite sets", 30, cfg, body,
                  cfg.shortfalls("max_index"))


def criterion_2(cfg: AcceptanceConfig) -> CriterionResult:
    def body():
        V = FinSet()
        bounds = AxiomBounds(max_index=cfg.max_index, object_pool=cfg.object_pool,
                             max_perm=cfg.max_perm, seed=cfg.seed)
        rep = Report("symmetric action")
        check_group_action(V, bounds, rep)
        check_equivariance(V, bounds, rep, max_source=cfg.max_square, max_target=cfg.max_square)
        return _report_summary(rep)

    return _timed(2, "symmetric-group action and equivariance", 30, cfg, body,
                  cfg.shortfalls("max_perm", "max_square"))


# 3: free prop


def _sigma_t_oracle(h: OrdMap, perms: list[tuple]) -> list[tuple]:
    """Bijections ``s`` with ``h = s . t`` for monotone ``t``, order-preserving on fibers of ``h``."""
    out = []
    n = h.source_size
    for s in perms:
        t = [0] * n
        for k in range(n):
            t[s[k] - 1] = h.values[k]
        if any(t[r] > t[r + 1] for r in range(n - 1)):
            continue
        if all(s[a] < s[b] for a in range(n) for b in range(a + 1, n) if h.values[a] == h.values[b]):
            out.append(tuple(s))
    return out


def _lambda_coherence(prop: FreeProp, size: int) -> tuple[int, list]:
    failures, count = [], 0
    memo: dict = {}

    def lam(f, ws):
        key = (f, tuple(ws))
        if key not in memo:
            memo[key] = prop.lam(f, ws)
        return memo[key]

    for ni, nj, nk in cartesian(range(size + 1), repeat=3):
        xs = [(1,)] * ni
        for f in all_maps(ni, nj):
            lam_f = lam(f, xs)
            ws = [tuple(x for i in f.fiber(j) for x in xs[i - 1]) for j in range(1, nj + 1)]
            for g in all_maps(nj, nk):
                fg = compose_map(f, g)
                top = prop.compose(lam_f, lam(g, ws))
                blocks = [lam(restrict(f, fg.fiber(k), g.fiber(k)), [xs[i - 1] for i in fg.fiber(k)])
                          for k in range(1, nk + 1)]
                left = prop.compose(lam(fg, xs), prop.tensor(blocks))
                count += 1
                if not prop.equal(top, left):
                    failures.append({"f": f, "g": g})
    return count, failures


def criterion_3(cfg: AcceptanceConfig) -> CriterionResult:
    def body():
        details: dict = {}
        witness = None
        ok = True
        # bijection-then-monotone factorization against exhaustive search
        n_maps = 0
        for n in range(cfg.sigma_size + 1):
            perms = list(permutations(range(1, n + 1)))
            for m in range(cfg.sigma_size + 1):
                for h in all_maps(n, m):
                    n_maps += 1
                    s, t = sigma_t(h)
                    found = _sigma_t_oracle(h, perms)
                    good = (found == [s.values] and t.is_monotone() and compose_map(s, t) == h)
                    if not good and witness is None:
                        witness = {"sigma_t": h}
                    ok &= good
        details["factorizations"] = n_maps
        # regrouping along a monotone map is an identity
        V = FinSet()
        prop = FreeProp(V)
        words = [(), (1,), (2,), (1, 2)]
        n_mono = 0
        for n in range(cfg.lambda_size + 1):
            for m in range(cfg.lambda_size + 1):
                for f in all_monotone_maps(n, m):
                    for ws in cartesian(words, repeat=n):
                        n_mono += 1
                        lam = prop.lam(f, ws)
                        flat = tuple(x for w in ws for x in w)
                        if not prop.equal(lam, prop.identity(flat)):
                            ok = False
                            witness = witness or {"monotone": f, "words": ws}
        details["monotone_regroupings"] = n_mono
        count, fails = _lambda_coherence(prop, cfg.lambda_size)
        details["coherence_pairs"] = count
        if fails:
            ok = False
            witness = witness or fails[0]
        # theta on a two-colour fragment: both sides found by search
        frag = Fragment(FinSet(), (1, 2), 1)
        maps = all_color_maps((1, 2))
        multi = multifunctors_by_search(frag, maps)
        props = prop_functors_by_search(frag, maps)
        fprop = FreeProp(frag)
        round_trip = True
        for table in multi:
            F = table.as_multifunctor(frag)
            back = theta_inverse(theta(F, fprop), fprop)
            for m, img in table.images:
                if back.on_morphisms(m).components != (img,) or back.on_objects(frag.target(m)) != F.on_objects(frag.target(m)):
                    round_trip = False
        details["multifunctors"] = len(multi)
        details["prop_functors"] = len(props)
        same = set(multi) == set(props) and len(multi) == len(props)
        if not (same and round_trip):
            ok = False
            witness = witness or {"theta": "cardinalities or round trip differ"}
        return ok, details, witness

    return _timed(3, "free prop factorization, regrouping coherence and theta bijection", 30, cfg, body,
                  cfg.shortfalls("sigma_size", "lambda_size"))


# 4: enriched categories over finite sets


def _catalogue() -> list[VCategory]:
    return small_categories() + [empty()]


def criterion_4(cfg: AcceptanceConfig) -> CriterionResult:
    def body():
        V = FinSet()
        W = VCatMulticategory(V)
        clear_cache()
        details: dict = {}
        witness = None
        ok = True
        # (a) ends against brute-force natural families
        cats = enumerate_categories(cfg.category_objects, cfg.category_hom)
        pairs = 0
        for A, C in cartesian(cats, repeat=2):
            fs = enumerate_functors(V, (A,), C)
            for F, G in cartesian(fs, repeat=2):
                pairs += 1
                got = sorted(end_families(end_hom(V, F, G)))
                if got != natural_families(F, G):
                    ok = False
                    witness = witness or {"end": (A.name, C.name, F.obj_map, G.obj_map)}
        details["categories"] = len(cats)
        details["functor_pairs"] = pairs
        # (b) currying round trips with one source on each side
        trips = 0
        for A, B, C in cartesian(_catalogue(), repeat=3):
            hc = hom_category(V, (A,), C)
            for f in enumerate_functors(V, (B,), hc.category):
                trips += 1
                if psi_functor(V, phi_functor(V, f, hc), 1, hc=hc) != f:
                    ok = False
                    witness = witness or {"psi_phi": (A.name, B.name, C.name)}
            for g in enumerate_functors(V, (A, B), C):
                trips += 1
                if phi_functor(V, psi_functor(V, g, 1, hc=hc), hc) != g:
                    ok = False
                    witness = witness or {"phi_psi": (A.name, B.name, C.name)}
        details["round_trips"] = trips
        # (c) products and equalizers: unique factors by exhaustive search
        sources = [()] + [(X,) for X in _catalogue()]
        prod_checks = 0
        base = small_categories()
        for A, B in cartesian(base, repeat=2):
            P, projs = vcat_product(V, (A, B))
            for S in sources:
                candidates = enumerate_functors(V, S, P)
                for F1 in enumerate_functors(V, S, A):
                    for F2 in enumerate_functors(V, S, B):
                        prod_checks += 1
                        pred = lambda H, F1=F1, F2=F2, n=len(S): (
                            compose_functors(V, nabla(n), [H], projs[0]) == F1
                            and compose_functors(V, nabla(n), [H], projs[1]) == F2)
                        found = exhaustive_unique_factor(W, candidates, pred)
                        built = vcat_into_product(V, [F1, F2], P, (A, B), S)
                        if len(found) != 1 or found[0] != built:
                            ok = False
                            witness = witness or {"product": (A.name, B.name, len(found))}
        eq_checks = 0
        for A, C in cartesian(base, repeat=2):
            fs = enumerate_functors(V, (A,), C)
            for F, G in cartesian(fs, repeat=2):
                K, e = vcat_equalizer(V, F, G)
                for S in sources:
                    candidates = enumerate_functors(V, S, K)
                    for H in enumerate_functors(V, S, A):
                        eq_checks += 1
                        n = len(S)
                        fork = compose_functors(V, nabla(n), [H], F) == compose_functors(V, nabla(n), [H], G)
                        found = exhaustive_unique_factor(
                            W, candidates, lambda N, H=H, n=n: compose_functors(V, nabla(n), [N], e) == H)
                        if fork:
                            good = len(found) == 1 and found[0] == vcat_factor(V, H, F, G, K)
                        else:
                            good = not found
                        if not good:
                            ok = False
                            witness = witness or {"equalizer": (A.name, C.name, len(found), fork)}
        details["product_factorizations"] = prod_checks
        details["equalizer_factorizations"] = eq_checks
        return ok, details, witness

    return _timed(4, "ends, currying and finite limits of categories over finite sets", 120, cfg, body,
                  cfg.shortfalls("category_objects", "category_hom"))


# 5: strict 2-categories


def _classical_two_functor(T: VCategory, F) -> TwoFunctor:
    objs = tuple((a, F.obj_map[(a,)]) for a in T.objects)
    ones, twos = [], []
    for a, b in cartesian(T.objects, repeat=2):
        comp = F.components[(a,), (b,)]
        src = T.hom[a, b]
        tgt = T.hom[F.obj_map[(a,)], F.obj_map[(b,)]]
        for u in src.objects:
            ones.append(((a, b, u), comp.obj_map[(u,)]))
        for u, v in cartesian(src.objects, repeat=2):
            for k, label in enumerate(src.labels[u, v]):
                image = comp.components[(u,), (v,)].table[k]
                twos.append(((a, b, label), tgt.labels[comp.obj_map[(u,)], comp.obj_map[(v,)]][image - 1]))
    return TwoFunctor(objs, tuple(ones), tuple(twos))


def _two_functor_key(f: TwoFunctor) -> tuple:
    return f.objects, frozenset(f.ones), frozenset(f.twos)


def criterion_5(cfg: AcceptanceConfig) -> CriterionResult:
    def body():
        W, T = two_category()
        hc = hom_category(W, (T,), T)
        D = fixture_two_category_data()
        classical = two_functors(D)
        conv = {F: _classical_two_functor(T, F) for F in hc.category.objects}
        ok = {_two_functor_key(f) for f in conv.values()} == {_two_functor_key(f) for f in classical}
        ok &= len(conv) == len(classical)
        witness = None if ok else {"two_functors": (len(conv), len(classical))}
        n_objs = n_arrows = 0
        for F, G in cartesian(hc.category.objects, repeat=2):
            e = hc.ends[F, G]
            E = e.obj

            def family(x):
                return tuple(e.p[(a,)].obj_map[(x,)] for a in T.objects)

            objs = sorted(family(x) for x in E.objects)
            arrows = []
            for x, y in cartesian(E.objects, repeat=2):
                for k in range(E.hom[x, y]):
                    cells = []
                    for a in T.objects:
                        pa = e.p[(a,)]
                        H = T.hom[F.obj_map[(a,)], G.obj_map[(a,)]]
                        u, v = pa.obj_map[(x,)], pa.obj_map[(y,)]
                        cells.append(H.labels[u, v][pa.components[(x,), (y,)].table[k] - 1])
                    arrows.append((family(x), family(y), tuple(cells)))
            want_objs = sorted(two_natural_transformations(D, conv[F], conv[G]))
            want_arrows = sorted((s, t, m) for s in want_objs for t in want_objs
                                 for m in modifications(D, conv[F], conv[G], s, t))
            n_objs += len(objs)
            n_arrows += len(arrows)
            if objs != want_objs or sorted(arrows) != want_arrows:
                ok = False
                witness = witness or {"pair": (F.obj_map, G.obj_map), "objects": objs, "expected": want_objs}
        details = {"two_functors": len(conv), "transformations": n_objs, "modifications": n_arrows}
        return ok, details, witness

    return _timed(5, "hom categories of a strict 2-category", 60, cfg, body, [])


# 6: whiskering


def criterion_6(cfg: AcceptanceConfig) -> CriterionResult:
    def body():
        V = FinSet()
        cats = small_categories()
        one = OrdMap(1, 1, (1,))
        ok, witness = True, None
        checked = 0

        def family(end, k):
            return {a: end.p[a].table[k] for a in end.tuples}

        for A, B, C in cartesian(cats, repeat=3):
            AB = hom_category(V, (A,), B)
            BC = hom_category(V, (B,), C)
            AC = hom_category(V, (A,), C)
            for F in AB.category.objects:
                lw = left_whisker(V, one, [F], [AB], BC, AC)
                for G in BC.category.objects:
                    FG = lw.obj_map[(G,)]
                    if any(FG.obj_map[a] != G.obj_map[(F.obj_map[a],)] for a in object_tuples((A,))):
                        ok = False
                        witness = witness or {"left_whisker_objects": (A.name, B.name, C.name)}
                for G, G2 in cartesian(BC.category.objects, repeat=2):
                    e = BC.ends[G, G2]
                    image = lw.components[(G,), (G2,)]
                    out = AC.ends[lw.obj_map[(G,)], lw.obj_map[(G2,)]]
                    for k in range(e.obj):
                        checked += 1
                        if family(out, image.table[k] - 1) != classical_left_whisker(F, family(e, k)):
                            ok = False
                            witness = witness or {"left_whisker": (A.name, B.name, C.name, k)}
            for H in BC.category.objects:
                rw = right_whisker(V, one, H, [AB], BC, AC)
                for F, F2 in cartesian(AB.category.objects, repeat=2):
                    e = AB.ends[F, F2]
                    image = rw.components[(F,), (F2,)]
                    out = AC.ends[rw.obj_map[(F,)], rw.obj_map[(F2,)]]
                    for k in range(e.obj):
                        checked += 1
                        if family(out, image.table[k] - 1) != classical_right_whisker(H, F, F2, family(e, k)):
                            ok = False
                            witness = witness or {"right_whisker": (A.name, B.name, C.name, k)}
        return ok, {"whiskered_components": checked}, witness

    return _timed(6, "whiskering against pre- and post-composition", None, cfg, body, [])


# 7: short spaces


def _short_fixtures() -> dict[str, sh.ShortMultiMap]:
    R = sh.real_line()
    ident = sh.identity_short(R)
    return {"identity": ident, "double": ident.scaled(2), "multiplication": sh.short_map((R, R), R, [1])}


def _seminorm_fixtures() -> dict[str, sh.PolySeminorm]:
    return {
        "absolute value": sh.poly_seminorm(1, [(1,)]),
        "max norm": sh.poly_seminorm(2, [(1, 0), (0, 1)]),
        "hexagon": sh.poly_seminorm(2, [(1, 0), (0, 1), (1, 1)]),
        "skew diamond": sh.poly_seminorm(2, [(1, 2), (3, -1)]),
        "plane in 3-space": sh.poly_seminorm(3, [(1, 0, 0), (0, 1, 0)], span=[(1, 0, 1), (0, 1, 0)]),
    }


def _random_fraction(rng: random.Random, scale: int = 5) -> Fraction:
    return Fraction(rng.randint(-4 * scale, 4 * scale), rng.randint(1, scale))


def _random_matrix(rng: random.Random, rows: int, cols: int) -> list[list[Fraction]]:
    return [[_random_fraction(rng, 3) for _ in range(cols)] for _ in range(rows)]


def criterion_7(cfg: AcceptanceConfig) -> CriterionResult:
    def body():
        rng = random.Random(cfg.seed)
        ok, witness = True, None
        details: dict = {}
        # hom seminorms of the fixtures against a grid oracle
        expected = {"identity": Fraction(1), "double": Fraction(2), "multiplication": Fraction(1)}
        values = {}
        for name, f in _short_fixtures().items():
            value = sh.hom_seminorm(f)
            values[name] = str(value)
            ratio, (lam, xs) = grid_hom_ratio(f, steps=4)
            at_vertex = all(is_ball_vertex(s.seminorm(0).functionals, s.seminorm(0).basis, x)
                            for s, x in zip(f.sources, xs))
            if value != expected[name] or ratio != value or not at_vertex:
                ok = False
                witness = witness or {"fixture": name, "value": value, "grid": ratio}
        details["hom_seminorms"] = values
        # kernel universal property on sampled maps
        X = sh.sup_space(2)
        R = sh.real_line()
        h = sh.linear_map(X, R, [[1, -1]])
        K, incl = sh.short_kernel(h)
        kernel_checks = shortness = 0
        for trial in range(30):
            D = R if trial % 2 else X
            n0 = sh.linear_map(D, K, [[Fraction(rng.randint(-3, 3), 4) for _ in range(D.dim)] for _ in range(K.dim)])
            j = sh.short_compose(nabla(1), [n0], incl)
            n = sh.factor_through_kernel(j, incl)
            back = sh.short_compose(nabla(1), [n], incl)
            same = back.coeffs == j.coeffs
            short_j, short_n = sh.check_short(j)[0], sh.check_short(n)[0]
            shortness += short_j
            kernel_checks += 1
            if not same or short_j != short_n:
                ok = False
                witness = witness or {"kernel": j.coeffs}
        try:
            sh.factor_through_kernel(sh.identity_short(X), incl)
            ok = False
            witness = witness or {"kernel": "non-fork factored"}
        except NotAFork:
            pass
        details["kernel_samples"] = kernel_checks
        details["kernel_samples_short"] = shortness
        # product tupling: short exactly when every component is
        P, projs = sh.short_product([R, R])
        product_checks = 0
        for _ in range(20):
            hs = [sh.short_map((R, R), R, [_random_fraction(rng, 2)]) for _ in range(2)]
            tup = sh.into_product(hs, P)
            recovered = [sh.short_compose(nabla(2), [tup], p) for p in projs]
            good = all(r.coeffs == hh.coeffs for r, hh in zip(recovered, hs))
            good &= sh.check_short(tup)[0] == all(sh.check_short(hh)[0] for hh in hs)
            product_checks += 1
            if not good:
                ok = False
                witness = witness or {"product": [hh.coeffs for hh in hs]}
        details["product_samples"] = product_checks
        # pullback limit: factors of sampled cones
        ident = sh.identity_short(R)
        L, L_incl, cone = sh.short_limit([R, R, R], [(0, 2, ident), (1, 2, ident.scaled(2))])
        limit_checks = 0
        for trial in range(20):
            D = R
            b = _random_fraction(rng, 2)
            legs = [sh.linear_map(D, R, [[2 * b]]), sh.linear_map(D, R, [[b]]), sh.linear_map(D, R, [[2 * b]])]
            into = sh.into_product(legs, sh.short_product([R, R, R])[0])
            n = sh.factor_through_kernel(into, L_incl)
            legs_back = [sh.short_compose(nabla(1), [n], c) for c in cone]
            good = all(x.coeffs == y.coeffs for x, y in zip(legs_back, legs))
            good &= sh.check_short(n)[0] == all(sh.check_short(x)[0] for x in legs)
            limit_checks += 1
            if not good:
                ok = False
                witness = witness or {"limit": str(b)}
        details["limit_dim"] = L.dim
        details["limit_samples"] = limit_checks
        # the Minkowski functional of a ball gives back the seminorm
        mink = 0
        for name, s in _seminorm_fixtures().items():
            verts = s.vertices()
            for k in range(cfg.minkowski_points):
                x = tuple(_random_fraction(rng) for _ in range(s.dim))
                if k % 2 and len(s.basis) < s.dim:
                    x = s.embed([_random_fraction(rng) for _ in s.basis])
                got = sh.minkowski(verts, x)
                want = s.value(x)
                good = got == want
                if k < 5:
                    good &= minkowski_by_bases(verts, x) == want
                mink += 1
                if not good:
                    ok = False
                    witness = witness or {"minkowski": name, "x": x, "got": got, "want": want}
        details["minkowski_points"] = mink
        return ok, details, witness

    return _timed(7, "short spaces: hom seminorms, limits and Minkowski round trip", 60, cfg, body,
                  cfg.shortfalls("minkowski_points"))


# 8: negative controls


def corrupted_category() -> VCategory:
    """The two-element group with ``e s`` changed to ``e``, breaking the unit law."""
    C = cyclic_two()
    kappa = dict(C.kappa)
    good = kappa["*", "*", "*"]
    kappa["*", "*", "*"] = type(good)(good.sources, good.target, (good.table[0], 1) + good.table[2:])
    return VCategory(C.objects, C.hom, kappa, C.ident, name="corrupted Z/2", labels=C.labels)


def non_natural_family():
    """Two functors from the arrow category picking different parallel arrows,
    with identity components, which do not commute."""
    A = arrow_category()
    C = parallel_pair()
    F = set_functor((A,), C, lambda x: x, lambda u: "a" if u == "u" else {"id0": "id0", "id1": "id1"}[u])
    G = set_functor((A,), C, lambda x: x, lambda u: "b" if u == "u" else {"id0": "id0", "id1": "id1"}[u])
    comps = {(x,): C.ident[x] for x in C.objects}
    return F, G, VNatTransformation(F, G, comps)


def criterion_8(cfg: AcceptanceConfig) -> CriterionResult:
    def body():
        V = FinSet()
        details: dict = {}
        witnesses = {}
        rep = check_category(V, corrupted_category())
        details["corrupted_kappa_detected"] = not rep.ok
        if rep.failures:
            f = rep.failures[0]
            witnesses["corrupted_kappa"] = {"law": f.law, **{k: repr(v) for k, v in f.detail.items()}}
        F, G, t = non_natural_family()
        rep = check_naturality(V, t)
        detected = not rep.ok
        try:
            point_from_transformation(V, end_hom(V, F, G), t)
            detected = False
        except NotAFork:
            pass
        details["non_natural_detected"] = detected
        if rep.failures:
            f = rep.failures[0]
            witnesses["non_natural"] = {"law": f.law, **{k: repr(v) for k, v in f.detail.items()}}
        R = sh.real_line()
        is_short, w = sh.check_short(sh.identity_short(R).scaled(2))
        details["non_short_detected"] = not is_short
        if w is not None:
            witnesses["non_short"] = {"value": str(w.value), "levels": w.levels,
                                      "vertices": [[str(v) for v in x] for x in w.vertices]}
        ok = all(details.values()) and len(witnesses) == 3
        return ok, details, witnesses

    return _timed(8, "negative controls are detected with witnesses", None, cfg, body, [])


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
            5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8}


def run_acceptance(cfg: AcceptanceConfig | None = None, only: list[int] | None = None) -> list[CriterionResult]:
    cfg = cfg or AcceptanceConfig()
    out = []
    for number in (only or sorted(CRITERIA)):
        try:
            out.append(CRITERIA[number](cfg))
        except SizeBoundExceeded as exc:
            out.append(CriterionResult(number, f"criterion {number}", True, 0.0, None, {},
                                       [f"size bound: {exc}"]))
    return out


__all__ = ["AcceptanceConfig", "CriterionResult", "CRITERIA", "run_acceptance", "corrupted_category",
           "non_natural_family"]

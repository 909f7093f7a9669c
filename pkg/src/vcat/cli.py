"""Command-line front end.  Every command writes JSON lines by default.

Exit codes: 0 all checks pass, 1 a mathematical failure, 2 malformed input,
3 a size bound was exceeded.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import math
import sys
import time
from fractions import Fraction
from itertools import product as cartesian
from pathlib import Path
from typing import Any, Callable

from . import short as sh
from .acceptance import AcceptanceConfig, run_acceptance
from .enriched import check_category, check_functor, check_naturality, vcat_equalizer, vcat_product
from .finord import OrdMap, all_maps
from .homobj import end_hom, hom_category, left_whisker, point_from_transformation, right_whisker, \
    transformation_from_point
from .multicat import AxiomBounds, NotAFork, SignatureError, SizeBoundExceeded, check_axioms
from .oracles import end_families, natural_families
from .prop import FreeProp
from .serialize import Bundle, InputError, SizeBounds, category_to_json, load_bundle
from .vfinset import FinSet

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_SIZE = 0, 1, 2, 3

DATA_DIR = Path(__file__).with_name("data")

BUILD_KINDS = ("fv-hom", "end-hom", "hom-category", "vcat-product", "vcat-equalizer", "whisker",
               "short-norm", "projective-norm")


class Emitter:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, record: dict) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps(record, default=_default, sort_keys=False) + "\n")
        else:
            self.stream.write(_render_text(record) + "\n")
        self.stream.flush()


def _default(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    return repr(x)


def _render_text(record: dict) -> str:
    head = record.get("check") or record.get("kind") or record.get("command", "")
    verdict = record.get("status") or ("pass" if record.get("ok", True) else "fail")
    rest = {k: v for k, v in record.items() if k not in ("check", "kind", "command", "status", "ok")}
    return f"[{verdict}] {head} " + json.dumps(rest, default=_default)


def _digest(raw: bytes) -> str:
    return hashlib.sha256(raw).hexdigest()[:16]


def _resolve(path: str, fixture_dir: Path | None) -> Path:
    p = Path(path)
    if p.exists():
        return p
    for base in (fixture_dir, DATA_DIR):
        if base is not None and (base / path).exists():
            return base / path
    raise InputError(f"no such file: {path}")


def _read_json(path: Path) -> tuple[Any, str]:
    raw = path.read_bytes()
    try:
        return json.loads(raw), _digest(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc


def parse_bounds(text: str | None, cls: type) -> Any:
    """``key=value`` pairs separated by commas, or a JSON object, into a dataclass."""
    if not text:
        return cls()
    if text.lstrip().startswith("{"):
        try:
            items = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"bounds: {exc}") from exc
    else:
        items = {}
        for part in text.split(","):
            key, sep, value = part.partition("=")
            if not sep:
                raise InputError(f"bounds entry {part!r} is not key=value")
            items[key.strip()] = value.strip()
    names = {f.name: f for f in dataclasses.fields(cls)}
    kwargs = {}
    for key, value in items.items():
        if key not in names:
            raise InputError(f"unknown bound {key!r}; expected one of {sorted(names)}")
        kwargs[key] = _coerce(value, getattr(cls(), key))
    return cls(**kwargs)


def _coerce(value: Any, like: Any) -> Any:
    try:
        if isinstance(like, bool):
            return value if isinstance(value, bool) else str(value).lower() in ("1", "true", "yes")
        if isinstance(like, int):
            return int(value)
        if isinstance(like, tuple):
            parts = value if isinstance(value, list) else str(value).replace(";", " ").split()
            return tuple(int(v) for v in parts)
    except ValueError as exc:
        raise InputError(f"bad bound value {value!r}") from exc
    return value


# check


def _report_record(check: str, rep, **extra) -> dict:
    out = {"check": check, **extra, **rep.to_json()}
    out.pop("title", None)
    return out


def run_checks(bundle: Bundle, bounds: SizeBounds, seed: int) -> list[dict]:
    V = FinSet()
    records = []
    for name, C in bundle.categories.items():
        records.append(_report_record("category", check_category(V, C), name=name))
    for name, F in bundle.functors.items():
        records.append(_report_record("functor", check_functor(V, F), name=name))
    for name, t in bundle.transformations.items():
        rep = check_naturality(V, t)
        rec = _report_record("naturality", rep, name=name)
        if rep.ok:
            end = end_hom(V, t.source, t.target)
            back = transformation_from_point(V, end, point_from_transformation(V, end, t))
            rec["round_trip"] = all(V.equal(back.components[a], t.components[a]) for a in end.tuples)
            rec["ok"] = rec["ok"] and rec["round_trip"]
        else:
            try:
                point_from_transformation(V, end_hom(V, t.source, t.target), t)
                rec["rejected_by_end"] = False
                rec["ok"] = False
            except NotAFork:
                rec["rejected_by_end"] = True
        records.append(rec)
    # ends against the brute-force family search, for every parallel pair
    lawful = {r["name"] for r in records if r["check"] == "functor" and r["ok"]}
    good = {n: F for n, F in bundle.functors.items() if n in lawful}
    for (nf, F), (ng, G) in cartesian(good.items(), repeat=2):
        if F.sources != G.sources or F.target != G.target:
            continue
        got = sorted(end_families(end_hom(V, F, G)))
        want = natural_families(F, G)
        records.append({"check": "end", "source": nf, "target": ng, "ok": got == want, "size": len(got),
                        "oracle_size": len(want)})
    # functor categories of every lawful category are again categories
    for name, C in bundle.categories.items():
        if not all(r["ok"] for r in records if r["check"] == "category" and r["name"] == name):
            continue
        hc = hom_category(V, (C,), C, budget=bounds.max_functors)
        rep = check_category(V, hc.category)
        records.append(_report_record("functor-category", rep, name=name, functors=len(hc.category.objects)))
    axioms = bundle.extra.get("axioms")
    if axioms is not None:
        ab = parse_bounds(json.dumps(axioms) if isinstance(axioms, dict) else axioms, AxiomBounds)
        if "seed" not in (axioms if isinstance(axioms, dict) else {}):
            ab = dataclasses.replace(ab, seed=seed)
        laws = bundle.extra.get("laws")
        records.append(_report_record("finset-axioms", check_axioms(V, ab, laws)))
    return records


def cmd_check(args, out: Emitter) -> int:
    bounds = parse_bounds(args.bounds, SizeBounds)
    t0 = time.perf_counter()
    path = _resolve(args.path, args.fixture_dir)
    data, digest = _read_json(path)
    bundle = load_bundle(data, bounds)
    records = run_checks(bundle, bounds, args.seed)
    for rec in records:
        out.emit(rec)
    ok = all(r["ok"] for r in records)
    out.emit({"command": "check", "input": str(path), "digest": digest, "ok": ok, "checks": len(records),
              "seconds": round(time.perf_counter() - t0, 3),
              "sizes": {n: {"objects": len(C.objects), "arrows": sum(C.hom.values())}
                        for n, C in bundle.categories.items()}})
    return EXIT_PASS if ok else EXIT_FAIL


# build


def _pick(names: str | None, available: dict, count: int, what: str) -> list:
    if names:
        chosen = [n.strip() for n in names.split(",")]
    else:
        chosen = list(available)[:count]
        if len(chosen) == 1 and count == 2:
            chosen = chosen * 2
    missing = [n for n in chosen if n not in available]
    if missing:
        raise InputError(f"unknown {what}: {missing}")
    if len(chosen) < count:
        raise InputError(f"{what}: {count} needed, {len(chosen)} given")
    return [available[n] for n in chosen]


def _functor_summary(F) -> dict:
    return {"objects": [[list(a), F.obj_map[a]] for a in F.obj_map]}


def _fv_hom(data: dict, bounds: SizeBounds) -> dict:
    try:
        src, tgt = [int(x) for x in data["source"]], [int(x) for x in data["target"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"fv-hom needs integer words 'source' and 'target': {exc}") from exc
    V = FinSet()
    count = 0
    for phi in all_maps(len(src), len(tgt)):
        count += math.prod(V.hom_size(tuple(src[i - 1] for i in phi.fiber(j)), tgt[j - 1])
                           for j in range(1, len(tgt) + 1))
    limit = int(data.get("list_limit", 64))
    result = {"source": src, "target": tgt, "size": count}
    if count <= limit:
        result["morphisms"] = [m.to_json() for m in FreeProp(V).homs(src, tgt)]
    elif count > bounds.max_functors * 100:
        raise SizeBoundExceeded(f"{count} prop morphisms")
    return result


def _end_hom(bundle: Bundle, args, bounds) -> dict:
    F, G = _pick(args.functors, bundle.functors, 2, "functors")
    V = FinSet()
    end = end_hom(V, F, G)
    fams = end_families(end)
    return {"size": end.obj, "transformations": [{",".join(map(str, a)): k for a, k in zip(end.tuples, f)} for f in fams]}


def _hom_category(bundle: Bundle, args, bounds) -> dict:
    cats = _pick(args.categories, bundle.categories, 1, "categories")
    if len(cats) == 1:
        cats = cats * 2
    *sources, C = cats
    hc = hom_category(FinSet(), sources, C, budget=bounds.max_functors)
    objs = hc.category.objects
    names = {F: f"F{k}" for k, F in enumerate(objs)}
    return {
        "objects": len(objs),
        "arrows": sum(hc.category.hom.values()),
        "functors": {names[F]: _functor_summary(F) for F in objs},
        "category": category_to_json(hc.category, names),
    }


def _vcat_product(bundle: Bundle, args, bounds) -> dict:
    cats = _pick(args.categories, bundle.categories, 1, "categories") if args.categories \
        else list(bundle.categories.values())
    P, _ = vcat_product(FinSet(), cats)
    bounds.check_category(P)
    return {"objects": len(P.objects), "category": category_to_json(P)}


def _vcat_equalizer(bundle: Bundle, args, bounds) -> dict:
    F, G = _pick(args.functors, bundle.functors, 2, "functors")
    K, _ = vcat_equalizer(FinSet(), F, G)
    return {"objects": len(K.objects), "category": category_to_json(K)}


def _whisker(bundle: Bundle, args, bounds) -> dict:
    V = FinSet()
    (F,) = _pick(args.functors, bundle.functors, 1, "functors")
    if len(F.sources) != 1:
        raise InputError("whiskering needs a unary functor")
    one = OrdMap(1, 1, (1,))
    if args.side == "left":
        (C,) = _pick(args.categories, bundle.categories, 1, "categories")
        A, B = F.sources[0], F.target
        inner = hom_category(V, (A,), B, budget=bounds.max_functors, functors=[F])
        outer = hom_category(V, (B,), C, budget=bounds.max_functors)
        result = hom_category(V, (A,), C, budget=bounds.max_functors)
        W = left_whisker(V, one, [F], [inner], outer, result)
    else:
        (A,) = _pick(args.categories, bundle.categories, 1, "categories")
        B, C = F.sources[0], F.target
        inner = hom_category(V, (A,), B, budget=bounds.max_functors)
        outer = hom_category(V, (B,), C, budget=bounds.max_functors, functors=[F])
        result = hom_category(V, (A,), C, budget=bounds.max_functors)
        W = right_whisker(V, one, F, [inner], outer, result)
    src = W.sources[0]
    return {
        "side": args.side,
        "images": [{"functor": _functor_summary(G[0]), "whiskered": _functor_summary(W.obj_map[G])}
                   for G in [(x,) for x in src.objects]],
    }


def _short_norm(data: dict) -> dict:
    f = sh.map_from_json(data)
    level = int(data.get("level", 0))
    w = sh.hom_seminorm_witness(f, level)
    return {"value": sh.extended_to_json(w.value), "level": level, "short": w.value <= 1,
            "witness": {"levels": list(w.levels), "vertices": [[str(v) for v in x] for x in w.vertices]}}


def _projective_norm(data: dict) -> dict:
    try:
        spaces = [sh.space_from_json(s) for s in data["spaces"]]
        x = [Fraction(v) for v in data["vector"]]
    except (KeyError, TypeError) as exc:
        raise InputError(f"projective-norm needs 'spaces' and 'vector': {exc}") from exc
    return {"value": sh.extended_to_json(sh.projective_norm(x, spaces))}


def cmd_build(args, out: Emitter) -> int:
    bounds = parse_bounds(args.bounds, SizeBounds)
    t0 = time.perf_counter()
    path = _resolve(args.path, args.fixture_dir)
    data, digest = _read_json(path)
    kind = args.kind
    handlers: dict[str, Callable] = {
        "end-hom": _end_hom, "hom-category": _hom_category, "vcat-product": _vcat_product,
        "vcat-equalizer": _vcat_equalizer, "whisker": _whisker,
    }
    if kind == "fv-hom":
        result = _fv_hom(data, bounds)
    elif kind == "short-norm":
        result = _short_norm(data)
    elif kind == "projective-norm":
        result = _projective_norm(data)
    else:
        result = handlers[kind](load_bundle(data, bounds), args, bounds)
    out.emit({"command": "build", "kind": kind, "input": str(path), "digest": digest, "result": result,
              "seconds": round(time.perf_counter() - t0, 3)})
    return EXIT_PASS


# acceptance


def cmd_acceptance(args, out: Emitter) -> int:
    cfg = parse_bounds(args.bounds, AcceptanceConfig)
    cfg.seed = args.seed
    if args.no_time_limits:
        cfg.enforce_time = False
    only = [int(x) for x in args.only.split(",")] if args.only else None
    if only and any(n not in range(1, 9) for n in only):
        raise InputError("criteria are numbered 1 to 8")
    results = []
    for n in only or range(1, 9):
        (r,) = run_acceptance(cfg, [n])
        results.append(r)
        out.emit(r.to_json() if out.fmt == "json" else {"command": r.line()})
    summary = {
        "command": "acceptance", "seed": cfg.seed, "ok": all(r.passed for r in results),
        "passed": sum(r.status == "pass" for r in results),
        "partial": sum(r.status == "partial" for r in results),
        "failed": sum(r.status == "fail" for r in results),
        "seconds": round(sum(r.seconds for r in results), 3),
    }
    out.emit(summary)
    return EXIT_PASS if summary["ok"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vcat", description="Enriched categories over multicategories.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bounds", help="size caps as key=value[,key=value] or a JSON object")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--fixture-dir", type=Path, help="directory searched for relative input paths")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="run law checkers on a serialized bundle")
    p.add_argument("path")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("build", parents=[common], help="run a construction on serialized input")
    p.add_argument("kind", choices=BUILD_KINDS)
    p.add_argument("path")
    p.add_argument("--functors", help="comma-separated functor names")
    p.add_argument("--categories", help="comma-separated category names")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.set_defaults(run=cmd_build)

    p = sub.add_parser("acceptance", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.add_argument("--no-time-limits", action="store_true")
    p.set_defaults(run=cmd_acceptance)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Emitter(args.format)
    try:
        return args.run(args, out)
    except SizeBoundExceeded as exc:
        out.emit({"command": args.command, "ok": False, "error": "size bound", "detail": str(exc)})
        return EXIT_SIZE
    except (InputError, SignatureError, ValueError, KeyError, TypeError, NotAFork) as exc:
        out.emit({"command": args.command, "ok": False, "error": "input", "detail": f"{type(exc).__name__}: {exc}"})
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

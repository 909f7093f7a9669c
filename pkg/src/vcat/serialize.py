"""JSON bundles of categories, functors and transformations over finite sets.

A bundle is a dict with optional lists ``categories``, ``functors`` and
``transformations``.  Arrows are named by labels that are unique within a
category; composites with an identity default to the other arrow and may be
overridden explicitly.

Category::

    {"name": "Z/2", "objects": ["*"],
     "arrows": [{"name": "e", "source": "*", "target": "*"}, ...],
     "identities": {"*": "e"},
     "composition": [["s", "s", "e"]]}          # [first, second, composite]

Functor (one label or object per source in each key)::

    {"name": "F", "sources": ["A"], "target": "C",
     "objects": [[["0"], "0"], ...], "arrows": [[["u"], "a"], ...]}

Transformation::

    {"name": "t", "source": "F", "target": "G", "components": [[["0"], "id0"], ...]}
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Any

from .enriched import MultiEntryFunctor, VCategory, VNatTransformation, object_tuples
from .fixtures import set_category
from .multicat import SizeBoundExceeded
from .vfinset import MultiMap


class InputError(ValueError):
    """Malformed or inconsistent serialized input."""


@dataclass
class SizeBounds:
    max_objects: int = 6
    max_hom: int = 8
    max_functors: int = 10**4

    def check_category(self, C: VCategory) -> None:
        if len(C.objects) > self.max_objects:
            raise SizeBoundExceeded(f"{C.name}: {len(C.objects)} objects exceed {self.max_objects}")
        big = max(C.hom.values(), default=0)
        if big > self.max_hom:
            raise SizeBoundExceeded(f"{C.name}: a hom set of size {big} exceeds {self.max_hom}")


@dataclass
class Bundle:
    categories: dict = field(default_factory=dict)
    functors: dict = field(default_factory=dict)
    transformations: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)


def _key(x: Any) -> Any:
    return tuple(_key(v) for v in x) if isinstance(x, list) else x


def category_from_json(data: dict) -> VCategory:
    try:
        name = data.get("name", "")
        objects = [_key(o) for o in data["objects"]]
        if len(set(objects)) != len(objects):
            raise InputError(f"{name}: repeated object")
        arrows: dict = {}
        where: dict = {}
        for a in data.get("arrows", []):
            label, src, tgt = a["name"], _key(a["source"]), _key(a["target"])
            if label in where:
                raise InputError(f"{name}: arrow label {label!r} used twice")
            if src not in objects or tgt not in objects:
                raise InputError(f"{name}: arrow {label!r} has an unknown endpoint")
            arrows.setdefault((src, tgt), []).append(label)
            where[label] = (src, tgt)
        by_name = {_flat(_object_name(x)): x for x in objects}
        identities = {by_name.get(k, k): v for k, v in data.get("identities", {}).items()}
        for x in objects:
            idx = identities.get(x)
            if idx is None or where.get(idx) != (x, x):
                raise InputError(f"{name}: object {x!r} needs an identity endomorphism")
        ids = set(identities.values())
        table: dict = {}
        for first, second, result in data.get("composition", []):
            for lab in (first, second, result):
                if lab not in where:
                    raise InputError(f"{name}: unknown arrow {lab!r} in composition")
            if where[first][1] != where[second][0]:
                raise InputError(f"{name}: {first!r} and {second!r} are not composable")
            if where[result] != (where[first][0], where[second][1]):
                raise InputError(f"{name}: composite {result!r} has the wrong endpoints")
            table[first, second] = result
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed category: {exc}") from exc

    def comp(f, g):
        if (f, g) in table:
            return table[f, g]
        if f in ids:
            return g
        if g in ids:
            return f
        raise InputError(f"{name}: no composite given for {f!r} then {g!r}")

    return set_category(objects, arrows, comp, identities, name=name)


def _object_name(x: Any) -> Any:
    if isinstance(x, (str, int)):
        return x
    if isinstance(x, tuple):
        return [_object_name(v) for v in x]
    return repr(x)


def category_to_json(C: VCategory, object_names: dict | None = None) -> dict:
    """Labelled form of any category over finite sets; unlabelled homs get
    labels ``"x>y:k"``."""
    names = object_names or {x: _object_name(x) for x in C.objects}

    def label(a, b, k):
        if C.labels and (a, b) in C.labels:
            return str(C.labels[a, b][k - 1])
        return f"{_flat(names[a])}>{_flat(names[b])}:{k}"

    arrows = [{"name": label(a, b, k), "source": names[a], "target": names[b]}
              for a, b in cartesian(C.objects, repeat=2) for k in range(1, C.hom[a, b] + 1)]
    ident = {x: C.ident[x].table[0] for x in C.objects}
    composition = []
    for x, y, z in cartesian(C.objects, repeat=3):
        kappa = C.kappa[x, y, z]
        for i, j in cartesian(range(1, C.hom[x, y] + 1), range(1, C.hom[y, z] + 1)):
            r = kappa.table[(i - 1) * C.hom[y, z] + (j - 1)]
            default = j if (x == y and i == ident[x]) else i if (y == z and j == ident[y]) else None
            if default != r:
                composition.append([label(x, y, i), label(y, z, j), label(x, z, r)])
    return {
        "name": C.name,
        "objects": [names[x] for x in C.objects],
        "arrows": arrows,
        "identities": {_flat(names[x]): label(x, x, ident[x]) for x in C.objects},
        "composition": composition,
    }


def _flat(name: Any) -> str:
    if isinstance(name, list):
        return "(" + ",".join(_flat(v) for v in name) + ")"
    return name if isinstance(name, str) else str(name)


def functor_from_json(data: dict, categories: dict) -> MultiEntryFunctor:
    try:
        name = data.get("name", "")
        sources = tuple(categories[s] for s in data["sources"])
        target = categories[data["target"]]
        obj = {tuple(_key(v) for v in k): _key(v) for k, v in data["objects"]}
        arr = {tuple(k): v for k, v in data.get("arrows", [])}
    except KeyError as exc:
        raise InputError(f"functor refers to unknown category {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed functor: {exc}") from exc
    for a in object_tuples(sources):
        if a not in obj:
            raise InputError(f"{name}: no image for objects {a!r}")
        if obj[a] not in target.objects:
            raise InputError(f"{name}: image {obj[a]!r} is not an object of {target.name}")
    ids = [{C.labels[x, x][C.ident[x].table[0] - 1] for x in C.objects} for C in sources]
    comps = {}
    for a, e in cartesian(object_tuples(sources), repeat=2):
        fa, fe = obj[a], obj[e]
        homs = [C.labels[a[i], e[i]] for i, C in enumerate(sources)]
        table = []
        for labels in cartesian(*homs):
            image = arr.get(labels)
            if image is None and a == e and all(l in ids[i] for i, l in enumerate(labels)):
                image = target.labels[fa, fa][target.ident[fa].table[0] - 1]
            if image is None:
                raise InputError(f"{name}: no image for arrows {labels!r}")
            if image not in target.labels[fa, fe]:
                raise InputError(f"{name}: image {image!r} of {labels!r} is not an arrow {fa!r} -> {fe!r}")
            table.append(target.labels[fa, fe].index(image) + 1)
        comps[a, e] = MultiMap(tuple(len(h) for h in homs), target.hom[fa, fe], tuple(table))
    return MultiEntryFunctor(sources, target, obj, comps, name=name)


def functor_to_json(F: MultiEntryFunctor, source_names: list[str], target_name: str) -> dict:
    arrows = []
    for a, e in cartesian(object_tuples(F.sources), repeat=2):
        fa, fe = F.obj_map[a], F.obj_map[e]
        homs = [C.labels[a[i], e[i]] for i, C in enumerate(F.sources)]
        for pos, labels in enumerate(cartesian(*homs)):
            arrows.append([list(labels), F.target.labels[fa, fe][F.components[a, e].table[pos] - 1]])
    return {
        "name": F.name,
        "sources": source_names,
        "target": target_name,
        "objects": [[[_object_name(x) for x in a], _object_name(F.obj_map[a])] for a in object_tuples(F.sources)],
        "arrows": arrows,
    }


def transformation_from_json(data: dict, functors: dict) -> VNatTransformation:
    try:
        F, G = functors[data["source"]], functors[data["target"]]
        given = {tuple(_key(v) for v in k): v for k, v in data["components"]}
    except KeyError as exc:
        raise InputError(f"transformation refers to unknown functor {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed transformation: {exc}") from exc
    C = F.target
    comps = {}
    for a in object_tuples(F.sources):
        fa, ga = F.obj_map[a], G.obj_map[a]
        if a not in given or given[a] not in C.labels[fa, ga]:
            raise InputError(f"{data.get('name', '')}: component at {a!r} must be an arrow {fa!r} -> {ga!r}")
        comps[a] = MultiMap((), C.hom[fa, ga], (C.labels[fa, ga].index(given[a]) + 1,))
    return VNatTransformation(F, G, comps)


def load_bundle(data: dict, bounds: SizeBounds | None = None) -> Bundle:
    if not isinstance(data, dict):
        raise InputError("a bundle must be a JSON object")
    bounds = bounds or SizeBounds()
    out = Bundle(extra={k: v for k, v in data.items() if k not in ("categories", "functors", "transformations")})
    for c in data.get("categories", []):
        C = category_from_json(c)
        bounds.check_category(C)
        if C.name in out.categories:
            raise InputError(f"category name {C.name!r} used twice")
        out.categories[C.name] = C
    for f in data.get("functors", []):
        out.functors[f.get("name", "")] = functor_from_json(f, out.categories)
    for t in data.get("transformations", []):
        out.transformations[t.get("name", "")] = transformation_from_json(t, out.functors)
    return out


__all__ = [
    "InputError", "SizeBounds", "Bundle", "category_from_json", "category_to_json", "functor_from_json",
    "functor_to_json", "transformation_from_json", "load_bundle",
]

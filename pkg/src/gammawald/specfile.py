"""JSON category spec files.

A spec is a JSON object with the fields below; unknown fields are rejected.
Identities are implicit and named ``id_<object>``.

    name               optional label
    objects            [name, ...]
    morphisms          [{"name", "src", "tgt"}, ...]       non-identity only
    compose            [[g, f, g o f], ...]
    unit               permutative unit (makes the file permutative)
    tensor_obj         [[a, b, a (x) b], ...]             total
    tensor_mor         [[f, g, f (x) g], ...]             all non-identity pairs
    symmetry           [[a, b, beta_ab], ...]             total
    zero               zero object (makes the file a Waldhausen presentation)
    cofibrations       [morphism, ...]                    identities implicit
    weak_equivalences  [morphism, ...]                    identities implicit
    wedges             [{"left", "right", "object", "inl", "inr"}, ...]
"""

from __future__ import annotations

import hashlib
import json
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import SpecError
from .fincat import FinCat, FinPermCat

_FIELDS = (
    "name",
    "objects",
    "morphisms",
    "compose",
    "unit",
    "tensor_obj",
    "tensor_mor",
    "symmetry",
    "zero",
    "cofibrations",
    "weak_equivalences",
    "wedges",
)
_WALD_FIELDS = ("cofibrations", "weak_equivalences", "wedges")
_PERM_FIELDS = ("tensor_obj", "tensor_mor", "symmetry")


@dataclass(frozen=True)
class Wedge:
    left: str
    right: str
    object: str
    inl: str
    inr: str


@dataclass(frozen=True)
class CategorySpec:
    objects: tuple[str, ...]
    morphisms: tuple[tuple[str, str, str], ...] = ()
    compose: tuple[tuple[str, str, str], ...] = ()
    name: str = ""
    unit: str | None = None
    tensor_obj: tuple[tuple[str, str, str], ...] = ()
    tensor_mor: tuple[tuple[str, str, str], ...] = ()
    symmetry: tuple[tuple[str, str, str], ...] = ()
    zero: str | None = None
    cofibrations: tuple[str, ...] = ()
    weak_equivalences: tuple[str, ...] = ()
    wedges: tuple[Wedge, ...] = field(default=())

    @property
    def is_permutative(self) -> bool:
        return self.unit is not None

    @property
    def is_waldhausen(self) -> bool:
        return self.zero is not None


def _str(v, path):
    if not isinstance(v, str) or not v:
        raise SpecError("expected a non-empty string", path)
    return v


def _list(v, path):
    if not isinstance(v, list):
        raise SpecError("expected a list", path)
    return v


def _triples(v, path):
    out = []
    for k, row in enumerate(_list(v, path)):
        p = f"{path}[{k}]"
        if not isinstance(row, list) or len(row) != 3:
            raise SpecError("expected a list of three names", p)
        out.append(tuple(_str(x, p) for x in row))
    return tuple(out)


def _record(v, keys, path):
    if not isinstance(v, dict):
        raise SpecError("expected an object", path)
    extra = sorted(set(v) - set(keys))
    if extra:
        raise SpecError(f"unknown field(s) {extra}", path)
    missing = [k for k in keys if k not in v]
    if missing:
        raise SpecError(f"missing field(s) {missing}", path)
    return tuple(_str(v[k], f"{path}.{k}") for k in keys)


def parse_spec(text: str) -> CategorySpec:
    """Parse and check a spec; every referenced name must be declared."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise SpecError("top level must be a JSON object")
    unknown = sorted(set(raw) - set(_FIELDS))
    if unknown:
        raise SpecError(f"unknown field(s) {unknown}")
    if "objects" not in raw:
        raise SpecError("missing field", "objects")
    objects = tuple(_str(o, f"objects[{k}]") for k, o in enumerate(_list(raw["objects"], "objects")))
    if not objects:
        raise SpecError("at least one object required", "objects")
    if len(set(objects)) != len(objects):
        raise SpecError("duplicate object name", "objects")
    morphisms = tuple(
        _record(m, ("name", "src", "tgt"), f"morphisms[{k}]")
        for k, m in enumerate(_list(raw.get("morphisms", []), "morphisms"))
    )
    spec = CategorySpec(
        objects=objects,
        morphisms=morphisms,
        compose=_triples(raw.get("compose", []), "compose"),
        name=_str(raw["name"], "name") if "name" in raw else "",
        unit=_str(raw["unit"], "unit") if "unit" in raw else None,
        tensor_obj=_triples(raw.get("tensor_obj", []), "tensor_obj"),
        tensor_mor=_triples(raw.get("tensor_mor", []), "tensor_mor"),
        symmetry=_triples(raw.get("symmetry", []), "symmetry"),
        zero=_str(raw["zero"], "zero") if "zero" in raw else None,
        cofibrations=tuple(
            _str(x, f"cofibrations[{k}]") for k, x in enumerate(_list(raw.get("cofibrations", []), "cofibrations"))
        ),
        weak_equivalences=tuple(
            _str(x, f"weak_equivalences[{k}]")
            for k, x in enumerate(_list(raw.get("weak_equivalences", []), "weak_equivalences"))
        ),
        wedges=tuple(
            Wedge(*_record(w, ("left", "right", "object", "inl", "inr"), f"wedges[{k}]"))
            for k, w in enumerate(_list(raw.get("wedges", []), "wedges"))
        ),
    )
    if spec.unit is None:
        for f in _PERM_FIELDS:
            if f in raw:
                raise SpecError("permutative tables given without a unit", f)
    if spec.zero is None:
        for f in _WALD_FIELDS:
            if f in raw:
                raise SpecError("Waldhausen data given without a zero object", f)
    _check_names(spec)
    return spec


def _check_names(spec: CategorySpec) -> None:
    objs = set(spec.objects)
    mors = {f"id_{o}" for o in spec.objects}
    for k, (name, s, t) in enumerate(spec.morphisms):
        if name in mors:
            raise SpecError(f"duplicate morphism name {name!r}", f"morphisms[{k}].name")
        for key, o in (("src", s), ("tgt", t)):
            if o not in objs:
                raise SpecError(f"unknown object {o!r}", f"morphisms[{k}].{key}")
        mors.add(name)

    def need(names, kinds, path):
        for n, kind in zip(names, kinds):
            pool = objs if kind == "o" else mors
            if n not in pool:
                what = "object" if kind == "o" else "morphism"
                raise SpecError(f"unknown {what} {n!r}", path)

    for k, row in enumerate(spec.compose):
        need(row, "mmm", f"compose[{k}]")
    for key in ("unit", "zero"):
        v = getattr(spec, key)
        if v is not None and v not in objs:
            raise SpecError(f"unknown object {v!r}", key)
    for k, row in enumerate(spec.tensor_obj):
        need(row, "ooo", f"tensor_obj[{k}]")
    for k, row in enumerate(spec.tensor_mor):
        need(row, "mmm", f"tensor_mor[{k}]")
    for k, row in enumerate(spec.symmetry):
        need(row, "oom", f"symmetry[{k}]")
    for key in ("cofibrations", "weak_equivalences"):
        for k, m in enumerate(getattr(spec, key)):
            need((m,), "m", f"{key}[{k}]")
    for k, w in enumerate(spec.wedges):
        need((w.left, w.right, w.object, w.inl, w.inr), "ooomm", f"wedges[{k}]")
    for key in ("tensor_obj", "tensor_mor", "symmetry"):
        seen = set()
        for k, row in enumerate(getattr(spec, key)):
            if row[:2] in seen:
                raise SpecError(f"duplicate entry for {row[:2]}", f"{key}[{k}]")
            seen.add(row[:2])


def serialize_spec(spec: CategorySpec) -> str:
    out: dict = {}
    if spec.name:
        out["name"] = spec.name
    out["objects"] = list(spec.objects)
    out["morphisms"] = [{"name": n, "src": s, "tgt": t} for n, s, t in spec.morphisms]
    out["compose"] = [list(r) for r in spec.compose]
    if spec.unit is not None:
        out["unit"] = spec.unit
        out["tensor_obj"] = [list(r) for r in spec.tensor_obj]
        out["tensor_mor"] = [list(r) for r in spec.tensor_mor]
        out["symmetry"] = [list(r) for r in spec.symmetry]
    if spec.zero is not None:
        out["zero"] = spec.zero
        out["cofibrations"] = list(spec.cofibrations)
        out["weak_equivalences"] = list(spec.weak_equivalences)
        out["wedges"] = [
            {"left": w.left, "right": w.right, "object": w.object, "inl": w.inl, "inr": w.inr}
            for w in spec.wedges
        ]
    return json.dumps(out, indent=1) + "\n"


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def build_category(spec: CategorySpec) -> FinCat:
    return FinCat.from_names(spec.objects, spec.morphisms, spec.compose, name=spec.name)


def build_permutative(spec: CategorySpec) -> FinPermCat:
    if spec.unit is None:
        raise SpecError("spec has no permutative structure", "unit")
    cat = build_category(spec)
    o, m = cat.obj, cat.mor
    return FinPermCat(
        cat,
        o(spec.unit),
        {(o(a), o(b)): o(c) for a, b, c in spec.tensor_obj},
        {(m(f), m(g)): m(h) for f, g, h in spec.tensor_mor},
        {(o(a), o(b)): m(s) for a, b, s in spec.symmetry},
    )


def spec_from_permcat(pcat: FinPermCat, name: str | None = None) -> CategorySpec:
    """Inverse of :func:`build_permutative` (identities stay implicit)."""
    c = pcat.base
    on, mn = c.obj_names, c.mor_names
    ids = set(c.ident)
    morphisms = tuple((mn[x], on[c.src[x]], on[c.tgt[x]]) for x in c.morphisms if x not in ids)
    compose = tuple(
        (mn[g], mn[f], mn[h]) for (g, f), h in sorted(c.comp.items()) if g not in ids and f not in ids
    )
    tensor_mor = tuple(
        (mn[f], mn[g], mn[h])
        for (f, g), h in sorted(pcat.tensor_mor.items())
        if not (f in ids and g in ids)
    )
    return CategorySpec(
        objects=on,
        morphisms=morphisms,
        compose=compose,
        name=c.name if name is None else name,
        unit=on[pcat.unit],
        tensor_obj=tuple((on[a], on[b], on[x]) for (a, b), x in sorted(pcat.tensor_obj.items())),
        tensor_mor=tensor_mor,
        symmetry=tuple((on[a], on[b], mn[s]) for (a, b), s in sorted(pcat.symmetry.items())),
    )


FIXTURES = ("C2", "X1", "Z3", "C2_plus", "X1_plus", "Z3_plus", "pointed_sets")


def fixture_text(name: str) -> str:
    return resources.files("gammawald.fixtures").joinpath(f"{name}.json").read_text()


def load_fixture(name: str) -> CategorySpec:
    return parse_spec(fixture_text(name))


def read_source(source: str) -> str:
    """Text of ``source``: a path, ``-`` for stdin, or ``builtin:<fixture>``."""
    if source == "-":
        return sys.stdin.read()
    if source.startswith("builtin:"):
        name = source.split(":", 1)[1]
        if name not in FIXTURES:
            raise SpecError(f"unknown builtin fixture {name!r}; choose from {', '.join(FIXTURES)}")
        return fixture_text(name)
    try:
        return Path(source).read_text()
    except OSError as exc:
        raise SpecError(f"cannot read {source}: {exc.strerror}") from None

"""Regenerate the generated fixtures: the C_+ categories and bounded pointed sets.

Run from the repository root: ``python tools/make_fixtures.py``.
"""

from __future__ import annotations

import itertools
import json
from pathlib import Path

from gammawald.compare import plus_category
from gammawald.specfile import build_permutative, load_fixture, serialize_spec, spec_from_permcat

OUT = Path(__file__).resolve().parent.parent / "src" / "gammawald" / "fixtures"


def pointed_sets(max_size: int = 3) -> dict:
    """Pointed sets {0, 1, .., n-1} for n <= max_size and all pointed maps.

    Cofibrations are the injections, weak equivalences the bijections; the
    only non-trivial chosen wedge is P2 v P2 = P3.
    """
    sizes = range(1, max_size + 1)
    obj = {n: f"P{n}" for n in sizes}

    def name(a, b, images):
        if a == b and images == tuple(range(1, a)):
            return f"id_P{a}"
        return f"m{a}{b}_" + ("".join(map(str, images)) or "0")

    maps = {}
    for a in sizes:
        for b in sizes:
            for images in itertools.product(range(b), repeat=a - 1):
                maps[name(a, b, images)] = (a, b, images)
    morphisms = [{"name": n, "src": obj[a], "tgt": obj[b]} for n, (a, b, _) in maps.items() if not n.startswith("id_")]
    compose = []
    for (g, (b1, c, gi)), (f, (a, b, fi)) in itertools.product(maps.items(), repeat=2):
        if b1 != b or g.startswith("id_") or f.startswith("id_"):
            continue
        images = tuple(0 if x == 0 else gi[x - 1] for x in fi)
        compose.append([g, f, name(a, c, images)])
    inj = [n for n, (a, b, im) in maps.items() if len(set(x for x in im)) == a - 1 and 0 not in im]
    bij = [n for n in inj if maps[n][0] == maps[n][1]]
    return {
        "name": "pointed_sets",
        "objects": list(obj.values()),
        "morphisms": morphisms,
        "compose": compose,
        "zero": "P1",
        "cofibrations": [n for n in inj if not n.startswith("id_")],
        "weak_equivalences": [n for n in bij if not n.startswith("id_")],
        "wedges": [{"left": "P2", "right": "P2", "object": "P3", "inl": "m23_1", "inr": "m23_2"}],
    }


def main() -> None:
    for base in ("C2", "X1", "Z3"):
        plus = plus_category(build_permutative(load_fixture(base)))
        spec = spec_from_permcat(plus, name=f"{base}_plus")
        (OUT / f"{base}_plus.json").write_text(serialize_spec(spec))
    (OUT / "pointed_sets.json").write_text(json.dumps(pointed_sets(), indent=1) + "\n")


if __name__ == "__main__":
    main()

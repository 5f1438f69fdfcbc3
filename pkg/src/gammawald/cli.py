"""Command line entry point.

    gammawald <command> SPEC [--max-len L] [--max-dim D] [--budget N] [--max-morphisms M] [--seed S] [--format text|json]

SPEC is a path, ``-`` for stdin, or ``builtin:<fixture>``.  Exit status is 2
on input errors, 1 when a check reports findings and 0 on a clean pass.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Callable, Sequence

from . import compare, ktheory, wald
from .errors import BudgetExceeded, SpecError
from .fincat import validate_category, validate_permutative
from .gamma import enumerate_truncated
from .report import Report
from .specfile import CategorySpec, build_category, build_permutative, digest, parse_spec, read_source

COMMANDS = (
    "validate",
    "gamma",
    "axioms",
    "split",
    "k0",
    "quillen-a",
    "oplax",
    "adjunction",
    "homology",
    "report-all",
)

DEFAULT_MAX_MORPHISMS = 200_000


def _need_perm(spec: CategorySpec, command: str) -> None:
    if not spec.is_permutative:
        raise SpecError(f"{command} needs a permutative spec", "unit")


def run_validate(spec: CategorySpec, args) -> Report:
    rep = Report("validate")
    cat = build_category(spec)
    rep.merge(validate_category(cat), "category.")
    if rep.ok and spec.is_permutative:
        rep.merge(validate_permutative(build_permutative(spec)), "permutative.")
    if rep.ok and spec.is_waldhausen:
        view = wald.FinWaldView.from_spec(spec)
        for a in view.objects:
            rep.record("wald.zero", view.hom_size(view.zero, a) == 1 and view.hom_size(a, view.zero) == 1, view.show(a))
        for (x, y), (w, inl, inr) in sorted(view.wedges.items()):
            c = view.cat
            typed = (c.src[inl], c.tgt[inl], c.src[inr], c.tgt[inr]) == (x, w, y, w)
            rep.record("wald.wedge_typed", typed, f"{view.show(x)} v {view.show(y)}")
            if view.zero in (x, y):
                rep.record("wald.wedge_unit", False, f"{view.show(x)} v {view.show(y)}", "wedges with the zero object are fixed")
    rep.notes["objects"] = len(cat.obj_names)
    rep.notes["morphisms"] = len(cat.mor_names)
    return rep


def run_gamma(spec: CategorySpec, args) -> Report:
    _need_perm(spec, "gamma")
    pcat = build_permutative(spec)
    rep = Report("gamma")
    for L in range(args.max_len + 1):
        win = enumerate_truncated(pcat, L, args.max_morphisms)
        rep.notes[f"L={L}"] = {
            "objects": len(win.objects),
            "morphisms": win.morphism_count,
            "weak_equivalences": sum(1 for _ in win.all_weak_equivalences()),
            "cofibrations": sum(1 for _ in win.all_cofibrations()),
        }
    return rep


def _view(spec: CategorySpec, args) -> wald.WaldView:
    if spec.is_waldhausen:
        return wald.FinWaldView.from_spec(spec)
    _need_perm(spec, "this command")
    return wald.gamma_as_wald(build_permutative(spec), args.max_len, args.max_morphisms)


def run_axioms(spec: CategorySpec, args) -> Report:
    return wald.check_waldhausen_axioms(_view(spec, args), budget=args.budget, seed=args.seed)


def run_split(spec: CategorySpec, args) -> Report:
    _need_perm(spec, "split")
    return wald.check_weakly_split(wald.gamma_as_wald(build_permutative(spec), args.max_len, args.max_morphisms))


def run_k0(spec: CategorySpec, args) -> Report:
    rep = Report("k0")
    ktheory.ORACLE_LOG.reset()
    if spec.is_waldhausen:
        view = wald.FinWaldView.from_spec(spec)
        rows, stats = ktheory.k0_relations(view, args.budget)
        rep.notes["waldhausen"] = ktheory.cokernel(rows, len(view.objects)).to_json()
        rep.notes["relations"] = stats
    else:
        _need_perm(spec, "k0")
        pcat = build_permutative(spec)
        monoid = ktheory.pi0_monoid(pcat, rep)
        for v in monoid.violations():
            rep.fail("pi0.monoid", v)
        segal = ktheory.grothendieck_group(monoid)
        pairs = ktheory.grothendieck_pairs(monoid)
        plus = ktheory.k0_segal(compare.plus_category(pcat))
        rep.notes["pi0"] = list(monoid.elements)
        rep.notes["segal"] = segal.to_json()
        rep.notes["segal_pairs_oracle"] = pairs.to_json()
        rep.notes["segal_plus"] = plus.to_json()
        rep.record("oracle.pairs", ktheory.groups_isomorphic(segal, pairs), "Grothendieck group", str(pairs))
        rep.record("plus", ktheory.groups_isomorphic(segal, plus), "K0(C_+)", str(plus))
        seen = []
        for L in (args.max_len, args.max_len + 1):
            rows, stats = ktheory.k0_relations(wald.gamma_as_wald(pcat, L, args.max_morphisms), args.budget)
            k0w = ktheory.cokernel(rows, stats["generators"])
            seen.append(k0w)
            rep.notes[f"waldhausen L={L}"] = {**k0w.to_json(), "relations": stats}
            rep.record("segal_vs_waldhausen", ktheory.groups_isomorphic(segal, k0w), f"L={L}", str(k0w))
        rep.record("stable", ktheory.groups_isomorphic(*seen), f"L={args.max_len} to L={args.max_len + 1}")
    rep.tally("oracle.minors", checked=ktheory.ORACLE_LOG.checked, passed=ktheory.ORACLE_LOG.agreed)
    return rep


def run_quillen_a(spec: CategorySpec, args) -> Report:
    _need_perm(spec, "quillen-a")
    rep = compare.check_quillen_a(build_permutative(spec), args.max_len, all_morphisms=args.all_morphisms)
    rep.notes["comma_objects"] = "all morphisms" if args.all_morphisms else "weak equivalences"
    return rep


def run_oplax(spec: CategorySpec, args) -> Report:
    _need_perm(spec, "oplax")
    pcat = build_permutative(spec)
    rep = Report("oplax")
    rep.merge(compare.check_s_functor(pcat), "s.")
    rep.merge(
        compare.check_oplax_coherence(pcat, budget=args.budget, seed=args.seed, max_len=min(args.max_len, 3)),
        "structure.",
    )
    return rep


def run_adjunction(spec: CategorySpec, args) -> Report:
    rep = Report("adjunction")
    if spec.is_waldhausen:
        view = wald.FinWaldView.from_spec(spec)
        rep.merge(compare.check_triangle_wald(view), "triangle.wald.")
        rep.merge(compare.check_counit_exact(view, 2, args.budget, args.seed), "counit.")
        return rep
    _need_perm(spec, "adjunction")
    pcat = build_permutative(spec)
    rep.merge(compare.check_triangle_gamma(pcat, args.max_len, args.budget, args.seed, args.max_morphisms), "triangle.gamma.")
    view = wald.gamma_as_wald(pcat, min(args.max_len, 2), args.max_morphisms)
    rep.merge(compare.check_triangle_wald(view), "triangle.wald.")
    rep.merge(compare.check_counit_exact(view, 2, min(args.budget, 3000), args.seed), "counit.")
    return rep


def run_homology(spec: CategorySpec, args) -> Report:
    rep = Report("homology")
    rep.notes["caveat"] = "diagnostic only: nerve homology of finite windows"
    ktheory.ORACLE_LOG.reset()
    cat = build_category(spec)
    rep.notes["H(C)"] = [str(h) for h in ktheory.homology(cat, args.max_dim, args.budget)]
    if spec.is_permutative:
        pcat = build_permutative(spec)
        plus = compare.plus_category(pcat)
        h_plus = ktheory.homology(plus.base, args.max_dim, args.budget)
        rep.notes["H(C_+)"] = [str(h) for h in h_plus]
        for L in range(1, args.max_len + 1):
            view = wald.gamma_as_wald(pcat, L, args.max_morphisms)
            n = window_components(view)
            rep.notes[f"components wGamma L={L}"] = n
            rep.record("H0_vs_components", h_plus[0].rank == n and not h_plus[0].factors, f"L={L}", n)
    rep.tally("oracle.minors", checked=ktheory.ORACLE_LOG.checked, passed=ktheory.ORACLE_LOG.agreed)
    return rep


def window_components(view: wald.WaldView) -> int:
    """Connected components of the weak-equivalence graph of the window."""
    objs = list(view.objects)
    idx = {a: k for k, a in enumerate(objs)}
    edges = [(idx[a], idx[b]) for a in objs for b in objs if view.weak_equivalences(a, b)]
    return len(ktheory.components(len(objs), edges))


def run_report_all(spec: CategorySpec, args) -> Report:
    rep = Report("report-all")
    steps: list[tuple[str, Callable]] = [("validate", run_validate)]
    if spec.is_permutative:
        steps += [
            ("gamma", run_gamma),
            ("axioms", run_axioms),
            ("split", run_split),
            ("k0", run_k0),
            ("quillen-a", run_quillen_a),
            ("oplax", run_oplax),
            ("adjunction", run_adjunction),
            ("homology", run_homology),
        ]
    elif spec.is_waldhausen:
        steps += [("axioms", run_axioms), ("k0", run_k0), ("adjunction", run_adjunction), ("homology", run_homology)]
    for name, fn in steps:
        rep.merge(fn(spec, args), f"{name}.")
    return rep


RUNNERS: dict[str, Callable[[CategorySpec, argparse.Namespace], Report]] = {
    "validate": run_validate,
    "gamma": run_gamma,
    "axioms": run_axioms,
    "split": run_split,
    "k0": run_k0,
    "quillen-a": run_quillen_a,
    "oplax": run_oplax,
    "adjunction": run_adjunction,
    "homology": run_homology,
    "report-all": run_report_all,
}


def run(command: str, spec: CategorySpec, args: argparse.Namespace, text: str = "") -> Report:
    rep = RUNNERS[command](spec, args)
    rep.command = command
    rep.digest = digest(text) if text else ""
    rep.params = {
        "max_len": args.max_len,
        "max_dim": args.max_dim,
        "budget": args.budget,
        "max_morphisms": args.max_morphisms,
        "seed": args.seed,
    }
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gammawald", description="Checks for the Gamma construction on finite permutative categories.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("spec", help="spec file, '-' for stdin, or builtin:<name>")
        s.add_argument("--max-len", type=int, default=2, help="longest tuple in the Gamma window")
        s.add_argument("--max-dim", type=int, default=3, help="nerve dimension for homology")
        s.add_argument("--budget", type=int, default=wald.DEFAULT_BUDGET, help="instances per check before sampling")
        s.add_argument("--max-morphisms", type=int, default=DEFAULT_MAX_MORPHISMS, help="hard cap on morphisms in a Gamma window")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--format", choices=("text", "json"), default="text")
        if name == "quillen-a":
            s.add_argument("--all-morphisms", action="store_true", help="comma objects over all maps, not only weak equivalences")
        else:
            s.set_defaults(all_morphisms=False)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.max_len < 0 or args.max_dim < 1 or args.budget < 1 or args.max_morphisms < 1:
            raise SpecError("--max-len must be >= 0; --max-dim, --budget and --max-morphisms >= 1")
        text = read_source(args.spec)
        spec = parse_spec(text)
        rep = run(args.command, spec, args, text)
    except (SpecError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps(rep.to_json(), indent=1, sort_keys=False, default=str))
    else:
        print("\n".join(rep.summary_lines()))
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())

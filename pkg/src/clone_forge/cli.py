"""Command-line front end emitting deterministic law-check reports.

Reports are JSON (sorted keys) or a text rendering derived from the same
payload; stdout carries the report and stderr carries diagnostics such as
elapsed time, so identical inputs produce byte-identical stdout.  Exit codes:
0 all checks passed, 1 at least one law failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

from . import corpus
from .checks import CheckPolicy, LawCheck, Report, describe
from .clone import (
    Budget,
    ContextError,
    FreeClone,
    builtin_clone,
    clone_laws_check,
    enumerate_theory_homs,
    finite_clone_of_algebra,
    theory_laws_check,
)
from .fin_cat import ShapeError, check_symmetric_monoid, generators, identity
from .io_formats import (
    SchemaError,
    dump_subst_algebra,
    load_finite_algebra,
    load_signature,
    load_subst_algebra,
)
from .iso_bridge import c_functor, roundtrip_alg, roundtrip_clone, s_functor
from .presheaf_f import (
    StageRangeError,
    check_delta_laws,
    check_functoriality,
    representable_V,
)
from .subst_algebra import (
    LAW_MAPPING,
    check_diagrams,
    check_presentation,
    hom_check,
    truncate_algebra,
    variable_family,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
FORMAT_ENV = "CLONE_FORGE_FORMAT"


class InputError(ValueError):
    """Unusable command-line input; maps to exit code 2."""


@dataclass
class RunConfig:
    command: str
    bound: int = 3
    depth: int = 2
    max_arity: int = 3
    seed: int | None = None
    fmt: str = "text"
    input: str | None = None
    output: str | None = None
    builtin: str | None = None
    signature: str | None = None
    algebra: str | None = None
    src: int = 1
    dst: int = 1

    def __post_init__(self) -> None:
        if self.bound < 2:
            raise InputError("bound must be at least 2 (laws use two stages of headroom)")
        if self.depth < 0 or self.max_arity < 0:
            raise InputError("depth and max-arity must be non-negative")
        if self.fmt not in ("text", "json"):
            raise InputError(f"unknown format {self.fmt!r}")


def _policy(config: RunConfig) -> CheckPolicy:
    return CheckPolicy(seed=config.seed or 0)


def _budget(config: RunConfig) -> Budget:
    return Budget(
        max_depth=config.depth,
        max_arity=config.max_arity,
        sample_seed=config.seed,
    )


def _clone_from_flags(config: RunConfig):
    picked = [
        flag
        for flag, value in (
            ("--builtin", config.builtin),
            ("--signature", config.signature),
            ("--algebra", config.algebra),
        )
        if value
    ]
    if len(picked) != 1:
        raise InputError("pick exactly one clone source: --builtin, --signature or --algebra")
    if config.builtin:
        try:
            return builtin_clone(config.builtin)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    if config.signature:
        return FreeClone(load_signature(config.signature))
    algebra = load_finite_algebra(config.algebra)
    return finite_clone_of_algebra(algebra, config.max_arity)


def _monoid_report(monoid_report) -> Report:
    report = Report()
    for check in monoid_report.checks:
        witness = None
        if check.counterexample is not None:
            lhs, rhs = check.counterexample
            witness = {"lhs": lhs, "rhs": rhs}
        report.checks.append(
            LawCheck(check.law, check.passed, "exhaustive", 1, witness)
        )
    return report


def _carrier_note(clone, budget: Budget) -> str:
    sizes = []
    for n in range(budget.max_arity + 1):
        try:
            sizes.append(len(clone.elems(n, budget)))
        except Exception:
            sizes.append(None)
    return f"carrier sizes C_0..C_{budget.max_arity}: {sizes}"


def _agreement_report(pres: Report, diag: Report) -> Report:
    """Verdict agreement between the two presentations, law for law."""
    report = Report()
    for eq_law, diagram_law in LAW_MAPPING.items():
        left = pres.check(eq_law)
        right = diag.check(diagram_law)
        agree = left.passed == right.passed
        witness = None
        if not agree:
            witness = {
                "equation-verdict": left.passed,
                "diagram-verdict": right.passed,
            }
        report.checks.append(
            LawCheck(f"{eq_law}<->{diagram_law}", agree, "exhaustive", 1, witness)
        )
    return report


def cmd_check_f(config: RunConfig):
    g = generators()
    return [("fin-cat", _monoid_report(check_symmetric_monoid(g.c, g.w, g.s)))]


def cmd_free_clone(config: RunConfig):
    if not config.signature:
        raise InputError("free-clone needs --signature FILE")
    clone = FreeClone(load_signature(config.signature))
    budget = _budget(config)
    report = clone_laws_check(clone, budget, _policy(config))
    report.notes.append(_carrier_note(clone, budget))
    return [("clone-laws", report)]


def cmd_finite_clone(config: RunConfig):
    if not config.input:
        raise InputError("finite-clone needs --input FILE")
    algebra = load_finite_algebra(config.input)
    clone = finite_clone_of_algebra(algebra, config.max_arity)
    budget = _budget(config)
    report = clone_laws_check(clone, budget, _policy(config))
    report.notes.append(_carrier_note(clone, budget))
    return [("clone-laws", report)]


def cmd_check_clone(config: RunConfig):
    clone = _clone_from_flags(config)
    budget, policy = _budget(config), _policy(config)
    return [
        ("clone-laws", clone_laws_check(clone, budget, policy)),
        ("theory-laws", theory_laws_check(clone, config.bound, budget, policy)),
    ]


def cmd_to_subst(config: RunConfig):
    clone = _clone_from_flags(config)
    budget, policy = _budget(config), _policy(config)
    algebra = s_functor(clone, budget)
    report = check_presentation(algebra, config.bound, policy)
    sections = [("presentation", report)]
    if config.output:
        try:
            table = truncate_algebra(algebra, config.bound)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        with open(config.output, "w") as handle:
            handle.write(dump_subst_algebra(table))
        report.notes.append(f"wrote {config.output}")
    return sections


def cmd_to_clone(config: RunConfig):
    if not config.input:
        raise InputError("to-clone needs --input FILE")
    algebra = load_subst_algebra(config.input)
    clone = c_functor(algebra)
    max_arity = min(config.max_arity, algebra.base.bound // 2)
    budget = Budget(max_depth=config.depth, max_arity=max_arity, sample_seed=config.seed)
    report = clone_laws_check(clone, budget, _policy(config))
    if max_arity < config.max_arity:
        report.notes.append(
            f"max-arity clamped to {max_arity}: substitution at arity (m,n) "
            f"needs stage n+m within the stored bound {algebra.base.bound}"
        )
    return [("clone-laws", report)]


def cmd_check_subst(config: RunConfig):
    if not config.input:
        raise InputError("check-subst needs --input FILE")
    algebra = load_subst_algebra(config.input)
    policy = _policy(config)
    pres = check_presentation(algebra, config.bound, policy)
    diag = check_diagrams(algebra, config.bound, policy)
    return [
        ("presentation", pres),
        ("diagrams", diag),
        ("agreement", _agreement_report(pres, diag)),
    ]


def cmd_roundtrip(config: RunConfig):
    clone = _clone_from_flags(config)
    budget, policy = _budget(config), _policy(config)
    sections = [("roundtrip-clone", roundtrip_clone(clone, budget, policy))]
    sections.append(
        ("roundtrip-algebra", roundtrip_alg(s_functor(clone, budget), config.bound, budget, policy))
    )
    return sections


def cmd_enum_hom(config: RunConfig):
    clone = _clone_from_flags(config)
    budget = _budget(config)
    try:
        homs = enumerate_theory_homs(clone, config.src, config.dst, budget)
    except Exception as exc:
        raise InputError(f"cannot enumerate hom-set: {exc}") from exc
    report = Report()
    report.checks.append(
        LawCheck(f"hom({config.src},{config.dst})", True, "exhaustive", len(homs), None)
    )
    report.notes.append(f"hom-set size: {len(homs)}")
    for hom in homs[:20]:
        report.notes.append(f"hom: {list(hom.components)!r}")
    if len(homs) > 20:
        report.notes.append(f"... {len(homs) - 20} more")
    return [("theory-homs", report)]


def cmd_demo(config: RunConfig):
    budget, policy = _budget(config), _policy(config)
    bound = config.bound
    sections = []

    g = generators()
    sections.append(("fin-cat", _monoid_report(check_symmetric_monoid(g.c, g.w, g.s))))
    mutated = check_symmetric_monoid(g.c, g.w, identity(2))
    detection = Report()
    detection.checks.append(
        LawCheck(
            "detects-swap-mutation",
            not mutated.check("insert-swap").passed,
            "exhaustive",
            1,
            None,
        )
    )
    sections.append(("fin-cat-mutation", detection))

    clones = corpus.standard_clones(max_arity=max(budget.max_arity, 4))
    del clones["free-b2"]
    for name, clone in clones.items():
        sections.append((f"clone-laws:{name}", clone_laws_check(clone, budget, policy)))
    sections.append(
        ("theory-laws:initial", theory_laws_check(clones["initial"], bound, budget, policy))
    )

    V = representable_V()
    sections.append(("functoriality:V", check_functoriality(V, bound, policy)))
    sections.append(("delta-laws:V", check_delta_laws(V, bound, policy)))
    s_initial = s_functor(clones["initial"], budget)
    sections.append(("delta-laws:S(initial)", check_delta_laws(s_initial.base, bound, policy)))

    for name, clone in clones.items():
        algebra = s_functor(clone, budget)
        pres = check_presentation(algebra, bound, policy)
        diag = check_diagrams(algebra, bound, policy)
        sections.append((f"presentation:S({name})", pres))
        sections.append((f"diagrams:S({name})", diag))
        sections.append((f"agreement:S({name})", _agreement_report(pres, diag)))

    for name, clone in clones.items():
        sections.append((f"roundtrip-clone:{name}", roundtrip_clone(clone, budget, policy)))
    sections.append(("roundtrip-algebra:S(initial)", roundtrip_alg(s_initial, bound, budget, policy)))

    for target in ("meet", "terminal"):
        algebra = s_functor(clones[target], budget)
        family = variable_family(algebra)
        sections.append(
            (f"hom:variables->S({target})", hom_check(family, s_initial, algebra, bound, policy))
        )

    detection = Report()
    for law, mutant in corpus.designed_mutants():
        report = check_presentation(mutant.algebra, mutant.bound, policy)
        detection.checks.append(
            LawCheck(
                f"detects:{mutant.name}",
                law in report.failed_laws(),
                "exhaustive",
                1,
                None if law in report.failed_laws() else {"failed": report.failed_laws()},
            )
        )
    sections.append(("mutation-sensitivity", detection))
    return sections


_HANDLERS = {
    "check-f": cmd_check_f,
    "free-clone": cmd_free_clone,
    "finite-clone": cmd_finite_clone,
    "check-clone": cmd_check_clone,
    "to-subst": cmd_to_subst,
    "to-clone": cmd_to_clone,
    "check-subst": cmd_check_subst,
    "roundtrip": cmd_roundtrip,
    "enum-hom": cmd_enum_hom,
    "demo": cmd_demo,
}


def build_report(config: RunConfig, sections) -> dict:
    checks = []
    notes = []
    for section, report in sections:
        for check in report.checks:
            checks.append(
                {
                    "name": f"{section}:{check.law}",
                    "passed": check.passed,
                    "mode": check.mode,
                    "instances": check.instances,
                    "counterexample": describe(check.counterexample),
                }
            )
        notes.extend(f"{section}: {note}" for note in report.notes)
    overall = all(c["passed"] for c in checks)
    return {
        "command": config.command,
        "config": {
            "bound": config.bound,
            "depth": config.depth,
            "max_arity": config.max_arity,
            "seed": config.seed,
            "format": config.fmt,
        },
        "checks": checks,
        "notes": notes,
        "overall": "pass" if overall else "fail",
    }


def emit_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    lines = [f"command: {report['command']}", f"overall: {report['overall']}"]
    for check in report["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        lines.append(
            f"{status} {check['name']} [{check['mode']}, {check['instances']} instances]"
        )
        if check["counterexample"] is not None:
            lines.append(f"  counterexample: {json.dumps(check['counterexample'], sort_keys=True)}")
    for note in report["notes"]:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clone-forge",
        description="Law checking for clones, presheaf substitution algebras, and the translations between them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _HANDLERS:
        p = sub.add_parser(name)
        p.add_argument("--bound", type=int, default=3)
        p.add_argument("--depth", type=int, default=2)
        p.add_argument("--max-arity", type=int, default=3, dest="max_arity")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--format", choices=["text", "json"], default="text", dest="fmt")
        p.add_argument("--input", default=None)
        p.add_argument("--output", default=None)
        p.add_argument("--builtin", default=None)
        p.add_argument("--signature", default=None)
        p.add_argument("--algebra", default=None)
        if name == "enum-hom":
            p.add_argument("--src", type=int, default=1)
            p.add_argument("--dst", type=int, default=1)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    values = vars(args)
    fmt = os.environ.get(FORMAT_ENV) or values.get("fmt", "text")
    values["fmt"] = fmt
    started = time.perf_counter()
    try:
        config = RunConfig(**values)
        sections = _HANDLERS[config.command](config)
    except (InputError, SchemaError, ShapeError, ContextError, StageRangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = build_report(config, sections)
    sys.stdout.write(emit_report(report, config.fmt))
    elapsed = time.perf_counter() - started
    print(f"elapsed: {elapsed:.2f}s", file=sys.stderr)
    return EXIT_PASS if report["overall"] == "pass" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

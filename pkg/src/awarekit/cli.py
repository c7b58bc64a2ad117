"""Command-line interface.

Subcommands: ``validate``, ``check``, ``transform``, ``equiv``, ``fuzz``,
``lpa check``, ``lpa fuzz``, ``gen``.  Exit codes: 0 when everything passes,
1 when a property violation or counterexample is found, 2 on input errors
(malformed files, bad flags, unknown states).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import awareness, implicit, lpa, modelio, semantics, transforms, unawareness
from .awareness import AwarenessModel
from .enumeration import EnumConfig
from .errors import AwarekitError, ModelFormatError, PreconditionFailed
from .gen import GenCaps, gen_fh, gen_hms, gen_implicit
from .implicit import ComplementedModel, ImplicitModel
from .reports import Report
from .syntax import parse as parse_formula
from .unawareness import StateRef, UnawarenessModel, parse_space_key

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2


def _emit_report(report: Report, fmt: str, label: str) -> int:
    if fmt == "data":
        print(json.dumps(report.to_data(), sort_keys=True))
    else:
        print(f"{label}:")
        print(report.text())
    return EXIT_PASS if report.ok else EXIT_VIOLATION


def _validate_any(model) -> Report:
    if isinstance(model, AwarenessModel):
        return awareness.validate_fh(model)
    if isinstance(model, ImplicitModel):
        return implicit.validate_implicit(model)
    if isinstance(model, ComplementedModel):
        report = unawareness.validate_hms(model.base)
        return report.merge(implicit.validate_lambda(model))
    return unawareness.validate_hms(model)


def _resolve_state(model, token: str) -> StateRef:
    """Resolve a 'spaceKey:stateId' token; when the key as written is not a
    space and names no commas, also try it as a concatenation of single-
    character atoms, so 'pq:pq' addresses the space {p, q}."""
    ref = modelio.parse_state_token(token)
    lattice = model.lattice
    if lattice.has_space(ref.space):
        return lattice.require_state(ref)
    key = token.partition(":")[0]
    if "," not in key:
        candidate = frozenset(key)
        if candidate <= model.atoms and lattice.has_space(candidate):
            return lattice.require_state(StateRef(candidate, ref.id))
    raise ModelFormatError(f"no space for state token {token!r}")


def _caps_from(arg: str | None) -> GenCaps:
    caps = GenCaps()
    if not arg:
        return caps
    values = {"atoms": caps.atoms, "worlds": caps.worlds, "agents": caps.agents}
    for piece in arg.split(","):
        if "=" not in piece:
            raise ModelFormatError(f"bad caps entry {piece!r}; expected name=value")
        name, _, value = piece.partition("=")
        if name not in values:
            raise ModelFormatError(f"unknown cap {name!r}; expected atoms/worlds/agents")
        try:
            values[name] = int(value)
        except ValueError:
            raise ModelFormatError(f"cap {name!r} needs an integer") from None
    return GenCaps(**values)


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_validate(args) -> int:
    model = modelio.load_model(args.file)
    if args.dot:
        if isinstance(model, AwarenessModel):
            raise ModelFormatError("--dot needs a lattice model file")
        Path(args.dot).write_text(modelio.lattice_dot(model), encoding="utf-8")
    return _emit_report(_validate_any(model), args.format, f"validate {args.file}")


def _cmd_check(args) -> int:
    model = modelio.load_model(args.file)
    report = _validate_any(model)
    if not report.ok:
        raise ModelFormatError(
            f"model fails validation ({len(report.violations)} violation(s)); "
            f"run 'validate' for details")
    formula = parse_formula(args.formula, model.agents)

    if isinstance(model, AwarenessModel):
        if args.all:
            rows = [(w, str(awareness.fh_satisfies(model, w, formula)))
                    for w in model.worlds]
        else:
            if not args.state:
                raise ModelFormatError("check needs --state or --all")
            if args.state not in set(model.worlds):
                raise ModelFormatError(f"no world {args.state!r}")
            rows = [(args.state, str(awareness.fh_satisfies(model, args.state, formula)))]
    else:
        if isinstance(model, UnawarenessModel):
            raise ModelFormatError("check needs a complemented or implicit model "
                                   "(a bare 'pi' model has no implicit layer)")
        if args.all:
            rows = [(modelio.state_token(ref), str(semantics.satisfies(model, ref, formula)))
                    for ref in model.states]
        else:
            if not args.state:
                raise ModelFormatError("check needs --state or --all")
            ref = _resolve_state(model, args.state)
            rows = [(modelio.state_token(ref), str(semantics.satisfies(model, ref, formula)))]

    if args.format == "data":
        print(json.dumps({"formula": args.formula, "values": dict(rows)}, sort_keys=True))
    elif args.all:
        for token, value in rows:
            print(f"{token}\t{value}")
    else:
        print(rows[0][1])
    return EXIT_PASS


def _cmd_transform(args) -> int:
    model = modelio.load_model(args.file)
    if args.to in ("hms", "implicit-hms"):
        if not isinstance(model, AwarenessModel):
            raise ModelFormatError(f"--to {args.to} needs an awareness model file")
        if args.dump_category:
            category = awareness.build_category(model, minimize=args.minimize)
            directory = Path(args.dump_category)
            directory.mkdir(parents=True, exist_ok=True)
            manifest = {"atoms": sorted(model.language_atoms), "members": {}, "morphisms": {}}
            for space, member in category.models.items():
                key = unawareness.space_key(space)
                name = f"member_{key.replace(',', '_') or 'meet'}.model"
                (directory / name).write_text(modelio.dumps_model(member), encoding="utf-8")
                manifest["members"][key] = name
            for (large, small), morphism in category.morphisms.items():
                pair = f"{unawareness.space_key(large)}->{unawareness.space_key(small)}"
                manifest["morphisms"][pair] = dict(morphism.mapping)
            (directory / "category.json").write_text(
                json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        out = transforms.hms_transform(model, truncate=args.to == "implicit-hms",
                                       minimize=args.minimize)
    elif args.to == "fh":
        if not isinstance(model, ComplementedModel):
            raise ModelFormatError("--to fh needs a complemented model file "
                                   "(with both 'pi' and 'lambda')")
        out = transforms.fh_transform(model)
    elif args.to == "fh-star":
        if not isinstance(model, ImplicitModel):
            raise ModelFormatError("--to fh-star needs an implicit model file "
                                   "(with 'lambda_star' and 'alpha')")
        out = transforms.fh_star_transform(model)
    else:
        raise ModelFormatError(f"unknown transform target {args.to!r}")
    _write_or_print(modelio.dumps_model(out), args.out)
    return EXIT_PASS


def _cmd_equiv(args) -> int:
    source = modelio.load_model(args.a)
    produced = modelio.load_model(args.b)
    report = transforms.equivalence_check(source, produced, via=args.via, depth=args.depth)
    return _emit_report(report, args.format, f"equiv {args.a} ~ {args.b} via {args.via}")


def _cmd_fuzz(args) -> int:
    caps = _caps_from(args.caps)
    report = Report()
    for trial in range(args.trials):
        seed = args.seed + trial
        k = gen_fh(seed, caps)
        report.merge(awareness.validate_fh(k))
        comp = transforms.hms_transform(k)
        report.merge(unawareness.validate_hms(comp.base))
        report.merge(implicit.validate_lambda(comp))
        report.merge(unawareness.explicit_property_suite(comp.base))
        report.merge(implicit.implicit_property_suite(comp))
        im = transforms.hms_transform(k, truncate=True)
        report.merge(implicit.validate_implicit(im))
        report.merge(implicit.a_star_property_suite(im))
    return _emit_report(report, args.format, f"fuzz trials={args.trials}")


def _cmd_lpa_check(args) -> int:
    lines = modelio.load_proof(args.proof)
    verdict = lpa.check_proof(lines)
    if args.format == "data":
        print(json.dumps({"accepted": verdict.accepted, "failed_line": verdict.failed_line,
                          "reason": verdict.reason}, sort_keys=True))
    else:
        print(verdict)
    return EXIT_PASS if verdict.accepted else EXIT_VIOLATION


def _cmd_lpa_fuzz(args) -> int:
    caps = _caps_from(args.caps)
    report = lpa.fuzz_soundness(trials=args.trials, depth=args.depth,
                                caps=caps, seed=args.seed)
    return _emit_report(report, args.format, f"lpa fuzz trials={args.trials}")


def _cmd_gen(args) -> int:
    caps = _caps_from(args.caps)
    if args.family == "fh":
        model = gen_fh(args.seed, caps)
    elif args.family == "hms":
        model = gen_hms(args.seed, caps)
    elif args.family == "implicit-hms":
        model = gen_implicit(args.seed, caps)
    else:
        raise ModelFormatError(f"unknown family {args.family!r}")
    _write_or_print(modelio.dumps_model(model), args.out)
    return EXIT_PASS


def _add_format(parser) -> None:
    parser.add_argument("--format", choices=("text", "data"), default="text",
                        help="human-readable text or machine-readable JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="awarekit",
        description="Validate, check, transform, and fuzz epistemic models "
                    "with unawareness.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="run every validator for the file's model family")
    p.add_argument("file")
    p.add_argument("--dot", metavar="PATH", help="also write a DOT digraph of the lattice")
    _add_format(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("check", help="evaluate a formula at a state (or all states)")
    p.add_argument("file")
    p.add_argument("--formula", required=True)
    p.add_argument("--state", help="'spaceKey:stateId' for lattice models, world id "
                                   "for awareness models")
    p.add_argument("--all", action="store_true", help="print a value per state")
    _add_format(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("transform", help="transform a model into the other family")
    p.add_argument("file")
    p.add_argument("--to", required=True, choices=transforms.TRANSFORM_DIRECTIONS)
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--dump-category", metavar="DIR",
                   help="also write the sublanguage category into a directory")
    p.add_argument("--minimize", action="store_true",
                   help="quotient category members by modal equivalence")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("equiv", help="check modal equivalence of a model and its transform")
    p.add_argument("a", help="source model file")
    p.add_argument("b", help="transformed model file")
    p.add_argument("--via", required=True, choices=transforms.TRANSFORM_DIRECTIONS)
    p.add_argument("--depth", type=int, default=2)
    _add_format(p)
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("fuzz", help="generate models and run every validator and suite")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--caps", help="e.g. atoms=3,worlds=5,agents=2")
    p.add_argument("--seed", type=int, default=0)
    _add_format(p)
    p.set_defaults(func=_cmd_fuzz)

    p = sub.add_parser("lpa", help="proof checking and soundness fuzzing")
    lpa_sub = p.add_subparsers(dest="lpa_command", required=True)
    pc = lpa_sub.add_parser("check", help="check a proof file")
    pc.add_argument("proof")
    _add_format(pc)
    pc.set_defaults(func=_cmd_lpa_check)
    pf = lpa_sub.add_parser("fuzz", help="fuzz axiom validity on random models")
    pf.add_argument("--trials", type=int, default=50)
    pf.add_argument("--depth", type=int, default=2)
    pf.add_argument("--caps", help="e.g. atoms=3,worlds=5,agents=2")
    pf.add_argument("--seed", type=int, default=0)
    _add_format(pf)
    pf.set_defaults(func=_cmd_lpa_fuzz)

    p = sub.add_parser("gen", help="emit a seeded random model")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--family", choices=("fh", "hms", "implicit-hms"), default="fh")
    p.add_argument("--caps", help="e.g. atoms=3,worlds=5,agents=2")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_INPUT if err.code else EXIT_PASS
    try:
        return args.func(args)
    except PreconditionFailed as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except AwarekitError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()

"""Transformations between the awareness and unawareness model families,
with depth-bounded modal-equivalence checks for each direction.

State identity across transforms is deterministic: a world ``w`` of the
sublanguage model for atoms ``S`` becomes the state ``S:w``, and the top
space's states become worlds under their bare ids.  Equivalence checks align
states by this tagging, never by search.
"""

from __future__ import annotations

from .awareness import (
    AwarenessCategory,
    AwarenessModel,
    BoundedMorphism,
    build_category,
    fh_extension,
    validate_fh,
)
from .enumeration import EnumConfig, enumerate_formulas
from .errors import ModelFormatError, PreconditionFailed, TransformInvariantBroken
from .implicit import (
    ComplementedModel,
    ImplicitModel,
    derive_pi_star,
    validate_implicit,
    validate_lambda,
)
from .reports import Report
from .semantics import TruthValue, satisfies
from .syntax import atoms as formula_atoms
from .unawareness import (
    Event,
    SpaceLattice,
    StateRef,
    pi_space,
    space_key,
    subsets,
    validate_hms,
)


def category_to_implicit(category: AwarenessCategory) -> ImplicitModel:
    """Repackage a sublanguage category as an implicit knowledge-based
    lattice model: spaces are the member models' worlds, projections are the
    morphisms, the implicit correspondence copies each member's relations,
    and the awareness level at a world is the space of its awareness atoms.
    """
    atoms = category.atoms
    agents = category.agents

    spaces = {space: [w for w in category.models[space].worlds] for space in subsets(atoms)}
    projections = {}
    for space in subsets(atoms):
        for atom in space:
            child = space - {atom}
            morphism = category.morphisms[(space, child)]
            projections[(space, child)] = dict(morphism.mapping)

    lambda_star: dict[str, dict[StateRef, frozenset[StateRef]]] = {a: {} for a in agents}
    alpha: dict[str, dict[StateRef, frozenset[str]]] = {a: {} for a in agents}
    for space in subsets(atoms):
        member = category.models[space]
        for agent in agents:
            for world in member.worlds:
                ref = StateRef(space, world)
                lambda_star[agent][ref] = frozenset(
                    StateRef(space, t) for t in member.successors(agent, world))
                alpha[agent][ref] = member.awareness_atoms[agent][world]

    valuation: dict[str, Event] = {}
    for atom in sorted(atoms):
        single = frozenset({atom})
        base = frozenset(StateRef(single, w)
                         for w in category.models[single].valuation.get(atom, frozenset()))
        valuation[atom] = Event(single, base)

    lattice = SpaceLattice(atoms, spaces, projections, valuation)

    # The valuation of an atom must collect exactly the worlds where the atom
    # holds, across every member model that can express it.
    for atom in sorted(atoms):
        joined = {
            StateRef(space, w)
            for space in subsets(atoms) if atom in space
            for w in category.models[space].valuation.get(atom, frozenset())
        }
        if lattice.up_closure(valuation[atom]) != frozenset(joined):
            raise TransformInvariantBroken(
                f"valuation of {atom!r} is not the up-closure of its base layer")

    model = ImplicitModel(lattice, agents, lambda_star, alpha)
    report = validate_implicit(model)
    if not report.ok:
        raise TransformInvariantBroken("category transform output fails validation", report)
    return model


def hms_transform(model: AwarenessModel, truncate: bool = False,
                  minimize: bool = False) -> ComplementedModel | ImplicitModel:
    """Awareness model to lattice model: build the sublanguage category,
    repackage it, and (unless ``truncate``) derive the explicit
    correspondence, dropping the awareness function."""
    implicit = category_to_implicit(build_category(model, minimize=minimize))
    if truncate:
        return implicit
    return derive_pi_star(implicit)


def _top_transform(model: ComplementedModel | ImplicitModel,
                   awareness_level) -> AwarenessModel:
    lat = model.lattice
    top = lat.atoms
    top_states = lat.states_of(top)
    worlds = [ref.id for ref in top_states]
    corr = model.lambda_star if isinstance(model, ImplicitModel) else model.lambda_

    relations = {}
    awareness = {}
    for agent in model.agents:
        pairs = set()
        for ref in top_states:
            for target in corr[agent][ref]:
                pairs.add((ref.id, target.id))
        relations[agent] = pairs
        awareness[agent] = {ref.id: awareness_level(agent, ref) for ref in top_states}

    valuation = {}
    for atom in sorted(lat.atoms):
        hits = lat.up_closure(lat.valuation[atom])
        valuation[atom] = frozenset(ref.id for ref in top_states if ref in hits)

    out = AwarenessModel(top, model.agents, worlds, relations, awareness, valuation)
    report = validate_fh(out)
    if not report.ok:
        raise TransformInvariantBroken("transform output is not a valid awareness model",
                                       report)
    return out


def fh_transform(model: ComplementedModel) -> AwarenessModel:
    """Complemented lattice model to awareness model: keep the top space,
    read the relations off the implicit correspondence, and take awareness
    at a state to be the atoms of the space its possibility set lives in."""
    pre = validate_hms(model.base).merge(validate_lambda(model))
    if not pre.ok:
        raise PreconditionFailed("transform needs a valid complemented model", pre)
    return _top_transform(model, lambda agent, ref: pi_space(model, agent, ref))


def fh_star_transform(model: ImplicitModel) -> AwarenessModel:
    """Like :func:`fh_transform` but awareness comes straight from the
    awareness function."""
    pre = validate_implicit(model)
    if not pre.ok:
        raise PreconditionFailed("transform needs a valid implicit model", pre)
    return _top_transform(model, lambda agent, ref: model.alpha[agent][ref])


TRANSFORM_DIRECTIONS = ("hms", "implicit-hms", "fh", "fh-star")


def equivalence_check(source, produced, via: str, depth: int = 2,
                      config: EnumConfig | None = None) -> Report:
    """Modal equivalence between a model and its transform, by enumerating
    formulas up to the depth bound.

    ``via`` names the transform that produced ``produced`` from ``source``:
    ``hms``/``implicit-hms`` check every world of the source awareness model
    against its tagged state in every space expressing the formula;
    ``fh``/``fh-star`` check every top-space state of the source lattice
    model against its world."""
    config = config or EnumConfig()
    report = Report()
    if via in ("hms", "implicit-hms"):
        if not isinstance(source, AwarenessModel):
            raise ModelFormatError(f"via {via!r} expects an awareness model as source")
        expected = ComplementedModel if via == "hms" else ImplicitModel
        if not isinstance(produced, expected):
            raise ModelFormatError(f"via {via!r} expects a {expected.__name__} as target")
        known = set(produced.states)
        formulas = enumerate_formulas(source.language_atoms, source.agents, depth, config)
        for f in formulas:
            ext = fh_extension(source, f)
            for space in subsets(source.language_atoms):
                if not formula_atoms(f) <= space:
                    continue
                for world in source.worlds:
                    ref = StateRef(space, world)
                    report.count()
                    if ref not in known:
                        report.add("state-alignment", state=ref)
                        continue
                    value = satisfies(produced, ref, f)
                    if value is TruthValue.UNDEFINED:
                        report.add("expected-defined", formula=f, state=ref)
                    elif (value is TruthValue.TRUE) != (world in ext):
                        report.add("modal-equivalence", formula=f, state=ref,
                                   source_value=world in ext, target_value=value)
        return report

    if via in ("fh", "fh-star"):
        expected = ComplementedModel if via == "fh" else ImplicitModel
        if not isinstance(source, expected):
            raise ModelFormatError(f"via {via!r} expects a {expected.__name__} as source")
        if not isinstance(produced, AwarenessModel):
            raise ModelFormatError(f"via {via!r} expects an awareness model as target")
        lat = source.lattice
        top_states = lat.states_of(lat.atoms)
        worlds = set(produced.worlds)
        formulas = enumerate_formulas(lat.atoms, source.agents, depth, config)
        for f in formulas:
            ext = fh_extension(produced, f)
            for ref in top_states:
                report.count()
                if ref.id not in worlds:
                    report.add("state-alignment", state=ref)
                    continue
                value = satisfies(source, ref, f)
                if value is TruthValue.UNDEFINED:
                    report.add("expected-defined", formula=f, state=ref)
                elif (value is TruthValue.TRUE) != (ref.id in ext):
                    report.add("modal-equivalence", formula=f, state=ref,
                               source_value=value, target_value=ref.id in ext)
        return report

    raise ModelFormatError(f"unknown transform direction {via!r}; "
                           f"expected one of {TRANSFORM_DIRECTIONS}")


def round_trip_check(model: AwarenessModel, depth: int = 2,
                     config: EnumConfig | None = None) -> Report:
    """An awareness model, pushed through the category and back out of the
    implicit lattice model, satisfies the same enumerated formulas at every
    world."""
    config = config or EnumConfig()
    report = Report()
    back = fh_star_transform(category_to_implicit(build_category(model)))
    report.count()
    if set(back.worlds) != set(model.worlds):
        report.add("round-trip-worlds", expected=",".join(model.worlds),
                   got=",".join(back.worlds))
        return report
    for f in enumerate_formulas(model.language_atoms, model.agents, depth, config):
        before = fh_extension(model, f)
        after = fh_extension(back, f)
        for world in model.worlds:
            report.count()
            if (world in before) != (world in after):
                report.add("round-trip-equivalence", formula=f, world=world,
                           before=world in before, after=world in after)
    return report

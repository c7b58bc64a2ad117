"""Implicit knowledge layers over unawareness models.

Two variants.  A *complemented* model keeps the explicit possibility
correspondence as primitive and adds a compatible within-space implicit
correspondence.  An *implicit knowledge-based* model (CLI kind
``implicit-hms``) instead takes the implicit correspondence and a per-state
awareness function as primitives and derives the explicit correspondence.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import (
    CandidateInvalid,
    DerivationInconsistent,
    ModelFormatError,
    PreconditionFailed,
    StraddledPossibilitySet,
    TransformInvariantBroken,
)
from .reports import Report
from .unawareness import (
    DEFAULT_SUITE,
    DEFAULT_VALIDATION,
    Event,
    SpaceLattice,
    StateRef,
    SuiteConfig,
    UnawarenessModel,
    ValidationConfig,
    _corr_knowledge_event,
    _normalize_correspondence,
    _validate_lattice,
    a_op,
    event_basis,
    event_families,
    k_op,
    pi_space,
    space_key,
    state_order,
    subsets,
    u_op,
    validate_hms,
)


class ComplementedModel:
    """An unawareness model plus per-agent implicit possibility correspondences."""

    def __init__(self, base: UnawarenessModel,
                 lambda_: Mapping[str, Mapping[StateRef, Iterable[StateRef]]]):
        self.base = base
        self.lambda_ = _normalize_correspondence(base.lattice, base.agents, lambda_, "lambda")
        self._op_cache: dict = {}

    @property
    def lattice(self) -> SpaceLattice:
        return self.base.lattice

    @property
    def agents(self) -> tuple[str, ...]:
        return self.base.agents

    @property
    def atoms(self):
        return self.base.atoms

    @property
    def states(self):
        return self.base.states

    @property
    def pi(self):
        return self.base.pi

    @property
    def valuation(self):
        return self.base.valuation


class ImplicitModel:
    """Implicit correspondence and awareness function as primitives; the
    explicit correspondence is derived, not stored."""

    def __init__(self, lattice: SpaceLattice, agents: Iterable[str],
                 lambda_star: Mapping[str, Mapping[StateRef, Iterable[StateRef]]],
                 alpha: Mapping[str, Mapping[StateRef, frozenset[str]]]):
        self.lattice = lattice
        self.agents = tuple(dict.fromkeys(agents))
        if not self.agents:
            raise ModelFormatError("model needs at least one agent")
        self.lambda_star = _normalize_correspondence(lattice, self.agents,
                                                     lambda_star, "lambda_star")
        self.alpha = _normalize_alpha(lattice, self.agents, alpha)
        self._op_cache: dict = {}
        self._derived: ComplementedModel | None = None

    @property
    def atoms(self):
        return self.lattice.atoms

    @property
    def states(self):
        return self.lattice.states

    @property
    def valuation(self):
        return self.lattice.valuation

    def derived(self) -> ComplementedModel:
        """The complemented model over the derived explicit correspondence (cached)."""
        if self._derived is None:
            self._derived = derive_pi_star(self)
        return self._derived


def _normalize_alpha(lattice, agents, alpha):
    if set(alpha) != set(agents):
        raise ModelFormatError(f"alpha must cover exactly the agents {sorted(agents)}")
    out: dict[str, dict[StateRef, frozenset[str]]] = {}
    for agent in agents:
        table = {}
        per_agent = alpha[agent]
        for ref in lattice.states:
            value = per_agent.get(ref)
            if value is None:
                raise ModelFormatError(f"alpha[{agent}] is undefined on state {ref}")
            value = frozenset(value)
            if not lattice.has_space(value):
                raise ModelFormatError(f"alpha[{agent}] at {ref} names unknown space "
                                       f"{space_key(value)!r}")
            table[ref] = value
        extra = set(per_agent) - set(table)
        if extra:
            ref = sorted(extra, key=state_order)[0]
            raise ModelFormatError(f"alpha[{agent}] keyed by unknown state {ref}")
        out[agent] = table
    return out


# -- implicit knowledge operator ------------------------------------------------


def l_op(model: ComplementedModel, agent: str, event: Event) -> Event:
    """Implicit knowledge of an event over the complemented correspondence."""
    cache = model._op_cache
    key = ("l", agent, event)
    out = cache.get(key)
    if out is None:
        out = _corr_knowledge_event(model.lattice, model.lambda_[agent],
                                    model.lattice.check_event(event))
        cache[key] = out
    return out


def l_star_op(model: ImplicitModel, agent: str, event: Event) -> Event:
    """Implicit knowledge in an implicit knowledge-based model."""
    cache = model._op_cache
    key = ("l*", agent, event)
    out = cache.get(key)
    if out is None:
        out = _corr_knowledge_event(model.lattice, model.lambda_star[agent],
                                    model.lattice.check_event(event))
        cache[key] = out
    return out


def a_star_op(model: ImplicitModel, agent: str, event: Event) -> Event:
    """Awareness straight from the awareness function: the agent's awareness
    level sits at or above the event's base space."""
    cache = model._op_cache
    key = ("a*", agent, event)
    out = cache.get(key)
    if out is None:
        lat = model.lattice
        lat.check_event(event)
        need = event.base_space
        alpha = model.alpha[agent]
        base = frozenset(ref for ref in lat.states_of(need) if need <= alpha[ref])
        out = Event(need, base)
        cache[key] = out
    return out


# -- validators -----------------------------------------------------------------


def _check_implicit_correspondence(lat: SpaceLattice, agent: str,
                                   corr: Mapping[StateRef, frozenset[StateRef]],
                                   report: Report) -> None:
    """Reflexivity, Stationarity, and projection compatibility of a
    within-space correspondence; strong confinement is checked first since
    the projection law cannot even be stated without it."""
    confined: dict[StateRef, bool] = {}
    for ref in lat.states:
        image = corr[ref]
        ok = all(target.space == ref.space for target in image)
        confined[ref] = ok
        report.count()
        if not ok:
            report.add("strong-confinement", agent, state=ref,
                       image=";".join(str(t) for t in sorted(image, key=state_order)))
            continue
        report.count()
        if ref not in image:
            report.add("implicit-reflexivity", agent, state=ref)
        for target in image:
            report.count()
            if corr[target] != image:
                report.add("implicit-stationarity", agent, state=ref, reached=target)

    for ref in lat.states:
        if not confined[ref]:
            continue
        image = corr[ref]
        for below in subsets(ref.space):
            projected_state = lat.project(ref, below)
            report.count()
            if lat.project_set(image, below) != corr[projected_state]:
                report.add("projections-preserve-implicit-knowledge", agent,
                           state=ref, below=space_key(below))

    # Derived consequences, re-checked so a failure localizes a bug in the
    # primitive properties above.
    for space, refs in lat.spaces.items():
        cells = {corr[ref] for ref in refs if confined[ref]}
        if not all(confined[ref] for ref in refs):
            continue
        covered: set[StateRef] = set()
        for cell in cells:
            covered |= cell
        report.count()
        if covered != set(refs):
            report.add("implicit-partition", agent, space=space_key(space))
        for left in cells:
            for right in cells:
                report.count()
                if left != right and left & right:
                    report.add("implicit-partition", agent, space=space_key(space))

    def corr_up(ref: StateRef) -> frozenset[StateRef]:
        out: set[StateRef] = set()
        for target in corr[ref]:
            out |= lat.up_set(target)
        return frozenset(out)

    for ref in lat.states:
        if not confined[ref]:
            continue
        for below in subsets(ref.space):
            if below == ref.space:
                continue
            projected = lat.project(ref, below)
            if not confined[projected]:
                continue
            report.count()
            if not corr_up(ref) <= corr_up(projected):
                report.add("projections-preserve-implicit-ignorance", agent,
                           state=ref, below=space_key(below))


def validate_lambda(model: ComplementedModel,
                    config: ValidationConfig = DEFAULT_VALIDATION) -> Report:
    """Check the implicit correspondence laws and their compatibility with
    the explicit correspondence (measurability both ways, plus the derived
    coherence facts)."""
    report = Report()
    lat = model.lattice
    for agent in model.agents:
        corr = model.lambda_[agent]
        pi = model.pi[agent]
        _check_implicit_correspondence(lat, agent, corr, report)

        for ref in lat.states:
            image = corr[ref]
            for target in image:
                report.count()
                if pi[target] != pi[ref]:
                    report.add("explicit-measurability", agent, state=ref, reached=target)

            try:
                level = pi_space(model, agent, ref)
            except StraddledPossibilitySet:
                report.add("confinement-single-space", agent, state=ref)
                continue
            if not level <= ref.space:
                report.add("confinement-expressible", agent, state=ref,
                           image_space=space_key(level))
                continue
            if not all(t.space == ref.space for t in image):
                continue

            for target in pi[ref]:
                report.count()
                if corr[target] != lat.project_set(image, level):
                    report.add("implicit-measurability", agent, state=ref, reached=target)
                report.count()
                if corr[target] != pi[target]:
                    report.add("implicit-matches-explicit-on-possibility-set", agent,
                               state=ref, reached=target)

            report.count()
            if lat.project_set(image, level) != pi[ref]:
                report.add("coherence", agent, state=ref, level=space_key(level))
    return report


def validate_alpha(model: ImplicitModel) -> Report:
    """Check the awareness-function laws at every agent/state/space triple."""
    report = Report()
    lat = model.lattice
    for agent in model.agents:
        alpha = model.alpha[agent]
        corr = model.lambda_star[agent]
        for ref in lat.states:
            level = alpha[ref]
            report.count()
            if not level <= ref.space:
                report.add("lack-of-conception", agent, state=ref, level=space_key(level))
                continue
            for target in corr[ref]:
                report.count()
                if target.space == ref.space and alpha[target] != level:
                    report.add("awareness-measurability", agent, state=ref, reached=target)
            for below in subsets(ref.space):
                projected = lat.project(ref, below)
                report.count()
                if below <= level and alpha[projected] != below:
                    report.add("awareness-projects-to-level", agent, state=ref,
                               below=space_key(below), got=space_key(alpha[projected]))
                report.count()
                if level <= below and alpha[projected] != level:
                    report.add("awareness-constant-above-level", agent, state=ref,
                               below=space_key(below), got=space_key(alpha[projected]))
                report.count()
                if not alpha[projected] <= level:
                    report.add("awareness-monotone-under-projection", agent, state=ref,
                               below=space_key(below), got=space_key(alpha[projected]))
    return report


def validate_implicit(model: ImplicitModel,
                      config: ValidationConfig = DEFAULT_VALIDATION) -> Report:
    """Full validation of an implicit knowledge-based model: lattice laws,
    the implicit correspondence laws, then the awareness-function laws."""
    report = Report()
    _validate_lattice(model.lattice, report, config)
    for agent in model.agents:
        _check_implicit_correspondence(model.lattice, agent,
                                       model.lambda_star[agent], report)
    if report.ok:
        report.merge(validate_alpha(model))
    return report


# -- derivations ------------------------------------------------------------------


def candidate_lambda_from_pi(model: UnawarenessModel) -> ComplementedModel:
    """Best-effort implicit correspondence grouping states of a space whose
    explicit possibility sets coincide.

    The construction is a candidate only: it is validated after the fact and
    :class:`CandidateInvalid` carries the report when it fails.  No claim of
    general adequacy is made.
    """
    base_report = validate_hms(model)
    if not base_report.ok:
        raise PreconditionFailed("candidate construction needs a valid model", base_report)
    lat = model.lattice
    lambda_: dict[str, dict[StateRef, frozenset[StateRef]]] = {}
    for agent in model.agents:
        pi = model.pi[agent]
        table = {}
        for ref in lat.states:
            table[ref] = frozenset(
                other for other in lat.states_of(ref.space) if pi[other] == pi[ref])
        lambda_[agent] = table
    candidate = ComplementedModel(model, lambda_)
    report = validate_lambda(candidate)
    if not report.ok:
        raise CandidateInvalid("derived candidate violates the implicit laws", report)
    return candidate


def derive_pi_star(model: ImplicitModel,
                   config: ValidationConfig = DEFAULT_VALIDATION) -> ComplementedModel:
    """Derive the explicit possibility correspondence from the implicit one
    and the awareness function, cross-checking the projected variants of the
    defining clause, then assert that the result is a valid complemented
    model.  Any failed assertion raises :class:`DerivationInconsistent`."""
    pre = validate_implicit(model, config)
    if not pre.ok:
        raise PreconditionFailed("derivation needs a valid implicit model", pre)

    lat = model.lattice
    pi_star: dict[str, dict[StateRef, frozenset[StateRef]]] = {}
    for agent in model.agents:
        corr = model.lambda_star[agent]
        alpha = model.alpha[agent]
        table = {ref: lat.project_set(corr[ref], alpha[ref]) for ref in lat.states}
        pi_star[agent] = table

        # The defining clause quantifies over every projection of every
        # state; the direct per-state table must agree with all of them.
        for ref in lat.states:
            for below in subsets(ref.space):
                projected = lat.project(ref, below)
                expected = lat.project_set(corr[ref], alpha[projected])
                if table[projected] != expected:
                    raise DerivationInconsistent(
                        f"derived possibility at {projected} disagrees with the "
                        f"defining clause instantiated from {ref}")
                if below <= alpha[ref] and table[projected] != lat.project_set(corr[ref], below):
                    raise DerivationInconsistent(
                        f"projection below the awareness level broken at {projected}")
                if alpha[ref] <= below and table[projected] != lat.project_set(
                        corr[ref], alpha[ref]):
                    raise DerivationInconsistent(
                        f"projection above the awareness level broken at {projected}")

    hms = UnawarenessModel(lat, model.agents, pi_star)
    hms_report = validate_hms(hms, config)
    if not hms_report.ok:
        raise DerivationInconsistent("derived explicit correspondence is not a valid "
                                     "unawareness model", hms_report)
    complemented = ComplementedModel(hms, model.lambda_star)
    joint = validate_lambda(complemented, config)
    if not joint.ok:
        raise DerivationInconsistent("derived pair breaks explicit/implicit measurability",
                                     joint)
    return complemented


def implicit_from_complemented(model: ComplementedModel) -> ImplicitModel:
    """Repackage a complemented model with implicit knowledge and the
    explicit correspondence's space as primitives; valid whenever the input
    is."""
    alpha = {
        agent: {ref: pi_space(model, agent, ref) for ref in model.states}
        for agent in model.agents
    }
    out = ImplicitModel(model.lattice, model.agents, model.lambda_, alpha)
    report = validate_implicit(out)
    if not report.ok:
        raise TransformInvariantBroken("implicit view of a complemented model "
                                       "fails validation", report)
    return out


# -- property suites ----------------------------------------------------------------


def implicit_property_suite(model: ComplementedModel,
                            config: SuiteConfig = DEFAULT_SUITE) -> Report:
    """Check the partitional laws of implicit knowledge and its interplay
    with explicit knowledge and awareness over the generated event basis."""
    base_report = validate_hms(model.base)
    if not base_report.ok:
        raise PreconditionFailed("implicit property suite needs a valid model", base_report)
    lambda_report = validate_lambda(model)
    if not lambda_report.ok:
        raise PreconditionFailed("implicit property suite needs valid implicit "
                                 "correspondences", lambda_report)

    lat = model.lattice
    report = Report()
    basis = event_basis(model, config)
    families = event_families(basis, config)

    for agent in model.agents:
        corr = model.lambda_[agent]

        def check(law: str, left: Event, right: Event, **extra) -> None:
            report.count()
            if left != right:
                report.add(law, agent, left=left, right=right, **extra)

        def check_subset(law: str, left: Event, right: Event, **extra) -> None:
            report.count()
            if not lat.event_subset(left, right):
                report.add(law, agent, left=left, right=right, **extra)

        for space in lat.spaces:
            up = lat.space_up(space)
            check("implicit-necessitation", l_op(model, agent, up), up,
                  space=space_key(space))

        for event in basis:
            implicit = l_op(model, agent, event)

            whole = frozenset(ref for ref in lat.states
                              if corr[ref] <= lat.up_closure(event))
            report.count()
            if lat.up_closure(implicit) != whole:
                report.add("implicit-knowledge-based-event", agent, event=event,
                           result=implicit)

            check_subset("implicit-truth", implicit, event, event=event)
            check_subset("implicit-positive-introspection",
                         implicit, l_op(model, agent, implicit), event=event)
            not_l = lat.event_not(implicit)
            check_subset("implicit-negative-introspection",
                         not_l, l_op(model, agent, not_l), event=event)

            aware = a_op(model, agent, event)
            unaware = u_op(model, agent, event)
            check("explicit-equals-implicit-and-awareness",
                  k_op(model, agent, event),
                  lat.event_and([implicit, aware]), event=event)
            check("unawareness-implicitly-known", unaware,
                  l_op(model, agent, unaware), event=event)
            check("awareness-implicitly-known", aware,
                  l_op(model, agent, aware), event=event)
            check("awareness-of-implicit-knowledge",
                  a_op(model, agent, implicit), aware, event=event)

        for family in families:
            joined = lat.event_and(list(family))
            check("implicit-conjunction",
                  l_op(model, agent, joined),
                  lat.event_and([l_op(model, agent, e) for e in family]),
                  family=";".join(str(e) for e in family))

        for left in basis:
            for right in basis:
                if lat.event_subset(left, right):
                    check_subset("implicit-monotonicity",
                                 l_op(model, agent, left), l_op(model, agent, right),
                                 smaller=left, larger=right)
    return report


def a_star_property_suite(model: ImplicitModel,
                          config: SuiteConfig = DEFAULT_SUITE) -> Report:
    """Awareness from the awareness function must coincide with awareness
    from the derived explicit correspondence, and explicit knowledge must be
    implicit knowledge plus awareness."""
    derived = model.derived()
    lat = model.lattice
    report = Report()
    basis = event_basis(model, config)
    for agent in model.agents:
        for event in basis:
            report.count()
            star = a_star_op(model, agent, event)
            plain = a_op(derived, agent, event)
            if star != plain:
                report.add("awareness-function-matches-derived", agent,
                           event=event, from_function=star, from_derived=plain)
            report.count()
            known = k_op(derived, agent, event)
            combined = lat.event_and([l_star_op(model, agent, event), star])
            if known != combined:
                report.add("explicit-equals-implicit-and-awareness", agent,
                           event=event, known=known, combined=combined)
    return report

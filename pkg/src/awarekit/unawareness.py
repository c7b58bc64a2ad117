"""Lattice-based unawareness models (CLI model kind ``hms``).

A model carries one disjoint state space per subset of its atom universe,
linked by surjective commuting projections; knowledge lives in per-agent
possibility correspondences and all semantic content is expressed through
*events*: up-closed sets determined by a base set inside a base space.

The atom universe is finite and capped (default 6, override with the
``AWAREKIT_MAX_ATOMS`` environment variable) because the full powerset of
spaces is materialized eagerly and validation is exhaustive.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    ModelFormatError,
    NotComparable,
    PreconditionFailed,
    StraddledPossibilitySet,
    UnknownAgent,
    UnknownSpace,
    UnknownState,
)
from .reports import Report

DEFAULT_MAX_ATOMS = 6
MAX_ATOMS_ENV = "AWAREKIT_MAX_ATOMS"


def max_atoms() -> int:
    raw = os.environ.get(MAX_ATOMS_ENV)
    if raw is None:
        return DEFAULT_MAX_ATOMS
    try:
        value = int(raw)
    except ValueError:
        raise ModelFormatError(f"{MAX_ATOMS_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ModelFormatError(f"{MAX_ATOMS_ENV} must be at least 1, got {value}")
    return value


def space_key(space: Iterable[str]) -> str:
    """Canonical text key of a space index: comma-joined sorted atoms, "" for the meet."""
    return ",".join(sorted(space))


def parse_space_key(key: str) -> frozenset[str]:
    return frozenset(part for part in key.split(",") if part)


def subsets(space: frozenset[str]) -> Iterator[frozenset[str]]:
    """All subsets of ``space``, smallest first, deterministic order."""
    items = sorted(space)
    for size in range(len(items) + 1):
        for combo in combinations(items, size):
            yield frozenset(combo)


@dataclass(frozen=True)
class StateRef:
    """A state tagged with its space; tagging keeps distinct spaces disjoint."""

    space: frozenset[str]
    id: str

    def __str__(self) -> str:
        return f"{space_key(self.space)}:{self.id}"


def state_order(ref: StateRef) -> tuple:
    """Sort key putting more expressive spaces first."""
    return (-len(ref.space), space_key(ref.space), ref.id)


@dataclass(frozen=True)
class Event:
    """Base-space/base pair denoting the up-closed set ``base↑``.

    Two events are equal iff both base space and base agree, so each space
    carries its own vacuous event (empty base): contradictions differ by the
    vocabulary needed to state them.
    """

    base_space: frozenset[str]
    base: frozenset[StateRef]

    def __post_init__(self):
        for ref in self.base:
            if ref.space != self.base_space:
                raise ModelFormatError(f"event base state {ref} lies outside base space "
                                       f"{space_key(self.base_space)!r}")

    @property
    def is_vacuous(self) -> bool:
        return not self.base

    def __str__(self) -> str:
        ids = ",".join(sorted(ref.id for ref in self.base))
        return f"{space_key(self.base_space)}:[{ids}]"


def states_from_ids(space: frozenset[str], ids: Iterable[str]) -> frozenset[StateRef]:
    return frozenset(StateRef(space, i) for i in ids)


class SpaceLattice:
    """The shared skeleton of every lattice-based model: spaces, projections, valuation.

    Projections are stored for covering pairs (drop one atom) and composed on
    demand; the global composition law is a validator concern, not assumed
    here.  Construction fails on structural unreadability only: missing
    spaces or covering maps, dangling state ids, non-total maps.
    """

    def __init__(
        self,
        atoms: Iterable[str],
        spaces: Mapping[frozenset[str], Sequence[str]],
        projections: Mapping[tuple[frozenset[str], frozenset[str]], Mapping[str, str]],
        valuation: Mapping[str, Event],
    ):
        self.atoms = frozenset(atoms)
        cap = max_atoms()
        if len(self.atoms) > cap:
            raise ModelFormatError(
                f"{len(self.atoms)} atoms exceed the cap of {cap} "
                f"(override with {MAX_ATOMS_ENV})")

        self.spaces: dict[frozenset[str], tuple[StateRef, ...]] = {}
        for space in subsets(self.atoms):
            ids = spaces.get(space)
            if ids is None:
                raise ModelFormatError(f"missing space {space_key(space)!r}")
            if not ids:
                raise ModelFormatError(f"space {space_key(space)!r} is empty")
            if len(set(ids)) != len(ids):
                raise ModelFormatError(f"duplicate state ids in space {space_key(space)!r}")
            self.spaces[space] = tuple(StateRef(space, i) for i in sorted(ids))
        extra = set(spaces) - set(self.spaces)
        if extra:
            key = space_key(sorted(extra, key=space_key)[0])
            raise ModelFormatError(f"space {key!r} is not a subset of the atom universe")

        self._cover: dict[tuple[frozenset[str], frozenset[str]], dict[StateRef, StateRef]] = {}
        for parent in self.spaces:
            for atom in parent:
                child = parent - {atom}
                raw = projections.get((parent, child))
                if raw is None:
                    raise ModelFormatError(
                        f"missing projection {space_key(parent)!r} -> {space_key(child)!r}")
                table: dict[StateRef, StateRef] = {}
                child_ids = {ref.id for ref in self.spaces[child]}
                for ref in self.spaces[parent]:
                    image = raw.get(ref.id)
                    if image is None:
                        raise ModelFormatError(
                            f"projection {space_key(parent)!r} -> {space_key(child)!r} "
                            f"is undefined on state {ref.id!r}")
                    if image not in child_ids:
                        raise ModelFormatError(
                            f"projection {space_key(parent)!r} -> {space_key(child)!r} "
                            f"maps {ref.id!r} to unknown state {image!r}")
                    table[ref] = StateRef(child, image)
                self._cover[(parent, child)] = table

        if set(valuation) != self.atoms:
            missing = self.atoms - set(valuation)
            extra_atoms = set(valuation) - self.atoms
            bad = sorted(missing | extra_atoms)
            raise ModelFormatError(f"valuation must be total on the atom universe; "
                                   f"mismatched atoms: {bad}")
        for atom, event in valuation.items():
            if event.base_space not in self.spaces:
                raise ModelFormatError(f"valuation of {atom!r} uses unknown space "
                                       f"{space_key(event.base_space)!r}")
            known = set(self.spaces[event.base_space])
            for ref in event.base:
                if ref not in known:
                    raise ModelFormatError(f"valuation of {atom!r} references unknown state {ref}")
        self.valuation = dict(valuation)

        self.states: tuple[StateRef, ...] = tuple(
            sorted((ref for refs in self.spaces.values() for ref in refs), key=state_order))

        # Projections composed along the canonical chain (drop atoms in sorted
        # order); path independence is exactly the composition law checked by
        # the validator.
        self._proj: dict[tuple[StateRef, frozenset[str]], StateRef] = {}
        for ref in self.states:
            self._proj[(ref, ref.space)] = ref
        for ref in sorted(self.states, key=lambda r: len(r.space)):
            for target in subsets(ref.space):
                if (ref, target) in self._proj:
                    continue
                drop = max(ref.space - target)
                step = self._cover[(ref.space, ref.space - {drop})][ref]
                self._proj[(ref, target)] = self._proj[(step, target)]

        self._up: dict[StateRef, frozenset[StateRef]] = {}
        buckets: dict[StateRef, set[StateRef]] = {ref: set() for ref in self.states}
        for (ref, _target), image in self._proj.items():
            buckets[image].add(ref)
        for ref, above in buckets.items():
            self._up[ref] = frozenset(above)

        self._upc_cache: dict[Event, frozenset[StateRef]] = {}

    # -- lookups ---------------------------------------------------------

    def has_space(self, space: frozenset[str]) -> bool:
        return space in self.spaces

    def states_of(self, space: frozenset[str]) -> tuple[StateRef, ...]:
        try:
            return self.spaces[space]
        except KeyError:
            raise UnknownSpace(f"no space {space_key(space)!r}") from None

    def require_state(self, ref: StateRef) -> StateRef:
        if ref not in self._up:
            raise UnknownState(f"no state {ref}")
        return ref

    def cover_map(self, parent: frozenset[str], child: frozenset[str]) -> dict[StateRef, StateRef]:
        return self._cover[(parent, child)]

    # -- projections and up-closures --------------------------------------

    def project(self, ref: StateRef, target: frozenset[str]) -> StateRef:
        self.require_state(ref)
        if not target <= ref.space:
            raise NotComparable(
                f"space {space_key(target)!r} is not below {space_key(ref.space)!r}")
        return self._proj[(ref, target)]

    def project_set(self, refs: Iterable[StateRef], target: frozenset[str]) -> frozenset[StateRef]:
        return frozenset(self.project(ref, target) for ref in refs)

    def up_set(self, ref: StateRef) -> frozenset[StateRef]:
        self.require_state(ref)
        return self._up[ref]

    def up_closure(self, event: Event) -> frozenset[StateRef]:
        cached = self._upc_cache.get(event)
        if cached is not None:
            return cached
        if event.base_space not in self.spaces:
            raise UnknownSpace(f"no space {space_key(event.base_space)!r}")
        out: set[StateRef] = set()
        for ref in event.base:
            out |= self.up_set(ref)
        result = frozenset(out)
        self._upc_cache[event] = result
        return result

    # -- events ------------------------------------------------------------

    def check_event(self, event: Event) -> Event:
        if event.base_space not in self.spaces:
            raise UnknownSpace(f"no space {space_key(event.base_space)!r}")
        for ref in event.base:
            self.require_state(ref)
        return event

    def omega(self) -> Event:
        """The sure event: full base in the meet space; its up-closure is all states."""
        meet = frozenset()
        return Event(meet, frozenset(self.spaces[meet]))

    def space_up(self, space: frozenset[str]) -> Event:
        return Event(space, frozenset(self.states_of(space)))

    def event_not(self, event: Event) -> Event:
        self.check_event(event)
        return Event(event.base_space, frozenset(self.spaces[event.base_space]) - event.base)

    def event_and(self, events: Sequence[Event]) -> Event:
        for event in events:
            self.check_event(event)
        if not events:
            return self.omega()
        join: frozenset[str] = frozenset()
        for event in events:
            join |= event.base_space
        base = frozenset(
            ref for ref in self.states_of(join)
            if all(self._proj[(ref, e.base_space)] in e.base for e in events))
        return Event(join, base)

    def event_or(self, events: Sequence[Event]) -> Event:
        return self.event_not(self.event_and([self.event_not(e) for e in events]))

    def event_subset(self, left: Event, right: Event) -> bool:
        return self.up_closure(left) <= self.up_closure(right)


def _lattice(model) -> SpaceLattice:
    if isinstance(model, SpaceLattice):
        return model
    return model.lattice


class UnawarenessModel:
    """A space lattice plus per-agent explicit possibility correspondences."""

    def __init__(self, lattice: SpaceLattice, agents: Iterable[str],
                 pi: Mapping[str, Mapping[StateRef, Iterable[StateRef]]]):
        self.lattice = lattice
        self.agents = tuple(dict.fromkeys(agents))
        if not self.agents:
            raise ModelFormatError("model needs at least one agent")
        self.pi = _normalize_correspondence(lattice, self.agents, pi, "pi")
        self._op_cache: dict = {}

    @property
    def atoms(self) -> frozenset[str]:
        return self.lattice.atoms

    @property
    def states(self) -> tuple[StateRef, ...]:
        return self.lattice.states

    @property
    def valuation(self) -> dict[str, Event]:
        return self.lattice.valuation


def _normalize_correspondence(lattice, agents, corr, name):
    """Check a per-agent state-to-state-set map for totality and dangling refs."""
    if set(corr) != set(agents):
        raise ModelFormatError(f"{name} must cover exactly the agents {sorted(agents)}")
    out: dict[str, dict[StateRef, frozenset[StateRef]]] = {}
    for agent in agents:
        table = {}
        per_agent = corr[agent]
        for ref in lattice.states:
            image = per_agent.get(ref)
            if image is None:
                raise ModelFormatError(f"{name}[{agent}] is undefined on state {ref}")
            image = frozenset(image)
            if not image:
                raise ModelFormatError(f"{name}[{agent}] is empty at state {ref}")
            for target in image:
                if target not in lattice._up:
                    raise ModelFormatError(f"{name}[{agent}] at {ref} references "
                                           f"unknown state {target}")
            table[ref] = image
        extra = set(per_agent) - set(table)
        if extra:
            ref = sorted(extra, key=state_order)[0]
            raise ModelFormatError(f"{name}[{agent}] keyed by unknown state {ref}")
        out[agent] = table
    return out


# -- spec operations ---------------------------------------------------------


def up_closure(model, event: Event) -> frozenset[StateRef]:
    """All states, in every space at least as expressive as the base space,
    that project into the base (the base itself included)."""
    return _lattice(model).up_closure(event)


def project_state(model, ref: StateRef, target: frozenset[str]) -> StateRef:
    return _lattice(model).project(ref, target)


def event_algebra(model, op: str, args: Sequence[Event]) -> Event:
    """Boolean operations on events.

    ``not`` complements the base inside its own space; ``and`` intersects
    after elaborating every argument to the join of their base spaces (so a
    vacuous result is tagged with that join); ``or`` is the De Morgan dual.
    """
    lat = _lattice(model)
    if op == "not":
        if len(args) != 1:
            raise ValueError("event 'not' takes exactly one argument")
        return lat.event_not(args[0])
    if op == "and":
        if not args:
            raise ValueError("event 'and' needs at least one argument")
        return lat.event_and(list(args))
    if op == "or":
        if not args:
            raise ValueError("event 'or' needs at least one argument")
        return lat.event_or(list(args))
    raise ValueError(f"unknown event operation {op!r}")


def pi_space(model, agent: str, ref: StateRef) -> frozenset[str]:
    """The unique space containing the agent's possibility set at ``ref``.

    Raises :class:`StraddledPossibilitySet` when the image straddles spaces,
    rather than guessing one; Confinement makes this unambiguous on valid
    models.
    """
    image = _pi_of(model, agent)[ref]
    found = {target.space for target in image}
    if len(found) != 1:
        raise StraddledPossibilitySet(
            f"possibility set of agent {agent} at {ref} spans {len(found)} spaces")
    return next(iter(found))


def _pi_of(model, agent: str) -> Mapping[StateRef, frozenset[StateRef]]:
    try:
        return model.pi[agent]
    except KeyError:
        raise UnknownAgent(f"no agent {agent!r}") from None


def _corr_knowledge_event(lattice: SpaceLattice,
                          corr: Mapping[StateRef, frozenset[StateRef]],
                          event: Event) -> Event:
    """States whose correspondence image sits inside the event, as an
    event based at the input's base space (empty base is the vacuous
    fallback, tagged with that same space)."""
    upc = lattice.up_closure(event)
    base = frozenset(ref for ref in lattice.states_of(event.base_space) if corr[ref] <= upc)
    return Event(event.base_space, base)


def k_op(model, agent: str, event: Event) -> Event:
    """Explicit knowledge of an event (requires a validated model)."""
    cache = model._op_cache
    key = ("k", agent, event)
    out = cache.get(key)
    if out is None:
        out = _corr_knowledge_event(model.lattice, _pi_of(model, agent),
                                    model.lattice.check_event(event))
        cache[key] = out
    return out


def a_op(model, agent: str, event: Event) -> Event:
    """Awareness of an event: the possibility set lives in a space at least
    as expressive as the event's base space."""
    cache = model._op_cache
    key = ("a", agent, event)
    out = cache.get(key)
    if out is None:
        lat = model.lattice
        lat.check_event(event)
        need = event.base_space
        base = frozenset(ref for ref in lat.states_of(need)
                         if need <= pi_space(model, agent, ref))
        out = Event(need, base)
        cache[key] = out
    return out


def u_op(model, agent: str, event: Event) -> Event:
    """Unawareness: the complement of awareness."""
    return model.lattice.event_not(a_op(model, agent, event))


# -- validation ---------------------------------------------------------------


@dataclass(frozen=True)
class ValidationConfig:
    """Knobs for structural validation.

    ``atom_base_exact`` requires each atom's valuation event to be based at
    the singleton space of that atom; relaxing it only requires the base
    space to sit below that singleton.
    """

    atom_base_exact: bool = True


DEFAULT_VALIDATION = ValidationConfig()


def _validate_lattice(lat: SpaceLattice, report: Report,
                      config: ValidationConfig = DEFAULT_VALIDATION) -> None:
    for (parent, child), table in sorted(lat._cover.items(),
                                         key=lambda kv: (space_key(kv[0][0]), space_key(kv[0][1]))):
        hit = set(table.values())
        report.count()
        for ref in lat.states_of(child):
            if ref not in hit:
                report.add("projection-surjective", state=ref,
                           source=space_key(parent), target=space_key(child))

    # Commuting covering squares pin down path independence of every
    # composite projection, which is the general composition law.
    for space in lat.spaces:
        for x, y in combinations(sorted(space), 2):
            via_x = lat._cover[(space, space - {x})]
            via_y = lat._cover[(space, space - {y})]
            lower_x = lat._cover[(space - {x}, space - {x, y})]
            lower_y = lat._cover[(space - {y}, space - {x, y})]
            for ref in lat.states_of(space):
                report.count()
                if lower_x[via_x[ref]] != lower_y[via_y[ref]]:
                    report.add("projection-composition", state=ref,
                               space=space_key(space), dropped=f"{x},{y}")

    for atom in sorted(lat.atoms):
        event = lat.valuation[atom]
        singleton = frozenset({atom})
        report.count()
        if config.atom_base_exact:
            if event.base_space != singleton:
                report.add("valuation-base-space", atom=atom,
                           base_space=space_key(event.base_space), required=space_key(singleton))
        elif not event.base_space <= singleton:
            report.add("valuation-base-space", atom=atom,
                       base_space=space_key(event.base_space),
                       required=f"below {space_key(singleton)}")


def validate_hms(model: UnawarenessModel,
                 config: ValidationConfig = DEFAULT_VALIDATION) -> Report:
    """Check the lattice laws, the valuation convention, and every property
    required of the explicit possibility correspondences, reporting each
    violation with a witness."""
    report = Report()
    lat = model.lattice
    _validate_lattice(lat, report, config)

    for agent in model.agents:
        pi = model.pi[agent]
        pi_spaces: dict[StateRef, frozenset[str] | None] = {}
        for ref in lat.states:
            image = pi[ref]
            found = {target.space for target in image}
            report.count()
            if len(found) != 1:
                report.add("confinement-single-space", agent, state=ref,
                           spaces=";".join(sorted(space_key(s) for s in found)))
                pi_spaces[ref] = None
                continue
            space = next(iter(found))
            pi_spaces[ref] = space
            report.count()
            if not space <= ref.space:
                report.add("confinement-expressible", agent, state=ref,
                           image_space=space_key(space))

        def pi_up(ref: StateRef) -> frozenset[StateRef]:
            out: set[StateRef] = set()
            for target in pi[ref]:
                out |= lat.up_set(target)
            return frozenset(out)

        for ref in lat.states:
            image = pi[ref]
            report.count()
            if ref not in pi_up(ref):
                report.add("generalized-reflexivity", agent, state=ref,
                           image=";".join(str(t) for t in sorted(image, key=state_order)))
            for target in image:
                report.count()
                if pi[target] != image:
                    report.add("stationarity", agent, state=ref, reached=target)

            for below in subsets(ref.space):
                if below == ref.space:
                    continue
                projected = lat.project(ref, below)
                report.count()
                if not pi_up(ref) <= pi_up(projected):
                    report.add("projections-preserve-ignorance", agent,
                               state=ref, below=space_key(below))

            space = pi_spaces[ref]
            if space is None or not space <= ref.space:
                continue
            for target_space in subsets(space):
                report.count()
                if lat.project_set(image, target_space) != pi[lat.project(ref, target_space)]:
                    report.add("projections-preserve-knowledge", agent,
                               state=ref, below=space_key(target_space))
    return report


# -- property suite ------------------------------------------------------------


@dataclass(frozen=True)
class SuiteConfig:
    """Caps for the exhaustive operator suites.

    The event basis is built from the valuation events, their negations, and
    pairwise conjunctions, truncated to ``max_basis``; conjunction laws run
    over subsets of the basis up to ``max_family_size`` members, capped at
    ``max_families`` families.
    """

    max_basis: int = 12
    max_family_size: int = 3
    max_families: int = 400


DEFAULT_SUITE = SuiteConfig()


def event_basis(model, config: SuiteConfig = DEFAULT_SUITE) -> list[Event]:
    lat = _lattice(model)
    seeds = [lat.valuation[atom] for atom in sorted(lat.atoms)]
    basis: list[Event] = []
    seen: set[Event] = set()

    def push(event: Event) -> None:
        if event not in seen and len(basis) < config.max_basis:
            seen.add(event)
            basis.append(event)

    for event in seeds:
        push(event)
    for event in seeds:
        push(lat.event_not(event))
    pool = list(basis)
    for left, right in combinations(pool, 2):
        push(lat.event_and([left, right]))
    return basis


def event_families(basis: Sequence[Event], config: SuiteConfig = DEFAULT_SUITE
                   ) -> list[tuple[Event, ...]]:
    families: list[tuple[Event, ...]] = []
    for size in range(1, config.max_family_size + 1):
        for combo in combinations(basis, size):
            families.append(combo)
            if len(families) >= config.max_families:
                return families
    return families


def _strong_plausibility_limit(model, agent: str, event: Event) -> Event:
    """Stabilized intersection of iterating not-know; finite models cycle."""
    lat = model.lattice
    seen: set[Event] = set()
    current = lat.event_not(k_op(model, agent, event))
    acc = current
    while current not in seen:
        seen.add(current)
        acc = lat.event_and([acc, current])
        current = lat.event_not(k_op(model, agent, current))
    return acc


def explicit_property_suite(model: UnawarenessModel,
                            config: SuiteConfig = DEFAULT_SUITE) -> Report:
    """Exhaustively check every law of explicit knowledge and awareness over
    the generated event basis; raises :class:`PreconditionFailed` when the
    model itself does not validate."""
    base_report = validate_hms(model)
    if not base_report.ok:
        raise PreconditionFailed("explicit property suite needs a valid model", base_report)

    lat = model.lattice
    report = Report()
    basis = event_basis(model, config)
    families = event_families(basis, config)
    omega = lat.omega()

    for agent in model.agents:
        pi = model.pi[agent]

        def check(law: str, left: Event, right: Event, **extra) -> None:
            report.count()
            if left != right:
                report.add(law, agent, left=left, right=right, **extra)

        def check_subset(law: str, left: Event, right: Event, **extra) -> None:
            report.count()
            if not lat.event_subset(left, right):
                report.add(law, agent, left=left, right=right, **extra)

        for event in basis:
            known = k_op(model, agent, event)
            aware = a_op(model, agent, event)

            # Knowledge and awareness of any event are events based at the
            # argument's own base space; compare against the raw definitions.
            whole_k = frozenset(ref for ref in lat.states
                                if pi[ref] <= lat.up_closure(event))
            report.count()
            if lat.up_closure(known) != whole_k:
                report.add("knowledge-based-event", agent, event=event, result=known)
            whole_a = set()
            for ref in lat.states:
                try:
                    if event.base_space <= pi_space(model, agent, ref):
                        whole_a.add(ref)
                except StraddledPossibilitySet:
                    pass
            report.count()
            if lat.up_closure(aware) != frozenset(whole_a):
                report.add("awareness-based-event", agent, event=event, result=aware)

            check_subset("knowledge-truth", known, event, event=event)
            check_subset("knowledge-positive-introspection",
                         known, k_op(model, agent, known), event=event)

            not_k = lat.event_not(known)
            check_subset(
                "weak-negative-introspection-1",
                lat.event_and([not_k, lat.event_not(k_op(model, agent, not_k))]),
                lat.event_not(k_op(model, agent,
                                   lat.event_not(k_op(model, agent, not_k)))),
                event=event)

            unaware = u_op(model, agent, event)
            check("ku-introspection", k_op(model, agent, unaware),
                  Event(event.base_space, frozenset()), event=event)
            check("au-introspection", unaware, u_op(model, agent, unaware), event=event)
            check("weak-necessitation", aware,
                  k_op(model, agent, lat.space_up(event.base_space)), event=event)
            check("plausibility", aware,
                  lat.event_or([known, k_op(model, agent, not_k)]), event=event)
            check("strong-plausibility", unaware,
                  _strong_plausibility_limit(model, agent, event), event=event)
            check("weak-negative-introspection-2",
                  lat.event_and([not_k, a_op(model, agent, not_k)]),
                  k_op(model, agent, not_k), event=event)
            check("awareness-symmetry", aware,
                  a_op(model, agent, lat.event_not(event)), event=event)
            check("ak-self-reflection", aware, a_op(model, agent, known), event=event)
            check("aa-self-reflection", aware, a_op(model, agent, aware), event=event)
            check("a-introspection", aware, k_op(model, agent, aware), event=event)

        check("knowledge-necessitation", k_op(model, agent, omega), omega)

        for family in families:
            joined = lat.event_and(list(family))
            check("knowledge-conjunction",
                  k_op(model, agent, joined),
                  lat.event_and([k_op(model, agent, e) for e in family]),
                  family=";".join(str(e) for e in family))
            check("awareness-conjunction",
                  a_op(model, agent, joined),
                  lat.event_and([a_op(model, agent, e) for e in family]),
                  family=";".join(str(e) for e in family))

        for left in basis:
            for right in basis:
                if lat.event_subset(left, right):
                    check_subset("knowledge-monotonicity",
                                 k_op(model, agent, left), k_op(model, agent, right),
                                 smaller=left, larger=right)

        # Possibility sets agree across every comparable space between the
        # image's space and the state's own space.
        for ref in lat.states:
            image_space = pi_space(model, agent, ref)
            rest = ref.space - image_space
            for extra_atoms in subsets(rest):
                middle = image_space | extra_atoms
                report.count()
                if model.pi[agent][lat.project(ref, middle)] != model.pi[agent][ref]:
                    report.add("possibility-agrees-across-spaces", agent,
                               state=ref, middle=space_key(middle))
    return report

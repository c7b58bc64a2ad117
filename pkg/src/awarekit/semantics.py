"""Extension-based satisfaction for lattice models.

Formulas denote events, computed bottom-up and memoized per model.  Truth at
a state is three-valued by design: a state whose space cannot express all
atoms of a formula lies outside both the formula's extension and the
extension of its negation, and gets the value Undefined.  Collapsing
Undefined to False would corrupt validity, which quantifies over defined
states only.
"""

from __future__ import annotations

from enum import Enum

from .errors import UnknownAtom
from .implicit import ComplementedModel, ImplicitModel, a_star_op, l_op, l_star_op
from .syntax import A, And, Atom, Formula, K, L, Not, Top, atoms as formula_atoms
from .unawareness import Event, StateRef, a_op, k_op


class TruthValue(Enum):
    TRUE = "True"
    FALSE = "False"
    UNDEFINED = "Undefined"

    def __str__(self) -> str:
        return self.value


LatticeModel = ComplementedModel | ImplicitModel


def _l_event(model: LatticeModel, agent: str, event: Event) -> Event:
    if isinstance(model, ImplicitModel):
        return l_star_op(model, agent, event)
    return l_op(model, agent, event)


def _a_event(model: LatticeModel, agent: str, event: Event) -> Event:
    if isinstance(model, ImplicitModel):
        return a_star_op(model, agent, event)
    return a_op(model, agent, event)


def _k_event(model: LatticeModel, agent: str, event: Event) -> Event:
    if isinstance(model, ImplicitModel):
        return k_op(model.derived(), agent, event)
    return k_op(model, agent, event)


def extension(model: LatticeModel, f: Formula) -> Event:
    """The event denoted by ``f``, memoized per subformula."""
    stray = formula_atoms(f) - model.atoms
    if stray:
        raise UnknownAtom(f"formula uses atoms outside the universe: {sorted(stray)}")
    return _extension(model, f)


def _extension(model: LatticeModel, f: Formula) -> Event:
    cache = getattr(model, "_ext_cache", None)
    if cache is None:
        cache = {}
        model._ext_cache = cache
    cached = cache.get(f)
    if cached is not None:
        return cached
    lat = model.lattice
    if isinstance(f, Top):
        out = lat.omega()
    elif isinstance(f, Atom):
        out = lat.valuation[f.name]
    elif isinstance(f, Not):
        out = lat.event_not(_extension(model, f.child))
    elif isinstance(f, And):
        out = lat.event_and([_extension(model, f.left), _extension(model, f.right)])
    elif isinstance(f, L):
        out = _l_event(model, f.agent, _extension(model, f.child))
    elif isinstance(f, A):
        out = _a_event(model, f.agent, _extension(model, f.child))
    elif isinstance(f, K):
        out = _k_event(model, f.agent, _extension(model, f.child))
    else:
        raise TypeError(f"not a formula node: {f!r}")
    cache[f] = out
    return out


def satisfies(model: LatticeModel, ref: StateRef, f: Formula) -> TruthValue:
    """Three-valued truth at a state: True inside the extension's up-closure,
    False inside the negation's, Undefined outside both."""
    lat = model.lattice
    lat.require_state(ref)
    event = extension(model, f)
    if ref in lat.up_closure(event):
        return TruthValue.TRUE
    if ref in lat.up_closure(lat.event_not(event)):
        return TruthValue.FALSE
    return TruthValue.UNDEFINED


def definedness_event(model: LatticeModel, f: Formula) -> Event:
    """States where every atom of ``f`` has a truth value: the conjunction
    over its atoms of (atom or not atom)."""
    lat = model.lattice
    parts = [lat.event_or([lat.valuation[p], lat.event_not(lat.valuation[p])])
             for p in sorted(formula_atoms(f))]
    if not parts:
        return lat.omega()
    return lat.event_and(parts)


def is_defined(model: LatticeModel, ref: StateRef, f: Formula) -> bool:
    return satisfies(model, ref, f) is not TruthValue.UNDEFINED


def valid_in_model(model: LatticeModel, f: Formula) -> tuple[bool, StateRef | None]:
    """True when no defined state falsifies ``f``; otherwise the first
    falsifying state in top-down order is returned as a witness."""
    for ref in model.states:
        if satisfies(model, ref, f) is TruthValue.FALSE:
            return False, ref
    return True, None

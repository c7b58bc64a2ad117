"""Events, up-closures, projections, and the event algebra."""

from __future__ import annotations

import pytest

from awarekit.errors import ModelFormatError, NotComparable, UnknownSpace, UnknownState
from awarekit.gen import gen_hms
from awarekit.unawareness import Event, event_algebra, project_state, up_closure
from conftest import MEET, P, PQ, Q, ref


def test_up_closure_of_p(fig1L):
    event = Event(P, frozenset({ref(P, "p")}))
    assert up_closure(fig1L, event) == {ref(P, "p"), ref(PQ, "pq"), ref(PQ, "p~q")}


def test_up_closure_of_meet_space_is_everything(fig1L):
    event = Event(MEET, frozenset({ref(MEET, "*")}))
    assert up_closure(fig1L, event) == frozenset(fig1L.states)


def test_vacuous_event_has_empty_extension(fig1L):
    assert up_closure(fig1L, Event(PQ, frozenset())) == frozenset()


def test_vacuous_events_differ_by_base_space():
    assert Event(PQ, frozenset()) != Event(P, frozenset())


def test_up_closure_unknown_space(fig1L):
    with pytest.raises(UnknownSpace):
        up_closure(fig1L, Event(frozenset({"z"}), frozenset()))


def test_up_closure_unknown_state(fig1L):
    with pytest.raises(UnknownState):
        up_closure(fig1L, Event(P, frozenset({ref(P, "ghost")})))


def test_event_base_must_lie_in_base_space():
    with pytest.raises(ModelFormatError):
        Event(P, frozenset({ref(Q, "q")}))


def test_project_state_examples(fig1L):
    assert project_state(fig1L, ref(PQ, "pq"), Q) == ref(Q, "q")
    assert project_state(fig1L, ref(PQ, "pq"), PQ) == ref(PQ, "pq")
    assert project_state(fig1L, ref(PQ, "~p~q"), MEET) == ref(MEET, "*")


def test_project_state_not_comparable(fig1L):
    with pytest.raises(NotComparable):
        project_state(fig1L, ref(P, "p"), Q)


def test_event_not(fig1L):
    event = Event(P, frozenset({ref(P, "p")}))
    assert event_algebra(fig1L, "not", [event]) == Event(P, frozenset({ref(P, "~p")}))


def test_event_and_elaborates_to_join(fig1L):
    left = Event(P, frozenset({ref(P, "p")}))
    right = Event(Q, frozenset({ref(Q, "q")}))
    assert event_algebra(fig1L, "and", [left, right]) == Event(PQ, frozenset({ref(PQ, "pq")}))


def test_event_or_stays_below_everything(fig1L):
    """The union of an event and its negation misses less expressive spaces."""
    left = Event(P, frozenset({ref(P, "p")}))
    right = Event(P, frozenset({ref(P, "~p")}))
    both = event_algebra(fig1L, "or", [left, right])
    assert both == Event(P, frozenset({ref(P, "p"), ref(P, "~p")}))
    assert up_closure(fig1L, both) < frozenset(fig1L.states)


@pytest.mark.parametrize("seed", range(8))
def test_event_algebra_against_set_operations(seed):
    """Conjunction is intersection of up-closures; negation is disjoint from
    its argument; disjunction is the union restricted to the spaces where
    both operands are expressible."""
    model = gen_hms(seed)
    lat = model.lattice
    events = [lat.valuation[a] for a in sorted(model.atoms)]
    events += [lat.event_not(e) for e in events[:2]]
    for left in events:
        for right in events:
            joined = lat.event_and([left, right])
            assert lat.up_closure(joined) == lat.up_closure(left) & lat.up_closure(right)
            union = lat.event_or([left, right])
            expressible = lat.up_closure(lat.space_up(left.base_space | right.base_space))
            both = (lat.up_closure(left) | lat.up_closure(right)) & expressible
            assert lat.up_closure(union) == both
        negated = lat.event_not(left)
        assert not lat.up_closure(negated) & lat.up_closure(left)


def test_event_algebra_rejects_bad_arity(fig1L):
    event = Event(P, frozenset({ref(P, "p")}))
    with pytest.raises(ValueError):
        event_algebra(fig1L, "not", [event, event])
    with pytest.raises(ValueError):
        event_algebra(fig1L, "xor", [event])

"""File formats: round trips, family detection, and malformed inputs."""

from __future__ import annotations

import json

import pytest

from awarekit.awareness import AwarenessModel
from awarekit.errors import ModelFormatError
from awarekit.fixtures import fig1L as load_fig1L, fixture_path
from awarekit.gen import gen_fh, gen_hms, gen_implicit
from awarekit.implicit import ComplementedModel, ImplicitModel, implicit_from_complemented
from awarekit.modelio import (
    data_to_model,
    dumps_model,
    load_model,
    model_to_data,
    parse_proof,
    parse_state_token,
    proof_line_to_json,
    save_model,
    state_token,
    lattice_dot,
)
from awarekit.unawareness import StateRef, UnawarenessModel
from conftest import PQ, ref


def test_fixture_loads_as_complemented(fig1L):
    assert isinstance(fig1L, ComplementedModel)


def test_fixture_file_round_trips():
    raw = json.loads(fixture_path("fig1L.model").read_text())
    model = data_to_model(raw)
    assert model_to_data(model) == json.loads(dumps_model(model))


@pytest.mark.parametrize("family,build", [
    ("fh", lambda: gen_fh(5)),
    ("hms", lambda: gen_hms(5)),
    ("implicit", lambda: gen_implicit(5)),
])
def test_serialization_round_trip(family, build, tmp_path):
    model = build()
    path = tmp_path / f"{family}.model"
    save_model(model, path)
    loaded = load_model(path)
    assert type(loaded) is type(model)
    assert model_to_data(loaded) == model_to_data(model)


def test_family_detection(fig1L):
    data = model_to_data(fig1L)
    assert isinstance(data_to_model(data), ComplementedModel)
    data.pop("lambda")
    assert isinstance(data_to_model(data), UnawarenessModel)
    implicit = implicit_from_complemented(load_fig1L())
    assert isinstance(data_to_model(model_to_data(implicit)), ImplicitModel)


def test_mixed_primitives_rejected(fig1L):
    data = model_to_data(fig1L)
    data["lambda_star"] = data["lambda"]
    with pytest.raises(ModelFormatError):
        data_to_model(data)


def test_missing_space_rejected(fig1L):
    data = model_to_data(fig1L)
    del data["spaces"]["q"]
    with pytest.raises(ModelFormatError):
        data_to_model(data)


def test_missing_projection_rejected(fig1L):
    data = model_to_data(fig1L)
    del data["projections"]["p->"]
    with pytest.raises(ModelFormatError):
        data_to_model(data)


def test_partial_projection_rejected(fig1L):
    data = model_to_data(fig1L)
    del data["projections"]["p,q->p"]["pq"]
    with pytest.raises(ModelFormatError):
        data_to_model(data)


def test_dangling_possibility_state_rejected(fig1L):
    data = model_to_data(fig1L)
    data["pi"]["1"]["p,q:pq"] = ["p:ghost"]
    with pytest.raises(ModelFormatError):
        data_to_model(data)


def test_empty_possibility_set_rejected(fig1L):
    data = model_to_data(fig1L)
    data["pi"]["1"]["p,q:pq"] = []
    with pytest.raises(ModelFormatError):
        data_to_model(data)


def test_valuation_must_be_total(fig1L):
    data = model_to_data(fig1L)
    del data["valuation"]["q"]
    with pytest.raises(ModelFormatError):
        data_to_model(data)


def test_atom_cap_enforced(monkeypatch, fig1L):
    monkeypatch.setenv("AWAREKIT_MAX_ATOMS", "1")
    data = model_to_data(fig1L)
    with pytest.raises(ModelFormatError):
        data_to_model(data)
    monkeypatch.setenv("AWAREKIT_MAX_ATOMS", "2")
    assert isinstance(data_to_model(data), ComplementedModel)
    monkeypatch.setenv("AWAREKIT_MAX_ATOMS", "zero")
    with pytest.raises(ModelFormatError):
        data_to_model(data)


def test_state_tokens():
    state = ref(PQ, "pq")
    assert state_token(state) == "p,q:pq"
    assert parse_state_token("p,q:pq") == state
    assert parse_state_token(":*") == StateRef(frozenset(), "*")
    with pytest.raises(ModelFormatError):
        parse_state_token("no-colon")


def test_awareness_model_detection_and_errors():
    data = {
        "atoms": ["p"], "agents": ["1"], "worlds": ["w0"],
        "relations": {"1": [["w0", "w0"]]},
        "awareness": {"1": {"w0": ["p"]}},
        "valuation": {"p": ["w0"]},
    }
    assert isinstance(data_to_model(data), AwarenessModel)
    bad = dict(data)
    bad["relations"] = {"1": [["w0", "w9"]]}
    with pytest.raises(ModelFormatError):
        data_to_model(bad)


def test_proof_parsing_skips_comments_and_blanks():
    text = """
# a comment
{"formula": "T", "by": "taut"}

{"formula": "l_1 T", "by": "nec 1"}
"""
    lines = parse_proof(text)
    assert len(lines) == 2


def test_proof_parse_errors():
    with pytest.raises(ModelFormatError):
        parse_proof('{"formula": "T"}')
    with pytest.raises(ModelFormatError):
        parse_proof('{"formula": "T", "by": "mp one two"}')
    with pytest.raises(ModelFormatError):
        parse_proof('{"formula": "T", "by": "zap"}')
    with pytest.raises(ModelFormatError):
        parse_proof("not json")


def test_proof_line_render_round_trip():
    text = '{"formula": "a_1 ~p <-> a_1 p", "by": "ax:a-neg phi=\\"(~ p)\\" i=1"}'
    (line,) = parse_proof(text)
    again = parse_proof(proof_line_to_json(line))
    assert again == [line]


def test_dot_export_mentions_every_space(fig1L):
    dot = lattice_dot(fig1L)
    for key in ('"p,q"', '"p"', '"q"', '""'):
        assert key in dot
    assert dot.startswith("digraph")


def test_load_model_io_errors(tmp_path):
    with pytest.raises(ModelFormatError):
        load_model(tmp_path / "missing.model")
    bad = tmp_path / "bad.model"
    bad.write_text("{not json")
    with pytest.raises(ModelFormatError):
        load_model(bad)
    array = tmp_path / "array.model"
    array.write_text("[1, 2]")
    with pytest.raises(ModelFormatError):
        load_model(array)

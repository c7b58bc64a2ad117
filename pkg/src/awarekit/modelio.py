"""Reading and writing the documented model and proof file formats.

All model files are JSON objects; docs/formats.md is the authoritative
schema.  The model family is detected from the fields present: ``worlds``
means an awareness model; ``spaces`` with ``lambda_star`` and ``alpha``
means an implicit knowledge-based lattice model; ``spaces`` with ``lambda``
means a complemented one; ``spaces`` with only ``pi`` is a bare unawareness
model.  Proof files are JSON Lines with ``formula`` and ``by`` fields.
"""

from __future__ import annotations

import json
import shlex
from pathlib import Path
from typing import Iterable

from .awareness import AwarenessModel
from .errors import ModelFormatError
from .implicit import ComplementedModel, ImplicitModel
from .lpa import AxiomInstance, ModusPonens, Necessitation, ProofLine, Taut
from .syntax import Formula, parse, render
from .unawareness import (
    Event,
    SpaceLattice,
    StateRef,
    UnawarenessModel,
    parse_space_key,
    space_key,
    subsets,
)

AnyModel = UnawarenessModel | ComplementedModel | ImplicitModel | AwarenessModel


def state_token(ref: StateRef) -> str:
    return f"{space_key(ref.space)}:{ref.id}"


def parse_state_token(token: str) -> StateRef:
    if ":" not in token:
        raise ModelFormatError(f"state token {token!r} is not of the form 'spaceKey:stateId'")
    key, _, state_id = token.partition(":")
    if not state_id:
        raise ModelFormatError(f"state token {token!r} has an empty state id")
    return StateRef(parse_space_key(key), state_id)


def _corr_to_data(corr) -> dict:
    return {
        agent: {
            state_token(ref): [state_token(t) for t in sorted(image, key=state_token)]
            for ref, image in sorted(table.items(), key=lambda kv: state_token(kv[0]))
        }
        for agent, table in corr.items()
    }


def _corr_from_data(raw, name: str) -> dict:
    if not isinstance(raw, dict):
        raise ModelFormatError(f"{name} must be an object keyed by agent")
    out = {}
    for agent, table in raw.items():
        if not isinstance(table, dict):
            raise ModelFormatError(f"{name}[{agent}] must be an object keyed by state")
        out[agent] = {
            parse_state_token(token): frozenset(parse_state_token(t) for t in image)
            for token, image in table.items()
        }
    return out


def _lattice_to_data(lattice: SpaceLattice) -> dict:
    spaces = {space_key(space): [ref.id for ref in refs]
              for space, refs in lattice.spaces.items()}
    projections = {}
    for (parent, child), table in lattice._cover.items():
        key = f"{space_key(parent)}->{space_key(child)}"
        projections[key] = {ref.id: image.id for ref, image in table.items()}
    valuation = {
        atom: {"base_space": space_key(event.base_space),
               "base": sorted(ref.id for ref in event.base)}
        for atom, event in sorted(lattice.valuation.items())
    }
    return {
        "atoms": sorted(lattice.atoms),
        "spaces": dict(sorted(spaces.items())),
        "projections": dict(sorted(projections.items())),
        "valuation": valuation,
    }


def _require(data: dict, field: str):
    if field not in data:
        raise ModelFormatError(f"model file is missing the {field!r} field")
    return data[field]


def _lattice_from_data(data: dict) -> tuple[SpaceLattice, list]:
    atoms = _require(data, "atoms")
    raw_spaces = _require(data, "spaces")
    raw_projections = _require(data, "projections")
    raw_valuation = _require(data, "valuation")
    if not isinstance(raw_spaces, dict):
        raise ModelFormatError("'spaces' must be an object keyed by space key")
    spaces = {parse_space_key(key): list(ids) for key, ids in raw_spaces.items()}
    if len(spaces) != len(raw_spaces):
        raise ModelFormatError("duplicate space keys after normalization")

    projections = {}
    for key, table in raw_projections.items():
        if "->" not in key:
            raise ModelFormatError(f"projection key {key!r} is not of the form 'parent->child'")
        parent_key, _, child_key = key.partition("->")
        projections[(parse_space_key(parent_key), parse_space_key(child_key))] = dict(table)

    valuation = {}
    for atom, entry in raw_valuation.items():
        if not isinstance(entry, dict) or "base_space" not in entry or "base" not in entry:
            raise ModelFormatError(f"valuation of {atom!r} must have base_space and base")
        space = parse_space_key(entry["base_space"])
        valuation[atom] = Event(space, frozenset(StateRef(space, i) for i in entry["base"]))

    lattice = SpaceLattice(atoms, spaces, projections, valuation)
    agents = _require(data, "agents")
    return lattice, list(agents)


def unawareness_to_data(model: UnawarenessModel) -> dict:
    data = _lattice_to_data(model.lattice)
    data["agents"] = list(model.agents)
    data["pi"] = _corr_to_data(model.pi)
    return data


def complemented_to_data(model: ComplementedModel) -> dict:
    data = unawareness_to_data(model.base)
    data["lambda"] = _corr_to_data(model.lambda_)
    return data


def implicit_to_data(model: ImplicitModel) -> dict:
    data = _lattice_to_data(model.lattice)
    data["agents"] = list(model.agents)
    data["lambda_star"] = _corr_to_data(model.lambda_star)
    data["alpha"] = {
        agent: {state_token(ref): space_key(level)
                for ref, level in sorted(table.items(), key=lambda kv: state_token(kv[0]))}
        for agent, table in model.alpha.items()
    }
    return data


def awareness_to_data(model: AwarenessModel) -> dict:
    return {
        "atoms": sorted(model.language_atoms),
        "agents": list(model.agents),
        "worlds": list(model.worlds),
        "relations": {agent: [list(pair) for pair in sorted(pairs)]
                      for agent, pairs in model.relations.items()},
        "awareness": {agent: {w: sorted(table[w]) for w in model.worlds}
                      for agent, table in model.awareness_atoms.items()},
        "valuation": {atom: sorted(hits) for atom, hits in sorted(model.valuation.items())},
    }


def model_to_data(model: AnyModel) -> dict:
    if isinstance(model, AwarenessModel):
        return awareness_to_data(model)
    if isinstance(model, ImplicitModel):
        return implicit_to_data(model)
    if isinstance(model, ComplementedModel):
        return complemented_to_data(model)
    if isinstance(model, UnawarenessModel):
        return unawareness_to_data(model)
    raise ModelFormatError(f"cannot serialize {type(model).__name__}")


def data_to_model(data: dict) -> AnyModel:
    if not isinstance(data, dict):
        raise ModelFormatError("model file must contain a JSON object")
    if "worlds" in data:
        return AwarenessModel(
            _require(data, "atoms"),
            _require(data, "agents"),
            list(_require(data, "worlds")),
            {agent: [tuple(pair) for pair in pairs]
             for agent, pairs in _require(data, "relations").items()},
            _require(data, "awareness"),
            _require(data, "valuation"),
        )
    if "spaces" not in data:
        raise ModelFormatError("model file has neither 'worlds' nor 'spaces'")
    has_implicit = "lambda_star" in data or "alpha" in data
    if has_implicit and ("pi" in data or "lambda" in data):
        raise ModelFormatError("ambiguous model file: mixes implicit-primitive and "
                               "explicit-primitive fields")
    lattice, agents = _lattice_from_data(data)
    if has_implicit:
        lambda_star = _corr_from_data(_require(data, "lambda_star"), "lambda_star")
        raw_alpha = _require(data, "alpha")
        alpha = {
            agent: {parse_state_token(token): parse_space_key(level)
                    for token, level in table.items()}
            for agent, table in raw_alpha.items()
        }
        return ImplicitModel(lattice, agents, lambda_star, alpha)
    pi = _corr_from_data(_require(data, "pi"), "pi")
    base = UnawarenessModel(lattice, agents, pi)
    if "lambda" in data:
        return ComplementedModel(base, _corr_from_data(data["lambda"], "lambda"))
    return base


def dumps_model(model: AnyModel) -> str:
    return json.dumps(model_to_data(model), indent=2, sort_keys=True) + "\n"


def load_model(path: str | Path) -> AnyModel:
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as err:
        raise ModelFormatError(f"cannot read {path}: {err}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as err:
        raise ModelFormatError(f"{path} is not valid JSON: {err}") from None
    return data_to_model(data)


def save_model(model: AnyModel, path: str | Path) -> None:
    Path(path).write_text(dumps_model(model), encoding="utf-8")


# -- proofs -------------------------------------------------------------------


def _parse_by(by: str, line_number: int) -> Taut | AxiomInstance | ModusPonens | Necessitation:
    try:
        parts = shlex.split(by)
    except ValueError as err:
        raise ModelFormatError(f"line {line_number}: bad 'by' field: {err}") from None
    if not parts:
        raise ModelFormatError(f"line {line_number}: empty 'by' field")
    head = parts[0]
    if head == "taut":
        return Taut()
    if head.startswith("ax:"):
        name = head[3:]
        hint = []
        for piece in parts[1:]:
            if "=" not in piece:
                raise ModelFormatError(f"line {line_number}: bad substitution {piece!r}")
            key, _, value = piece.partition("=")
            if key in ("phi", "psi"):
                hint.append((key, parse(value)))
            elif key in ("i", "j"):
                hint.append((key, value))
            else:
                raise ModelFormatError(f"line {line_number}: unknown metavariable {key!r}")
        return AxiomInstance(name, tuple(hint))
    if head == "mp":
        if len(parts) != 3:
            raise ModelFormatError(f"line {line_number}: 'mp' needs two line numbers")
        try:
            return ModusPonens(int(parts[1]), int(parts[2]))
        except ValueError:
            raise ModelFormatError(f"line {line_number}: 'mp' needs integers") from None
    if head == "nec":
        if len(parts) != 2:
            raise ModelFormatError(f"line {line_number}: 'nec' needs one line number")
        try:
            return Necessitation(int(parts[1]))
        except ValueError:
            raise ModelFormatError(f"line {line_number}: 'nec' needs an integer") from None
    raise ModelFormatError(f"line {line_number}: unknown justification {head!r}")


def parse_proof(text: str, agents: Iterable[str] | None = None) -> list[ProofLine]:
    lines: list[ProofLine] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        raw = raw.strip()
        if not raw or raw.startswith("#"):
            continue
        try:
            entry = json.loads(raw)
        except json.JSONDecodeError as err:
            raise ModelFormatError(f"line {number}: not valid JSON: {err}") from None
        if not isinstance(entry, dict) or "formula" not in entry or "by" not in entry:
            raise ModelFormatError(f"line {number}: entries need 'formula' and 'by'")
        formula = parse(entry["formula"], agents)
        lines.append(ProofLine(formula, _parse_by(entry["by"], number)))
    return lines


def load_proof(path: str | Path, agents: Iterable[str] | None = None) -> list[ProofLine]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise ModelFormatError(f"cannot read {path}: {err}") from None
    return parse_proof(text, agents)


def proof_line_to_json(line: ProofLine) -> str:
    how = line.justification
    if isinstance(how, Taut):
        by = "taut"
    elif isinstance(how, AxiomInstance):
        pieces = [f"ax:{how.name}"]
        for key, value in how.hint:
            text = render(value) if isinstance(value, Formula) else str(value)
            pieces.append(f"{key}={shlex.quote(text)}")
        by = " ".join(pieces)
    elif isinstance(how, ModusPonens):
        by = f"mp {how.premise} {how.implication}"
    else:
        by = f"nec {how.source}"
    return json.dumps({"formula": render(line.formula), "by": by})


# -- DOT export -------------------------------------------------------------------


def lattice_dot(model) -> str:
    """A DOT digraph of the space lattice with covering projections as edges."""
    lattice = model.lattice
    lines = ["digraph spaces {"]
    for space in sorted(lattice.spaces, key=lambda s: (len(s), space_key(s))):
        label = space_key(space) or "(meet)"
        size = len(lattice.spaces[space])
        lines.append(f'  "{space_key(space)}" [label="{label}\\n{size} state(s)"];')
    for parent in sorted(lattice.spaces, key=lambda s: (len(s), space_key(s))):
        for atom in sorted(parent):
            child = parent - {atom}
            lines.append(f'  "{space_key(parent)}" -> "{space_key(child)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"

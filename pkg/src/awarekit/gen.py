"""Seeded random generation of validated models.

Awareness models are generated directly (partitions, awareness cells,
valuations); lattice models come out of the transform pipeline, which
guarantees they validate.  Generation is a pure function of seed and caps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .awareness import AwarenessModel
from .errors import InvalidCaps
from .syntax import A, And, Atom, Formula, K, L, Not, TOP


ATOM_POOL = ("p", "q", "r", "s", "t", "u")


@dataclass(frozen=True)
class GenCaps:
    """Upper bounds for generated model sizes; actual sizes are sampled."""

    atoms: int = 3
    worlds: int = 5
    agents: int = 2

    def require_valid(self) -> None:
        if self.atoms < 1 or self.worlds < 1 or self.agents < 1:
            raise InvalidCaps(f"all caps must be at least 1, got {self}")


def _atom_names(count: int) -> list[str]:
    if count <= len(ATOM_POOL):
        return list(ATOM_POOL[:count])
    return [f"p{i}" for i in range(count)]


def gen_fh(seed: int, caps: GenCaps = GenCaps()) -> AwarenessModel:
    """A random partitional, propositionally determined awareness model;
    identical for identical ``(seed, caps)``."""
    caps.require_valid()
    rng = random.Random(f"fh:{seed}")
    n_atoms = rng.randint(1, caps.atoms)
    n_worlds = rng.randint(1, caps.worlds)
    n_agents = rng.randint(1, caps.agents)

    atoms = _atom_names(n_atoms)
    worlds = [f"w{i}" for i in range(n_worlds)]
    agents = [str(i + 1) for i in range(n_agents)]

    relations = {}
    awareness = {}
    for agent in agents:
        n_cells = rng.randint(1, n_worlds)
        label_of = {w: rng.randrange(n_cells) for w in worlds}
        cells: dict[int, list[str]] = {}
        for w in worlds:
            cells.setdefault(label_of[w], []).append(w)
        relations[agent] = {(w, t) for cell in cells.values() for w in cell for t in cell}
        awareness[agent] = {}
        for cell in cells.values():
            cell_atoms = frozenset(a for a in atoms if rng.random() < 0.7)
            for w in cell:
                awareness[agent][w] = cell_atoms

    valuation = {a: frozenset(w for w in worlds if rng.random() < 0.5) for a in atoms}
    return AwarenessModel(atoms, agents, worlds, relations, awareness, valuation)


def gen_hms(seed: int, caps: GenCaps = GenCaps()):
    """A random complemented lattice model, via the transform pipeline."""
    from .transforms import hms_transform

    return hms_transform(gen_fh(seed, caps))


def gen_implicit(seed: int, caps: GenCaps = GenCaps()):
    """A random implicit knowledge-based lattice model."""
    from .transforms import hms_transform

    return hms_transform(gen_fh(seed, caps), truncate=True)


def random_formula(rng: random.Random, atoms, agents, max_depth: int,
                   budget: int = 6) -> Formula:
    """A random formula with modal depth at most ``max_depth`` and at most
    ``budget`` connectives."""
    atoms = sorted(atoms)
    agents = sorted(agents)
    kinds = ["atom", "top"]
    if budget > 0:
        kinds += ["not", "and"]
        if max_depth > 0 and agents:
            kinds += ["l", "a", "k"]

    kind = rng.choice(kinds)
    if kind == "top" or (kind == "atom" and not atoms):
        return TOP
    if kind == "atom":
        return Atom(rng.choice(atoms))
    if kind == "not":
        return Not(random_formula(rng, atoms, agents, max_depth, budget - 1))
    if kind == "and":
        return And(random_formula(rng, atoms, agents, max_depth, budget - 1),
                   random_formula(rng, atoms, agents, max_depth, budget - 1))
    node = {"l": L, "a": A, "k": K}[kind]
    return node(rng.choice(agents),
                random_formula(rng, atoms, agents, max_depth - 1, budget - 1))

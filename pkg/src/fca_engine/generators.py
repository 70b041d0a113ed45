"""Seeded random contexts, maps and infomorphisms for the law battery and tests."""

import numpy as np

from fca_engine.classification import Classification, Infomorphism
from fca_engine.order_core import SetFunction


def random_context(rng: np.random.Generator, max_side: int, density: float = 0.5) -> Classification:
    n_inst = int(rng.integers(0, max_side + 1))
    n_type = int(rng.integers(0, max_side + 1))
    incidence = rng.random((n_inst, n_type)) < density
    return Classification([f"g{i}" for i in range(n_inst)], [f"m{j}" for j in range(n_type)], incidence)


def random_set_function(rng: np.random.Generator, source: list[str], target: list[str]) -> SetFunction:
    if source and not target:
        raise ValueError("No function from a non-empty set into the empty set")
    return SetFunction(source, target, rng.integers(0, max(len(target), 1), size=len(source)))


def random_infomorphism(rng: np.random.Generator, source: Classification, max_side: int) -> Infomorphism:
    """A valid infomorphism out of ``source``; the target incidence is forced along an injective type map."""
    n_type = len(source.types) + int(rng.integers(0, 2))
    # instances can only map into a non-empty instance set
    n_inst = int(rng.integers(1, max_side + 1)) if len(source.instances) else 0
    typ_map = rng.permutation(n_type)[: len(source.types)]
    inst_map = rng.integers(0, max(len(source.instances), 1), size=n_inst)

    incidence = rng.random((n_inst, n_type)) < 0.5
    if n_inst and len(source.types):
        incidence[:, typ_map] = source.incidence[inst_map]
    target = Classification([f"h{i}" for i in range(n_inst)], [f"n{j}" for j in range(n_type)], incidence)
    return Infomorphism(source, target, inst_map, typ_map)


def candidate_maps(rng: np.random.Generator, f: Infomorphism) -> tuple[np.ndarray, np.ndarray]:
    """The maps of ``f`` with at most one entry redirected; the result may or may not be an infomorphism."""
    inst_map, typ_map = f.inst_map.copy(), f.typ_map.copy()
    choice = int(rng.integers(0, 3))
    if choice == 1 and len(inst_map) and len(f.source.instances) > 1:
        inst_map[rng.integers(0, len(inst_map))] = rng.integers(0, len(f.source.instances))
    elif choice == 2 and len(typ_map) and len(f.target.types) > 1:
        typ_map[rng.integers(0, len(typ_map))] = rng.integers(0, len(f.target.types))
    return inst_map, typ_map

"""Shared fixtures: the published two-qubit table for the n=4 game and a
branch-enumeration oracle for measurement distributions."""
from __future__ import annotations

import numpy as np

from bcsmagic.bcs import PauliSolution
from bcsmagic.pauli import parse_pauli
from bcsmagic.quantum import OperatorSolution, SharedState

TABLE_N4 = {
    "a1": "-ZZ", "a2": "II", "a3": "ZI", "a4": "IZ",
    "x1_2": "-YY", "x1_3": "XI", "x1_4": "IX",
    "x2_3": "II", "x2_4": "II", "x3_4": "ZZ",
    "y1_2": "-ZZ", "y1_3": "-IZ", "y1_4": "-ZI",
    "y2_3": "ZI", "y2_4": "IZ", "y3_4": "ZZ",
    "z1_2": "-XX", "z1_3": "-XZ", "z1_4": "-ZX",
    "z2_3": "ZI", "z2_4": "IZ", "z3_4": "II",
    "b1_2|3_4": "XX", "b1_3|2_4": "XI", "b1_4|2_3": "IX",
    "c1_2|3_4": "-YY", "c1_3|2_4": "XZ", "c1_4|2_3": "ZX",
    "c3_4|1_2": "YY", "c2_4|1_3": "-XZ", "c2_3|1_4": "-ZX",
}


def table_pauli_solution(game) -> PauliSolution:
    strings = [parse_pauli(TABLE_N4[name]) for name in game.bcs.variables]
    return PauliSolution(2, strings)


def table_operator_solution(game) -> OperatorSolution:
    from bcsmagic.pauli import to_matrix

    return OperatorSolution(
        4,
        {i: to_matrix(parse_pauli(TABLE_N4[name])) for i, name in enumerate(game.bcs.variables)},
    )


def enumerate_distribution(state: SharedState, plan: list[tuple[str, np.ndarray]]):
    """Exact joint outcome distribution of a measurement plan.

    ``plan`` is a list of (side, observable); the returned dict maps outcome
    tuples to probabilities, with zero-probability branches dropped.
    """
    eye = np.eye(state.dim)
    dist: dict[tuple[int, ...], float] = {}

    def recurse(m: np.ndarray, prefix: tuple[int, ...], weight: float, step: int):
        if weight < 1e-15:
            return
        if step == len(plan):
            dist[prefix] = dist.get(prefix, 0.0) + weight
            return
        side, obs = plan[step]
        for outcome in (1, -1):
            proj = (eye + outcome * obs) / 2
            branch = proj @ m if side == "A" else m @ proj.T
            p = float(np.linalg.norm(branch) ** 2)
            if p > 1e-15:
                recurse(branch / np.sqrt(p), prefix + (outcome,), weight * p, step + 1)

    recurse(state.amplitudes, (), 1.0, 0)
    return dist

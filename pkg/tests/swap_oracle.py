"""Exact state-vector oracle for the entanglement-swapping chain.

Builds the full 2m-qubit state of m EPR pairs in a line, projects every
junction onto the Bell basis branch by branch, and reports each branch's
probability, its outcome bits, and the Bell index of the surviving end
pair.  Used to pin down the analytic swap conventions exactly.
"""
from __future__ import annotations

import itertools

import numpy as np

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def bell_vector(z: int, x: int) -> np.ndarray:
    """(Z^z X^x (x) I) |Phi+> as a 4-vector over qubits (first, second)."""
    phi = np.zeros(4, dtype=complex)
    phi[0] = phi[3] = 1 / np.sqrt(2)
    op = _I2
    if z:
        op = op @ _Z
    if x:
        op = op @ _X
    return np.kron(op, _I2) @ phi


def chain_state(m: int) -> np.ndarray:
    """m EPR pairs on qubits (0,1), (2,3), ..., as a (2,)*2m tensor."""
    phi = bell_vector(0, 0).reshape(2, 2)
    state = phi
    for _ in range(m - 1):
        state = np.tensordot(state, phi, axes=0)
    return state


def project_pair(state: np.ndarray, q1: int, q2: int, z: int, x: int) -> np.ndarray:
    """Contract <beta_zx| applied to qubits (q1, q2); returns the smaller tensor."""
    beta = bell_vector(z, x).reshape(2, 2).conj()
    return np.tensordot(state, beta, axes=([q1, q2], [0, 1]))


def enumerate_swap_branches(m: int):
    """All Bell-outcome branches of the m-pair chain.

    Yields (outcomes, probability, end_bell_index) where outcomes is a tuple
    of (z, x) per junction, measured on qubit pairs (1,2), (3,4), ...; the
    first qubit of each junction pair is the Bob-side qubit.  end_bell_index
    is the (z, x) of the surviving pair (first qubit, last qubit), asserted
    to be an exact Bell state.
    """
    results = []
    for outcomes in itertools.product(itertools.product((0, 1), repeat=2), repeat=m - 1):
        state = chain_state(m)
        # measured qubit pairs, renumbering as axes vanish: after each
        # contraction the remaining axes keep their relative order, so we
        # track live axis ids explicitly.
        live = list(range(2 * m))
        for junction, (z, x) in enumerate(outcomes):
            qb = 2 * junction + 1  # Bob-side qubit of the junction
            qa = 2 * junction + 2
            state = project_pair(state, live.index(qb), live.index(qa), z, x)
            live.remove(qb)
            live.remove(qa)
        prob = float(np.sum(np.abs(state) ** 2))
        end_index = None
        if prob > 1e-15:
            vec = state.reshape(-1) / np.sqrt(prob)
            for z_end, x_end in itertools.product((0, 1), repeat=2):
                if abs(np.vdot(bell_vector(z_end, x_end), vec)) > 1 - 1e-12:
                    end_index = (z_end, x_end)
        results.append((outcomes, prob, end_index))
    return results

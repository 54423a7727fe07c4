"""Two-round relation problem, its one-round sampling variant, and lightcone
analysis of bounded fan-in circuit wirings.

Sites 1..N each hold three qubit layers on both the Alice and Bob side, with
an EPR pair across every site.  Round 1 swaps entanglement along the chain
between the two selected sites j < k: one Bell measurement per junction and
layer.  Bell outcomes are two bits per measurement; the bit reported at
Bob's qubit of junction i is the X-parity bit r_i^B, the bit at Alice's
qubit of junction i+1 is the Z-parity bit r_{i+1}^A, and logical bit 0 maps
to sign +1 throughout.  The end-to-end pair of layer l is then, up to a
global phase, (Z^za X^xb (x) I) |Phi+> on Alice's side with

    za(l) = parity of r^A_{j+1..k}(l),   xb(l) = parity of r^B_{j..k-1}(l),

so the syndrome products determine the Pauli frame exactly, and Alice's
correction X^xb Z^za restores |Phi+>.  Swapping is simulated analytically
(independent uniform Bell outcomes, frames by parity); the state-vector
oracle in the test suite checks both facts exactly on short chains.

Round 2 plays the complete-graph game on the corrected three-pair state.
The sampling variant plays on the uncorrected state and succeeds outright
when every parity is +1, which happens with probability 1/64.

Circuit wirings are layered gate lists over persistent classical/quantum
wires; forward and backward lightcones are plain support propagation, and
the disjointness probability enumerates every (j, k) site pair exactly.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .game import GameBcs
from .quantum import OperatorSolution, SharedState, measure_commuting

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# Alice-side recovery for one layer, keyed by the (p^A, p^B) syndrome signs.
CORRECTION_TABLE = {
    (1, 1): _I2,
    (-1, 1): _Z,
    (1, -1): _X,
    (-1, -1): _X @ _Z,
}


# ---------------------------------------------------------------------------
# Relation problem
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RelationInstance:
    N: int
    n: int
    j: int
    k: int
    alpha: int
    beta: int

    def __post_init__(self) -> None:
        if not 1 <= self.j < self.k <= self.N:
            raise ValueError(f"need 1 <= j < k <= N, got j={self.j}, k={self.k}, N={self.N}")


@dataclass
class Round1Transcript:
    j: int
    k: int
    r_alice: np.ndarray  # signs, shape (k-j, 3); row i-(j+1) is r^A_i for i in j+1..k
    r_bob: np.ndarray  # signs, shape (k-j, 3); row i-j is r^B_i for i in j..k-1
    pauli_frame: tuple[tuple[int, int], ...]  # per layer, (z bit, x bit)


@dataclass
class Round2Result:
    r_a: tuple[int, int, int]
    r_b: tuple[int, int, int]


def random_instance(game: GameBcs, N: int, rng: np.random.Generator) -> RelationInstance:
    """Uniform (j, k, alpha, beta); beta ranges over every variable, whether
    or not it belongs to constraint alpha."""
    j = int(rng.integers(1, N))
    k = int(rng.integers(j + 1, N + 1))
    alpha = int(rng.integers(len(game.bcs.constraints)))
    beta = int(rng.integers(game.bcs.n_vars))
    return RelationInstance(N, game.n, j, k, alpha, beta)


def run_round1(instance: RelationInstance, rng: np.random.Generator) -> Round1Transcript:
    """Analytic entanglement swapping along the j..k chain.

    Each junction and layer yields two independent uniform bits; the frame
    is their running parity per layer.
    """
    span = instance.k - instance.j
    bits = rng.integers(0, 2, size=(span, 3, 2))
    z_bits, x_bits = bits[:, :, 0], bits[:, :, 1]
    frame = tuple(
        (int(z_bits[:, l].sum() % 2), int(x_bits[:, l].sum() % 2)) for l in range(3)
    )
    return Round1Transcript(
        instance.j,
        instance.k,
        1 - 2 * z_bits,
        1 - 2 * x_bits,
        frame,
    )


def compute_syndrome(transcript: Round1Transcript, j: int, k: int):
    """Per-layer parity products of the round-1 outcomes."""
    if (j, k) != (transcript.j, transcript.k):
        raise ValueError(f"transcript covers ({transcript.j}, {transcript.k}), not ({j}, {k})")
    p_a = tuple(int(np.prod(transcript.r_alice[:, l])) for l in range(3))
    p_b = tuple(int(np.prod(transcript.r_bob[:, l])) for l in range(3))
    return p_a, p_b


def _kron3(ops) -> np.ndarray:
    return np.kron(np.kron(ops[0], ops[1]), ops[2])


def _frame_operator(frame: tuple[tuple[int, int], ...]) -> np.ndarray:
    layers = []
    for z, x in frame:
        op = _I2
        if z:
            op = op @ _Z
        if x:
            op = op @ _X
        layers.append(op)
    return _kron3(layers)


def _correction_operator(p_a, p_b) -> np.ndarray:
    return _kron3([CORRECTION_TABLE[(p_a[l], p_b[l])] for l in range(3)])


def frame_state(frame: tuple[tuple[int, int], ...]) -> SharedState:
    """Three EPR pairs carrying the given per-layer Pauli frame on Alice's side."""
    return SharedState(_frame_operator(frame) @ (np.eye(8, dtype=complex) / np.sqrt(8)))


def run_round2(
    game: GameBcs,
    instance: RelationInstance,
    transcript: Round1Transcript,
    sol: OperatorSolution,
    rng: np.random.Generator,
    apply_correction: bool = True,
) -> Round2Result:
    """Correct the swapped state from the syndrome, then play the game.

    Alice measures the observables of constraint alpha in ascending variable
    order (outputs padded to three bits with +1); Bob's meaningful bit is
    position 1.  With the correction applied, the pre-measurement state must
    be exactly |Phi+> of dimension 8.
    """
    if sol.dim != 8:
        raise ValueError("round 2 expects the dimension-8 strategy")
    state = frame_state(transcript.pauli_frame)
    if apply_correction:
        p_a, p_b = compute_syndrome(transcript, instance.j, instance.k)
        state.amplitudes = _correction_operator(p_a, p_b) @ state.amplitudes
        fidelity = abs(np.trace(state.amplitudes)) ** 2 / 8
        assert fidelity > 1 - 1e-9, f"correction left fidelity {fidelity}"

    constraint = game.bcs.constraints[instance.alpha]
    alice_obs = [sol.assignment[v] for v in constraint.var_indices]
    a_out, state = measure_commuting(state, "A", alice_obs, rng)
    b_out, _ = measure_commuting(state, "B", [sol.assignment[instance.beta].T], rng)
    r_a = tuple(a_out) + (1,) * (3 - len(a_out))
    r_b = (b_out[0], 1, 1)
    return Round2Result(r_a, r_b)


def check_relation(instance: RelationInstance, outputs: Round2Result, game: GameBcs) -> bool:
    """Alice's bits must satisfy her constraint; when beta belongs to it,
    Bob's first bit must match Alice's bit for that variable."""
    if not 0 <= instance.alpha < len(game.bcs.constraints):
        raise ValueError(f"unknown constraint id {instance.alpha}")
    if not 0 <= instance.beta < game.bcs.n_vars:
        raise ValueError(f"unknown variable id {instance.beta}")
    constraint = game.bcs.constraints[instance.alpha]
    members = constraint.var_indices
    prod = 1
    for pos in range(len(members)):
        prod *= outputs.r_a[pos]
    if prod != constraint.rhs:
        return False
    if instance.beta in members:
        return outputs.r_b[0] == outputs.r_a[members.index(instance.beta)]
    return True


@dataclass
class SamplingTrial:
    outputs: Round2Result
    parities_ok: bool
    case: str  # "case1", "case2", or "invalid"


def run_sampling_trial(
    game: GameBcs,
    instance: RelationInstance,
    sol: OperatorSolution,
    rng: np.random.Generator,
) -> SamplingTrial:
    """One-round variant: play on the uncorrected swapped state.

    case1: every parity is +1 and the relation holds; case2: some parity is
    -1 (any outputs accepted); invalid: clean parities but a violated
    relation, which the exact strategy never produces.
    """
    transcript = run_round1(instance, rng)
    p_a, p_b = compute_syndrome(transcript, instance.j, instance.k)
    state = frame_state(transcript.pauli_frame)
    constraint = game.bcs.constraints[instance.alpha]
    a_out, state = measure_commuting(state, "A", [sol.assignment[v] for v in constraint.var_indices], rng)
    b_out, _ = measure_commuting(state, "B", [sol.assignment[instance.beta].T], rng)
    outputs = Round2Result(tuple(a_out) + (1,) * (3 - len(a_out)), (b_out[0], 1, 1))
    clean = all(s == 1 for s in p_a + p_b)
    if not clean:
        case = "case2"
    elif check_relation(instance, outputs, game):
        case = "case1"
    else:
        case = "invalid"
    return SamplingTrial(outputs, clean, case)


# ---------------------------------------------------------------------------
# Circuit wirings and lightcones
# ---------------------------------------------------------------------------

@dataclass
class Gate:
    layer: int
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    kind: str = "gate"

    @property
    def fan_in(self) -> int:
        return len(self.inputs)


@dataclass
class CircuitDag:
    wire_kinds: list[str]  # "c" or "q" per wire id
    gates: list[Gate]
    alice_inputs: list[list[int]] = field(default_factory=list)
    bob_inputs: list[list[int]] = field(default_factory=list)
    alice_outputs: list[list[int]] = field(default_factory=list)
    bob_outputs: list[list[int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._readers: dict[int, list[int]] | None = None
        n_wires = len(self.wire_kinds)
        first_written: dict[int, int] = {}
        written_at: set[tuple[int, int]] = set()
        for g in sorted(self.gates, key=lambda g: g.layer):
            if g.layer < 1:
                raise ValueError("gate layers start at 1")
            for w in g.inputs:
                if not 0 <= w < n_wires:
                    raise ValueError(f"gate reads unknown wire {w}")
                if w in first_written and first_written[w] >= g.layer:
                    raise ValueError(f"wire {w} read at layer {g.layer} before it is produced")
            for w in g.outputs:
                if not 0 <= w < n_wires:
                    raise ValueError(f"gate writes unknown wire {w}")
                if (g.layer, w) in written_at:
                    raise ValueError(f"wire {w} written twice in layer {g.layer}")
                written_at.add((g.layer, w))
                # reads of w in the same or later layers stay legal when w is
                # also an input of this gate (transform style)
                if w not in g.inputs:
                    first_written.setdefault(w, g.layer)

    @property
    def depth(self) -> int:
        return max((g.layer for g in self.gates), default=0)

    @property
    def max_fan_in(self) -> int:
        return max((g.fan_in for g in self.gates), default=0)

    @property
    def n_sites(self) -> int:
        return len(self.alice_inputs)

    def _reader_index(self) -> dict[int, list[int]]:
        if self._readers is None:
            self._readers = {}
            for gid, g in enumerate(self.gates):
                for w in g.inputs:
                    self._readers.setdefault(w, []).append(gid)
        return self._readers

    def to_json(self) -> str:
        return json.dumps(
            {
                "wires": [{"id": i, "kind": k} for i, k in enumerate(self.wire_kinds)],
                "gates": [
                    {"layer": g.layer, "inputs": list(g.inputs), "outputs": list(g.outputs), "kind": g.kind}
                    for g in self.gates
                ],
                "alice_inputs": self.alice_inputs,
                "bob_inputs": self.bob_inputs,
                "alice_outputs": self.alice_outputs,
                "bob_outputs": self.bob_outputs,
            }
        )


def dag_from_json(text: str) -> CircuitDag:
    payload = json.loads(text)
    kinds = [""] * len(payload["wires"])
    for w in payload["wires"]:
        kinds[w["id"]] = w["kind"]
    gates = [
        Gate(g["layer"], tuple(g["inputs"]), tuple(g["outputs"]), g.get("kind", "gate"))
        for g in payload["gates"]
    ]
    return CircuitDag(
        kinds,
        gates,
        payload.get("alice_inputs", []),
        payload.get("bob_inputs", []),
        payload.get("alice_outputs", []),
        payload.get("bob_outputs", []),
    )


def forward_lightcone(dag: CircuitDag, wires) -> set[int]:
    """Wires that the seed set can influence, by layerwise support growth."""
    seed = {wires} if isinstance(wires, int) else set(wires)
    for w in seed:
        if not 0 <= w < len(dag.wire_kinds):
            raise ValueError(f"unknown wire {w}")
    cone = set(seed)
    readers = dag._reader_index()
    for layer in range(1, dag.depth + 1):
        fired = {
            gid
            for w in cone
            for gid in readers.get(w, [])
            if dag.gates[gid].layer == layer
        }
        for gid in fired:
            cone.update(dag.gates[gid].outputs)
    return cone


def backward_lightcone(dag: CircuitDag, wires) -> set[int]:
    """Wires the outputs may depend on; at most |O| K^D of them."""
    seed = {wires} if isinstance(wires, int) else set(wires)
    for w in seed:
        if not 0 <= w < len(dag.wire_kinds):
            raise ValueError(f"unknown wire {w}")
    cone = set(seed)
    by_layer: dict[int, list[Gate]] = {}
    for g in dag.gates:
        by_layer.setdefault(g.layer, []).append(g)
    for layer in range(dag.depth, 0, -1):
        for g in by_layer.get(layer, ()):
            if cone.intersection(g.outputs):
                cone.update(g.inputs)
    return cone


def lightcone_disjoint_probability(dag: CircuitDag, N: int | None = None) -> float:
    """Exact probability over uniform site pairs j < k that neither selected
    input's forward cone reaches the other side's selected output bits."""
    sites = dag.n_sites
    if N is not None and N != sites:
        raise ValueError(f"dag has {sites} sites, not {N}")
    if sites < 2:
        raise ValueError("need at least two sites")

    site_of_bob_out = {w: s for s, group in enumerate(dag.bob_outputs) for w in group}
    site_of_alice_out = {w: s for s, group in enumerate(dag.alice_outputs) for w in group}

    bad_from_alice: list[set[int]] = []
    for s in range(sites):
        cone = forward_lightcone(dag, dag.alice_inputs[s])
        bad_from_alice.append({site_of_bob_out[w] for w in cone if w in site_of_bob_out})
    bad_from_bob: list[set[int]] = []
    for s in range(sites):
        cone = forward_lightcone(dag, dag.bob_inputs[s])
        bad_from_bob.append({site_of_alice_out[w] for w in cone if w in site_of_alice_out})

    bad_pairs = set()
    for j in range(sites):
        for k in bad_from_alice[j]:
            if k > j:
                bad_pairs.add((j, k))
    for k in range(sites):
        for j in bad_from_bob[k]:
            if j < k:
                bad_pairs.add((j, k))
    total = sites * (sites - 1) // 2
    return 1.0 - len(bad_pairs) / total


def depth_lower_bound(N: int, K: int, p_clif: float) -> float:
    """Depth any bounded fan-in magic-free circuit needs before its success
    probability on the relation problem can exceed (1 + p_clif)/2."""
    if K < 2:
        raise ValueError("fan-in bound must be at least 2")
    return (math.log(N) + math.log((1 - p_clif) / 96)) / math.log(K)


# ---------------------------------------------------------------------------
# The constant-depth strategy wiring
# ---------------------------------------------------------------------------

QUESTION_BITS = 11  # enough to index the modified game's constraints, or its variables, plus a null marker


def build_strategy_dag(N: int, n: int = 8) -> CircuitDag:
    """Abstract wiring of the swap-and-play strategy on N site pairs.

    Gate arities follow the strategy's needs: EPR preparation touches 2
    qubits; a Bell measurement reads one null-input flag and 2 qubits; the
    frame correction reads 2 syndrome bits and 1 qubit; the game measurement
    reads an 11-bit question and 3 qubits, which is the maximal fan-in, 14.
    Question decoding and output selection are constant-size classical
    gates.  The depth never depends on N.
    """
    if N < 2:
        raise ValueError("need at least two sites")
    if n != 8:
        raise ValueError("the wiring is laid out for the dimension-8 strategy")

    kinds: list[str] = []

    def new_wires(count: int, kind: str) -> list[int]:
        start = len(kinds)
        kinds.extend(kind * count)
        return list(range(start, start + count))

    syndrome = [new_wires(6, "c") for _ in range(N)]
    alice_q_in = [new_wires(QUESTION_BITS, "c") for _ in range(N)]
    bob_q_in = [new_wires(QUESTION_BITS, "c") for _ in range(N)]
    qa = [new_wires(3, "q") for _ in range(N)]
    qb = [new_wires(3, "q") for _ in range(N)]
    flag_a = [new_wires(1, "c")[0] for _ in range(N)]
    flag_b = [new_wires(1, "c")[0] for _ in range(N)]
    bsm_b = [new_wires(3, "c") for _ in range(N)]  # r^B at junction site i
    bsm_a = [new_wires(3, "c") for _ in range(N)]  # r^A at site i+1, stored at i+1
    game_a = [new_wires(3, "c") for _ in range(N)]
    game_b = [new_wires(3, "c") for _ in range(N)]
    out_a = [new_wires(3, "c") for _ in range(N)]
    out_b = [new_wires(3, "c") for _ in range(N)]

    gates: list[Gate] = []
    for i in range(N):
        gates.append(Gate(1, tuple(alice_q_in[i]), (flag_a[i],), "decode"))
        gates.append(Gate(1, tuple(bob_q_in[i]), (flag_b[i],), "decode"))
        for l in range(3):
            gates.append(Gate(1, (qa[i][l], qb[i][l]), (qa[i][l], qb[i][l]), "epr_prep"))
    for i in range(N - 1):
        for l in range(3):
            gates.append(
                Gate(2, (flag_b[i], qb[i][l], qa[i + 1][l]), (bsm_b[i][l], bsm_a[i + 1][l]), "bsm")
            )
    for i in range(N):
        for l in range(3):
            gates.append(
                Gate(3, (syndrome[i][2 * l], syndrome[i][2 * l + 1], qa[i][l]), (qa[i][l],), "correction")
            )
    for i in range(N):
        gates.append(Gate(4, tuple(alice_q_in[i]) + tuple(qa[i]), tuple(game_a[i]), "game_measure"))
        gates.append(Gate(4, tuple(bob_q_in[i]) + tuple(qb[i]), tuple(game_b[i]), "game_measure"))
    for i in range(N):
        for l in range(3):
            a_in = (flag_a[i], game_a[i][l]) + ((bsm_a[i][l],) if i > 0 else ())
            gates.append(Gate(5, a_in, (out_a[i][l],), "select"))
            b_in = (flag_b[i], game_b[i][l]) + ((bsm_b[i][l],) if i < N - 1 else ())
            gates.append(Gate(5, b_in, (out_b[i][l],), "select"))

    return CircuitDag(
        kinds,
        gates,
        alice_inputs=[syndrome[i] + alice_q_in[i] for i in range(N)],
        bob_inputs=bob_q_in,
        alice_outputs=out_a,
        bob_outputs=out_b,
    )

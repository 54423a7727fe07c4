"""Signed multi-qubit Pauli strings in symplectic form.

A string on n qubits is encoded as a pair of n-bit integers (x, z) plus a
phase exponent k, the whole operator being

    i^k * P_0 (x) P_1 (x) ... (x) P_{n-1},

where qubit j has letter I, X, Z, Y for (x_j, z_j) = (0,0), (1,0), (0,1),
(1,1).  Qubit 0 is the leftmost letter of the text form and the first factor
of the Kronecker product.  Hermitian strings are exactly those with phase
k in {0, 2}, i.e. an overall sign of +1 or -1; intermediate products of
Hermitian strings can pick up a factor of +/- i, so the full Z4 phase is kept
internally.  The text grammar only admits Hermitian strings: an optional
sign followed by letters from IXYZ, e.g. "-YY" or "IX".
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_SINGLE = {
    (0, 0): np.eye(2, dtype=complex),
    (1, 0): np.array([[0, 1], [1, 0]], dtype=complex),
    (0, 1): np.array([[1, 0], [0, -1]], dtype=complex),
    (1, 1): np.array([[0, -1j], [1j, 0]], dtype=complex),
}
_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_FROM_LETTER = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}

MATRIX_QUBIT_LIMIT = 12


@dataclass(frozen=True)
class PauliString:
    n_qubits: int
    x_bits: int
    z_bits: int
    phase: int = 0

    def __post_init__(self) -> None:
        mask = (1 << self.n_qubits) - 1
        if self.x_bits & ~mask or self.z_bits & ~mask:
            raise ValueError("x/z bits outside the qubit range")
        object.__setattr__(self, "phase", self.phase % 4)

    @property
    def is_hermitian(self) -> bool:
        return self.phase in (0, 2)

    @property
    def is_identity_up_to_phase(self) -> bool:
        return self.x_bits == 0 and self.z_bits == 0

    @property
    def sign(self) -> int:
        """+1 or -1 for Hermitian strings."""
        if not self.is_hermitian:
            raise ValueError("string has an imaginary phase")
        return 1 if self.phase == 0 else -1

    def letter(self, qubit: int) -> str:
        return _LETTERS[(self.x_bits >> qubit) & 1, (self.z_bits >> qubit) & 1]


def identity(n_qubits: int) -> PauliString:
    return PauliString(n_qubits, 0, 0, 0)


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Group product p * q with exact Z4 phase tracking."""
    if p.n_qubits != q.n_qubits:
        raise ValueError("qubit count mismatch")
    # Work in X^x Z^z normal form: letter form differs by i^{#Y}.
    phase = p.phase + (p.x_bits & p.z_bits).bit_count()
    phase += q.phase + (q.x_bits & q.z_bits).bit_count()
    phase += 2 * (p.z_bits & q.x_bits).bit_count()
    x = p.x_bits ^ q.x_bits
    z = p.z_bits ^ q.z_bits
    phase -= (x & z).bit_count()
    return PauliString(p.n_qubits, x, z, phase % 4)


def multiply_all(factors: list[PauliString], n_qubits: int | None = None) -> PauliString:
    if not factors:
        if n_qubits is None:
            raise ValueError("empty product needs an explicit qubit count")
        return identity(n_qubits)
    acc = factors[0]
    for f in factors[1:]:
        acc = multiply(acc, f)
    return acc


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff the symplectic form <p.x, q.z> + <p.z, q.x> vanishes."""
    if p.n_qubits != q.n_qubits:
        raise ValueError("qubit count mismatch")
    return (((p.x_bits & q.z_bits).bit_count() + (p.z_bits & q.x_bits).bit_count()) & 1) == 0


def transpose(p: PauliString) -> PauliString:
    """Operator transpose: every Y letter flips sign."""
    flips = (p.x_bits & p.z_bits).bit_count()
    return PauliString(p.n_qubits, p.x_bits, p.z_bits, p.phase + 2 * flips)


def to_matrix(p: PauliString) -> np.ndarray:
    """Dense 2^n x 2^n matrix; guarded to keep test oracles small."""
    if p.n_qubits > MATRIX_QUBIT_LIMIT:
        raise ValueError(f"refusing to build a dense matrix on {p.n_qubits} qubits")
    m = np.array([[1]], dtype=complex)
    for qubit in range(p.n_qubits):
        m = np.kron(m, _SINGLE[(p.x_bits >> qubit) & 1, (p.z_bits >> qubit) & 1])
    return (1j ** p.phase) * m


def parse_pauli(text: str) -> PauliString:
    """Parse the text grammar: optional sign, then one letter per qubit."""
    s = text.strip()
    phase = 0
    if s.startswith("+"):
        s = s[1:]
    elif s.startswith("-"):
        phase = 2
        s = s[1:]
    if not s:
        raise ValueError(f"no Pauli letters in {text!r}")
    x = z = 0
    for pos, ch in enumerate(s):
        if ch not in _FROM_LETTER:
            raise ValueError(f"illegal character {ch!r} in {text!r}")
        xb, zb = _FROM_LETTER[ch]
        x |= xb << pos
        z |= zb << pos
    return PauliString(len(s), x, z, phase)


def format_pauli(p: PauliString) -> str:
    """Canonical text form; rejects non-Hermitian phases."""
    if not p.is_hermitian:
        raise ValueError("phase +/- i is not representable in text form")
    letters = "".join(p.letter(q) for q in range(p.n_qubits))
    return ("-" if p.phase == 2 else "") + letters

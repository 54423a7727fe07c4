"""Binary constraint systems and their solvers.

A BCS is a list of named +/-1 variables and parity constraints: each
constraint requires the product of a subset of variables to equal a fixed
sign.  Two solvers live here.  ``classical_solve`` looks for a scalar
assignment by GF(2) elimination.  ``pauli_solve`` decides whether signed
Pauli strings can satisfy the system when scalars cannot, and returns either
an explicit assignment or a replayable contradiction certificate.

The operator solver works in three steps:

1. eliminate the variables over GF(2), expressing every dependent variable
   as a fresh sign unknown times an ascending product of free variables;
2. substitute those expressions back into the constraints and into the
   commutation requirements of co-occurring pairs, bubbling products into
   ascending order while recording, for every swap of distinct free
   variables k < l, a commutator unknown for the pair (k, l); equal
   neighbours cancel because every variable squares to the identity;
3. solve the resulting GF(2) "sign system" over the sign and commutator
   unknowns.  A solution lifts to Pauli strings with one qubit per
   anticommuting pair; an inconsistency cites, through row provenance, the
   constraints and commutation facts whose formal product reduces to -1.

Constraints are canonicalized at parse time: variable lists are sorted
ascending and repeats are cancelled in pairs.  The set of distinct variables
seen before cancellation is kept as the constraint's support, because joint
measurability (hence commutation) is required of everything that appeared
together, including variables that cancelled.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import gf2, pauli
from .gf2 import Gf2System, Inconsistency
from .pauli import PauliString


@dataclass(frozen=True)
class Constraint:
    var_indices: tuple[int, ...]
    rhs: int
    support: frozenset[int] = field(default=frozenset())

    def __post_init__(self) -> None:
        if self.rhs not in (1, -1):
            raise ValueError("constraint rhs must be +1 or -1")
        if not self.support:
            object.__setattr__(self, "support", frozenset(self.var_indices))


@dataclass
class Bcs:
    variables: list[str]
    constraints: list[Constraint]

    @property
    def n_vars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        return self.variables.index(name)


def make_constraint(var_indices: list[int], rhs: int) -> Constraint:
    """Canonicalize: ascending order, repeats cancelled mod 2."""
    counts: dict[int, int] = {}
    for v in var_indices:
        counts[v] = counts.get(v, 0) + 1
    kept = tuple(sorted(v for v, c in counts.items() if c % 2))
    return Constraint(kept, rhs, frozenset(counts))


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def parse_bcs(text: str) -> Bcs:
    """Parse the BCS text format.

    Lines: ``#`` comments, an optional ``vars:`` header naming the variables,
    then one constraint per line, ``name ... name = 1`` or ``= -1``.  Without
    a header, variables are registered in order of first appearance.
    """
    names: list[str] = []
    index: dict[str, int] = {}
    declared = False
    constraints: list[Constraint] = []

    def lookup(tok: str) -> int:
        if tok in index:
            return index[tok]
        if declared:
            raise ValueError(f"unknown variable name {tok!r}")
        index[tok] = len(names)
        names.append(tok)
        return index[tok]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vars:"):
            if declared or constraints:
                raise ValueError(f"line {lineno}: vars: header must come first")
            for tok in line[len("vars:"):].split():
                if tok in index:
                    raise ValueError(f"line {lineno}: duplicate variable {tok!r}")
                index[tok] = len(names)
                names.append(tok)
            declared = True
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: missing '='")
        lhs, _, rhs_text = line.partition("=")
        rhs_text = rhs_text.strip()
        if rhs_text == "1":
            rhs = 1
        elif rhs_text == "-1":
            rhs = -1
        else:
            raise ValueError(f"line {lineno}: malformed rhs {rhs_text!r}")
        toks = lhs.split()
        constraints.append(make_constraint([lookup(t) for t in toks], rhs))

    if not names and not constraints:
        raise ValueError("empty BCS file")
    return Bcs(names, constraints)


def serialize_bcs(bcs: Bcs) -> str:
    lines = ["vars: " + " ".join(bcs.variables)]
    for c in bcs.constraints:
        lhs = " ".join(bcs.variables[v] for v in c.var_indices)
        lines.append(f"{lhs} = {c.rhs}".lstrip())
    return "\n".join(lines) + "\n"


def mermin_peres() -> Bcs:
    """The 3x3 magic-square system: nine variables, six parity constraints."""
    return parse_bcs(
        "vars: v1 v2 v3 v4 v5 v6 v7 v8 v9\n"
        "v1 v2 v3 = 1\n"
        "v4 v5 v6 = 1\n"
        "v7 v8 v9 = 1\n"
        "v1 v4 v7 = 1\n"
        "v2 v5 v8 = 1\n"
        "v3 v6 v9 = -1\n"
    )


def chsh() -> Bcs:
    """Two variables constrained to agree and to disagree."""
    return parse_bcs("vars: v1 v2\nv1 v2 = 1\nv1 v2 = -1\n")


# ---------------------------------------------------------------------------
# Classical solving
# ---------------------------------------------------------------------------

def incidence_system(bcs: Bcs) -> Gf2System:
    rows = [sum(1 << v for v in c.var_indices) for c in bcs.constraints]
    rhs = [0 if c.rhs == 1 else 1 for c in bcs.constraints]
    matrix = gf2.Gf2Matrix(len(rows), bcs.n_vars, rows)
    return Gf2System(matrix, rhs)


def classical_solve(bcs: Bcs) -> list[int] | None:
    """Return a satisfying +/-1 assignment, or None if the GF(2) system is
    inconsistent.  Free variables default to +1."""
    out = gf2.solve(incidence_system(bcs))
    if isinstance(out, Inconsistency):
        return None
    return [1 - 2 * b for b in out.assignment]


def check_classical_assignment(bcs: Bcs, signs: list[int]) -> bool:
    for c in bcs.constraints:
        prod = 1
        for v in c.var_indices:
            prod *= signs[v]
        if prod != c.rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# Free-variable elimination
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FreeVarExpression:
    var: int
    sign_unknown: int | None
    free_support: tuple[int, ...]


@dataclass
class Elimination:
    free: list[int]
    dependent: list[int]
    expressions: list[FreeVarExpression]


def eliminate_free_vars(bcs: Bcs) -> Elimination:
    """Express each variable over a free set by GF(2) elimination.

    Pivoting is lowest-index-first, so the free set is the lexicographically
    latest choice.  A dependent variable's expression is the ascending list
    of free variables in its reduced row; each gets a sign unknown.  Free
    variables stand for themselves.
    """
    reduced = gf2.row_reduce(incidence_system(bcs))
    pivot_cols = reduced.pivot_cols
    pivot_set = set(pivot_cols)
    free = [v for v in range(bcs.n_vars) if v not in pivot_set]
    expressions: list[FreeVarExpression] = [
        FreeVarExpression(v, None, (v,)) for v in range(bcs.n_vars)
    ]
    for row_i, col in enumerate(pivot_cols):
        row = reduced.system.matrix.bits[row_i]
        support = tuple(v for v in free if (row >> v) & 1)
        expressions[col] = FreeVarExpression(col, col, support)
    return Elimination(free, sorted(pivot_cols), expressions)


# ---------------------------------------------------------------------------
# Sign system
# ---------------------------------------------------------------------------

SignUnknown = tuple  # ("sign", i) or ("comm", k, l) with k < l
RowTag = tuple  # ("constraint", j) or ("commutation", i, j) with i < j


@dataclass
class SignSystem:
    unknowns: list[SignUnknown]
    equations: Gf2System
    tags: list[RowTag]


def _inversion_parity(blocks: list[tuple[int, ...]], n_vars: int) -> dict[int, int]:
    """Swap parity of sorting the concatenation of ascending blocks.

    Returns {smaller var: bitmask of larger partners} for the pairs swapped
    an odd number of times; pairs of equal variables never swap.
    """
    full = (1 << n_vars) - 1
    partners: dict[int, int] = {}
    prefix = 0
    for block in blocks:
        mask = 0
        for b in block:
            hit = prefix & (full ^ ((1 << (b + 1)) - 1))
            if hit:
                partners[b] = partners.get(b, 0) ^ hit
            mask |= 1 << b
        prefix ^= mask
    return {k: v for k, v in partners.items() if v}


def _parity_pairs(parity: dict[int, int]) -> list[tuple[int, int]]:
    pairs = []
    for k in sorted(parity):
        mask = parity[k]
        while mask:
            low = mask & -mask
            pairs.append((k, low.bit_length() - 1))
            mask ^= low
    return pairs


def co_occurrence_pairs(bcs: Bcs) -> list[tuple[int, int]]:
    """Distinct unordered pairs appearing together in some constraint."""
    pairs: set[tuple[int, int]] = set()
    for c in bcs.constraints:
        members = sorted(c.support)
        for a_i in range(len(members)):
            for b_i in range(a_i + 1, len(members)):
                pairs.add((members[a_i], members[b_i]))
    return sorted(pairs)


def _constraint_row(bcs: Bcs, elim: Elimination, j: int):
    """Substituted form of constraint j: sign unknowns, pair parity, rhs bit."""
    c = bcs.constraints[j]
    blocks = [elim.expressions[v].free_support for v in c.var_indices]
    sign_unknowns = [v for v in c.var_indices if elim.expressions[v].sign_unknown is not None]
    cancel = 0
    for block in blocks:
        for b in block:
            cancel ^= 1 << b
    assert cancel == 0, f"free supports failed to cancel in constraint {j}"
    parity = _inversion_parity(blocks, bcs.n_vars)
    return sign_unknowns, parity, 0 if c.rhs == 1 else 1


def _commutation_row(bcs: Bcs, elim: Elimination, i: int, j: int):
    """Pair parity of the formal expansion A_i A_j A_i A_j = I."""
    si = elim.expressions[i].free_support
    sj = elim.expressions[j].free_support
    return _inversion_parity([si, sj, si, sj], bcs.n_vars)


def build_sign_system(bcs: Bcs, elim: Elimination) -> SignSystem:
    """Assemble the GF(2) system over sign and commutator unknowns.

    One row per constraint (substituted expressions, bubble-sorted), then one
    row per co-occurring variable pair (commutation requirement).  Row tags
    record the origin of each equation for certificate extraction.
    """
    constraint_rows = [_constraint_row(bcs, elim, j) for j in range(len(bcs.constraints))]
    pair_list = co_occurrence_pairs(bcs)
    commutation_rows = [_commutation_row(bcs, elim, i, j) for i, j in pair_list]

    comm_pairs: set[tuple[int, int]] = set()
    for _, parity, _ in constraint_rows:
        comm_pairs.update(_parity_pairs(parity))
    for parity in commutation_rows:
        comm_pairs.update(_parity_pairs(parity))

    unknowns: list[SignUnknown] = [("sign", v) for v in elim.dependent]
    unknowns.extend(("comm", k, l) for k, l in sorted(comm_pairs))
    col: dict[SignUnknown, int] = {u: i for i, u in enumerate(unknowns)}

    bits: list[int] = []
    rhs: list[int] = []
    tags: list[RowTag] = []
    for j, (sign_unknowns, parity, rhs_bit) in enumerate(constraint_rows):
        row = 0
        for v in sign_unknowns:
            row ^= 1 << col[("sign", v)]
        for k, l in _parity_pairs(parity):
            row ^= 1 << col[("comm", k, l)]
        bits.append(row)
        rhs.append(rhs_bit)
        tags.append(("constraint", j))
    for (i, j), parity in zip(pair_list, commutation_rows):
        row = 0
        for k, l in _parity_pairs(parity):
            row ^= 1 << col[("comm", k, l)]
        bits.append(row)
        rhs.append(0)
        tags.append(("commutation", i, j))

    matrix = gf2.Gf2Matrix(len(bits), len(unknowns), bits)
    return SignSystem(unknowns, Gf2System(matrix, rhs), tags)


# ---------------------------------------------------------------------------
# Pauli solving
# ---------------------------------------------------------------------------

@dataclass
class PauliSolution:
    qubits: int
    strings: list[PauliString]

    def assignment(self, bcs: Bcs) -> dict[str, PauliString]:
        return dict(zip(bcs.variables, self.strings))


@dataclass
class Certificate:
    constraint_rows: tuple[int, ...]
    commutation_rows: tuple[tuple[int, int], ...]
    derived_relation: tuple[int, ...]


@dataclass
class PauliVerifyReport:
    hermitian_ok: bool
    commutation_ok: bool
    products_ok: bool
    failing_variable: int | None = None
    failing_constraint: int | None = None

    @property
    def ok(self) -> bool:
        return self.hermitian_ok and self.commutation_ok and self.products_ok


def pauli_solve(bcs: Bcs) -> PauliSolution | Certificate:
    """Decide Pauli-string solvability; total on every well-formed BCS.

    On success, anticommuting free pairs each get a qubit (sigma_x on the
    smaller variable, sigma_z on the larger), remaining free variables are
    identities, and dependent variables are signed ordered products.  Free
    sign unknowns default to +1 and unconstrained commutators to "commute",
    which keeps the qubit count minimal.  On failure, the provenance of the
    contradicting sign-system row is split back into constraint and
    commutation citations.
    """
    elim = eliminate_free_vars(bcs)
    system = build_sign_system(bcs, elim)
    out = gf2.solve(system.equations)

    if isinstance(out, Inconsistency):
        constraint_rows: list[int] = []
        commutation_rows: list[tuple[int, int]] = []
        for row in sorted(out.rows):
            tag = system.tags[row]
            if tag[0] == "constraint":
                constraint_rows.append(tag[1])
            else:
                commutation_rows.append((tag[1], tag[2]))
        relation: list[int] = []
        for j in constraint_rows:
            relation.extend(bcs.constraints[j].var_indices)
        return Certificate(tuple(constraint_rows), tuple(commutation_rows), tuple(relation))

    values = {u: out.assignment[i] for i, u in enumerate(system.unknowns)}
    anti_pairs = [u[1:] for u in system.unknowns if u[0] == "comm" and values[u]]
    n_qubits = len(anti_pairs)

    strings: dict[int, PauliString] = {}
    for v in elim.free:
        x = z = 0
        for q, (k, l) in enumerate(anti_pairs):
            if v == k:
                x |= 1 << q
            elif v == l:
                z |= 1 << q
        strings[v] = PauliString(n_qubits, x, z, 0)
    for v in elim.dependent:
        expr = elim.expressions[v]
        prod = pauli.multiply_all([strings[f] for f in expr.free_support], n_qubits)
        sign_phase = 2 if values.get(("sign", v), 0) else 0
        strings[v] = PauliString(n_qubits, prod.x_bits, prod.z_bits, prod.phase + sign_phase)

    solution = PauliSolution(n_qubits, [strings[v] for v in range(bcs.n_vars)])
    report = verify_pauli_solution(bcs, solution)
    assert report.ok, f"internal solver error: constructed solution failed {report}"
    return solution


def verify_pauli_solution(bcs: Bcs, solution: PauliSolution) -> PauliVerifyReport:
    """Check Hermiticity, within-constraint commutation, and signed products."""
    report = PauliVerifyReport(True, True, True)
    for v, s in enumerate(solution.strings):
        sq = pauli.multiply(s, s)
        if not s.is_hermitian or not (sq.is_identity_up_to_phase and sq.phase == 0):
            report.hermitian_ok = False
            if report.failing_variable is None:
                report.failing_variable = v
    for j, c in enumerate(bcs.constraints):
        members = sorted(c.support)
        pairwise = all(
            pauli.commutes(solution.strings[a], solution.strings[b])
            for idx, a in enumerate(members)
            for b in members[idx + 1:]
        )
        prod = pauli.multiply_all(
            [solution.strings[v] for v in c.var_indices], solution.qubits
        )
        target_phase = 0 if c.rhs == 1 else 2
        product_ok = prod.is_identity_up_to_phase and prod.phase == target_phase
        if not pairwise:
            report.commutation_ok = False
        if not product_ok:
            report.products_ok = False
        if (not pairwise or not product_ok) and report.failing_constraint is None:
            report.failing_constraint = j
    return report


def verify_certificate(bcs: Bcs, cert: Certificate) -> bool:
    """Replay a contradiction certificate against the BCS.

    The formal product of the cited constraints must cancel every variable,
    its swap bookkeeping must be exactly discharged by the cited commutation
    facts, and the accumulated right-hand side must be -1.  Cited commutation
    pairs must actually co-occur somewhere in the system, which is what makes
    them axioms rather than assumptions.
    """
    m = len(bcs.constraints)
    for j in cert.constraint_rows:
        if not 0 <= j < m:
            raise IndexError(f"certificate cites constraint {j} of {m}")
    for i, j in cert.commutation_rows:
        if not (0 <= i < bcs.n_vars and 0 <= j < bcs.n_vars and i < j):
            raise IndexError(f"certificate cites bad commutation pair {(i, j)}")

    legal_pairs = set(co_occurrence_pairs(bcs))
    if any(p not in legal_pairs for p in cert.commutation_rows):
        return False

    # Every variable must cancel in the concatenated product.
    var_parity = 0
    for j in cert.constraint_rows:
        for v in bcs.constraints[j].var_indices:
            var_parity ^= 1 << v
    if var_parity:
        return False

    # The accumulated sign must be the contradiction I = -I.
    rhs_parity = 0
    for j in cert.constraint_rows:
        rhs_parity ^= 0 if bcs.constraints[j].rhs == 1 else 1
    if rhs_parity != 1:
        return False

    # Swap bookkeeping of the whole product, at the free-variable level,
    # must match the XOR of the cited commutation facts.
    elim = eliminate_free_vars(bcs)
    blocks: list[tuple[int, ...]] = []
    for j in cert.constraint_rows:
        blocks.extend(elim.expressions[v].free_support for v in bcs.constraints[j].var_indices)
    accumulated = _inversion_parity(blocks, bcs.n_vars)

    cited = {}
    for i, j in cert.commutation_rows:
        for k, mask in _commutation_row(bcs, elim, i, j).items():
            cited[k] = cited.get(k, 0) ^ mask
    cited = {k: v for k, v in cited.items() if v}
    return cited == accumulated


def serialize_solution(bcs: Bcs, solution: PauliSolution) -> str:
    """One ``name = pauli`` line per variable.

    Zero-qubit (scalar) solutions are padded with an identity qubit so the
    text stays inside the Pauli grammar.
    """
    strings = solution.strings
    if solution.qubits == 0:
        strings = [PauliString(1, 0, 0, s.phase) for s in strings]
    lines = [
        f"{name} = {pauli.format_pauli(s)}" for name, s in zip(bcs.variables, strings)
    ]
    return "\n".join(lines) + "\n"

"""From formulas to labeled sample sets whose consistency encodes SAT.

The chain: a formula becomes a closed weighted digraph (formula module),
the graph becomes an affine family of matrices M(a) = M0 + sum a_i M_i
with det M(a) = F(a), and the family becomes samples over n = size
qubits such that a CNOT circuit (theta, q) is consistent with every
sample exactly when theta = M(a) for a satisfying assignment a and
q = 0.  Pinning a single image theta x into a one- or zero-dimensional
affine set costs n or n+1 samples; pinning a whole variable's columns
with a shared branch bit costs kn + k - 1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

from .formula import Formula, WeightedDigraph, formula_to_graph, num_variables
from .gf2 import BitMatrix, _insert, complete_to_basis, deterministic_completion, dot
from .pauli import PauliOperator, z_power
from .samples import Sample, SampleSet
from .stabilizer import StabilizerState


class NonSingularityInstance:
    """Affine matrix family M(a) = M0 + sum_i a_i M_i over F_2."""

    __slots__ = ("size", "m0", "ms")

    def __init__(self, size: int, m0: BitMatrix, ms: Sequence[BitMatrix]):
        if m0.n_rows != size or m0.n_cols != size:
            raise ValueError("m0 must be size x size")
        for m in ms:
            if m.n_rows != size or m.n_cols != size:
                raise ValueError("every m_i must be size x size")
        self.size = size
        self.m0 = m0
        self.ms = list(ms)

    @property
    def num_vars(self) -> int:
        return len(self.ms)

    def matrix_at(self, assignment: int) -> BitMatrix:
        """M(a) with a_i read from bit i-1 of the assignment."""
        acc = self.m0
        for i, m in enumerate(self.ms):
            if (assignment >> i) & 1:
                acc = acc ^ m
        return acc

    def determinant_at(self, assignment: int) -> int:
        return self.matrix_at(assignment).determinant()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NonSingularityInstance)
            and self.size == other.size
            and self.m0 == other.m0
            and self.ms == other.ms
        )

    def __repr__(self) -> str:
        return "NonSingularityInstance(size=%d, vars=%d)" % (self.size, self.num_vars)


def graph_to_instance(
    g: WeightedDigraph, num_vars: Optional[int] = None
) -> NonSingularityInstance:
    """Adjacency family of a closed graph: row = source, column = destination."""
    if not g.closed:
        raise ValueError("graph must be closed (determinant contract needs the closure)")
    k = g.num_vars if num_vars is None else num_vars
    if k < g.num_vars:
        raise ValueError("num_vars below the highest edge weight")
    size = g.num_vertices
    m0 = BitMatrix.zeros(size, size)
    ms = [BitMatrix.zeros(size, size) for _ in range(k)]
    for (u, v), w in g.edges.items():
        target = m0 if w == 0 else ms[w - 1]
        target.rows[u] |= 1 << v
    return NonSingularityInstance(size, m0, ms)


def validate_simplified(inst: NonSingularityInstance) -> bool:
    """Shape check for the sample encoding.

    Every column touched by a variable matrix must have nonzero and
    distinct columns in M0 and that M_i, and no column may be touched by
    two different variables.
    """
    seen = set()
    for m in inst.ms:
        cols = [c for c in range(inst.size) if m.column(c) != 0]
        for c in cols:
            if c in seen:
                return False
            seen.add(c)
            v = inst.m0.column(c)
            if v == 0 or v == m.column(c):
                return False
    return True


def _pin_samples(
    n: int,
    x: int,
    sigma: int,
    offset: int,
    span: Sequence[int],
    rng,
) -> List[Sample]:
    """Samples forcing theta x into offset + span(span) and q.x = sigma.

    States are full-Z stabilizer states whose generator supports form a
    basis starting with the pin data; sign flips on individual
    generators read off coordinates of theta x in that basis.  When the
    offset lies in the span the pin is a subspace and the final label-0
    sample is dropped.  Yields n - dim + 1 samples either way.  With
    rng=None the basis completion is deterministic.
    """
    table: dict = {}
    span = list(span)
    for v in span:
        if not _insert(table, v):
            raise ValueError("span vectors are dependent")
    reduced = offset
    while reduced:
        p = reduced.bit_length() - 1
        if p not in table:
            break
        reduced ^= table[p]
    if reduced == 0:
        head = span
        final = False
    else:
        head = [reduced] + span
        final = True
    if rng is None:
        basis = deterministic_completion(head, n)
    else:
        basis = complete_to_basis(head, n, rng)
    measurement = z_power(n, x, sign=-1 if sigma else 1)
    out = [
        Sample(
            StabilizerState.from_z_generators(n, basis, signs=0),
            measurement,
            Fraction(1),
        )
    ]
    for j in range(len(head), n):
        out.append(
            Sample(
                StabilizerState.from_z_generators(n, basis, signs=1 << j),
                measurement,
                Fraction(1),
            )
        )
    if final:
        out.append(
            Sample(
                StabilizerState.from_z_generators(n, basis, signs=1),
                measurement,
                Fraction(0),
            )
        )
    return out


def constrain_pauli_samples(
    n: int,
    target: PauliOperator,
    v: int,
    w: Optional[int],
    rng,
) -> List[Sample]:
    """Samples pinning C† target C.

    target must be a signed Z-type Pauli (-1)^sigma Z^x.  With w=None the
    pin is exact (theta x = v, q.x = sigma; n+1 samples); with w the pin
    allows the two-point set {v, v+w} (n samples).
    """
    if target.x != 0 or target.z == 0:
        raise ValueError("target must be a nonidentity Z-type Pauli")
    if v == 0 or v >> n:
        raise ValueError("v must be a nonzero vector in F_2^%d" % n)
    if w is not None:
        if w == 0 or w >> n:
            raise ValueError("w must be a nonzero vector in F_2^%d" % n)
        if w == v:
            raise ValueError("v and w must be independent")
    span = [] if w is None else [w]
    return _pin_samples(n, target.z, target.sign_bit, v, span, rng)


def constrain_submatrix_samples(
    n: int,
    columns: Sequence[int],
    v_cols: BitMatrix,
    w_cols: BitMatrix,
    rng,
) -> List[Sample]:
    """Samples forcing theta's selected columns to v_j + a w_j with one shared a.

    columns lists k distinct column indices; v_cols and w_cols are n x k
    with column j holding v_j and w_j.  Each column gets a two-point pin
    (n samples, also forcing q on that column to 0) and consecutive
    columns are linked by one computational-basis sample that equates
    their branch bits, for kn + k - 1 samples total.
    """
    columns = list(columns)
    k = len(columns)
    if k == 0:
        raise ValueError("need at least one column")
    if len(set(columns)) != k or any(c < 0 or c >= n for c in columns):
        raise ValueError("columns must be distinct indices below %d" % n)
    if v_cols.n_rows != n or w_cols.n_rows != n or v_cols.n_cols != k or w_cols.n_cols != k:
        raise ValueError("v_cols and w_cols must be n x k")
    out: List[Sample] = []
    for j, c in enumerate(columns):
        v = v_cols.column(j)
        w = w_cols.column(j)
        out.extend(constrain_pauli_samples(n, z_power(n, 1 << c), v, w, rng))
    for j in range(1, k):
        w_prev = w_cols.column(j - 1)
        w_cur = w_cols.column(j)
        sol = BitMatrix([w_prev, w_cur], n).solve_affine(0b11)
        t = sol.offset  # lex-minimal state with t.w_prev = t.w_cur = 1
        parity = dot(t, v_cols.column(j - 1) ^ v_cols.column(j))
        out.append(
            Sample(
                StabilizerState.computational_basis(n, t),
                z_power(n, (1 << columns[j - 1]) | (1 << columns[j])),
                Fraction(1) if parity == 0 else Fraction(0),
            )
        )
    return out


def instance_to_samples(inst: NonSingularityInstance, rng) -> SampleSet:
    """Sample set consistent exactly with {theta = M(a) invertible, q = 0}."""
    if not validate_simplified(inst):
        raise ValueError("instance does not satisfy the simplified shape")
    n = inst.size
    samples: List[Sample] = []
    touched = set()
    for m in inst.ms:
        cols = [c for c in range(n) if m.column(c) != 0]
        if not cols:
            continue
        v_cols = BitMatrix.from_columns([inst.m0.column(c) for c in cols], n)
        w_cols = BitMatrix.from_columns([m.column(c) for c in cols], n)
        samples.extend(constrain_submatrix_samples(n, cols, v_cols, w_cols, rng))
        touched.update(cols)
    for c in range(n):
        if c in touched:
            continue
        v = inst.m0.column(c)
        if v != 0:
            samples.extend(constrain_pauli_samples(n, z_power(n, 1 << c), v, None, rng))
        else:
            # a column that is zero in every member: no invertible M(a) exists,
            # so emit a directly contradictory pair
            state = StabilizerState.zero_state(n)
            probe = z_power(n, 1)
            samples.append(Sample(state, probe, Fraction(1)))
            samples.append(Sample(state, probe, Fraction(0)))
    assert len(samples) <= n * (n + 1)
    return SampleSet(n, samples)


def reduce_formula_to_samples(f: Formula, rng, num_vars: Optional[int] = None):
    """Full pipeline for a formula: returns (SampleSet, NonSingularityInstance)."""
    g = formula_to_graph(f)
    inst = graph_to_instance(g, num_vars)
    return instance_to_samples(inst, rng), inst


def reduce_sat_to_samples(clauses, rng):
    """Full pipeline for a CNF given as clauses of signed 1-based literals."""
    from .formula import arithmetize_cnf

    f = arithmetize_cnf(clauses)
    highest = max((abs(l) for clause in clauses for l in clause), default=0)
    return reduce_formula_to_samples(f, rng, num_vars=max(highest, num_variables(f)))

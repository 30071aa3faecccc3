"""Learners for the consistency problem and its tractable special cases.

Three layers live here.  `sample_complexity` evaluates the generic
sample-size bound for PAC learning shallow circuit classes, with every
big-O constant set to 1.  `pac_learner` is the coupon-collector protocol:
draw O(s log s) samples, deduplicate, and hand the observed set to a
consistency search.  The remaining functions are the efficient proper
learners for the two special cases where consistency is easy: a single
repeated Z-type measurement (solved by intersecting affine constraints),
and learning with respect to zero-error-indistinguishable hypotheses,
where a uniformly random circuit already works.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .cnot import CnotCircuit
from .gf2 import AffineSubspace, BitMatrix, complete_to_basis
from .pauli import PauliOperator
from .samples import Sample, SampleSet
from .search import check_consistent
from .stabilizer import StabilizerState
from .tableau import CliffordTableau, Gate


class EmptyIntersectionError(ValueError):
    """No hypothesis satisfies every constraint in the batch."""


class LearningParameters:
    """Problem-size knobs for the sample-complexity bound.

    depth and size describe the hypothesis class (circuit depth bound and
    gate-set size); d is the qudit dimension; (alpha, beta) is the error
    gap separating acceptable from unacceptable hypotheses; epsilon and
    delta are the usual PAC accuracy and confidence parameters.
    """

    def __init__(
        self,
        epsilon: float,
        delta: float,
        alpha: float,
        beta: float,
        d: int,
        depth: int,
        size: int,
        s: Optional[int] = None,
    ):
        if not 0.0 < epsilon < 1.0:
            raise ValueError("epsilon must lie in (0, 1)")
        if not 0.0 < delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")
        if not 0.0 <= alpha < beta <= 1.0:
            raise ValueError("need 0 <= alpha < beta <= 1")
        if d < 2:
            raise ValueError("qudit dimension d must be at least 2")
        if depth < 1:
            raise ValueError("depth must be at least 1")
        if size < 2:
            raise ValueError("gate-set size must be at least 2")
        if s is not None and s < 1:
            raise ValueError("sample-support size s must be positive")
        self.epsilon = float(epsilon)
        self.delta = float(delta)
        self.alpha = float(alpha)
        self.beta = float(beta)
        self.d = d
        self.depth = depth
        self.size = size
        self.s = s


def cnot_defaults(
    n: int, epsilon: float, delta: float, depth_constant: int = 1
) -> LearningParameters:
    """Parameters for the n-qubit CNOT class.

    Qubits (d = 2), depth depth_constant * ceil(log2 n), gate-set size
    n^2 (a CNOT is an ordered qubit pair), and the (0, 1/2) error gap:
    a wrong CNOT hypothesis is detected with probability at least 1/2
    on a distinguishing sample.
    """
    if n < 2:
        raise ValueError("need at least 2 qubits")
    if depth_constant < 1:
        raise ValueError("depth_constant must be at least 1")
    return LearningParameters(
        epsilon=epsilon,
        delta=delta,
        alpha=0.0,
        beta=0.5,
        d=2,
        depth=depth_constant * math.ceil(math.log2(n)),
        size=n * n,
    )


def sample_complexity(p: LearningParameters) -> int:
    """Training-set size sufficient for proper PAC learning the class.

    Evaluates
        ceil((1/eps) * (D d^4 G^2 ln(D) ln^2(D d^4 G^2 ln(G) / ((b-a) eps))
                        + ln(1/delta)))
    with D = depth and G = size.  The bound is asymptotic; every hidden
    constant is set to 1 here, so treat the output as a scale, not a
    guarantee.
    """
    a = p.depth * p.d**4 * p.size**2
    inner = a * math.log(p.size) / ((p.beta - p.alpha) * p.epsilon)
    m = a * math.log(p.depth) * math.log(inner) ** 2 + math.log(1.0 / p.delta)
    return math.ceil(m / p.epsilon)


@dataclass
class PacLearnResult:
    found: bool
    circuit: Optional[CnotCircuit]
    draws: int
    distinct: int
    accepted: Optional[bool]


def _sample_key(s: Sample) -> tuple:
    gens = tuple(
        (g.x, g.z, g.sign_bit) for g in s.state.group.generators
    )
    m = s.measurement
    return (gens, m.x, m.z, m.sign_bit, s.label)


def pac_learner(
    draw: Callable,
    s: int,
    search: Callable,
    rng,
    draw_constant: float = 3.0,
    full_set: Optional[SampleSet] = None,
) -> PacLearnResult:
    """Coupon-collector protocol: oversample, dedupe, search.

    draw(rng) must yield one labeled sample from the hidden distribution;
    s bounds the support size.  Draws ceil(draw_constant * s * ln s)
    samples (at least one), deduplicates them preserving draw order, and
    runs the consistency search on the observed set.  When full_set is
    given, the decision protocol's acceptance bit is also computed:
    accept iff a hypothesis was found and it is consistent with the full
    hidden set.
    """
    if s < 1:
        raise ValueError("support bound s must be positive")
    count = max(1, math.ceil(draw_constant * s * math.log(s)))
    seen = set()
    observed: List[Sample] = []
    n = None
    for _ in range(count):
        sample = draw(rng)
        if n is None:
            n = sample.state.group.n
        key = _sample_key(sample)
        if key not in seen:
            seen.add(key)
            observed.append(sample)
    result = search(SampleSet(n, observed))
    accepted = None
    if full_set is not None:
        accepted = bool(result.found) and check_consistent(result.circuit, full_set)
    return PacLearnResult(
        found=result.found,
        circuit=result.circuit,
        draws=count,
        distinct=len(observed),
        accepted=accepted,
    )


class SingleMeasurementBatch:
    """Labeled states sharing one signed Z-type measurement.

    For CNOT hypotheses the conjugated measurement stays Z-type, so on
    the states of interest every label is 0 or 1, never 1/2.
    """

    def __init__(
        self,
        measurement: PauliOperator,
        samples: Sequence[Tuple[StabilizerState, int]],
    ):
        if measurement.x != 0 or measurement.z == 0:
            raise ValueError("measurement must be a nonidentity Z-type Pauli")
        self.n = measurement.n
        for state, label in samples:
            if state.group.n != self.n:
                raise ValueError("state dimension mismatch")
            if label not in (0, 1):
                raise ValueError("labels must be 0 or 1")
        self.measurement = measurement
        self.samples = list(samples)


def constraint_subspace(
    state: StabilizerState, measurement: PauliOperator, label: int
) -> AffineSubspace:
    """Affine constraint on (u, q.x) imposed by one labeled state.

    The hypothesis maps the measurement (-1)^sigma Z^x to
    (-1)^(sigma + q.x) Z^u.  A binary label forces that image into the
    Z-type part of the state's group (label 1) or its negated coset
    (label 0).  Writing points of F_2^(n+1) as u | (q.x << n), the
    admissible set is an affine subspace: the span of the group's pure-Z
    elements with their sign bits, shifted by sigma + (1 - label).
    """
    n = state.group.n
    gens = state.group.generators
    kernel = BitMatrix.from_columns([g.x for g in gens], n).null_space()
    vectors = []
    for mask in kernel:
        g = state.group.element(mask)
        vectors.append(g.z | (g.sign_bit << n))
    c = measurement.sign_bit ^ (0 if label else 1)
    return AffineSubspace(n + 1, c << n, vectors)


def learn_single_measurement(batch: SingleMeasurementBatch, rng) -> CnotCircuit:
    """Proper learner for the single-measurement special case.

    Intersects the per-sample constraints by Gaussian elimination, picks
    any admissible nonidentity image, and extends the measurement-to-
    image pair to full bases of the Z-type Paulis by random completion
    (expected O(n) draws).  The returned circuit maps basis to basis and
    is therefore consistent with every sample in the batch.
    """
    if not batch.samples:
        raise ValueError("batch must contain at least one sample")
    n = batch.n
    space: Optional[AffineSubspace] = None
    for state, label in batch.samples:
        c = constraint_subspace(state, batch.measurement, label)
        space = c if space is None else space.intersect(c)
        if space is None:
            raise EmptyIntersectionError("constraints are contradictory")
    mask = (1 << n) - 1
    witness = None
    for point in space.points():
        if point & mask:
            witness = point
            break
    if witness is None:
        raise EmptyIntersectionError("only the identity image is admissible")
    u = witness & mask
    gamma = witness >> n
    basis_x = complete_to_basis([batch.measurement.z], n, rng)
    basis_u = complete_to_basis([u], n, rng)
    theta = BitMatrix.from_columns(basis_u, n) @ BitMatrix.from_columns(
        basis_x, n
    ).inverse()
    q = BitMatrix(basis_x, n).solve(gamma)
    return CnotCircuit(theta, q)


def batch_as_sample_set(batch: SingleMeasurementBatch) -> SampleSet:
    """View a batch as a plain sample set (labels become 0/1 fractions)."""
    samples = [
        Sample(state, batch.measurement, Fraction(label))
        for state, label in batch.samples
    ]
    return SampleSet(batch.n, samples)


def trivial_uniform_learner(n: int, rng) -> CliffordTableau:
    """Output a random Clifford circuit of 4 n^2 gates.

    Against a distribution where almost every label is 1/2 (a uniformly
    random signed Pauli measurement is almost never in the state's group,
    up to sign), any valid hypothesis achieves near-zero error, so a
    random gate sequence over {H, P, CNOT} suffices.
    """
    if n < 1:
        raise ValueError("need at least one qubit")
    t = CliffordTableau.identity(n)
    for _ in range(4 * n * n):
        kind = rng.randrange(3) if n >= 2 else rng.randrange(2)
        if kind == 0:
            t.apply_gate(Gate("h", qubit=rng.randrange(n)))
        elif kind == 1:
            t.apply_gate(Gate("p", qubit=rng.randrange(n)))
        else:
            a = rng.randrange(n)
            b = rng.randrange(n - 1)
            if b >= a:
                b += 1
            t.apply_gate(Gate("cnot", control=a, target=b))
    return t


def random_signed_pauli(n: int, rng) -> PauliOperator:
    """Uniformly random nonidentity Pauli with a uniform sign."""
    v = rng.randrange(1, 1 << (2 * n))
    x = v & ((1 << n) - 1)
    z = v >> n
    return PauliOperator(n, x, z, sign=-1 if rng.randrange(2) else 1)

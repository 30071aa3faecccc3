"""Clifford circuits as tableaus of conjugated generator images.

For a circuit C the tableau stores, in the interleaved generator order
(X_0, Z_0, X_1, Z_1, ...), the inverse images C† G_r C as signed Paulis.
Storing inverse images makes sample evaluation a single substitution:
tr[(I + P)/2 C rho C†] = tr[(I + C†PC)/2 rho], so a hypothesis circuit
is scored against a sample without ever inverting anything.  Forward
conjugation C P C† is served by a lazily built inverse tableau.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .gf2 import BitMatrix
from .pauli import PauliOperator, _raw_mul, x_power, z_power
from .stabilizer import StabilizerGroup, StabilizerState

_SINGLE_QUBIT_GATES = ("x", "z", "h", "p")


@dataclass(frozen=True)
class Gate:
    """One gate of a circuit: x/z/h/p on a qubit, or cnot control->target."""

    name: str
    qubit: Optional[int] = None
    control: Optional[int] = None
    target: Optional[int] = None

    def __post_init__(self):
        if self.name in _SINGLE_QUBIT_GATES:
            if self.qubit is None or self.qubit < 0:
                raise ValueError("%s gate needs a qubit" % self.name)
            if self.control is not None or self.target is not None:
                raise ValueError("%s gate takes no control/target" % self.name)
        elif self.name == "cnot":
            if self.control is None or self.target is None:
                raise ValueError("cnot needs control and target")
            if self.control == self.target:
                raise ValueError("cnot control equals target")
            if self.control < 0 or self.target < 0:
                raise ValueError("negative qubit index")
            if self.qubit is not None:
                raise ValueError("cnot takes no single qubit")
        else:
            raise ValueError("unknown gate %r" % self.name)

    def max_qubit(self) -> int:
        if self.name == "cnot":
            return max(self.control, self.target)
        return self.qubit


class CliffordTableau:
    """Mutable tableau of the 2n inverse generator images."""

    __slots__ = ("n", "cols", "_inverse_cols")

    def __init__(self, cols: Iterable[PauliOperator]):
        cols = list(cols)
        if not cols or len(cols) % 2:
            raise ValueError("need 2n generator images")
        n = cols[0].n
        if len(cols) != 2 * n:
            raise ValueError("expected %d images, got %d" % (2 * n, len(cols)))
        for c in cols:
            if c.n != n:
                raise ValueError("image qubit count mismatch")
        self.n = n
        self.cols = cols
        self._inverse_cols = None

    @classmethod
    def identity(cls, n: int) -> "CliffordTableau":
        cols = []
        for i in range(n):
            cols.append(x_power(n, 1 << i))
            cols.append(z_power(n, 1 << i))
        return cls(cols)

    def copy(self) -> "CliffordTableau":
        return CliffordTableau(list(self.cols))

    def s_matrix(self) -> BitMatrix:
        """The 2n x 2n symplectic part: rows interleave x_i/z_i of each image."""
        rows = []
        for i in range(self.n):
            rx = rz = 0
            for c, p in enumerate(self.cols):
                rx |= ((p.x >> i) & 1) << c
                rz |= ((p.z >> i) & 1) << c
            rows.append(rx)
            rows.append(rz)
        return BitMatrix(rows, 2 * self.n)

    def phase_bits(self) -> int:
        """Sign bits of the stored images, bit r for generator r."""
        acc = 0
        for r, p in enumerate(self.cols):
            acc |= p.sign_bit << r
        return acc

    def conjugate_inverse(self, p: PauliOperator) -> PauliOperator:
        """C† P C, by expanding P over the stored generator images."""
        if p.n != self.n:
            raise ValueError("qubit count mismatch")
        e, x, z = p.raw()
        acc = (e, 0, 0)
        for i in range(self.n):
            if (x >> i) & 1:
                acc = _raw_mul(acc, self.cols[2 * i].raw())
        for i in range(self.n):
            if (z >> i) & 1:
                acc = _raw_mul(acc, self.cols[2 * i + 1].raw())
        return PauliOperator.from_raw(self.n, *acc)

    def apply_gate(self, g: Gate) -> None:
        """Append gate g to the circuit (it acts after everything so far)."""
        if g.max_qubit() >= self.n:
            raise ValueError("gate acts outside %d qubits" % self.n)
        self._inverse_cols = None
        n = self.n
        if g.name == "x":
            a = g.qubit
            self.cols[2 * a + 1] = -self.cols[2 * a + 1]
        elif g.name == "z":
            a = g.qubit
            self.cols[2 * a] = -self.cols[2 * a]
        elif g.name == "h":
            a = g.qubit
            self.cols[2 * a], self.cols[2 * a + 1] = (
                self.cols[2 * a + 1],
                self.cols[2 * a],
            )
        elif g.name == "p":
            a = g.qubit
            minus_y = PauliOperator(n, 1 << a, 1 << a, sign=-1)
            self.cols[2 * a] = self.conjugate_inverse(minus_y)
        else:  # cnot
            a, b = g.control, g.target
            new_x = self.conjugate_inverse(x_power(n, (1 << a) | (1 << b)))
            new_z = self.conjugate_inverse(z_power(n, (1 << a) | (1 << b)))
            self.cols[2 * a] = new_x
            self.cols[2 * b + 1] = new_z

    def inverse_tableau(self) -> "CliffordTableau":
        """Tableau of C^{-1}; its inverse images are the forward images of C."""
        if self._inverse_cols is None:
            n = self.n
            s_inv = self.s_matrix().inverse()
            cols = []
            for r in range(2 * n):
                x = z = 0
                for i in range(n):
                    x |= s_inv.entry(2 * i, r) << i
                    z |= s_inv.entry(2 * i + 1, r) << i
                candidate = PauliOperator(n, x, z)
                target = _generator(n, r)
                back = self.conjugate_inverse(candidate)
                if back == target:
                    cols.append(candidate)
                elif back == -target:
                    cols.append(-candidate)
                else:
                    raise ValueError("tableau is not a valid Clifford image")
            self._inverse_cols = cols
        return CliffordTableau(list(self._inverse_cols))

    def to_tableau(self) -> "CliffordTableau":
        return self

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CliffordTableau)
            and self.n == other.n
            and self.cols == other.cols
        )

    def __hash__(self):
        return hash((self.n, tuple(self.cols)))

    def __repr__(self) -> str:
        return "CliffordTableau(n=%d, cols=%r)" % (self.n, self.cols)


def _generator(n: int, r: int) -> PauliOperator:
    """Canonical generator r in the interleaved order: X_0, Z_0, X_1, ..."""
    if r % 2 == 0:
        return x_power(n, 1 << (r // 2))
    return z_power(n, 1 << (r // 2))


def apply_gate(t: CliffordTableau, g: Gate) -> None:
    t.apply_gate(g)


def conjugate_pauli(t: CliffordTableau, p: PauliOperator, direction: str) -> PauliOperator:
    """Conjugate p through the circuit: 'inverse' gives C†PC, 'forward' CPC†."""
    if direction == "inverse":
        return t.conjugate_inverse(p)
    if direction == "forward":
        return t.inverse_tableau().conjugate_inverse(p)
    raise ValueError("direction must be 'forward' or 'inverse'")


def compose_tableaus(first: CliffordTableau, second: CliffordTableau) -> CliffordTableau:
    """Tableau of (second after first): images (SF)†G(SF) = F†(S†GS)F."""
    if first.n != second.n:
        raise ValueError("qubit count mismatch")
    return CliffordTableau([first.conjugate_inverse(c) for c in second.cols])


def apply_circuit_to_state(t: CliffordTableau, state: StabilizerState) -> StabilizerState:
    """The state C rho C†, by conjugating every generator forward."""
    inv = t.inverse_tableau()
    gens = [inv.conjugate_inverse(g) for g in state.group.generators]
    return StabilizerState(StabilizerGroup(gens))


def evaluate_sample(h, sample) -> Fraction:
    """Expectation the hypothesis circuit h assigns to one labeled sample.

    h may be a CliffordTableau or anything with to_tableau().  The value
    is tr[(I + P)/2 h rho h†] computed as rho's expectation of h†Ph.
    """
    t = h.to_tableau()
    return sample.state.expectation(t.conjugate_inverse(sample.measurement))


def lambda_matrix(n: int) -> BitMatrix:
    """The symplectic form: interleaved 2x2 off-diagonal blocks."""
    rows = []
    for i in range(n):
        rows.append(1 << (2 * i + 1))
        rows.append(1 << (2 * i))
    return BitMatrix(rows, 2 * n)


def is_symplectic(s: BitMatrix, n: int) -> bool:
    """Whether S^T Lambda S = Lambda over F_2."""
    if s.n_rows != 2 * n or s.n_cols != 2 * n:
        return False
    lam = lambda_matrix(n)
    return s.transpose().matmul(lam).matmul(s) == lam

"""Stabilizer groups and pure stabilizer states.

A pure state on n qubits is represented by exactly n independent,
pairwise commuting signed Pauli generators whose group excludes -I.
Membership queries answer with a trichotomy: the probe is in the group
(Plus), its negation is (Minus), or its unsigned support is absent
entirely (Absent).  The expectation of a two-outcome measurement
(I + P)/2 against the state is then 1, 0, or 1/2 respectively.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable, List

import numpy as np

from .gf2 import BitMatrix
from .pauli import PauliOperator, z_power


class Membership(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"
    ABSENT = "absent"


class StabilizerGroup:
    """Group generated by exactly n commuting independent signed Paulis."""

    __slots__ = ("n", "generators", "_echelon")

    def __init__(self, generators: Iterable[PauliOperator]):
        generators = list(generators)
        if not generators:
            raise ValueError("need at least one generator")
        n = generators[0].n
        if len(generators) != n:
            raise ValueError("a pure state on %d qubits needs exactly %d generators" % (n, n))
        for g in generators:
            if g.n != n:
                raise ValueError("generator qubit count mismatch")
            if g.is_identity():
                raise ValueError("identity cannot be a generator")
        for i in range(n):
            for j in range(i + 1, n):
                if not generators[i].commutes(generators[j]):
                    raise ValueError("generators %d and %d anticommute" % (i, j))
        if BitMatrix([g.key() for g in generators], 2 * n).rank() != n:
            raise ValueError("generators are dependent")
        self.n = n
        self.generators = generators
        # echelon table of group elements, leading key bit descending; every
        # entry is a product of generators so signs stay honest
        table: List[PauliOperator] = []
        for g in generators:
            cur = g
            placed = False
            for idx, t in enumerate(table):
                tk = t.key()
                ck = cur.key()
                if ck.bit_length() > tk.bit_length():
                    table.insert(idx, cur)
                    placed = True
                    break
                if ck.bit_length() == tk.bit_length():
                    cur = cur.mul(t)
            if not placed:
                table.append(cur)
        self._echelon = table

    def element(self, mask: int) -> PauliOperator:
        """Product of the generators selected by the bits of mask."""
        acc = PauliOperator.identity(self.n)
        for i, g in enumerate(self.generators):
            if (mask >> i) & 1:
                acc = acc.mul(g)
        return acc

    def group_contains(self, p: PauliOperator) -> Membership:
        """Trichotomy membership for a signed Pauli probe."""
        if p.n != self.n:
            raise ValueError("qubit count mismatch")
        if p.is_identity():
            return Membership.PLUS if p.sign == 1 else Membership.ABSENT
        k = p.key()
        acc = PauliOperator.identity(self.n)
        for t in self._echelon:
            tk = t.key()
            if k.bit_length() == tk.bit_length():
                k ^= tk
                acc = acc.mul(t)
        if k != 0:
            return Membership.ABSENT
        return Membership.PLUS if acc.sign_bit == p.sign_bit else Membership.MINUS

    def members(self):
        """Iterate all 2^n group elements (small n only)."""
        for mask in range(1 << self.n):
            yield self.element(mask)

    def canonical_signature(self) -> tuple:
        """Hashable canonical form: fully reduced echelon keys with signs."""
        table = list(self._echelon)
        # clear each table key's lower leading bits using the other entries
        for i in range(len(table)):
            changed = True
            while changed:
                changed = False
                for j in range(len(table)):
                    if i == j:
                        continue
                    pj = table[j].key().bit_length() - 1
                    if (table[i].key() >> pj) & 1 and pj != table[i].key().bit_length() - 1:
                        table[i] = table[i].mul(table[j])
                        changed = True
        return tuple(sorted((t.key(), t.sign_bit) for t in table))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StabilizerGroup)
            and self.n == other.n
            and self.canonical_signature() == other.canonical_signature()
        )

    def __hash__(self):
        return hash((self.n, self.canonical_signature()))


class StabilizerState:
    """Pure stabilizer state rho = 2^{-n} sum of its group elements."""

    __slots__ = ("group",)

    def __init__(self, group: StabilizerGroup):
        self.group = group

    @property
    def n(self) -> int:
        return self.group.n

    @classmethod
    def from_z_generators(cls, n: int, zs: Iterable[int], signs: int = 0) -> "StabilizerState":
        """State with generators (-1)^{signs_k} Z^{zs[k]} (zs must be a basis)."""
        gens = [
            z_power(n, v, sign=-1 if (signs >> k) & 1 else 1)
            for k, v in enumerate(zs)
        ]
        return cls(StabilizerGroup(gens))

    @classmethod
    def computational_basis(cls, n: int, t: int) -> "StabilizerState":
        """|t> as a stabilizer state: generators (-1)^{t_i} Z_i."""
        return cls.from_z_generators(n, [1 << i for i in range(n)], signs=t)

    @classmethod
    def zero_state(cls, n: int) -> "StabilizerState":
        return cls.computational_basis(n, 0)

    def expectation(self, p: PauliOperator) -> Fraction:
        return measurement_expectation(self, p)

    def to_dense(self) -> np.ndarray:
        n = self.n
        if n > 10:
            raise ValueError("dense form limited to 10 qubits")
        acc = np.zeros((1 << n, 1 << n), dtype=complex)
        for g in self.group.members():
            acc += g.to_dense()
        return acc / (1 << n)

    def __eq__(self, other) -> bool:
        return isinstance(other, StabilizerState) and self.group == other.group

    def __hash__(self):
        return hash(self.group)


def measurement_expectation(state: StabilizerState, p: PauliOperator) -> Fraction:
    """tr[(I + P)/2 rho] for a nonidentity signed Pauli P: 1, 0, or 1/2."""
    if p.is_identity():
        raise ValueError("identity is not a useful measurement")
    m = state.group.group_contains(p)
    if m is Membership.PLUS:
        return Fraction(1)
    if m is Membership.MINUS:
        return Fraction(0)
    return Fraction(1, 2)


def dense_expectation_oracle(state: StabilizerState, p: PauliOperator) -> float:
    """Same trace computed with dense numpy matrices (n <= 10)."""
    rho = state.to_dense()
    eye = np.eye(rho.shape[0], dtype=complex)
    val = np.trace((eye + p.to_dense()) @ rho / 2)
    return float(val.real)

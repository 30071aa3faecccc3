"""Signed n-qubit Pauli operators in the symplectic (x, z) representation.

An operator is sign * i^{|x & z|} X^x Z^z with sign in {+1, -1}, where x
and z are packed bit vectors and each overlapping coordinate contributes
one factor of i (so every stored operator is Hermitian: each Y carries
its own i).  Products of anticommuting Hermitian Paulis are
anti-Hermitian and therefore cannot be represented; multiplication goes
through an internal (phase, x, z) form with phase an exponent of i, and
the public product refuses anticommuting pairs.
"""

from __future__ import annotations

import numpy as np

from .gf2 import dot

_SINGLE_DENSE = {
    (0, 0): np.array([[1, 0], [0, 1]], dtype=complex),
    (1, 0): np.array([[0, 1], [1, 0]], dtype=complex),
    (0, 1): np.array([[1, 0], [0, -1]], dtype=complex),
    (1, 1): np.array([[0, -1j], [1j, 0]], dtype=complex),
}


def _raw_mul(a: tuple, b: tuple) -> tuple:
    """Multiply two operators in raw form (e, x, z) meaning i^e X^x Z^z."""
    e1, x1, z1 = a
    e2, x2, z2 = b
    # moving Z^{z1} past X^{x2} costs (-1)^{z1 . x2}
    return ((e1 + e2 + 2 * dot(z1, x2)) % 4, x1 ^ x2, z1 ^ z2)


class PauliOperator:
    """A Hermitian signed Pauli on n qubits."""

    __slots__ = ("n", "x", "z", "sign_bit")

    def __init__(self, n: int, x: int, z: int, sign: int = 1):
        if n < 1:
            raise ValueError("need at least one qubit")
        if x < 0 or x >> n or z < 0 or z >> n:
            raise ValueError("x/z supports outside %d qubits" % n)
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.n = n
        self.x = x
        self.z = z
        self.sign_bit = 0 if sign == 1 else 1

    @property
    def sign(self) -> int:
        return -1 if self.sign_bit else 1

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(n, 0, 0)

    @classmethod
    def from_raw(cls, n: int, e: int, x: int, z: int) -> "PauliOperator":
        """Build from i^e X^x Z^z; e must make the operator Hermitian."""
        y = (x & z).bit_count()
        if (e - y) % 2:
            raise ValueError("phase i^%d with %d overlaps is not Hermitian" % (e, y))
        return cls(n, x, z, sign=1 if (e - y) % 4 == 0 else -1)

    def raw(self) -> tuple:
        return ((2 * self.sign_bit + (self.x & self.z).bit_count()) % 4, self.x, self.z)

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def commutes(self, other: "PauliOperator") -> bool:
        """Symplectic form: Paulis commute iff x1.z2 + z1.x2 = 0."""
        self._check_n(other)
        return (dot(self.x, other.z) ^ dot(self.z, other.x)) == 0

    def mul(self, other: "PauliOperator") -> "PauliOperator":
        self._check_n(other)
        if not self.commutes(other):
            raise ValueError("product of anticommuting Paulis is not Hermitian")
        e, x, z = _raw_mul(self.raw(), other.raw())
        return PauliOperator.from_raw(self.n, e, x, z)

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        return self.mul(other)

    def __neg__(self) -> "PauliOperator":
        return PauliOperator(self.n, self.x, self.z, sign=-self.sign)

    def key(self) -> int:
        """Unsigned symplectic key x | z << n, used for span bookkeeping."""
        return self.x | (self.z << self.n)

    def to_dense(self) -> np.ndarray:
        """Dense 2^n x 2^n matrix; qubit 0 is the most significant index bit."""
        acc = np.array([[1]], dtype=complex)
        for i in range(self.n):
            acc = np.kron(acc, _SINGLE_DENSE[((self.x >> i) & 1, (self.z >> i) & 1)])
        return self.sign * acc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PauliOperator)
            and self.n == other.n
            and self.x == other.x
            and self.z == other.z
            and self.sign_bit == other.sign_bit
        )

    def __hash__(self):
        return hash((self.n, self.x, self.z, self.sign_bit))

    def __repr__(self) -> str:
        names = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
        body = "".join(
            names[((self.x >> i) & 1, (self.z >> i) & 1)] for i in range(self.n)
        )
        return ("-" if self.sign_bit else "+") + body

    def _check_n(self, other: "PauliOperator") -> None:
        if self.n != other.n:
            raise ValueError("qubit count mismatch")


def x_power(n: int, v: int, sign: int = 1) -> PauliOperator:
    """X^v = product of X_i over the set bits of v."""
    return PauliOperator(n, v, 0, sign=sign)


def z_power(n: int, v: int, sign: int = 1) -> PauliOperator:
    """Z^v = product of Z_i over the set bits of v."""
    return PauliOperator(n, 0, v, sign=sign)


def encode_pauli(p: PauliOperator) -> str:
    """Encode as 2n+1 chars: char 2i = x_i, char 2i+1 = z_i, sign bit last."""
    out = []
    for i in range(p.n):
        out.append(str((p.x >> i) & 1))
        out.append(str((p.z >> i) & 1))
    out.append(str(p.sign_bit))
    return "".join(out)


def decode_pauli(s: str) -> PauliOperator:
    if len(s) < 3 or len(s) % 2 == 0 or set(s) - {"0", "1"}:
        raise ValueError("encoding must be 2n+1 bits of 0/1")
    n = (len(s) - 1) // 2
    x = z = 0
    for i in range(n):
        x |= int(s[2 * i]) << i
        z |= int(s[2 * i + 1]) << i
    return PauliOperator(n, x, z, sign=-1 if s[-1] == "1" else 1)

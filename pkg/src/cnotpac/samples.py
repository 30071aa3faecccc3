"""Labeled measurement samples: (stabilizer state, signed Pauli, expectation)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List

from .pauli import PauliOperator
from .stabilizer import StabilizerState

LABELS = (Fraction(0), Fraction(1, 2), Fraction(1))


@dataclass(frozen=True)
class Sample:
    """One training example: the expectation of (I+P)/2 against a state."""

    state: StabilizerState
    measurement: PauliOperator
    label: Fraction

    def __post_init__(self):
        object.__setattr__(self, "label", Fraction(self.label))
        if self.label not in LABELS:
            raise ValueError("label must be 0, 1/2, or 1")
        if self.measurement.is_identity():
            raise ValueError("measurement must not be the identity")
        if self.measurement.n != self.state.n:
            raise ValueError("state and measurement qubit counts differ")


class SampleSet:
    """An ordered collection of samples on a fixed qubit count."""

    __slots__ = ("n", "samples")

    def __init__(self, n: int, samples: Iterable[Sample] = ()):
        samples = list(samples)
        for s in samples:
            if s.state.n != n:
                raise ValueError("sample qubit count mismatch")
        self.n = n
        self.samples = samples

    def extended(self, extra: Iterable[Sample]) -> "SampleSet":
        return SampleSet(self.n, self.samples + list(extra))

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)

    def __getitem__(self, i):
        return self.samples[i]

    def __repr__(self) -> str:
        return "SampleSet(n=%d, %d samples)" % (self.n, len(self.samples))

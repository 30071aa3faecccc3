"""Dense numpy oracles shared by the test modules."""

import itertools
import math
import random

import numpy as np

from cnotpac.cnot import CnotCircuit
from cnotpac.gf2 import BitMatrix
from cnotpac.stabilizer import StabilizerState
from cnotpac.tableau import CliffordTableau, Gate, apply_circuit_to_state, evaluate_sample

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_P = np.array([[1, 0], [0, 1j]], dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_SINGLE = {"h": _H, "p": _P, "x": _X, "z": _Z}


def basis_index(t, n):
    """Dense index of |t>; qubit 0 is the most significant index bit."""
    return sum(((t >> i) & 1) << (n - 1 - i) for i in range(n))


def gate_unitary(g, n):
    if g.name in _SINGLE:
        acc = np.array([[1]], dtype=complex)
        for i in range(n):
            acc = np.kron(acc, _SINGLE[g.name] if i == g.qubit else np.eye(2))
        return acc
    # cnot: permutation |v> -> |v xor v_control * e_target>
    dim = 1 << n
    u = np.zeros((dim, dim), dtype=complex)
    for v in range(dim):
        out = v ^ (((v >> g.control) & 1) << g.target)
        u[basis_index(out, n), basis_index(v, n)] = 1
    return u


def circuit_unitary(gates, n):
    """Unitary of a gate list; later gates act later (left-multiply)."""
    u = np.eye(1 << n, dtype=complex)
    for g in gates:
        u = gate_unitary(g, n) @ u
    return u


def random_gates(rng, n, count, names=("h", "p", "cnot", "x", "z")):
    gates = []
    for _ in range(count):
        name = rng.choice(names)
        if name == "cnot" and n >= 2:
            a = rng.randrange(n)
            b = rng.randrange(n - 1)
            if b >= a:
                b += 1
            gates.append(Gate("cnot", control=a, target=b))
        elif name != "cnot":
            gates.append(Gate(name, qubit=rng.randrange(n)))
    return gates


def random_tableau(rng, n, count=None):
    t = CliffordTableau.identity(n)
    for g in random_gates(rng, n, count if count is not None else 4 * n * n):
        t.apply_gate(g)
    return t


def random_stabilizer_state(rng, n):
    return apply_circuit_to_state(random_tableau(rng, n), StabilizerState.zero_state(n))


def invertible_matrices(n):
    """All of GL(n, F_2), as BitMatrix values (use only for n <= 4)."""
    for rows in itertools.product(range(1 << n), repeat=n):
        m = BitMatrix(list(rows), n)
        if m.is_invertible():
            yield m


def all_cnot_circuits(n):
    for theta in invertible_matrices(n):
        for q in range(1 << n):
            yield CnotCircuit(theta.copy(), q)


def consistent_with_all(circuit, samples):
    t = circuit.to_tableau()
    return all(evaluate_sample(t, s) == s.label for s in samples)

"""JSON schemas and the DIMACS CNF reader.

Conventions shared by every schema:

* Bit vectors are strings of '0'/'1' whose character k is coordinate k
  (so qubit 0 / matrix column 0 comes first in the string).
* Labels serialize as the strings "0", "1/2", "1"; floats would not
  round-trip one half exactly.
* Serialization is canonical: sorted keys, two-space indent, trailing
  newline.  Equal objects produce byte-identical files.

Schema violations raise ValueError with a message naming the offending
field; DIMACS problems raise DimacsError carrying the line number.
"""

import json
from fractions import Fraction
from typing import List, Optional, Union

from .cnot import CnotCircuit
from .gf2 import BitMatrix
from .pauli import PauliOperator
from .reduction import NonSingularityInstance
from .samples import Sample, SampleSet
from .stabilizer import StabilizerGroup, StabilizerState
from .tableau import CliffordTableau, Gate, is_symplectic


class DimacsError(ValueError):
    """Malformed DIMACS input; .line is the 1-based offending line."""

    def __init__(self, message: str, line: int):
        super().__init__("line %d: %s" % (line, message))
        self.line = line


_LABELS = {Fraction(0): "0", Fraction(1, 2): "1/2", Fraction(1): "1"}
_LABELS_BACK = {text: value for value, text in _LABELS.items()}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def bits_to_string(v: int, n: int) -> str:
    if v < 0 or v >> n:
        raise ValueError("value does not fit in %d bits" % n)
    return "".join("1" if (v >> k) & 1 else "0" for k in range(n))


def string_to_bits(s: str, n: Optional[int] = None) -> int:
    if not isinstance(s, str) or any(ch not in "01" for ch in s) or not s:
        raise ValueError("expected a nonempty string of 0s and 1s, got %r" % (s,))
    if n is not None and len(s) != n:
        raise ValueError("expected %d bits, got %d" % (n, len(s)))
    v = 0
    for k, ch in enumerate(s):
        if ch == "1":
            v |= 1 << k
    return v


# ---------------------------------------------------------------------------
# Paulis, samples, sample sets


def pauli_to_json(p: PauliOperator) -> dict:
    return {
        "n": p.n,
        "sign": p.sign,
        "x": bits_to_string(p.x, p.n),
        "z": bits_to_string(p.z, p.n),
    }


def pauli_from_json(obj) -> PauliOperator:
    if not isinstance(obj, dict):
        raise ValueError("Pauli must be an object")
    n = obj.get("n")
    if not isinstance(n, int) or n < 1:
        raise ValueError("Pauli field 'n' must be a positive integer")
    sign = obj.get("sign")
    if sign not in (1, -1):
        raise ValueError("Pauli field 'sign' must be 1 or -1")
    x = string_to_bits(obj.get("x"), n)
    z = string_to_bits(obj.get("z"), n)
    return PauliOperator(n, x, z, sign=sign)


def sample_to_json(s: Sample) -> dict:
    return {
        "state": [pauli_to_json(g) for g in s.state.group.generators],
        "measurement": pauli_to_json(s.measurement),
        "label": _LABELS[s.label],
    }


def sample_from_json(obj) -> Sample:
    if not isinstance(obj, dict):
        raise ValueError("sample must be an object")
    gens = obj.get("state")
    if not isinstance(gens, list) or not gens:
        raise ValueError("sample field 'state' must list the generators")
    state = StabilizerState(StabilizerGroup([pauli_from_json(g) for g in gens]))
    measurement = pauli_from_json(obj.get("measurement"))
    label = obj.get("label")
    if label not in _LABELS_BACK:
        raise ValueError("label must be one of '0', '1/2', '1'; got %r" % (label,))
    return Sample(state, measurement, _LABELS_BACK[label])


def sample_set_to_json(ss: SampleSet) -> dict:
    return {"n": ss.n, "samples": [sample_to_json(s) for s in ss.samples]}


def sample_set_from_json(obj) -> SampleSet:
    if not isinstance(obj, dict):
        raise ValueError("sample set must be an object")
    n = obj.get("n")
    if not isinstance(n, int) or n < 1:
        raise ValueError("sample set field 'n' must be a positive integer")
    samples = obj.get("samples")
    if not isinstance(samples, list):
        raise ValueError("sample set field 'samples' must be a list")
    return SampleSet(n, [sample_from_json(s) for s in samples])


# ---------------------------------------------------------------------------
# circuits and tableaux


def gate_to_json(g: Gate) -> dict:
    if g.name == "cnot":
        return {"name": "cnot", "control": g.control, "target": g.target}
    return {"name": g.name, "qubit": g.qubit}


def gate_from_json(obj, n: int) -> Gate:
    if not isinstance(obj, dict) or "name" not in obj:
        raise ValueError("gate must be an object with a 'name'")
    name = obj["name"]
    if name == "cnot":
        gate = Gate("cnot", control=obj.get("control"), target=obj.get("target"))
    else:
        gate = Gate(name, qubit=obj.get("qubit"))
    if gate.max_qubit() >= n:
        raise ValueError("gate %r addresses qubit %d out of range" % (name, gate.max_qubit()))
    return gate


def tableau_block(t: CliffordTableau) -> dict:
    s = t.s_matrix()
    return {
        "s": [bits_to_string(row, 2 * t.n) for row in s.rows],
        "phases": bits_to_string(t.phase_bits(), 2 * t.n),
    }


def tableau_from_block(obj, n: int) -> CliffordTableau:
    if not isinstance(obj, dict):
        raise ValueError("tableau must be an object")
    rows = obj.get("s")
    if not isinstance(rows, list) or len(rows) != 2 * n:
        raise ValueError("tableau field 's' must list 2n rows")
    s = BitMatrix([string_to_bits(r, 2 * n) for r in rows], 2 * n)
    if not is_symplectic(s, n):
        raise ValueError("tableau is not symplectic (S^T Lambda S != Lambda)")
    phases = string_to_bits(obj.get("phases"), 2 * n)
    cols = []
    for j in range(2 * n):
        col = s.column(j)
        x = z = 0
        for i in range(n):
            x |= ((col >> (2 * i)) & 1) << i
            z |= ((col >> (2 * i + 1)) & 1) << i
        cols.append(PauliOperator(n, x, z, sign=-1 if (phases >> j) & 1 else 1))
    return CliffordTableau(cols)


def circuit_to_json(
    c: Union[CnotCircuit, CliffordTableau],
    gates: Optional[List[Gate]] = None,
    include_tableau: bool = True,
) -> dict:
    """Serialize a hypothesis.

    CnotCircuit inputs emit their synthesized gate list; raw tableaux
    emit only the tableau block (their gate history is unknown).  An
    explicit gates list overrides the synthesized one.
    """
    out = {"n": c.n}
    if isinstance(c, CnotCircuit):
        out["gates"] = [gate_to_json(g) for g in (gates if gates is not None else c.gates())]
    elif gates is not None:
        out["gates"] = [gate_to_json(g) for g in gates]
    if include_tableau or not isinstance(c, CnotCircuit):
        out["tableau"] = tableau_block(c.to_tableau())
    return out


def circuit_from_json(obj) -> Union[CnotCircuit, CliffordTableau]:
    """Load a hypothesis.

    Returns a CnotCircuit when a gate list of only x/cnot gates is
    present, the replayed CliffordTableau for other gate lists, and the
    embedded tableau when no gates are given.  A file carrying both
    gates and a tableau must agree between them.
    """
    if not isinstance(obj, dict):
        raise ValueError("circuit must be an object")
    n = obj.get("n")
    if not isinstance(n, int) or n < 1:
        raise ValueError("circuit field 'n' must be a positive integer")
    gates = obj.get("gates")
    block = obj.get("tableau")
    if gates is None and block is None:
        raise ValueError("circuit needs a 'gates' list or a 'tableau' block")
    hypothesis: Union[CnotCircuit, CliffordTableau, None] = None
    if gates is not None:
        if not isinstance(gates, list):
            raise ValueError("circuit field 'gates' must be a list")
        parsed = [gate_from_json(g, n) for g in gates]
        if all(g.name in ("x", "cnot") for g in parsed):
            hypothesis = CnotCircuit.from_gates(n, parsed)
        else:
            t = CliffordTableau.identity(n)
            for g in parsed:
                t.apply_gate(g)
            hypothesis = t
    if block is not None:
        embedded = tableau_from_block(block, n)
        if hypothesis is None:
            hypothesis = embedded
        elif hypothesis.to_tableau() != embedded:
            raise ValueError("gates and tableau block disagree")
    return hypothesis


# ---------------------------------------------------------------------------
# instances


def matrix_to_json(m: BitMatrix) -> list:
    return [bits_to_string(row, m.n_cols) for row in m.rows]


def matrix_from_json(obj, size: int) -> BitMatrix:
    if not isinstance(obj, list) or len(obj) != size:
        raise ValueError("matrix must list %d rows" % size)
    return BitMatrix([string_to_bits(r, size) for r in obj], size)


def instance_to_json(inst: NonSingularityInstance) -> dict:
    return {
        "size": inst.size,
        "m0": matrix_to_json(inst.m0),
        "ms": [matrix_to_json(m) for m in inst.ms],
    }


def instance_from_json(obj) -> NonSingularityInstance:
    if not isinstance(obj, dict):
        raise ValueError("instance must be an object")
    size = obj.get("size")
    if not isinstance(size, int) or size < 1:
        raise ValueError("instance field 'size' must be a positive integer")
    m0 = matrix_from_json(obj.get("m0"), size)
    ms = obj.get("ms")
    if not isinstance(ms, list):
        raise ValueError("instance field 'ms' must be a list")
    return NonSingularityInstance(size, m0, [matrix_from_json(m, size) for m in ms])


# ---------------------------------------------------------------------------
# DIMACS


def parse_dimacs(text: str) -> List[List[int]]:
    """Read a DIMACS CNF file with at most 3 literals per clause.

    Comment lines start with 'c'; the header is 'p cnf VARS CLAUSES';
    clauses are whitespace-separated literals terminated by 0 and may
    span lines.  Variable indices must stay within the declared count
    and the clause count must match the header.
    """
    n_vars = n_clauses = None
    clauses: List[List[int]] = []
    current: List[int] = []
    current_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if n_vars is not None:
                raise DimacsError("duplicate header", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise DimacsError("header must be 'p cnf VARS CLAUSES'", lineno)
            try:
                n_vars, n_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError("header counts must be integers", lineno)
            if n_vars < 0 or n_clauses < 0:
                raise DimacsError("header counts must be nonnegative", lineno)
            continue
        if n_vars is None:
            raise DimacsError("clause before 'p cnf' header", lineno)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise DimacsError("bad literal %r" % token, lineno)
            if lit == 0:
                clauses.append(current)
                current = []
                current_line = None
                continue
            if abs(lit) > n_vars:
                raise DimacsError(
                    "literal %d exceeds declared %d variables" % (lit, n_vars), lineno
                )
            if current_line is None:
                current_line = lineno
            current.append(lit)
            if len(current) > 3:
                raise DimacsError("clause has more than 3 literals", current_line)
    last = len(text.splitlines()) or 1
    if n_vars is None:
        raise DimacsError("missing 'p cnf' header", 1)
    if current:
        raise DimacsError("unterminated clause (missing 0)", current_line or last)
    if len(clauses) != n_clauses:
        raise DimacsError(
            "header declares %d clauses, found %d" % (n_clauses, len(clauses)), last
        )
    return clauses

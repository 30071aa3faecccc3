import json
import random
from fractions import Fraction

import pytest

from cnotpac.cli import main
from cnotpac.cnot import CnotCircuit
from cnotpac.pauli import z_power
from cnotpac.samples import Sample, SampleSet
from cnotpac.serialization import (
    circuit_from_json,
    dumps,
    pauli_to_json,
    sample_set_to_json,
)
from cnotpac.stabilizer import StabilizerState
from cnotpac.tableau import is_symplectic

from test_reduction import GOLDEN_M0
from test_search import random_consistent_set


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def last_report(out):
    line = out.strip().splitlines()[-1]
    report = json.loads(line)
    assert report["version"] == "0.1.0"
    assert set(report) == {
        "command",
        "counts",
        "input_digest",
        "outcome",
        "seed",
        "version",
        "wall_time_s",
    }
    return report


GOLDEN_FORMULA = "x1*(x2+x3)+x3*x4"


def test_reduce_formula_golden(tmp_path, capsys):
    out = tmp_path / "golden.json"
    code, stdout, _ = run(
        capsys, "reduce", "--formula", GOLDEN_FORMULA, "--seed", "7",
        "--out", str(out), "--canonical-order",
    )
    assert code == 0
    report = last_report(stdout)
    assert report["command"] == "reduce" and report["outcome"] == "ok"
    assert report["counts"]["instance_size"] == 9
    payload = json.loads(out.read_text())
    m0_rows = [int(row[::-1], 2) for row in payload["instance"]["m0"]]
    assert m0_rows == GOLDEN_M0
    # determinism: same input and seed give identical bytes
    out2 = tmp_path / "golden2.json"
    run(capsys, "reduce", "--formula", GOLDEN_FORMULA, "--seed", "7", "--out", str(out2))
    assert out.read_bytes() == out2.read_bytes()
    out3 = tmp_path / "golden3.json"
    run(capsys, "reduce", "--formula", GOLDEN_FORMULA, "--seed", "8", "--out", str(out3))
    assert out.read_bytes() != out3.read_bytes()


UNIT_CNF = "c unit\np cnf 1 1\n1 0\n"


def test_reduce_cnf_unit(tmp_path, capsys):
    cnf = tmp_path / "unit.cnf"
    cnf.write_text(UNIT_CNF)
    out = tmp_path / "unit.json"
    code, stdout, _ = run(capsys, "reduce", "--cnf", str(cnf), "--seed", "3", "--out", str(out))
    assert code == 0
    report = last_report(stdout)
    assert report["counts"]["instance_size"] == 3
    assert report["counts"]["samples"] <= 12
    assert "samples: 11" in stdout


def test_reduce_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cnf"
    bad.write_text("p sat 3\n")
    code, _, err = run(capsys, "reduce", "--cnf", str(bad), "--seed", "0")
    assert code == 2 and "line 1" in err
    code, _, err = run(capsys, "reduce", "--seed", "0")
    assert code == 2 and "exactly one" in err
    code, _, err = run(
        capsys, "reduce", "--cnf", str(bad), "--formula", "x1", "--seed", "0"
    )
    assert code == 2
    code, _, err = run(capsys, "reduce", "--formula", "x1*", "--seed", "0")
    assert code == 2
    code, _, err = run(capsys, "reduce", "--cnf", str(tmp_path / "nope.cnf"), "--seed", "0")
    assert code == 2 and "cannot read" in err


@pytest.fixture
def unit_reduction(tmp_path, capsys):
    cnf = tmp_path / "unit.cnf"
    cnf.write_text(UNIT_CNF)
    out = tmp_path / "unit.json"
    run(capsys, "reduce", "--cnf", str(cnf), "--seed", "3", "--out", str(out))
    return out


def test_solve_brute_and_verify(unit_reduction, tmp_path, capsys):
    witness = tmp_path / "witness.json"
    code, stdout, _ = run(
        capsys, "solve", str(unit_reduction), "--strategy", "brute",
        "--out", str(witness),
    )
    assert code == 0
    assert last_report(stdout)["outcome"] == "found"
    circuit = circuit_from_json(json.loads(witness.read_text()))
    assert isinstance(circuit, CnotCircuit)
    assert circuit.theta.rows == [2, 6, 5] and circuit.q == 0
    code, stdout, _ = run(capsys, "verify", str(witness), str(unit_reduction))
    assert code == 0 and "consistent" in stdout


def test_solve_decision_query_count(unit_reduction, capsys):
    code, stdout, _ = run(capsys, "solve", str(unit_reduction), "--strategy", "decision")
    assert code == 0
    assert last_report(stdout)["counts"]["oracle_queries"] == 13


def test_solve_affine(unit_reduction, tmp_path, capsys):
    code, stdout, _ = run(capsys, "solve", str(unit_reduction), "--strategy", "affine")
    assert code == 0
    report = last_report(stdout)
    assert report["counts"]["assignments_examined"] == 2
    assert "assignment: 1" in stdout


def test_solve_unsatisfiable(tmp_path, capsys):
    out = tmp_path / "zero.json"
    run(capsys, "reduce", "--formula", "x1+x1", "--seed", "1", "--out", str(out))
    for strategy in ("brute", "affine", "decision"):
        code, stdout, _ = run(capsys, "solve", str(out), "--strategy", strategy)
        assert code == 1, strategy
        assert last_report(stdout)["outcome"] == "none"


def test_solve_enumeration_limit(tmp_path, capsys):
    big = tmp_path / "big.json"
    big.write_text(dumps({"n": 20, "samples": []}))
    code, _, err = run(capsys, "solve", str(big), "--strategy", "brute")
    assert code == 2 and "enumeration limit" in err


def test_solve_workers_match(tmp_path, capsys):
    samples, _ = random_consistent_set(random.Random(120), 4, 8)
    path = tmp_path / "samples.json"
    path.write_text(dumps(sample_set_to_json(samples)))
    one = tmp_path / "w1.json"
    two = tmp_path / "w2.json"
    assert run(capsys, "solve", str(path), "--workers", "1", "--out", str(one))[0] == 0
    assert run(capsys, "solve", str(path), "--workers", "3", "--out", str(two))[0] == 0
    assert one.read_bytes() == two.read_bytes()


def test_verify_inconsistent_reports_index(tmp_path, capsys):
    rng = random.Random(121)
    from test_search import random_cnot_circuit

    hidden = random_cnot_circuit(rng, 2)
    t = hidden.to_tableau()
    raw = []
    for _ in range(6):
        state = StabilizerState.computational_basis(2, rng.randrange(4))
        probe = z_power(2, rng.randrange(1, 4))
        raw.append(Sample(state, probe, state.expectation(t.conjugate_inverse(probe))))
    samples = SampleSet(2, raw)
    target = 2
    flipped = []
    for i, s in enumerate(samples.samples):
        label = s.label if i != target else Fraction(1) - s.label
        flipped.append(Sample(s.state, s.measurement, label))
    spath = tmp_path / "flipped.json"
    spath.write_text(dumps(sample_set_to_json(SampleSet(2, flipped))))
    cpath = tmp_path / "circuit.json"
    from cnotpac.serialization import circuit_to_json

    cpath.write_text(dumps(circuit_to_json(hidden)))
    code, stdout, _ = run(capsys, "verify", str(cpath), str(spath))
    assert code == 1
    assert ("inconsistent at sample %d" % target) in stdout
    assert last_report(stdout)["counts"]["first_violation"] == target


def test_verify_schema_errors(tmp_path, capsys):
    bad = tmp_path / "bad_circuit.json"
    bad.write_text(dumps({"n": 1, "tableau": {"s": ["10", "10"], "phases": "00"}}))
    samples, _ = random_consistent_set(random.Random(122), 2, 3)
    spath = tmp_path / "samples.json"
    spath.write_text(dumps(sample_set_to_json(samples)))
    code, _, err = run(capsys, "verify", str(bad), str(spath))
    assert code == 2 and "symplectic" in err
    mismatch = tmp_path / "small.json"
    from cnotpac.serialization import circuit_to_json

    mismatch.write_text(dumps(circuit_to_json(CnotCircuit.identity(3))))
    code, _, err = run(capsys, "verify", str(mismatch), str(spath))
    assert code == 2 and "mismatch" in err


def batch_fixture(tmp_path, seed=5, contradictory=False):
    rng = random.Random(seed)
    from cnotpac.tableau import Gate

    hidden = CnotCircuit.from_gates(
        3, [Gate("cnot", control=0, target=2), Gate("x", qubit=1)]
    )
    t = hidden.to_tableau()
    meas = z_power(3, 0b101, sign=-1)
    entries = []
    for _ in range(8):
        state = StabilizerState.computational_basis(3, rng.randrange(8))
        label = int(state.expectation(t.conjugate_inverse(meas)))
        entries.append(
            {
                "state": [pauli_to_json(g) for g in state.group.generators],
                "label": str(label),
            }
        )
    if contradictory:
        flipped = dict(entries[0])
        flipped["label"] = "1" if entries[0]["label"] == "0" else "0"
        entries.append(flipped)
    path = tmp_path / ("batch%d.json" % len(entries))
    path.write_text(dumps({"measurement": pauli_to_json(meas), "samples": entries}))
    return path


def test_learn_single_measurement(tmp_path, capsys):
    batch = batch_fixture(tmp_path)
    hyp = tmp_path / "hyp.json"
    code, stdout, _ = run(
        capsys, "learn", "--mode", "single-measurement", "--input", str(batch),
        "--seed", "9", "--out", str(hyp),
    )
    assert code == 0
    assert last_report(stdout)["outcome"] == "found"
    circuit = circuit_from_json(json.loads(hyp.read_text()))
    assert isinstance(circuit, CnotCircuit) and circuit.theta.is_invertible()
    bad = batch_fixture(tmp_path, contradictory=True)
    code, stdout, _ = run(
        capsys, "learn", "--mode", "single-measurement", "--input", str(bad),
        "--seed", "9",
    )
    assert code == 1
    assert last_report(stdout)["outcome"] == "none"


def test_learn_pac(tmp_path, capsys):
    samples, _ = random_consistent_set(random.Random(123), 3, 10)
    pool = tmp_path / "pool.json"
    pool.write_text(dumps(sample_set_to_json(samples)))
    hyp = tmp_path / "hyp.json"
    code, stdout, _ = run(
        capsys, "learn", "--mode", "pac", "--input", str(pool), "--seed", "1",
        "--out", str(hyp),
    )
    assert code == 0
    report = last_report(stdout)
    assert report["outcome"] == "found"
    assert report["counts"]["draws"] == 70
    code, _, _ = run(capsys, "verify", str(hyp), str(pool))
    assert code == 0
    # unsatisfiable support
    state = StabilizerState.zero_state(2)
    probe = z_power(2, 0b01)
    contradictory = SampleSet(
        2,
        [Sample(state, probe, Fraction(1)), Sample(state, probe, Fraction(0))],
    )
    badpool = tmp_path / "bad.json"
    badpool.write_text(dumps(sample_set_to_json(contradictory)))
    code, stdout, _ = run(
        capsys, "learn", "--mode", "pac", "--input", str(badpool), "--seed", "1"
    )
    assert code == 1
    assert last_report(stdout)["outcome"] == "none"


def test_learn_trivial(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    c = tmp_path / "c.json"
    assert run(capsys, "learn", "--mode", "trivial", "--n", "4", "--seed", "2", "--out", str(a))[0] == 0
    assert run(capsys, "learn", "--mode", "trivial", "--n", "4", "--seed", "2", "--out", str(b))[0] == 0
    assert run(capsys, "learn", "--mode", "trivial", "--n", "4", "--seed", "3", "--out", str(c))[0] == 0
    assert a.read_bytes() == b.read_bytes() != c.read_bytes()
    t = circuit_from_json(json.loads(a.read_text()))
    assert is_symplectic(t.s_matrix(), 4)
    code, _, err = run(capsys, "learn", "--mode", "trivial", "--seed", "2")
    assert code == 2 and "--n" in err


def test_learn_input_required(capsys):
    code, _, err = run(capsys, "learn", "--mode", "pac", "--seed", "0")
    assert code == 2 and "--input" in err


def test_complexity_frozen_and_monotone(capsys):
    code, stdout, _ = run(
        capsys, "complexity", "--cnot-n", "8", "--epsilon", "0.1", "--delta", "0.1"
    )
    assert code == 0
    assert "m = 595911952" in stdout
    assert "constants are set to 1" in stdout
    assert last_report(stdout)["counts"]["m"] == 595911952

    def m_for(size):
        code, stdout, _ = run(
            capsys, "complexity", "--epsilon", "0.1", "--delta", "0.1",
            "--depth", "3", "--size", str(size),
        )
        assert code == 0
        return last_report(stdout)["counts"]["m"]

    assert m_for(128) > m_for(64)
    code, _, err = run(
        capsys, "complexity", "--cnot-n", "8", "--epsilon", "0", "--delta", "0.1"
    )
    assert code == 2 and "epsilon" in err
    code, _, err = run(
        capsys, "complexity", "--epsilon", "0.1", "--delta", "0.1",
        "--depth", "3", "--size", "64", "--alpha", "0.6", "--beta", "0.5",
    )
    assert code == 2
    code, _, err = run(capsys, "complexity", "--epsilon", "0.1", "--delta", "0.1")
    assert code == 2 and "--depth" in err

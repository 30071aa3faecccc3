"""Command-line pipeline: reduce, solve, verify, learn, complexity.

Exit codes are uniform across subcommands: 0 means found/consistent/
success, 1 means no witness exists (or the learner failed), 2 means any
error (unreadable input, schema violation, size limit, bad parameters).
The last stdout line of every run is a one-line JSON run report with the
command name, a sha256 digest of the primary input, the seed, the
outcome, counters, wall time, and the tool version.  Output files are
written canonically, so identical inputs and seed give identical bytes.
"""

import argparse
import hashlib
import json
import random
import sys
import time

from . import __version__
from .formula import parse_formula
from .learning import (
    EmptyIntersectionError,
    LearningParameters,
    SingleMeasurementBatch,
    batch_as_sample_set,
    cnot_defaults,
    learn_single_measurement,
    pac_learner,
    sample_complexity,
    trivial_uniform_learner,
)
from .reduction import reduce_formula_to_samples, reduce_sat_to_samples
from .samples import SampleSet
from .search import (
    EnumerationLimitError,
    affine_family_search,
    brute_force_decision,
    brute_force_search,
    check_consistent,
    search_from_decision,
)
from .serialization import (
    DimacsError,
    bits_to_string,
    circuit_from_json,
    circuit_to_json,
    dumps,
    instance_from_json,
    instance_to_json,
    parse_dimacs,
    pauli_from_json,
    sample_set_from_json,
    sample_set_to_json,
)
from .stabilizer import StabilizerGroup, StabilizerState
from .tableau import evaluate_sample, is_symplectic


class CliError(Exception):
    """Anything that should terminate with exit code 2."""


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _read(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as err:
        raise CliError("cannot read %s: %s" % (path, err))


def _load_json(path: str):
    data = _read(path)
    try:
        return json.loads(data), data
    except json.JSONDecodeError as err:
        raise CliError("%s is not valid JSON: %s" % (path, err))


def _write_out(path, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as err:
        raise CliError("cannot write %s: %s" % (path, err))


def _report(command, digest, seed, outcome, counts, started) -> None:
    record = {
        "command": command,
        "input_digest": digest,
        "seed": seed,
        "outcome": outcome,
        "counts": counts,
        "wall_time_s": round(time.monotonic() - started, 6),
        "version": __version__,
    }
    sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")


def _sample_set_from_file(path: str) -> SampleSet:
    obj, _ = _load_json(path)
    if isinstance(obj, dict) and "samples" in obj and "n" not in obj:
        obj = obj["samples"]
    try:
        return sample_set_from_json(obj)
    except ValueError as err:
        raise CliError("%s: %s" % (path, err))


def _instance_from_file(path: str):
    obj, _ = _load_json(path)
    if isinstance(obj, dict) and "instance" in obj:
        obj = obj["instance"]
    try:
        return instance_from_json(obj)
    except ValueError as err:
        raise CliError("%s: %s" % (path, err))


# ---------------------------------------------------------------------------
# subcommands


def cmd_reduce(args) -> int:
    started = time.monotonic()
    if (args.cnf is None) == (args.formula is None):
        raise CliError("give exactly one of --cnf or --formula")
    rng = random.Random(args.seed)
    if args.cnf is not None:
        data = _read(args.cnf)
        digest = _digest(data)
        try:
            clauses = parse_dimacs(data.decode("utf-8", "replace"))
        except DimacsError as err:
            raise CliError("%s: %s" % (args.cnf, err))
        try:
            samples, inst = reduce_sat_to_samples(clauses, rng)
        except ValueError as err:
            raise CliError(str(err))
    else:
        digest = _digest(args.formula.encode())
        try:
            formula = parse_formula(args.formula)
            samples, inst = reduce_formula_to_samples(formula, rng)
        except ValueError as err:
            raise CliError(str(err))
    payload = {
        "samples": sample_set_to_json(samples),
        "instance": instance_to_json(inst),
    }
    _write_out(args.out, dumps(payload))
    print("samples: %d" % len(samples.samples))
    print("instance size: %d" % inst.size)
    counts = {"samples": len(samples.samples), "instance_size": inst.size}
    _report("reduce", digest, args.seed, "ok", counts, started)
    return 0


def cmd_solve(args) -> int:
    started = time.monotonic()
    digest = _digest(_read(args.input))
    counts = {}
    if args.strategy == "affine":
        inst = _instance_from_file(args.input)
        try:
            result = affine_family_search(inst)
        except EnumerationLimitError as err:
            raise CliError(str(err))
        counts["assignments_examined"] = result.assignments_examined
        if not result.found:
            print("no satisfying assignment")
            _report("solve", digest, args.seed, "none", counts, started)
            return 1
        if inst.determinant_at(result.assignment) != 1:
            raise CliError("internal check failed: witness determinant is 0")
        k = len(inst.ms)
        witness = {"assignment": bits_to_string(result.assignment, k)}
        _write_out(args.out, dumps(witness))
        print("assignment: %s" % witness["assignment"])
        _report("solve", digest, args.seed, "found", counts, started)
        return 0
    samples = _sample_set_from_file(args.input)
    counts["samples"] = len(samples.samples)
    try:
        if args.strategy == "brute":
            result = brute_force_search(samples, workers=args.workers)
            counts["circuits_examined"] = result.circuits_examined
        else:
            result = search_from_decision(brute_force_decision, samples)
            counts["oracle_queries"] = result.queries
            if result.oracle_fault:
                raise CliError("decision oracle contradicted itself")
    except EnumerationLimitError as err:
        raise CliError(str(err))
    if not result.found:
        print("no consistent circuit")
        _report("solve", digest, args.seed, "none", counts, started)
        return 1
    if not check_consistent(result.circuit, samples):
        raise CliError("internal check failed: witness is not consistent")
    _write_out(args.out, dumps(circuit_to_json(result.circuit)))
    print("consistent circuit found")
    _report("solve", digest, args.seed, "found", counts, started)
    return 0


def cmd_verify(args) -> int:
    started = time.monotonic()
    circuit_bytes = _read(args.circuit)
    samples_bytes = _read(args.samples)
    digest = _digest(circuit_bytes + samples_bytes)
    obj, _ = _load_json(args.circuit)
    try:
        hypothesis = circuit_from_json(obj)
    except ValueError as err:
        raise CliError("%s: %s" % (args.circuit, err))
    samples = _sample_set_from_file(args.samples)
    if hypothesis.n != samples.n:
        raise CliError(
            "qubit count mismatch: circuit has %d, samples have %d"
            % (hypothesis.n, samples.n)
        )
    t = hypothesis.to_tableau()
    counts = {"samples": len(samples.samples)}
    for index, sample in enumerate(samples.samples):
        if evaluate_sample(t, sample) != sample.label:
            print("inconsistent at sample %d" % index)
            counts["first_violation"] = index
            _report("verify", digest, None, "inconsistent", counts, started)
            return 1
    print("consistent")
    _report("verify", digest, None, "consistent", counts, started)
    return 0


def _learn_pac(args, rng):
    obj, data = _load_json(args.input)
    if not isinstance(obj, dict):
        raise CliError("pac input must be an object")
    try:
        pool_set = sample_set_from_json({"n": obj.get("n"), "samples": obj.get("samples")})
    except ValueError as err:
        raise CliError("%s: %s" % (args.input, err))
    pool = pool_set.samples
    if not pool:
        raise CliError("pac input needs at least one sample")
    weights = obj.get("weights")
    if weights is not None:
        if (
            not isinstance(weights, list)
            or len(weights) != len(pool)
            or any(not isinstance(w, (int, float)) or w < 0 for w in weights)
            or not any(weights)
        ):
            raise CliError("weights must be nonnegative numbers matching the samples")
    s = obj.get("s", len(pool))
    if not isinstance(s, int) or s < 1:
        raise CliError("support bound 's' must be a positive integer")

    def draw(r):
        return r.choices(pool, weights=weights, k=1)[0]

    result = pac_learner(
        draw, s, brute_force_search, rng, draw_constant=args.draw_constant,
        full_set=pool_set,
    )
    counts = {
        "draws": result.draws,
        "distinct": result.distinct,
        "samples": len(pool),
    }
    if not result.found:
        print("no consistent hypothesis")
        return 1, _digest(data), "none", counts, None
    outcome = "found" if result.accepted else "found-unaccepted"
    return 0, _digest(data), outcome, counts, dumps(circuit_to_json(result.circuit))


def _learn_single(args, rng):
    obj, data = _load_json(args.input)
    if not isinstance(obj, dict):
        raise CliError("batch input must be an object")
    try:
        measurement = pauli_from_json(obj.get("measurement"))
        entries = obj.get("samples")
        if not isinstance(entries, list) or not entries:
            raise ValueError("field 'samples' must be a nonempty list")
        pairs = []
        for entry in entries:
            gens = [pauli_from_json(g) for g in entry["state"]]
            label = entry.get("label")
            if label in ("0", "1"):
                label = int(label)
            pairs.append((StabilizerState(StabilizerGroup(gens)), label))
        batch = SingleMeasurementBatch(measurement, pairs)
    except (ValueError, KeyError, TypeError) as err:
        raise CliError("%s: %s" % (args.input, err))
    counts = {"samples": len(batch.samples)}
    try:
        circuit = learn_single_measurement(batch, rng)
    except EmptyIntersectionError as err:
        print("no consistent hypothesis: %s" % err)
        return 1, _digest(data), "none", counts, None
    if not check_consistent(circuit, batch_as_sample_set(batch)):
        raise CliError("internal check failed: hypothesis is not consistent")
    return 0, _digest(data), "found", counts, dumps(circuit_to_json(circuit))


def _learn_trivial(args, rng):
    if args.n is None:
        raise CliError("trivial mode needs --n")
    tableau = trivial_uniform_learner(args.n, rng)
    if not is_symplectic(tableau.s_matrix(), tableau.n):
        raise CliError("internal check failed: tableau is not symplectic")
    digest = _digest(("trivial n=%d" % args.n).encode())
    counts = {"gates": 4 * args.n * args.n}
    return 0, digest, "found", counts, dumps(circuit_to_json(tableau))


def cmd_learn(args) -> int:
    started = time.monotonic()
    rng = random.Random(args.seed)
    if args.mode in ("pac", "single-measurement") and args.input is None:
        raise CliError("%s mode needs --input" % args.mode)
    if args.mode == "pac":
        code, digest, outcome, counts, payload = _learn_pac(args, rng)
    elif args.mode == "single-measurement":
        code, digest, outcome, counts, payload = _learn_single(args, rng)
    else:
        code, digest, outcome, counts, payload = _learn_trivial(args, rng)
    if payload is not None:
        _write_out(args.out, payload)
        print("hypothesis written")
    _report("learn", digest, args.seed, outcome, counts, started)
    return code


def cmd_complexity(args) -> int:
    started = time.monotonic()
    try:
        if args.cnot_n is not None:
            params = cnot_defaults(
                args.cnot_n, args.epsilon, args.delta, depth_constant=args.depth_constant
            )
        else:
            missing = [
                name
                for name, value in (
                    ("--depth", args.depth),
                    ("--size", args.size),
                )
                if value is None
            ]
            if missing:
                raise CliError("need --cnot-n or explicit %s" % " ".join(missing))
            params = LearningParameters(
                epsilon=args.epsilon,
                delta=args.delta,
                alpha=args.alpha,
                beta=args.beta,
                d=args.d,
                depth=args.depth,
                size=args.size,
            )
    except ValueError as err:
        raise CliError(str(err))
    m = sample_complexity(params)
    digest = _digest(
        json.dumps(
            {
                "epsilon": params.epsilon,
                "delta": params.delta,
                "alpha": params.alpha,
                "beta": params.beta,
                "d": params.d,
                "depth": params.depth,
                "size": params.size,
            },
            sort_keys=True,
        ).encode()
    )
    print("m = %d" % m)
    print("note: all big-O constants are set to 1; treat m as a scale, not a guarantee")
    _report("complexity", digest, None, "ok", {"m": m}, started)
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cnotpac",
        description="Reductions, consistency search, and learners for CNOT circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    reduce_p = sub.add_parser(
        "reduce", help="turn a 3-CNF or formula into labeled samples"
    )
    reduce_p.add_argument("--cnf", help="DIMACS CNF file (clauses of up to 3 literals)")
    reduce_p.add_argument(
        "--formula", help="polynomial over GF(2), e.g. 'x1*(x2+x3)+x3*x4'"
    )
    reduce_p.add_argument("--seed", type=int, required=True)
    reduce_p.add_argument("--out", help="write the samples+instance JSON here")
    reduce_p.add_argument(
        "--canonical-order",
        action="store_true",
        help="number gadget vertices in expression order (this is the only "
        "ordering implemented; the flag documents intent)",
    )
    reduce_p.set_defaults(func=cmd_reduce)

    solve_p = sub.add_parser("solve", help="search for a consistent circuit")
    solve_p.add_argument("input", help="samples JSON (brute/decision) or instance JSON (affine)")
    solve_p.add_argument(
        "--strategy", choices=("brute", "affine", "decision"), default="brute"
    )
    solve_p.add_argument("--workers", type=int, default=1)
    solve_p.add_argument("--seed", type=int, default=None)
    solve_p.add_argument("--out", help="write the witness JSON here")
    solve_p.set_defaults(func=cmd_solve)

    verify_p = sub.add_parser("verify", help="check a circuit against samples")
    verify_p.add_argument("circuit")
    verify_p.add_argument("samples")
    verify_p.set_defaults(func=cmd_verify)

    learn_p = sub.add_parser("learn", help="run one of the learners")
    learn_p.add_argument(
        "--mode", choices=("pac", "single-measurement", "trivial"), required=True
    )
    learn_p.add_argument("--input", help="mode-specific input JSON")
    learn_p.add_argument("--n", type=int, help="qubit count (trivial mode)")
    learn_p.add_argument("--seed", type=int, required=True)
    learn_p.add_argument("--draw-constant", type=float, default=3.0)
    learn_p.add_argument("--out", help="write the hypothesis JSON here")
    learn_p.set_defaults(func=cmd_learn)

    complexity_p = sub.add_parser(
        "complexity", help="evaluate the PAC sample-size bound"
    )
    complexity_p.add_argument("--epsilon", type=float, required=True)
    complexity_p.add_argument("--delta", type=float, required=True)
    complexity_p.add_argument(
        "--cnot-n", type=int, help="use CNOT-class defaults for this qubit count"
    )
    complexity_p.add_argument("--depth-constant", type=int, default=1)
    complexity_p.add_argument("--alpha", type=float, default=0.0)
    complexity_p.add_argument("--beta", type=float, default=0.5)
    complexity_p.add_argument("--d", type=int, default=2)
    complexity_p.add_argument("--depth", type=int)
    complexity_p.add_argument("--size", type=int)
    complexity_p.set_defaults(func=cmd_complexity)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as err:
        print("error: %s" % err, file=sys.stderr)
        return 2
    except (DimacsError, EnumerationLimitError, ValueError) as err:
        print("error: %s" % err, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

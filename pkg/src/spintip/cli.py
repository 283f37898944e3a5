"""Command-line front end: compile a circuit, run it, emit a JSON report.

Reports are deterministic by construction — sorted keys, no timestamps, float
repr — so the same inputs and seed produce byte-identical output, which is
what makes them diffable regression artifacts.

Exit codes: 0 success, 2 unusable input (flags, config, circuit), 3 physics
audit failure (a compiled pulse that hits no transition line, or a failed
--verify-frequencies check), 4 infeasible decoherence budget under
--enforce-budget.
"""

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from . import compiler, engine, physics, program, scheduler
from .config import MachineConfig, load_machine_config
from .errors import CircuitParseError, ConfigError
from .register import RegisterLayout

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PHYSICS = 3
EXIT_BUDGET = 4


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spintip",
        description="Compile and simulate a spin-register circuit, reporting as JSON.",
    )
    parser.add_argument("--config", metavar="FILE", help="machine config (key = value)")
    parser.add_argument("--circuit", metavar="FILE", help="circuit to run")
    parser.add_argument(
        "--batch", metavar="DIR", help="run every *.circuit in DIR, writing *.report.json"
    )
    parser.add_argument("--seed", type=int, help="RNG seed (batch: base seed + file index)")
    parser.add_argument("--tips", type=int, metavar="K", help="also schedule for K tips")
    parser.add_argument(
        "--verify-frequencies",
        action="store_true",
        help="audit closed-form lines against the engine and self-test a CNOT",
    )
    parser.add_argument("--dump-state", metavar="FILE", help="write the final state vector")
    parser.add_argument(
        "--trace-snr",
        type=float,
        metavar="SNR",
        help="read out through synthesized noisy traces instead of exact lines",
    )
    parser.add_argument(
        "--enforce-budget",
        action="store_true",
        help="fail (exit 4) if the program exceeds the coherence time",
    )
    return parser


def _config_dict(cfg):
    return {field.name: getattr(cfg, field.name) for field in dataclasses.fields(cfg)}


def _cnot_reference(amplitudes, layout, control, target):
    """Ideal CNOT between two qubit nuclei, as a basis permutation."""
    n = layout.num_sites
    indices = np.arange(layout.dimension)
    control_bit = (indices >> (n - 1 - layout.nucleus_site(control))) & 1
    flipped = indices ^ (control_bit << (n - 1 - layout.nucleus_site(target)))
    expected = np.empty_like(amplitudes)
    expected[flipped] = amplitudes
    return expected


def run_verification(cfg, tolerance=1e-6):
    """The --verify-frequencies payload: formula audit plus a CNOT self-test.

    The audit compares every closed-form line against engine transitions; the
    self-test entangles a superposed control with a ground target and checks
    fidelity against the ideal gate and the cleanliness of the ancillas.
    """
    audit = physics.frequency_audit(cfg, tolerance)
    layout = RegisterLayout(2)
    state = engine.PureState.product(layout, {0: (0.6, 0.8)})
    result = compiler.execute(
        compiler.compile_cnot(0, 1, layout, cfg), state, layout, cfg, rng=0
    )
    expected = _cnot_reference(state.amplitudes, layout, 0, 1)
    overlap = np.vdot(expected, result.final_state.amplitudes)
    fidelity = float(np.abs(overlap) ** 2)
    diagnostics = engine.ancilla_diagnostics(result.final_state, layout)
    all_matched = all(entry["matched"] for entry in audit)
    passed = all_matched and fidelity >= 1.0 - 1e-9 and diagnostics.purity >= 1.0 - 1e-9
    return {
        "frequency_audit": audit,
        "all_formulas_matched": all_matched,
        "worst_formula_residual_hz": max(entry["best_residual_hz"] for entry in audit),
        "min_spectral_gap_hz": physics.min_spectral_gap(cfg),
        "cnot_fidelity": fidelity,
        "ancilla_purity": diagnostics.purity,
        "ancilla_ground_populations": diagnostics.populations,
        "passed": passed,
    }


def _record_dict(record):
    return {
        "qubit": record.qubit,
        "observed_frequency_hz": record.observed_frequency,
        "inferred_p_bit": record.inferred_p_bit,
        "inferred_a_bit": record.inferred_a_bit,
        "pre_measurement_probability": record.pre_measurement_probability,
    }


def run_circuit_file(path, cfg, args, seed, dump_path):
    """Compile, execute and report one circuit file; returns (report, exit code)."""
    circuit = program.parse_circuit(Path(path).read_text(encoding="utf-8"), source=str(path))
    layout = RegisterLayout(circuit.num_qubits)
    compiled = compiler.compile_circuit(circuit, layout, cfg)
    state = engine.PureState.ground(layout)
    result = compiler.execute(
        compiled, state, layout, cfg, rng=seed, trace_snr=args.trace_snr
    )

    spectral_misses = sorted(
        index
        for index, outcome in result.pulse_log
        if outcome is not None and outcome.resonant_pair_count == 0
    )
    idle_pulses = sorted(
        index
        for index, outcome in result.pulse_log
        if outcome is not None and outcome.no_resonant_transition
    )
    skipped = sorted(index for index, outcome in result.pulse_log if outcome is None)

    reasons = []
    verification = None
    if args.verify_frequencies:
        verification = run_verification(cfg)
        if not verification["passed"]:
            reasons.append("closed-form frequency audit failed")
    if spectral_misses:
        reasons.append(
            f"pulses at instructions {spectral_misses} hit no transition line"
        )
    if reasons:
        code = EXIT_PHYSICS
    elif args.enforce_budget and not result.timing.feasible:
        reasons.append("program exceeds the coherence time")
        code = EXIT_BUDGET
    else:
        code = EXIT_OK

    schedule = None
    if args.tips:
        assignment = scheduler.schedule_multi_tip(circuit, args.tips, layout, cfg)
        problems = scheduler.validate_assignment(assignment, circuit, layout, cfg)
        schedule = {
            "tips": args.tips,
            "makespan_s": assignment.makespan,
            "per_task_tip": list(assignment.per_task_tip),
            "table": assignment.table().splitlines(),
            "validator_problems": problems,
        }

    if dump_path:
        Path(dump_path).write_text(result.final_state.dump_text(), encoding="utf-8")

    report = {
        "seed": seed,
        "config": _config_dict(cfg),
        "register": {
            "num_qubits": layout.num_qubits,
            "coordinates": [list(c) for c in layout.coordinates],
        },
        "circuit": program.format_circuit(circuit).splitlines(),
        "program": program.program_to_text(compiled).splitlines(),
        "measurements": [_record_dict(r) for r in result.records],
        "pulses": {
            "applied": len(result.pulse_log) - len(skipped),
            "conditional_skipped": skipped,
            "idle": idle_pulses,
            "spectral_misses": spectral_misses,
        },
        "timing": result.timing.to_dict(),
        "final_state": {
            "norm": result.final_state.norm(),
            "dump_file": str(dump_path) if dump_path else None,
        },
        "scheduler": schedule,
        "verification": verification,
        "status": {"exit_code": code, "reasons": reasons},
    }
    return report, code


def _fresh_seed():
    return int(np.random.SeedSequence().entropy)


def _run_batch(args, cfg):
    directory = Path(args.batch)
    files = sorted(directory.glob("*.circuit"))
    if not files:
        print(f"error: no *.circuit files in {directory}", file=sys.stderr)
        return EXIT_USAGE
    base_seed = args.seed if args.seed is not None else _fresh_seed()
    worst = EXIT_OK
    for index, path in enumerate(files):
        seed = base_seed + index
        try:
            report, code = run_circuit_file(path, cfg, args, seed, dump_path=None)
        except (CircuitParseError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            code, report = EXIT_USAGE, None
        if report is not None:
            out = path.with_suffix(".report.json")
            out.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        print(f"{path.name}: exit {code}")
        worst = max(worst, code)
    return worst


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if bool(args.circuit) == bool(args.batch):
        parser.error("exactly one of --circuit or --batch is required")
    if args.tips is not None and args.tips < 1:
        parser.error("--tips must be at least 1")
    try:
        cfg = load_machine_config(args.config) if args.config else MachineConfig().validate()
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.batch:
        return _run_batch(args, cfg)

    seed = args.seed if args.seed is not None else _fresh_seed()
    if args.seed is None:
        print(f"seed: {seed}", file=sys.stderr)
    try:
        report, code = run_circuit_file(args.circuit, cfg, args, seed, args.dump_state)
    except (CircuitParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps(report, indent=2, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())

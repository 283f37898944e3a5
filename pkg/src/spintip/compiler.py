"""Gate-to-pulse compilation and program execution.

Every pulse frequency a compiled program carries is derived by asking the
engine for the transition line of the *intended* conditional flip — the same
formula the executor will use to test resonance — so compiled programs cannot
silently drift off their own machine model. The closed forms in ``physics``
stay an independent cross-check route, never a compilation input.
"""

import dataclasses
import math

import numpy as np

from . import engine, physics, readout, timing
from .engine import Channel, Pulse, PulseMode
from .errors import MismatchedRegister, SameQubit
from .program import (
    ApplyPulse,
    Barrier,
    CnotGate,
    ConditionalPulse,
    InitGate,
    MeasureGate,
    MeasureViaCurrent,
    MoveTip,
    PulseProgram,
    RotGate,
    validate_program,
)
from .register import PARKED

_PI = math.pi


def _line(layout, cfg, qubit, site, excited=()):
    """Engine transition line for flipping ``site`` with the tip on ``qubit``.

    ``excited`` lists the spectator sites held in bit 1; everything else is in
    bit 0. This is the single funnel through which the compiler obtains
    frequencies.
    """
    config = [0] * layout.num_sites
    for excited_site in excited:
        config[excited_site] = 1
    return physics.transition_frequency(
        tuple(config), site, layout.with_tip(qubit), cfg
    )


def _nuclear_pulse(cfg, frequency, angle=_PI, phase=0.0, mode=PulseMode.LOGICAL_X):
    return Pulse(
        channel=Channel.PHOSPHORUS_NUCLEAR_RF,
        frequency=frequency,
        angle=angle,
        phase=phase,
        duration=cfg.nuclear_pi_duration * angle / _PI,
        mode=mode,
    )


def _tip_pulse(cfg, frequency):
    return Pulse(
        channel=Channel.TIP_CARBON_NUCLEAR_RF,
        frequency=frequency,
        angle=_PI,
        duration=cfg.nuclear_pi_duration,
    )


def _electron_pulse(cfg, frequency):
    return Pulse(
        channel=Channel.ELECTRON_RF,
        frequency=frequency,
        angle=_PI,
        duration=cfg.electron_pi_duration,
    )


def rotation_frequency(qubit, layout, cfg):
    """Nuclear drive line for a single-qubit rotation (tip engaged, all ground)."""
    return _line(layout, cfg, qubit, layout.nucleus_site(qubit))


def compile_rotation(qubit, angle, phase, layout, cfg, mode=PulseMode.PHASED_ROTATION):
    """Rotate one qubit nucleus: park the tip on it, drive its shifted line.

    The drive sits on the nuclear line with the local electron in its ground
    state, so the rotation is implicitly conditioned on the ancilla being
    clean — which compiled sequences guarantee. The angle is folded into
    (0, 2*pi]; a zero rotation compiles to just the tip move.
    """
    layout.check_qubit(qubit)
    folded = math.fmod(angle, 2.0 * _PI)
    if folded < 0:
        folded += 2.0 * _PI
    if folded == 0.0 and angle != 0.0:
        folded = 2.0 * _PI
    instructions = [MoveTip(qubit)]
    if folded > 0.0:
        instructions.append(
            ApplyPulse(
                _nuclear_pulse(cfg, rotation_frequency(qubit, layout, cfg), folded, phase, mode)
            )
        )
    return PulseProgram(tuple(instructions), gate_count=1)


def cnot_frequencies(control, target, layout, cfg):
    """The five drive lines of the entangling sequence, engine-derived.

    Keyed by role: flip the control electron when its nucleus is |1> (tip
    carbon still ground), flip the tip carbon when the local electron is
    excited, flip the target electron for either target-nucleus bit while the
    tip carbon is |1>, and flip the target nucleus while its electron is
    excited.
    """
    n_c = layout.nucleus_site(control)
    e_c = layout.electron_site(control)
    n_t = layout.nucleus_site(target)
    e_t = layout.electron_site(target)
    tip = layout.tip_site
    return {
        "control_electron": _line(layout, cfg, control, e_c, excited=(n_c,)),
        "tip_nucleus": _line(layout, cfg, control, tip, excited=(e_c,)),
        "target_electron_n1": _line(layout, cfg, target, e_t, excited=(n_t, tip)),
        "target_electron_n0": _line(layout, cfg, target, e_t, excited=(tip,)),
        "target_nucleus": _line(layout, cfg, target, n_t, excited=(e_t, tip)),
    }


def compile_cnot(control, target, layout, cfg):
    """Entangle two qubits through the travelling tip carbon.

    The sequence copies the control nucleus onto its electron, moves that one
    bit of information into the tip carbon, carries it to the target, applies
    the conditional nuclear flip there, and then retraces every step to
    restore all three ancillas: 3 tip moves, 9 pulses, no measurements.
    """
    if control == target:
        raise SameQubit(f"CNOT control and target are both qubit {control}")
    layout.check_qubit(control)
    layout.check_qubit(target)
    f = cnot_frequencies(control, target, layout, cfg)
    when_set = ApplyPulse(_electron_pulse(cfg, f["target_electron_n1"]))
    when_clear = ApplyPulse(_electron_pulse(cfg, f["target_electron_n0"]))
    instructions = (
        # control nucleus -> control electron (conditional excitation)
        MoveTip(control),
        ApplyPulse(_electron_pulse(cfg, f["control_electron"])),
        # control electron -> tip carbon
        ApplyPulse(_tip_pulse(cfg, f["tip_nucleus"])),
        # carry to the target; flip its electron iff the tip carbon is |1>
        MoveTip(target),
        when_set,
        when_clear,
        # the conditional flip itself
        ApplyPulse(_nuclear_pulse(cfg, f["target_nucleus"])),
        # uncompute target electron
        when_set,
        when_clear,
        # walk the control bit back and clean up
        MoveTip(control),
        ApplyPulse(_tip_pulse(cfg, f["tip_nucleus"])),
        ApplyPulse(_electron_pulse(cfg, f["control_electron"])),
    )
    return PulseProgram(instructions, gate_count=1)


def init_frequencies(qubit, layout, cfg):
    """Nuclear correction lines for both electron spectator states."""
    n = layout.nucleus_site(qubit)
    e = layout.electron_site(qubit)
    return (
        _line(layout, cfg, qubit, n),
        _line(layout, cfg, qubit, n, excited=(e,)),
    )


def compile_init(layout, cfg):
    """Force every qubit nucleus to |0> by measure-and-correct.

    Per qubit: measure the nucleus through the current, flip it back if it
    read |1>, then re-measure and retry on the electron-shifted line — the
    second round catches the (rare but real) thermally excited electron that
    detunes the first correction pulse. On an already initialized register no
    conditional pulse fires.
    """
    instructions = []
    for qubit in range(layout.num_qubits):
        ground_line, shifted_line = init_frequencies(qubit, layout, cfg)
        instructions += [
            MoveTip(qubit),
            MeasureViaCurrent(qubit),
            ConditionalPulse(_nuclear_pulse(cfg, ground_line), on_last_measurement=1),
            MeasureViaCurrent(qubit),
            ConditionalPulse(_nuclear_pulse(cfg, shifted_line), on_last_measurement=1),
        ]
    return PulseProgram(tuple(instructions), gate_count=layout.num_qubits)


def compile_gate(gate, layout, cfg):
    """Pulse program for one gate (no trailing park)."""
    if isinstance(gate, InitGate):
        return compile_init(layout, cfg)
    if isinstance(gate, RotGate):
        return compile_rotation(gate.qubit, gate.angle, gate.phase, layout, cfg)
    if isinstance(gate, CnotGate):
        return compile_cnot(gate.control, gate.target, layout, cfg)
    if isinstance(gate, MeasureGate):
        layout.check_qubit(gate.qubit)
        return PulseProgram(
            (MoveTip(gate.qubit), MeasureViaCurrent(gate.qubit)), gate_count=1
        )
    raise TypeError(f"not a gate: {gate!r}")


def compile_circuit(circuit, layout, cfg):
    """Concatenate per-gate programs and park the tip at the end."""
    program = PulseProgram(())
    for gate in circuit.gates:
        program = program + compile_gate(gate, layout, cfg)
    return program + PulseProgram((MoveTip(PARKED),), gate_count=0)


@dataclasses.dataclass(frozen=True)
class ExecutionResult:
    """Everything a program run produced."""

    final_state: engine.PureState
    records: tuple
    timing: timing.TimingReport
    pulse_log: tuple  # (instruction index, PulseOutcome | None if skipped)
    final_tip_position: "int | None"


def execute(program, state, layout, cfg, rng, trace_snr=None):
    """Run a pulse program against a state; return an ExecutionResult.

    Instructions run in order; moves update the tip, conditional pulses fire
    on the inferred p-bit of the most recent measurement. ``rng`` seeds one
    stream that all measurements consume in order, so a seed pins the run.
    """
    validate_program(program, layout)
    if state.num_sites != layout.num_sites:
        raise MismatchedRegister(
            f"state of {state.num_sites} sites under a {layout.num_sites}-site layout"
        )
    rng = np.random.default_rng(rng)
    current = layout
    state = state.copy()
    records = []
    pulse_log = []
    durations = []
    categories = {
        "tip_motion": 0.0,
        "nuclear_pulses": 0.0,
        "electron_pulses": 0.0,
        "measurement": 0.0,
        "barriers": 0.0,
    }
    last_inferred = None
    for position, instruction in enumerate(program.instructions):
        duration = timing.instruction_duration(instruction, current, cfg, current.tip_position)
        durations.append(duration)
        categories[timing.duration_category(instruction)] += duration
        if isinstance(instruction, MoveTip):
            current = current.with_tip(instruction.target)
        elif isinstance(instruction, ApplyPulse):
            state, outcome = engine.apply_selective_pulse(state, instruction.pulse, current, cfg)
            pulse_log.append((position, outcome))
        elif isinstance(instruction, ConditionalPulse):
            if last_inferred == instruction.on_last_measurement:
                state, outcome = engine.apply_selective_pulse(
                    state, instruction.pulse, current, cfg
                )
                pulse_log.append((position, outcome))
            else:
                pulse_log.append((position, None))
        elif isinstance(instruction, MeasureViaCurrent):
            record, state = readout.measure_via_current(
                state, instruction.qubit, current, cfg, rng, trace_snr
            )
            records.append(record)
            last_inferred = record.inferred_p_bit
        # Barrier: nothing to do
    report = timing.build_report(durations, categories, cfg, program.gate_count)
    return ExecutionResult(
        final_state=state,
        records=tuple(records),
        timing=report,
        pulse_log=tuple(pulse_log),
        final_tip_position=current.tip_position,
    )

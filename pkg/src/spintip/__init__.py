"""Pulse-level simulator and compiler for a tip-driven electron-nuclear spin register.

A movable probe tip carries a spin that shuttles quantum information between
otherwise isolated donor qubits; every gate bottoms out in frequency-selective
RF pulses whose lines this package derives from the register's spin
Hamiltonian. The public surface re-exported here covers the physics layer
(energies, transition lines), the state engine (pulses, measurement), the
compiler (gates to pulse programs), readout, timing, and multi-tip scheduling.
"""

from .compiler import (
    ExecutionResult,
    cnot_frequencies,
    compile_circuit,
    compile_cnot,
    compile_gate,
    compile_init,
    compile_rotation,
    execute,
    init_frequencies,
    rotation_frequency,
)
from .config import SPECIES_INFO, MachineConfig, Species, SpeciesInfo, load_machine_config
from .engine import (
    AncillaDiagnostics,
    Channel,
    Pulse,
    PulseMode,
    PulseOutcome,
    PureState,
    ancilla_diagnostics,
    apply_selective_pulse,
    measure_spin,
    thermal_ground_probability,
    thermal_sample,
)
from .errors import (
    AliasingError,
    CircuitParseError,
    ConfigError,
    DegenerateState,
    IllFormedProgram,
    MismatchedRegister,
    SameQubit,
    SimulationError,
    TipParked,
    UnclassifiableFrequency,
)
from .physics import (
    closed_form_frequencies,
    configuration_energy,
    frequency_audit,
    min_spectral_gap,
    modulation_frequency,
    site_flip_frequency_array,
    transition_frequency,
    zeeman_splitting,
)
from .program import (
    ApplyPulse,
    Barrier,
    Circuit,
    CnotGate,
    ConditionalPulse,
    InitGate,
    MeasureGate,
    MeasureViaCurrent,
    MoveTip,
    PulseProgram,
    RotGate,
    format_circuit,
    parse_circuit,
    program_to_text,
    validate_program,
)
from .readout import (
    CurrentTrace,
    MeasurementRecord,
    classify_frequency,
    detect_peak,
    measure_via_current,
    modulation_lines,
    synth_trace,
)
from .register import PARKED, RegisterLayout
from .scheduler import (
    GateTask,
    TimelineEntry,
    TipAssignment,
    expand_tasks,
    schedule_multi_tip,
    validate_assignment,
)
from .timing import (
    TimingReport,
    analyze_program,
    decoherence_budget,
    duration_category,
    instruction_duration,
    move_duration,
)

__version__ = "0.1.0"

__all__ = [
    "AliasingError",
    "AncillaDiagnostics",
    "ApplyPulse",
    "Barrier",
    "Channel",
    "Circuit",
    "CircuitParseError",
    "CnotGate",
    "ConditionalPulse",
    "ConfigError",
    "CurrentTrace",
    "DegenerateState",
    "ExecutionResult",
    "GateTask",
    "IllFormedProgram",
    "InitGate",
    "MachineConfig",
    "MeasureGate",
    "MeasureViaCurrent",
    "MeasurementRecord",
    "MismatchedRegister",
    "MoveTip",
    "PARKED",
    "Pulse",
    "PulseMode",
    "PulseOutcome",
    "PulseProgram",
    "PureState",
    "RegisterLayout",
    "RotGate",
    "SPECIES_INFO",
    "SameQubit",
    "SimulationError",
    "Species",
    "SpeciesInfo",
    "TimelineEntry",
    "TimingReport",
    "TipAssignment",
    "TipParked",
    "UnclassifiableFrequency",
    "analyze_program",
    "ancilla_diagnostics",
    "apply_selective_pulse",
    "classify_frequency",
    "closed_form_frequencies",
    "cnot_frequencies",
    "compile_circuit",
    "compile_cnot",
    "compile_gate",
    "compile_init",
    "compile_rotation",
    "configuration_energy",
    "decoherence_budget",
    "detect_peak",
    "duration_category",
    "execute",
    "expand_tasks",
    "format_circuit",
    "frequency_audit",
    "init_frequencies",
    "instruction_duration",
    "load_machine_config",
    "measure_spin",
    "measure_via_current",
    "min_spectral_gap",
    "modulation_frequency",
    "modulation_lines",
    "move_duration",
    "parse_circuit",
    "program_to_text",
    "rotation_frequency",
    "schedule_multi_tip",
    "site_flip_frequency_array",
    "synth_trace",
    "thermal_ground_probability",
    "thermal_sample",
    "transition_frequency",
    "validate_assignment",
    "validate_program",
    "zeeman_splitting",
]

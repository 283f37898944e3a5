"""
Energy levels and transition lines
==================================

Walks the static side of the simulator: configuration energies of a
single-qubit register, how the travelling tip reshapes the spectrum, the
closed-form line formulas, and the audit that ties those formulas back to
engine-derived transitions.
"""

import itertools

from spintip import (
    PARKED,
    MachineConfig,
    RegisterLayout,
    closed_form_frequencies,
    configuration_energy,
    frequency_audit,
    min_spectral_gap,
    site_flip_frequency_array,
    transition_frequency,
)

cfg = MachineConfig()
print(f"field {cfg.magnetic_field} T, couplings {cfg.hyperfine_bare:.3g} / "
      f"{cfg.hyperfine_tip_modified:.3g} / {cfg.tip_hyperfine:.3g} Hz")

# One qubit is three spins: its nucleus, its electron, and the tip carbon.
# Energies are reported in Hz (energy over Planck's constant).
print("\nconfiguration energies (nucleus, electron, tip bits) in GHz")
for tip_position, tag in ((0, "tip on the qubit"), (PARKED, "tip parked")):
    layout = RegisterLayout(1, tip_position=tip_position)
    print(f"  {tag}:")
    for bits in itertools.product((0, 1), repeat=3):
        energy = configuration_energy(bits, layout, cfg)
        print(f"    |{''.join(map(str, bits))}>  {energy / 1e9:+14.6f}")

# A pulse addresses one site; its resonance depends on every coupled partner.
layout = RegisterLayout(1, tip_position=0)
print("\ntransition lines with the tip engaged (MHz)")
for site, name in ((0, "nucleus"), (1, "electron"), (2, "tip carbon")):
    lines = sorted(set(site_flip_frequency_array(layout, cfg, site).round(3)))
    formatted = ", ".join(f"{line / 1e6:.3f}" for line in lines)
    print(f"  {name:10s} {formatted}")

# The same physics in closed form: these never touch the engine path, which
# is exactly what makes them useful as a cross-check.
print("\nclosed-form drive lines (MHz)")
for name, value in closed_form_frequencies(cfg).items():
    print(f"  {name:22s} {value / 1e6:16.6f}")

# The audit matches each formula to an engine transition and reports which
# spectator bits realize it.
print("\nformula audit")
for entry in frequency_audit(cfg):
    verdict = "ok" if entry["matched"] else "UNMATCHED"
    spectators = [match["spectators"] for match in entry["matches"]]
    print(f"  {entry['formula']:22s} {verdict:9s} residual "
          f"{entry['best_residual_hz']:.2e} Hz  spectators {spectators}")

print(f"\nsmallest gap between any two distinct lines: "
      f"{min_spectral_gap(cfg) / 1e6:.3f} MHz")

# That gap is what frequency selectivity lives on: a pulse within
# selectivity_tolerance of a line flips it, anything further is ignored.
sample = transition_frequency((0, 0, 0), 0, layout, cfg)
print(f"ground nuclear line {sample / 1e6:.6f} MHz, "
      f"tolerance {cfg.selectivity_tolerance:.0f} Hz")

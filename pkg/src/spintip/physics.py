"""Diagonal spin Hamiltonian: energies, transition lines, reference formulas.

Basis states are energy eigenstates here, so every configuration has a sharp
energy (in Hz) and every single-spin flip a sharp transition frequency. Scalar
entry points evaluate in extended precision and round once to float64; the
vectorized per-site line arrays used by pulse application are plain float64
(their ~1e-5 Hz rounding is negligible against any sane selectivity window).
"""

import itertools

import numpy as np

from .config import SPECIES_INFO, Species
from .errors import MismatchedRegister
from .register import PARKED, RegisterLayout, index_of_bits

_EXACT = np.longdouble


def _zeeman_coefficient(species, cfg, dtype=np.float64):
    """Signed dE/dm of one species in the static field, in Hz.

    Positive for the electron (moment anti-parallel to spin), negative for
    both nuclear species; the sign is what makes "down" the electron ground
    orientation and "up" the nuclear one.
    """
    info = SPECIES_INFO[species]
    if info.uses_bohr_magneton:
        scale = dtype(info.g_factor) * dtype(cfg.bohr_magneton)
    else:
        scale = -(dtype(info.g_factor) * dtype(cfg.nuclear_magneton))
    return scale / dtype(cfg.planck_constant) * dtype(cfg.magnetic_field)


def zeeman_splitting(species, cfg):
    """Bare two-level splitting (Hz) of one species in the static field."""
    return float(abs(_zeeman_coefficient(species, cfg)))


def configuration_energy(config, layout, cfg):
    """Total energy (Hz) of one basis configuration under the current tip.

    Each qubit contributes electron and nuclear Zeeman terms plus their
    hyperfine product term, using the tip-modified coupling when the tip sits
    on that qubit. The tip carbon contributes its Zeeman term always and its
    electron coupling only while the tip is over a qubit.
    """
    if len(config) != layout.num_sites:
        raise MismatchedRegister(
            f"configuration of {len(config)} bits for a {layout.num_sites}-site register"
        )
    m = [
        _EXACT(SPECIES_INFO[layout.species_of(s)].m_of_bit(config[s]))
        for s in range(layout.num_sites)
    ]
    z_electron = _zeeman_coefficient(Species.ELECTRON, cfg, _EXACT)
    z_nucleus = _zeeman_coefficient(Species.PHOSPHORUS_NUCLEUS, cfg, _EXACT)
    z_tip = _zeeman_coefficient(Species.TIP_CARBON_NUCLEUS, cfg, _EXACT)
    total = _EXACT(0.0)
    for q in range(layout.num_qubits):
        m_n = m[layout.nucleus_site(q)]
        m_e = m[layout.electron_site(q)]
        coupling = cfg.hyperfine_tip_modified if layout.tip_position == q else cfg.hyperfine_bare
        total += z_electron * m_e + z_nucleus * m_n + _EXACT(coupling) * m_e * m_n
    m_tip = m[layout.tip_site]
    total += z_tip * m_tip
    if layout.tip_position is not PARKED:
        m_e = m[layout.electron_site(layout.tip_position)]
        total += _EXACT(cfg.tip_hyperfine) * m_e * m_tip
    return float(total)


def _flip_magnitudes(layout, cfg, site, indices, dtype):
    """|dE| for flipping ``site`` out of each basis index in ``indices``.

    Single implementation behind both the scalar (extended-precision) and the
    vectorized (float64) entry points, so the two routes cannot drift apart.
    Because the energy is bilinear, the flip magnitude is the site's Zeeman
    coefficient plus its coupling terms evaluated at the partner spins.
    """
    n = layout.num_sites
    species = layout.species_of(site)

    def partner_m(other_site):
        info = SPECIES_INFO[layout.species_of(other_site)]
        bits = (indices >> (n - 1 - other_site)) & 1
        m_ground = dtype(0.5) if info.ground_orientation == "up" else dtype(-0.5)
        return np.where(bits == 0, m_ground, -m_ground)

    delta = np.zeros(np.shape(indices), dtype=dtype) + _zeeman_coefficient(species, cfg, dtype)
    if species is Species.ELECTRON:
        qubit = layout.qubit_of(site)
        on_qubit = layout.tip_position == qubit
        coupling = cfg.hyperfine_tip_modified if on_qubit else cfg.hyperfine_bare
        delta = delta + dtype(coupling) * partner_m(layout.nucleus_site(qubit))
        if on_qubit:
            delta = delta + dtype(cfg.tip_hyperfine) * partner_m(layout.tip_site)
    elif species is Species.PHOSPHORUS_NUCLEUS:
        qubit = layout.qubit_of(site)
        on_qubit = layout.tip_position == qubit
        coupling = cfg.hyperfine_tip_modified if on_qubit else cfg.hyperfine_bare
        delta = delta + dtype(coupling) * partner_m(layout.electron_site(qubit))
    else:  # tip carbon: couples to an electron only while the tip is engaged
        if layout.tip_position is not PARKED:
            delta = delta + dtype(cfg.tip_hyperfine) * partner_m(
                layout.electron_site(layout.tip_position)
            )
    return np.abs(delta)


def _transition_exact(config, site, layout, cfg):
    indices = np.array([index_of_bits(config)], dtype=np.int64)
    return _flip_magnitudes(layout, cfg, site, indices, _EXACT)[0]


def transition_frequency(config, spin_site, layout, cfg):
    """Frequency (Hz) of flipping ``spin_site`` out of basis state ``config``.

    Equals |E(flipped) - E(config)| and is the line a resonant pulse must hit.
    """
    if len(config) != layout.num_sites:
        raise MismatchedRegister(
            f"configuration of {len(config)} bits for a {layout.num_sites}-site register"
        )
    layout.species_of(spin_site)  # bounds check
    return float(_transition_exact(tuple(config), spin_site, layout, cfg))


def site_flip_frequency_array(layout, cfg, site):
    """Flip frequency of ``site`` for every basis index, as a float64 array.

    Index ``i`` and its flipped partner get identical values (the partner
    spins are what the frequency depends on), which is what lets pulse
    application test resonance once per index pair.
    """
    indices = np.arange(layout.dimension, dtype=np.int64)
    return _flip_magnitudes(layout, cfg, site, indices, np.float64)


def closed_form_frequencies(cfg):
    """The six protocol line positions, written as textbook closed forms.

    Deliberately independent of the engine's energy walk — these are the
    formulas an operator would derive by hand, kept as a cross-check route
    (see frequency_audit). Keys name the pulse's role:

    - single_qubit_rotation: qubit nuclear line driven for Rot, tip engaged
    - control_electron: control-side electron line of the entangling sequence
    - tip_nucleus: tip-carbon line conditioned on the local electron
    - target_electron_upper / _lower: target electron lines for both nuclear
      orientations, tip engaged
    - target_nucleus: target-side nuclear line of the entangling sequence
    """
    return {name: float(value) for name, value in _closed_forms_exact(cfg).items()}


def _closed_forms_exact(cfg):
    ld = _EXACT

    def larmor(species, magneton):
        return (
            ld(SPECIES_INFO[species].g_factor)
            * ld(magneton)
            / ld(cfg.planck_constant)
            * ld(cfg.magnetic_field)
        )

    electron = larmor(Species.ELECTRON, cfg.bohr_magneton)
    nucleus = larmor(Species.PHOSPHORUS_NUCLEUS, cfg.nuclear_magneton)
    tip = larmor(Species.TIP_CARBON_NUCLEUS, cfg.nuclear_magneton)
    half_mod = ld(0.5) * ld(cfg.hyperfine_tip_modified)
    half_tip = ld(0.5) * ld(cfg.tip_hyperfine)
    return {
        "single_qubit_rotation": nucleus - half_mod,
        "control_electron": electron + half_tip - half_mod,
        "tip_nucleus": np.abs(tip - half_tip),
        "target_electron_upper": electron + half_mod + half_tip,
        "target_electron_lower": electron - half_mod + half_tip,
        "target_nucleus": nucleus - half_mod,
    }


def modulation_frequency(p_bit, a_bit, cfg):
    """Readout line (Hz) seen in the tunneling current for given nuclear bits.

    The current is modulated at the local electron resonance, whose position
    encodes both the qubit nucleus bit ``p_bit`` and the tip carbon bit
    ``a_bit`` while the tip sits on the qubit. Bit 0 shifts its term up
    (ground nuclear orientation raises the electron line under this sign
    convention), bit 1 down.
    """
    if p_bit not in (0, 1) or a_bit not in (0, 1):
        raise ValueError(f"bits must be 0 or 1, got {p_bit!r}, {a_bit!r}")
    ld = _EXACT
    base = (
        ld(SPECIES_INFO[Species.ELECTRON].g_factor)
        * ld(cfg.bohr_magneton)
        / ld(cfg.planck_constant)
        * ld(cfg.magnetic_field)
    )
    tip_term = ld(0.5) * ld(cfg.tip_hyperfine)
    qubit_term = ld(0.5) * ld(cfg.hyperfine_tip_modified)
    value = base
    value = value + (tip_term if a_bit == 0 else -tip_term)
    value = value + (qubit_term if p_bit == 0 else -qubit_term)
    return float(value)


_AUDIT_ADDRESSED = {
    "single_qubit_rotation": "nucleus",
    "control_electron": "electron",
    "tip_nucleus": "tip",
    "target_electron_upper": "electron",
    "target_electron_lower": "electron",
    "target_nucleus": "nucleus",
}


def frequency_audit(cfg, tolerance=1e-6):
    """Compare every closed form against engine flips on a one-qubit register.

    For each formula the addressed spin is flipped with every spectator
    configuration of the other two spins (tip parked on the qubit); the entry
    lists which spectator assignments reproduce the formula within
    ``tolerance`` Hz. Residuals are evaluated in extended precision so the
    comparison stays meaningful at 1e11 Hz line positions. A formula with an
    empty match list means the two routes disagree everywhere — a genuine
    physics bug on one side.
    """
    layout = RegisterLayout(1, tip_position=0)
    sites = {
        "nucleus": layout.nucleus_site(0),
        "electron": layout.electron_site(0),
        "tip": layout.tip_site,
    }
    entries = []
    for name, reference in _closed_forms_exact(cfg).items():
        addressed = _AUDIT_ADDRESSED[name]
        spectators = [s for s in ("nucleus", "electron", "tip") if s != addressed]
        matches = []
        best_residual = None
        for bits in itertools.product((0, 1), repeat=len(spectators)):
            config = [0, 0, 0]
            for spectator, bit in zip(spectators, bits):
                config[sites[spectator]] = bit
            engine = _transition_exact(tuple(config), sites[addressed], layout, cfg)
            residual = float(np.abs(engine - reference))
            record = {
                "spectators": dict(zip(spectators, bits)),
                "engine_hz": float(engine),
                "residual_hz": residual,
            }
            if best_residual is None or residual < best_residual:
                best_residual = residual
            if residual <= tolerance:
                matches.append(record)
        entries.append(
            {
                "formula": name,
                "formula_hz": float(reference),
                "addressed": addressed,
                "matches": matches,
                "matched": bool(matches),
                "best_residual_hz": best_residual,
            }
        )
    return entries


def min_spectral_gap(cfg):
    """Smallest gap (Hz) between distinct transition lines of a one-qubit register.

    Scans both tip situations (engaged on the qubit, parked), every site and
    every spectator configuration. Nearly equal values are clustered with a
    relative epsilon before taking gaps, so exactly degenerate lines do not
    report a spurious zero; what remains is the resolution a selective pulse
    must beat.
    """
    values = []
    for tip in (0, PARKED):
        layout = RegisterLayout(1, tip_position=tip)
        for site in range(layout.num_sites):
            for bits in itertools.product((0, 1), repeat=layout.num_sites):
                values.append(float(_transition_exact(bits, site, layout, cfg)))
    values.sort()
    span = max(abs(values[0]), abs(values[-1]))
    atol = span * 1e-9
    clusters = [values[0]]
    for value in values[1:]:
        if value - clusters[-1] > atol:
            clusters.append(value)
    gaps = [b - a for a, b in zip(clusters, clusters[1:])]
    return min(gaps) if gaps else float("inf")

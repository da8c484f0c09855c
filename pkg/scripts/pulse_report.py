#!/usr/bin/env python3
"""Print the designed pulse parameters of every gate, plus the nuclear-K window."""
from donorpair import (DEFAULT_GEOMETRY, GATES, compute_spectrum, design_gate,
                       displacement_detuning, kn_window, leading_order_design)
from donorpair.constants import TWO_PI
from donorpair.pulses import DEFAULT_K_ELECTRON, DEFAULT_K_NUCLEAR


def mhz(omega):
    return omega / TWO_PI / 1e6


def main():
    spec = compute_spectrum(DEFAULT_GEOMETRY)
    print(f"nominal chain: J/2pi = {mhz(spec.params.j):.4f} MHz, "
          f"(eps, eps', xi) = {tuple(f'{x:.3e}' for x in spec.smallness)}")
    print(f"{'gate':8s} {'K':>6s} {'nu (MHz)':>14s} {'Omega (kHz)':>12s} "
          f"{'tau (us)':>10s} {'B1 (mT)':>9s} {'nu leading (MHz)':>17s}")
    for name, gate in GATES.items():
        k = DEFAULT_K_ELECTRON if gate.species == "e" else DEFAULT_K_NUCLEAR
        gate = gate.with_k(k)
        pulse = design_gate(spec, gate)
        lead = leading_order_design(gate)
        omega = pulse.omega_e if gate.species == "e" else pulse.omega_n
        print(f"{gate.name:8s} {k:6d} {mhz(pulse.nu):14.4f} "
              f"{omega / TWO_PI / 1e3:12.2f} {pulse.tau * 1e6:10.4f} "
              f"{pulse.b1_amplitude * 1e3:9.4f} {mhz(lead['nu']):17.4f}")
    displaced = DEFAULT_GEOMETRY.displaced(m1=-1)
    for name in ("a", "b"):
        shift = displacement_detuning(GATES[name], displaced)
        print(f"one-site displacement detuning, gate {name}: "
              f"{shift / TWO_PI / 1e3:+.3f} kHz")
    k_min, k_max = kn_window(spec, displaced)
    print(f"usable nuclear-K window: {k_min} .. {k_max}")


if __name__ == "__main__":
    main()

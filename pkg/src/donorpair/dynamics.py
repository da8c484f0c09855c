"""Time evolution under rectangular pulses and electron relaxation.

The pulse field rotates in the transverse plane, so every drive term carries
a single phase factor exp(-+i(nu t + phi)) and the frame generated by the
total z projection Fz makes the Hamiltonian exactly time independent:

    H_rot = H0 + nu Fz + V(phi)

with lab-frame amplitudes psi_lab(t) = exp(+i nu Fz t) psi_rot(t). Because
the re-entry factor is diagonal, basis-state populations computed after a
pulse are lab-frame correct.

A direct lab-frame integrator (4th-order commutator-free Magnus stepping)
is provided as an independent cross-check of the frame construction.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pulses import PulseSpec, species_rabi
from . import register as reg

NORM_TOL = 1e-9


class StepSizeError(ValueError):
    """Integrator step does not resolve the fastest Hamiltonian scale."""


@dataclass(frozen=True)
class DriveOperators:
    """Operator set defining a driven system (register by default)."""

    fz_diag: np.ndarray
    lower: dict[str, np.ndarray]

    @property
    def dim(self) -> int:
        return self.fz_diag.size


REGISTER_OPS = DriveOperators(fz_diag=reg.FZ_DIAG, lower=reg.LOWER)


def drive_operator(pulse: PulseSpec, ops: DriveOperators = REGISTER_OPS) -> np.ndarray:
    """Static pulse operator V(phi) in the rotating frame.

    Each driven spin contributes (Omega_s / 2) L_s e^{-i phi} + h.c., with a
    minus sign on nuclear terms (opposite gyromagnetic sign) and Omega_s the
    species Rabi frequency of the shared field.
    """
    v = np.zeros((ops.dim, ops.dim), dtype=complex)
    for spin in pulse.drive_spins:
        sign = 1.0 if spin.startswith("e") else -1.0
        v += sign * 0.5 * species_rabi(pulse, spin) * ops.lower[spin]
    v *= np.exp(-1j * pulse.phi)
    return v + v.conj().T


def rotating_hamiltonian(h0: np.ndarray, pulse: PulseSpec,
                         ops: DriveOperators = REGISTER_OPS) -> np.ndarray:
    """Time-independent rotating-frame Hamiltonian H0 + nu Fz + V(phi)."""
    return h0 + pulse.nu * np.diag(ops.fz_diag) + drive_operator(pulse, ops)


def pulse_propagator(h0: np.ndarray, pulse: PulseSpec,
                     ops: DriveOperators = REGISTER_OPS) -> np.ndarray:
    """Lab-frame propagator of one full pulse, U = e^{+i nu Fz tau} e^{-i H_rot tau}."""
    h_rot = rotating_hamiltonian(h0, pulse, ops)
    w, v = np.linalg.eigh(h_rot)
    u = (v * np.exp(-1j * w * pulse.tau)) @ v.conj().T
    reentry = np.exp(1j * pulse.nu * pulse.tau * ops.fz_diag)
    return reentry[:, None] * u


def evolve_pulse(state: np.ndarray, h0: np.ndarray, pulse: PulseSpec,
                 ops: DriveOperators = REGISTER_OPS) -> np.ndarray:
    """Evolve a pure state (1-d) or density matrix (2-d) through one pulse."""
    u = pulse_propagator(h0, pulse, ops)
    if state.ndim == 1:
        return u @ state
    if state.ndim == 2:
        return u @ state @ u.conj().T
    raise ValueError("state must be a vector or a square matrix")


# -- electron relaxation ----------------------------------------------------

def _damping_kraus(spin: str) -> tuple[np.ndarray, np.ndarray]:
    keep = np.zeros((2, 2), dtype=complex)
    keep[1, 1] = 1.0              # electron ground state is bit 1
    decay = np.zeros((2, 2), dtype=complex)
    decay[1, 0] = 1.0
    k0 = [np.eye(2, dtype=complex)] * 4
    k1 = [np.eye(2, dtype=complex)] * 4
    pos = reg.SPINS.index(spin)
    k0[pos] = keep
    k1[pos] = decay
    out0, out1 = k0[0], k1[0]
    for m0, m1 in zip(k0[1:], k1[1:]):
        out0 = np.kron(out0, m0)
        out1 = np.kron(out1, m1)
    return out0, out1


_KRAUS = {spin: _damping_kraus(spin) for spin in reg.ELECTRON_SPINS}


def relax_electrons(rho: np.ndarray) -> np.ndarray:
    """Complete amplitude damping of both electrons onto their ground state.

    Trace preserving; the reduced state of the two nuclear spins is exactly
    unchanged (the channel acts on the electron factors only).
    """
    out = rho
    for spin in reg.ELECTRON_SPINS:
        k0, k1 = _KRAUS[spin]
        out = k0 @ out @ k0.conj().T + k1 @ out @ k1.conj().T
    return out


def validate_density(rho: np.ndarray, tol: float = NORM_TOL) -> None:
    if np.linalg.norm(rho - rho.conj().T) > tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > tol:
        raise ValueError("density matrix trace differs from 1")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise ValueError("density matrix has a negative eigenvalue")


# -- lab-frame reference integrator -----------------------------------------

_C1 = 0.5 - np.sqrt(3.0) / 6.0
_C2 = 0.5 + np.sqrt(3.0) / 6.0
_A1 = 0.25 + np.sqrt(3.0) / 6.0
_A2 = 0.25 - np.sqrt(3.0) / 6.0


def _expmh(h: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w)) @ v.conj().T


def integrate_lab_frame(state: np.ndarray, h0: np.ndarray, pulse: PulseSpec,
                        dt: float, ops: DriveOperators = REGISTER_OPS) -> np.ndarray:
    """Directly integrate i dpsi/dt = (H0 + V(t)) psi over one pulse.

    Commutator-free 4th-order Magnus stepping with exactly unitary steps.
    dt must resolve the fastest scale: dt * max|H| <= 0.05.
    """
    lower = np.zeros((ops.dim, ops.dim), dtype=complex)
    for spin in pulse.drive_spins:
        sign = 1.0 if spin.startswith("e") else -1.0
        lower += sign * 0.5 * species_rabi(pulse, spin) * ops.lower[spin]

    drive_amp = np.max(np.abs(lower))
    h_scale = np.max(np.abs(h0)) + 2.0 * drive_amp
    if dt * h_scale > 0.05:
        raise StepSizeError(
            f"dt*max|H| = {dt * h_scale:.3g} exceeds 0.05; decrease dt")

    def h_lab(t: float) -> np.ndarray:
        phase = np.exp(-1j * (pulse.nu * t + pulse.phi))
        return h0 + phase * lower + np.conj(phase) * lower.conj().T

    nsteps = max(1, int(np.ceil(pulse.tau / dt)))
    step = pulse.tau / nsteps
    psi = state.astype(complex).copy()
    for k in range(nsteps):
        t = k * step
        h1 = h_lab(t + _C1 * step)
        h2 = h_lab(t + _C2 * step)
        psi = _expmh(step * (_A2 * h1 + _A1 * h2)) @ (
            _expmh(step * (_A1 * h1 + _A2 * h2)) @ psi)
    return psi

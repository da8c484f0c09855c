"""Gate sequences and experiments on single chains and chain ensembles.

Pulses are always designed for the nominal geometry; the simulated chain may
be displaced. States are prepared and read out in the labelled eigenbasis of
the chain actually being driven (stationary states are what survives between
pulses), so reported errors isolate the pulse physics from basis admixture.

Ensemble runs draw independent displacements and initial states per chain
from counter-based random streams, so results are reproducible bit for bit
at any parallelism.
"""
from __future__ import annotations

import concurrent.futures as cf
from dataclasses import dataclass, field

import numpy as np

from .constants import DEFAULT_CONSTANTS, PhysicalConstants
from .dynamics import pulse_propagator, relax_electrons
from .geometry import DEFAULT_GEOMETRY, DeviceGeometry
from .pulses import (DEFAULT_K_ELECTRON, DEFAULT_K_NUCLEAR, GATES, PulseSpec,
                     design_gate)
from .spectrum import Spectrum, compute_spectrum

INIT_SUPPORT = (6, 7, 14, 15)     # electrons relaxed, nuclei arbitrary
TARGET_STATE = 15

LAW_CODES = {"none": 0, "A": 1, "B": 2}


@dataclass(frozen=True)
class DisplacementDistribution:
    """Probability r_m of a displacement of magnitude |m| (direction uniform)."""

    law: str
    r: tuple[float, float, float, float] = ()

    def __post_init__(self) -> None:
        if not self.r:
            if self.law == "none":
                object.__setattr__(self, "r", (0.0, 0.0, 0.0, 0.0))
            elif self.law in ("A", "B"):
                base = 0.5 if self.law == "A" else 0.25
                object.__setattr__(self, "r", tuple(base * 0.5**m for m in range(1, 5)))
            else:
                raise ValueError(f"unknown displacement law {self.law!r}")
        if any(x < 0 for x in self.r):
            raise ValueError("displacement probabilities must be nonnegative")
        if sum(self.r) > 1.0:
            raise ValueError("displacement probabilities sum beyond 1")

    def sample(self, rng: np.random.Generator) -> int:
        u = rng.random()
        acc = 0.0
        for mag, prob in enumerate(self.r, start=1):
            acc += prob
            if u < acc:
                return mag if rng.random() < 0.5 else -mag
        return 0


def haar_amplitudes(rng: np.random.Generator, n: int = 4) -> np.ndarray:
    """Uniformly random normalized complex amplitude vector."""
    z = rng.normal(size=n) + 1j * rng.normal(size=n)
    return z / np.linalg.norm(z)


@dataclass
class ChainSetup:
    """Everything needed to drive one chain: its spectrum and the nominal pulses."""

    geometry: DeviceGeometry
    spectrum: Spectrum
    pulses: dict[str, PulseSpec]
    propagators: dict[str, np.ndarray]


def design_protocol_pulses(k_e: int = DEFAULT_K_ELECTRON, k_n: int = DEFAULT_K_NUCLEAR,
                           gates: tuple[str, ...] = ("a", "b", "c", "d"),
                           geometry_nominal: DeviceGeometry = DEFAULT_GEOMETRY,
                           constants: PhysicalConstants = DEFAULT_CONSTANTS) -> dict[str, PulseSpec]:
    """Pulses for the listed gates, designed for the nominal chain."""
    spec0 = compute_spectrum(geometry_nominal.displaced(0, 0), constants)
    pulses = {}
    for name in gates:
        gate = GATES[name]
        k = k_e if gate.species == "e" else k_n
        pulses[name] = design_gate(spec0, gate.with_k(k), constants)
    return pulses


def setup_chain(geometry: DeviceGeometry, pulses: dict[str, PulseSpec],
                constants: PhysicalConstants = DEFAULT_CONSTANTS) -> ChainSetup:
    spec = compute_spectrum(geometry, constants)
    props = {name: pulse_propagator(spec.hamiltonian, p) for name, p in pulses.items()}
    return ChainSetup(geometry, spec, pulses, props)


def eigenstate(setup: ChainSetup, label: int) -> np.ndarray:
    return setup.spectrum.eigenvectors[:, label]


def transfer_error(setup: ChainSetup, gate_name: str, source: int, target: int) -> float:
    """1 - P(source -> target) for one pulse, eigenbasis prepared and read."""
    psi = setup.propagators[gate_name] @ eigenstate(setup, source)
    return 1.0 - abs(np.vdot(eigenstate(setup, target), psi)) ** 2


# -- single-gate sweeps ------------------------------------------------------

def sweep_gate_error(gate_name: str, m_range=range(-4, 5), k_list=(1,),
                     displaced_atom: int = 1,
                     geometry_nominal: DeviceGeometry = DEFAULT_GEOMETRY,
                     constants: PhysicalConstants = DEFAULT_CONSTANTS) -> dict[tuple[int, int], float]:
    """Error table P[(m, K)] of one gate versus displacement and K.

    The pulse is designed for the nominal chain at each K; the displaced
    chain is driven from the gate's resonant source eigenstate.
    """
    if gate_name not in GATES:
        raise ValueError(f"unknown gate {gate_name!r}")
    gate = GATES[gate_name]
    p, q = gate.resonant
    spec0 = compute_spectrum(geometry_nominal.displaced(0, 0), constants)
    out: dict[tuple[int, int], float] = {}
    for k in k_list:
        pulse = design_gate(spec0, gate.with_k(k), constants)
        for m in m_range:
            displacement = {"m1": m} if displaced_atom == 1 else {"m2": m}
            geom = geometry_nominal.displaced(**displacement)
            setup = setup_chain(geom, {gate_name: pulse}, constants)
            out[(m, k)] = transfer_error(setup, gate_name, p, q)
    return out


def sweep_neighbor_displacement(gate_name: str = "b", m_range=range(-4, 5),
                                k: int = DEFAULT_K_NUCLEAR,
                                geometry_nominal: DeviceGeometry = DEFAULT_GEOMETRY,
                                constants: PhysicalConstants = DEFAULT_CONSTANTS) -> dict[int, float]:
    """Error of a gate on atom 1 while atom 2 is displaced."""
    table = sweep_gate_error(gate_name, m_range, (k,), displaced_atom=2,
                             geometry_nominal=geometry_nominal, constants=constants)
    return {m: table[(m, k)] for m in m_range}


# -- initialization protocol -------------------------------------------------

PROTOCOL_ORDER = ("a", "b", "relax", "c", "d", "relax")


@dataclass
class ProtocolRun:
    """Record of one initialization run on one chain."""

    geometry: DeviceGeometry
    k_e: int
    k_n: int
    steps: list[tuple[str, float]] = field(default_factory=list)   # (step, P so far)
    pulse_fidelities: dict[str, float] = field(default_factory=dict)
    final_error: float = np.nan


def _target_population(setup: ChainSetup, rho: np.ndarray) -> float:
    t = eigenstate(setup, TARGET_STATE)
    return float(np.real(t.conj() @ rho @ t))


def run_initialization(geometry: DeviceGeometry,
                       k_e: int = DEFAULT_K_ELECTRON, k_n: int = DEFAULT_K_NUCLEAR,
                       initial: np.ndarray | None = None,
                       pulses: dict[str, PulseSpec] | None = None,
                       constants: PhysicalConstants = DEFAULT_CONSTANTS,
                       record: bool = True) -> ProtocolRun:
    """Polarize both nuclear spins with the four-pulse protocol.

    `initial` gives amplitudes on the labelled eigenstates: either 4 values
    on the relaxed-electron manifold (|0110>, |0111>, |1110>, |1111>) or all
    16. Defaults to the |0110>-like eigenstate. Relaxation after the second
    and fourth pulses resets the electrons; the figure of merit is
    P = 1 - population of the |1111>-like eigenstate.
    """
    if pulses is None:
        pulses = design_protocol_pulses(k_e, k_n, constants=constants)
    setup = setup_chain(geometry, pulses, constants)

    if initial is None:
        amps = np.zeros(16, dtype=complex)
        amps[6] = 1.0
    elif len(initial) == 4:
        amps = np.zeros(16, dtype=complex)
        amps[list(INIT_SUPPORT)] = np.asarray(initial, dtype=complex)
    elif len(initial) == 16:
        amps = np.asarray(initial, dtype=complex)
    else:
        raise ValueError("initial must hold 4 or 16 eigenstate amplitudes")
    amps = amps / np.linalg.norm(amps)

    run = ProtocolRun(geometry=geometry, k_e=k_e, k_n=k_n)
    psi = setup.spectrum.eigenvectors @ amps
    psi = setup.propagators["a"] @ psi
    if record:
        run.steps.append(("a", 1.0 - abs(np.vdot(eigenstate(setup, TARGET_STATE), psi)) ** 2))
    psi = setup.propagators["b"] @ psi
    rho = np.outer(psi, psi.conj())
    if record:
        run.steps.append(("b", 1.0 - _target_population(setup, rho)))
    rho = relax_electrons(rho)
    if record:
        run.steps.append(("relax", 1.0 - _target_population(setup, rho)))
    rho = setup.propagators["c"] @ rho @ setup.propagators["c"].conj().T
    if record:
        run.steps.append(("c", 1.0 - _target_population(setup, rho)))
    rho = setup.propagators["d"] @ rho @ setup.propagators["d"].conj().T
    if record:
        run.steps.append(("d", 1.0 - _target_population(setup, rho)))
    rho = relax_electrons(rho)
    run.final_error = 1.0 - _target_population(setup, rho)
    if record:
        run.steps.append(("relax", run.final_error))
        for name in ("a", "b", "c", "d"):
            p, q = GATES[name].resonant
            run.pulse_fidelities[name] = 1.0 - transfer_error(setup, name, p, q)
    return run


# -- electron-electron CNOT ---------------------------------------------------

def run_ee_cnot(geometry: DeviceGeometry, k_prime: int = 1,
                constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Error of the two-electron CNOT on a displaced chain.

    The pulse (designed for the nominal chain) should flip electron 1 given
    electron 2 set, with both nuclei polarized; returns 1 minus the
    population transferred between the corresponding eigenstates.
    """
    gate = GATES["ee"].with_k(k_prime)
    spec0 = compute_spectrum(geometry.displaced(0, 0), constants)
    pulse = design_gate(spec0, gate, constants)
    setup = setup_chain(geometry, {"ee": pulse}, constants)
    p, q = gate.resonant
    return transfer_error(setup, "ee", p, q)


# -- Monte-Carlo ensemble ------------------------------------------------------

@dataclass(frozen=True)
class EnsembleConfig:
    num_chains: int = 2000
    num_realizations: int = 8
    law: str = "A"
    k_e: int = DEFAULT_K_ELECTRON
    k_n: int = DEFAULT_K_NUCLEAR
    seed: int = 0
    threads: int = 1

    def __post_init__(self) -> None:
        if self.num_chains < 1 or self.num_realizations < 1:
            raise ValueError("chain and realization counts must be positive")
        if self.law not in LAW_CODES:
            raise ValueError(f"unknown displacement law {self.law!r}")


@dataclass(frozen=True)
class EnsembleResult:
    config: EnsembleConfig
    mean_error: float
    stderr: float
    realization_means: tuple[float, ...]


def _chain_rng(config: EnsembleConfig, realization: int, chain: int) -> np.random.Generator:
    return np.random.default_rng(
        [config.seed, LAW_CODES[config.law], config.k_n, config.k_e, realization, chain])


def _run_realization(config: EnsembleConfig, realization: int) -> float:
    """Mean protocol error over the chains of one realization."""
    pulses = design_protocol_pulses(config.k_e, config.k_n)
    dist = DisplacementDistribution(config.law)
    setups: dict[tuple[int, int], ChainSetup] = {}
    total = 0.0
    for chain in range(config.num_chains):
        rng = _chain_rng(config, realization, chain)
        m1 = dist.sample(rng)
        m2 = dist.sample(rng)
        amps = haar_amplitudes(rng)
        key = (m1, m2)
        if key not in setups:
            setups[key] = setup_chain(DEFAULT_GEOMETRY.displaced(m1, m2), pulses)
        total += _fast_protocol_error(setups[key], amps)
    return total / config.num_chains


def _fast_protocol_error(setup: ChainSetup, amps4: np.ndarray) -> float:
    psi = setup.spectrum.eigenvectors[:, list(INIT_SUPPORT)] @ amps4
    psi = setup.propagators["b"] @ (setup.propagators["a"] @ psi)
    rho = relax_electrons(np.outer(psi, psi.conj()))
    u = setup.propagators["d"] @ setup.propagators["c"]
    rho = relax_electrons(u @ rho @ u.conj().T)
    return 1.0 - _target_population(setup, rho)


def ensemble_init(config: EnsembleConfig) -> EnsembleResult:
    """Initialization error averaged over an ensemble of displaced chains.

    Chains are independent; each derives its random stream from (seed, law,
    K, realization, chain), so the result does not depend on scheduling.
    """
    realizations = list(range(config.num_realizations))
    if config.threads > 1:
        with cf.ProcessPoolExecutor(max_workers=config.threads) as pool:
            means = list(pool.map(_realization_worker,
                                  [(config, r) for r in realizations]))
    else:
        means = [_run_realization(config, r) for r in realizations]
    means_arr = np.array(means)
    stderr = (means_arr.std(ddof=1) / np.sqrt(len(means)) if len(means) > 1 else 0.0)
    return EnsembleResult(config=config,
                          mean_error=float(means_arr.mean()),
                          stderr=float(stderr),
                          realization_means=tuple(float(x) for x in means_arr))


def _realization_worker(args: tuple[EnsembleConfig, int]) -> float:
    config, realization = args
    return _run_realization(config, realization)

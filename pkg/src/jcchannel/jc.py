"""Jaynes-Cummings dynamics restricted to the zero/one excitation sector.

A two-level atom (levels |down>, |up>) couples to one field mode truncated
to photon numbers {0, 1}.  The joint basis is ordered

    index 0: |down, 0>   index 1: |down, 1>   index 2: |up, 0>   index 3: |up, 1>

(atom-major).  With total excitation at most one the |up, 1> slot is never
populated, so all dynamics lives on indices 0..2.  The closed-form evolution
below is the textbook solution of the excitation-1 block; the transfer and
residual amplitudes it produces define the atom-to-field conversion channel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qmat import QubitInput, partial_trace


@dataclass(frozen=True)
class JCParams:
    """Coupling g, field frequency nu, atomic frequency omega, interaction time t.

    Detuning delta = omega - nu and the oscillation rate
    rabi = sqrt(g^2 + delta^2/4) are derived.
    """

    g: float
    nu: float
    omega: float
    t: float

    def __post_init__(self):
        for name in ("g", "nu", "omega", "t"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"JCParams.{name} must be finite")
        if self.g <= 0:
            raise ValueError("coupling g must be positive")
        if self.t < 0:
            raise ValueError("interaction time t must be nonnegative")

    @property
    def delta(self) -> float:
        return self.omega - self.nu

    @property
    def rabi(self) -> float:
        return math.hypot(self.g, 0.5 * self.delta)

    @classmethod
    def from_detuning(cls, g: float, delta: float, t: float, nu: float = 0.0) -> "JCParams":
        return cls(g=g, nu=nu, omega=nu + delta, t=t)

    @classmethod
    def resonant(cls, g: float, t: float, nu: float = 0.0) -> "JCParams":
        return cls(g=g, nu=nu, omega=nu, t=t)


def transfer_amplitude(params: JCParams) -> complex:
    """Amplitude moved between the atom and field qubits during t.

    i e^{i(delta/2 + nu) t} sin(rabi t) g / rabi.  Its squared magnitude is
    the probability that the single excitation swaps sides; the same factor
    multiplies the input coherence.  By symmetry of the excitation-1 block
    it applies to both transfer directions.
    """
    d, w = params.delta, params.rabi
    phase = np.exp(1j * (0.5 * d + params.nu) * params.t)
    return complex(1j * phase * np.sin(w * params.t) * params.g / w)


def residual_amplitude(params: JCParams) -> complex:
    """Amplitude left on the sender side (atom to field direction).

    e^{i(delta/2 + nu) t} [cos(rabi t) + i sin(rabi t) delta / (2 rabi)].
    Together with the transfer amplitude it satisfies |h_t|^2 + |h_r|^2 = 1.
    """
    d, w = params.delta, params.rabi
    phase = np.exp(1j * (0.5 * d + params.nu) * params.t)
    return complex(
        phase * (np.cos(w * params.t) + 1j * np.sin(w * params.t) * 0.5 * d / w)
    )


def reception_residual_amplitude(params: JCParams) -> complex:
    """Residual field amplitude for the field-to-atom direction.

    Same magnitude as residual_amplitude but with the detuning term
    conjugated, because the remaining excitation then sits on the
    |down, 1> side of the excitation-1 block, which carries -delta/2.
    """
    d, w = params.delta, params.rabi
    phase = np.exp(1j * (0.5 * d + params.nu) * params.t)
    return complex(
        phase * (np.cos(w * params.t) - 1j * np.sin(w * params.t) * 0.5 * d / w)
    )


def kraus_operators(params: JCParams) -> tuple[np.ndarray, np.ndarray]:
    """Kraus pair of the atom-to-field conversion channel.

    Both operators map the atomic basis (|down>, |up>) to the photon basis
    (|0>, |1>); rows index the photon state.  A1 carries the population that
    transfers, A2 the branch where the excitation stays behind on the atom
    and the field remains in vacuum.
    """
    d, w, t = params.delta, params.rabi, params.t
    a1 = np.zeros((2, 2), dtype=complex)
    a1[0, 0] = np.exp(0.5j * d * t)
    a1[1, 1] = -1j * np.exp(-1j * params.nu * t) * np.sin(w * t) * params.g / w
    a2 = np.zeros((2, 2), dtype=complex)
    a2[0, 1] = np.exp(-1j * params.nu * t) * (
        np.cos(w * t) - 1j * np.sin(w * t) * 0.5 * d / w
    )
    return a1, a2


def hamiltonian(params: JCParams) -> np.ndarray:
    """The interaction Hamiltonian on the truncated 4-dim joint space.

    nu (n_field + 1/2) + (omega/2) sigma_z + g (a^dag sigma_- + a sigma_+),
    with the ladder operators cut off above one photon.  Only the 3x3
    excitation <= 1 block is physical; the |up, 1> diagonal entry is the
    truncated remainder and is never reached by allowed initial states.
    """
    g, nu, om = params.g, params.nu, params.omega
    h = np.zeros((4, 4), dtype=complex)
    h[0, 0] = 0.5 * nu - 0.5 * om
    h[1, 1] = 1.5 * nu - 0.5 * om
    h[2, 2] = 0.5 * nu + 0.5 * om
    h[3, 3] = 1.5 * nu + 0.5 * om
    h[1, 2] = h[2, 1] = g
    return h


def joint_unitary(params: JCParams) -> np.ndarray:
    """Closed-form e^{-iHt} on the truncated joint space.

    |down,0> picks up e^{i delta t/2}.  The excitation-1 pair
    (|down,1>, |up,0>) rotates inside its 2x2 block at the rate rabi
    around the detuning axis, with the common phase e^{-i nu t}.
    """
    d, w, t = params.delta, params.rabi, params.t
    u = np.zeros((4, 4), dtype=complex)
    u[0, 0] = np.exp(0.5j * d * t)
    c, s = np.cos(w * t), np.sin(w * t)
    common = np.exp(-1j * params.nu * t)
    u[1, 1] = common * (c + 1j * s * 0.5 * d / w)
    u[2, 2] = common * (c - 1j * s * 0.5 * d / w)
    u[1, 2] = u[2, 1] = common * (-1j * s * params.g / w)
    u[3, 3] = np.exp(-1j * (1.5 * params.nu + 0.5 * params.omega) * t)
    return u


def evolve_joint(inp: QubitInput, params: JCParams) -> np.ndarray:
    """Evolve (atomic input) x (vacuum field) for time t; returns the 4x4 joint state."""
    rho = np.zeros((4, 4), dtype=complex)
    m = inp.matrix
    # atom (x) |0><0|: atomic indices 0,1 land on joint indices 0,2
    rho[np.ix_([0, 2], [0, 2])] = m
    u = joint_unitary(params)
    return u @ rho @ u.conj().T


def channel_output(inp: QubitInput, params: JCParams) -> np.ndarray:
    """Field state after conversion: trace the atom out of the evolved joint state."""
    return partial_trace(evolve_joint(inp, params), keep="second")


def residual_output(inp: QubitInput, params: JCParams) -> np.ndarray:
    """Atom state left behind: trace the field out of the evolved joint state."""
    return partial_trace(evolve_joint(inp, params), keep="first")

"""The one-amplitude channel family and its constructions.

Every channel in this package acts on a qubit input (p, r) as

    [[1 - p |h|^2,  r h], [conj(r h),  p |h|^2]]

for a single complex amplitude h.  A TransferChannel stores the amplitude
h_keep reaching the receiver together with the amplitude h_env reaching the
traced-out partner system.  Decay-free constructions satisfy
|h_keep|^2 + |h_env|^2 = 1; the Lindblad constructor may leak probability
to the decay environments, making the sum smaller.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import jc
from .qmat import QubitInput

_AMP_TOL = 1e-9


@dataclass(frozen=True)
class TransferChannel:
    h_keep: complex
    h_env: complex

    def __post_init__(self):
        hk, he = complex(self.h_keep), complex(self.h_env)
        if not (np.isfinite(hk) and np.isfinite(he)):
            raise ValueError("channel amplitudes must be finite")
        if abs(hk) > 1 + _AMP_TOL or abs(he) > 1 + _AMP_TOL:
            raise ValueError("channel amplitudes cannot exceed 1 in magnitude")
        if abs(hk) ** 2 + abs(he) ** 2 > 1 + 1e-9:
            raise ValueError("|h_keep|^2 + |h_env|^2 exceeds 1")

    @property
    def keep_prob(self) -> float:
        return min(abs(complex(self.h_keep)) ** 2, 1.0)

    @property
    def env_prob(self) -> float:
        return min(abs(complex(self.h_env)) ** 2, 1.0)

    def apply(self, inp: QubitInput) -> np.ndarray:
        h = complex(self.h_keep)
        a = abs(h) ** 2
        out = np.array(
            [
                [1.0 - inp.p * a, inp.r * h],
                [np.conj(inp.r * h), inp.p * a],
            ],
            dtype=complex,
        )
        return out

    def complement(self) -> "TransferChannel":
        return replace(self, h_keep=self.h_env, h_env=self.h_keep)

    def kraus(self) -> tuple[np.ndarray, np.ndarray]:
        """Minimal dilation Kraus pair; depends on h_keep only.

        The environment branch uses sqrt(1 - |h_keep|^2) so the pair is
        trace-preserving even for channels with decay leakage (whose
        physical h_env describes a larger environment).
        """
        h = complex(self.h_keep)
        a1 = np.array([[1.0, 0.0], [0.0, np.conj(h)]], dtype=complex)
        a2 = np.zeros((2, 2), dtype=complex)
        a2[0, 1] = np.sqrt(max(0.0, 1.0 - abs(h) ** 2))
        return a1, a2


def conversion_channel(params: jc.JCParams) -> TransferChannel:
    """Atom-to-field conversion: keep the field, trace the atom."""
    return TransferChannel(
        h_keep=jc.transfer_amplitude(params),
        h_env=jc.residual_amplitude(params),
    )


def reception_channel(params: jc.JCParams) -> TransferChannel:
    """Field-to-atom conversion: atom prepared in ground, keep the atom."""
    return TransferChannel(
        h_keep=jc.transfer_amplitude(params),
        h_env=jc.reception_residual_amplitude(params),
    )


@dataclass(frozen=True)
class LossChannel:
    """Beam-splitter loss on the photonic qubit with transmittance T."""

    T: float

    def __post_init__(self):
        if not (0.0 <= self.T <= 1.0):
            raise ValueError(f"transmittance {self.T} outside [0, 1]")

    def apply(self, inp: QubitInput) -> np.ndarray:
        return self.as_transfer().apply(inp)

    def as_transfer(self) -> TransferChannel:
        return TransferChannel(
            h_keep=np.sqrt(self.T), h_env=np.sqrt(1.0 - self.T)
        )


def loss_apply(loss: LossChannel, inp: QubitInput) -> np.ndarray:
    return loss.apply(inp)


def compose(first: TransferChannel, second: TransferChannel) -> TransferChannel:
    """Serial composition: amplitudes multiply, remainder goes to the environment.

    The composite environment amplitude is fixed by magnitude only (the
    two leftover branches live on different systems), taken real and
    nonnegative.
    """
    hk = complex(first.h_keep) * complex(second.h_keep)
    return TransferChannel(h_keep=hk, h_env=np.sqrt(max(0.0, 1.0 - abs(hk) ** 2)))


def concatenate(e1: jc.JCParams, loss: LossChannel, e2: jc.JCParams) -> TransferChannel:
    """Atom -> field -> lossy fiber -> field -> atom, as one channel.

    The keep amplitude is the product of the stage amplitudes and sqrt(T);
    the channel is decay-free, so the environment magnitude is the unit
    complement.  The overall phase of the product is retained as a single
    global phase.
    """
    hk = (
        jc.transfer_amplitude(e1)
        * np.sqrt(loss.T)
        * jc.transfer_amplitude(e2)
    )
    return TransferChannel(h_keep=hk, h_env=np.sqrt(max(0.0, 1.0 - abs(hk) ** 2)))


def extended_state(ch: TransferChannel, inp: QubitInput) -> np.ndarray:
    """(E (x) I) applied to a purification of the input, as a 4x4 state.

    Basis order is (channel output) (x) (reference).  For a diagonal input
    the purification is the canonical sqrt(1-p)|g,0> + sqrt(p)|e,1>; general
    inputs are purified through their eigendecomposition (the reference
    basis choice cannot affect any entropy).
    """
    if abs(inp.r) == 0.0:
        vecs = np.eye(2, dtype=complex)
        lams = np.array([1.0 - inp.p, inp.p])
    else:
        lam, v = np.linalg.eigh(inp.matrix)
        lams = np.clip(lam, 0.0, None)
        vecs = v.T  # rows are eigenvectors
    a1, a2 = ch.kraus()
    out = np.zeros((4, 4), dtype=complex)
    for k in (a1, a2):
        # (K (x) I) |psi> with |psi> = sum_i sqrt(lam_i) |u_i>|i>;
        # output index major, reference index minor.
        joint = np.zeros(4, dtype=complex)
        for i, (lv, vec) in enumerate(zip(lams, vecs)):
            if lv <= 0.0:
                continue
            w = np.sqrt(lv) * (k @ vec)
            joint[i] += w[0]       # |0_out, i_ref>
            joint[2 + i] += w[1]   # |1_out, i_ref>
        out += np.outer(joint, joint.conj())
    return out


def extended_apply(ch: TransferChannel, p: float) -> np.ndarray:
    """Extended channel on the canonical purification of diag(1-p, p)."""
    return extended_state(ch, QubitInput(p=p, r=0.0))

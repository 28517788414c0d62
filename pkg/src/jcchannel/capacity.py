"""Degradability classification and single-letter quantum capacity.

A one-amplitude channel is degradable exactly when the receiver gets the
larger share of the amplitude, |h_keep| > |h_env|.  Degradable channels
have capacity

    Q = max_p  H2(|h_keep|^2 p) - H2((1 - |h_keep|^2) p)

and the maximum is found by golden-section search (the objective is
strictly concave in p when |h_keep|^2 > 1/2).  Channels that are not
degradable are assigned Q = 0; for channels with decay leakage this
follows the same amplitude comparison, with the decay environment not
modeled as an extra output.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .channels import TransferChannel, extended_state, reception_channel
from .jc import JCParams
from .qmat import QubitInput, binary_entropy, von_neumann_entropy

TIE_BAND = 1e-12
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class NotDegradable(ValueError):
    """Degrading-map construction requested for a non-degradable channel."""


class DegradabilityStatus(enum.Enum):
    DEGRADABLE = "degradable"
    ANTI_DEGRADABLE = "anti-degradable"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class CapacityResult:
    status: DegradabilityStatus
    q: float
    p_star: float


def classify(ch: TransferChannel) -> DegradabilityStatus:
    """Compare |h_keep| against |h_env| with a 1e-12 tie band."""
    hk, he = abs(complex(ch.h_keep)), abs(complex(ch.h_env))
    if hk > he + TIE_BAND:
        return DegradabilityStatus.DEGRADABLE
    if hk < he - TIE_BAND:
        return DegradabilityStatus.ANTI_DEGRADABLE
    return DegradabilityStatus.BOUNDARY


def degrading_map(ch: TransferChannel) -> JCParams:
    """Resonant second-stage parameters whose reception channel degrades ch.

    The second stage must turn the kept output into the environment
    output, so its amplitude has to be w = h_env / h_keep; that is
    realizable by a resonant stage exactly when |w| <= 1.  Magnitude is
    set through sin(g' t') and the phase through nu' t' (principal
    value).  Only decay-free channels are supported.
    """
    if abs(ch.keep_prob + ch.env_prob - 1.0) > 1e-9:
        raise ValueError("degrading map construction requires a decay-free channel")
    if ch.keep_prob < 0.5 - TIE_BAND:
        raise NotDegradable(
            f"|h_keep|^2 = {ch.keep_prob} < 1/2: environment holds the larger share"
        )
    hk, he = complex(ch.h_keep), complex(ch.h_env)
    ratio = min(1.0, abs(he) / abs(hk))
    tp = math.asin(ratio)  # g' t' with g' = 1
    if tp == 0.0:
        return JCParams.resonant(g=1.0, t=0.0, nu=0.0)
    # want i e^{i nu' t'} sin(g' t') = h_env / h_keep
    want = he / hk
    phase = math.atan2(want.imag, want.real) - 0.5 * math.pi
    phase = math.remainder(phase, 2.0 * math.pi)  # principal value
    return JCParams.resonant(g=1.0, t=tp, nu=phase / tp)


def degrading_channel(ch: TransferChannel) -> TransferChannel:
    """The reception channel realizing degrading_map(ch)."""
    return reception_channel(degrading_map(ch))


def coherent_information(ch: TransferChannel, p: float, r: complex = 0.0) -> float:
    """I_c = S(output) - S(extended output), in bits, via eigenvalues."""
    inp = QubitInput(p=p, r=r)
    return von_neumann_entropy(ch.apply(inp)) - von_neumann_entropy(
        extended_state(ch, inp)
    )


def coherent_information_diagonal(keep_prob: float, p: float) -> float:
    """Closed form H2(a p) - H2((1-a) p) for diagonal inputs, a = |h_keep|^2."""
    return binary_entropy(keep_prob * p) - binary_entropy((1.0 - keep_prob) * p)


def golden_section_max(f, lo: float, hi: float, tol: float = 1e-10) -> tuple[float, float]:
    """Maximize a unimodal f on [lo, hi]; returns (argmax, max)."""
    a, b = lo, hi
    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + GOLDEN * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - GOLDEN * (b - a)
            f1 = f(x1)
    xm = 0.5 * (a + b)
    return xm, f(xm)


def capacity_grid_oracle(keep_prob: float, step: float = 1e-5) -> tuple[float, float]:
    """Exhaustive p-grid maximization of the diagonal coherent information.

    Brute-force reference for the golden-section optimizer; returns
    (Q, p_star) at the stated grid resolution.
    """
    n = int(round(1.0 / step))
    ps = np.arange(n + 1) * step
    a, b = keep_prob, 1.0 - keep_prob
    vals = np.zeros_like(ps)
    for i, p in enumerate(ps):
        vals[i] = binary_entropy(a * p) - binary_entropy(b * p)
    i = int(np.argmax(vals))
    return float(vals[i]), float(ps[i])


def quantum_capacity(ch: TransferChannel) -> CapacityResult:
    status = classify(ch)
    if status is not DegradabilityStatus.DEGRADABLE:
        return CapacityResult(status=status, q=0.0, p_star=0.0)
    a = ch.keep_prob
    if a == 1.0:
        return CapacityResult(status=status, q=1.0, p_star=0.5)
    if a <= 0.5:
        # possible only with decay leakage; the objective is nonpositive
        return CapacityResult(status=status, q=0.0, p_star=0.0)
    p_star, q = golden_section_max(lambda p: coherent_information_diagonal(a, p), 0.0, 1.0)
    if q <= 0.0:
        return CapacityResult(status=status, q=0.0, p_star=0.0)
    return CapacityResult(status=status, q=q, p_star=p_star)

"""Time evolution of the single-excitation amplitudes.

A state in the one-excitation sector is written

    |psi(t)> = a0(t) |1,g,g> + a1(t) |0,e,g> + a2(t) |0,g,e>

with the photon amplitude a0 and one amplitude per excited atom. In the
slowly varying frame (a1, a2 stripped of e^{-i omega0 t}, a0 stripped of
e^{-i omega t}) the equations of motion close on the three amplitudes:

    da1/dt = -i g a0 e^{+i d t}
    da2/dt = -i g a0 e^{+i d t}
    da0/dt = -i g (a1 + a2) e^{-i d t}

with detuning d = omega0 - omega. This module carries both solution routes:
the exact closed form (``evolve_analytic``) and a fixed-step RK4 integration
of the equations above (``evolve_numeric``), kept deliberately independent so
each can check the other.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import _kernels
from .model import ModelParams

__all__ = [
    "Frame",
    "AmplitudeState",
    "InitialCondition",
    "CavityExcited",
    "BellState",
    "GeneralState",
    "SolutionCoefficients",
    "solution_coefficients",
    "amplitude_trajectory",
    "evolve_analytic",
    "evolve_numeric",
    "numeric_trajectory",
    "slow_to_full",
    "DEFAULT_DT_FACTOR",
]

Frame = Literal["slow", "full"]

# default integrator step is this factor over the coupling time scale 1/g
DEFAULT_DT_FACTOR = 1e-4


@dataclass(frozen=True)
class AmplitudeState:
    """Amplitude triple (a0, a1, a2) at time ``t`` in a named frame.

    ``a0`` multiplies |1,g,g>, ``a1`` multiplies |0,e,g>, ``a2`` multiplies
    |0,g,e>. The container itself does not validate normalization; operations
    that require a unit-norm state check on entry.
    """

    a0: complex
    a1: complex
    a2: complex
    frame: Frame = "slow"
    t: float = 0.0

    def amplitudes(self) -> tuple[complex, complex, complex]:
        return (self.a0, self.a1, self.a2)

    def probabilities(self) -> tuple[float, float, float]:
        """Moduli squared (frame independent)."""
        return (abs(self.a0) ** 2, abs(self.a1) ** 2, abs(self.a2) ** 2)

    def norm_sq(self) -> float:
        return sum(self.probabilities())


class InitialCondition:
    """Base class for t = 0 amplitude triples.

    At t = 0 the slow and full frames coincide, so one triple serves both.
    """

    def amplitudes(self) -> tuple[complex, complex, complex]:
        raise NotImplementedError

    def state(self) -> AmplitudeState:
        a0, a1, a2 = self.amplitudes()
        return AmplitudeState(a0=a0, a1=a1, a2=a2, frame="slow", t=0.0)


@dataclass(frozen=True)
class CavityExcited(InitialCondition):
    """One photon in the cavity, both atoms in the ground state."""

    def amplitudes(self) -> tuple[complex, complex, complex]:
        return (1.0 + 0.0j, 0.0j, 0.0j)


@dataclass(frozen=True)
class BellState(InitialCondition):
    """Atom-pair superposition cos(theta)|0,e,g> + sin(theta)|0,g,e>.

    ``theta`` is in radians; theta = pi/4 is the maximally entangled
    symmetric combination, theta = 3*pi/4 the antisymmetric one.
    """

    theta: float

    def amplitudes(self) -> tuple[complex, complex, complex]:
        return (0.0j, complex(math.cos(self.theta)), complex(math.sin(self.theta)))


@dataclass(frozen=True)
class GeneralState(InitialCondition):
    """Arbitrary normalized amplitude triple.

    The norm must be 1 to within 1e-10; anything worse is rejected rather
    than silently rescaled.
    """

    a0: complex
    a1: complex
    a2: complex

    def __post_init__(self) -> None:
        norm_sq = abs(self.a0) ** 2 + abs(self.a1) ** 2 + abs(self.a2) ** 2
        if abs(norm_sq - 1.0) > 1e-10:
            raise ValueError(
                "initial amplitudes must be normalized: "
                f"|a0|^2 + |a1|^2 + |a2|^2 = {norm_sq!r}"
            )

    def amplitudes(self) -> tuple[complex, complex, complex]:
        return (complex(self.a0), complex(self.a1), complex(self.a2))


@dataclass(frozen=True)
class SolutionCoefficients:
    """Constants (alpha, beta, gamma) entering the closed-form solution."""

    alpha: complex
    beta: complex
    gamma: complex


def solution_coefficients(
    init: InitialCondition, params: ModelParams
) -> SolutionCoefficients:
    """Closed-form solution constants for a given initial triple.

    With s = a1(0) + a2(0), G^2 = 8 g^2 and Omega^2 = d^2 + G^2:

        alpha = 4 g^2 s / (Omega^2 - d^2)
        beta  = (4 g^2 d s + 2 g (Omega^2 - d^2) a0(0)) / (Omega (Omega^2 - d^2))
        gamma = (2 g s - d a0(0)) / Omega

    Note Omega^2 - d^2 equals G^2 exactly, so the expressions are evaluated
    with that substitution; they stay finite for every valid parameter set.
    """
    a0_0, a1_0, a2_0 = init.amplitudes()
    g = params.g
    d = params.detuning
    omega_r = params.generalized_rabi
    g_sq8 = params.collective_rabi**2
    s = a1_0 + a2_0
    alpha = 4.0 * g * g * s / g_sq8
    beta = (4.0 * g * g * d * s + 2.0 * g * g_sq8 * a0_0) / (omega_r * g_sq8)
    gamma = (2.0 * g * s - d * a0_0) / omega_r
    return SolutionCoefficients(alpha=alpha, beta=beta, gamma=gamma)


def amplitude_trajectory(
    init: InitialCondition, params: ModelParams, t: np.ndarray | float
):
    """Closed-form slow-frame amplitudes at one or many times.

    Parameters
    ----------
    init : InitialCondition
    params : ModelParams
    t : float or array
        Times in units where g carries the frequency scale.

    Returns
    -------
    (a0, a1, a2) : complex arrays shaped like ``t``

    Notes
    -----
    The solution is

        a1(t) = a1(0) - alpha + (alpha cos(Omega t/2) - i beta sin(Omega t/2)) e^{+i d t/2}
        a2(t) = a2(0) - alpha + (alpha cos(Omega t/2) - i beta sin(Omega t/2)) e^{+i d t/2}
        a0(t) = (a0(0) cos(Omega t/2) - i gamma sin(Omega t/2)) e^{-i d t/2}

    evaluated as written for every detuning, including d = 0.
    """
    t = np.asarray(t, dtype=float)
    coeff = solution_coefficients(init, params)
    a0_0, a1_0, a2_0 = init.amplitudes()
    d = params.detuning
    half = 0.5 * params.generalized_rabi * t
    cos_h = np.cos(half)
    sin_h = np.sin(half)
    drift = np.exp(0.5j * d * t)
    oscillation = (coeff.alpha * cos_h - 1j * coeff.beta * sin_h) * drift
    a1 = (a1_0 - coeff.alpha) + oscillation
    a2 = (a2_0 - coeff.alpha) + oscillation
    a0 = (a0_0 * cos_h - 1j * coeff.gamma * sin_h) * np.conjugate(drift)
    return a0, a1, a2


def evolve_analytic(
    init: InitialCondition, params: ModelParams, t: float
) -> AmplitudeState:
    """Exact slow-frame state at time ``t`` from the closed-form solution."""
    a0, a1, a2 = amplitude_trajectory(init, params, float(t))
    return AmplitudeState(
        a0=complex(a0), a1=complex(a1), a2=complex(a2), frame="slow", t=float(t)
    )


def evolve_numeric(
    init: InitialCondition,
    params: ModelParams,
    t: float,
    dt: float | None = None,
) -> AmplitudeState:
    """Slow-frame state at ``t`` from fixed-step RK4 integration.

    This route never looks at the closed form; it exists to check it.
    ``dt`` defaults to 1e-4 / g. Raises ValueError for t < 0 or dt <= 0.
    """
    t = float(t)
    if t < 0.0:
        raise ValueError(f"evolution time must be non-negative, got {t!r}")
    if dt is None:
        dt = DEFAULT_DT_FACTOR / params.g
    amps = np.array([init.amplitudes()], dtype=np.complex128)
    out = _kernels.propagate_span(amps, params.g, params.detuning, 0.0, t, float(dt))
    return AmplitudeState(
        a0=complex(out[0, 0]), a1=complex(out[0, 1]), a2=complex(out[0, 2]),
        frame="slow", t=t,
    )


def numeric_trajectory(
    init: InitialCondition,
    params: ModelParams,
    times: np.ndarray,
    dt: float | None = None,
    backend: str | None = None,
) -> np.ndarray:
    """RK4 amplitudes sampled at several times along one continuous run.

    ``times`` must be non-negative and non-decreasing. Returns an array of
    shape (len(times), 3) with columns (a0, a1, a2); integration continues
    from sample to sample instead of restarting at zero.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("times must be a non-empty 1-d array")
    if times[0] < 0.0 or np.any(np.diff(times) < 0.0):
        raise ValueError("times must be non-negative and sorted ascending")
    if dt is None:
        dt = DEFAULT_DT_FACTOR / params.g
    amps = np.array([init.amplitudes()], dtype=np.complex128)
    out = np.empty((times.size, 3), dtype=np.complex128)
    t_prev = 0.0
    for i, t_next in enumerate(times):
        amps = _kernels.propagate_span(
            amps, params.g, params.detuning, t_prev, float(t_next), float(dt),
            backend=backend,
        )
        out[i] = amps[0]
        t_prev = float(t_next)
    return out


def slow_to_full(state: AmplitudeState, params: ModelParams) -> AmplitudeState:
    """Restore the optical carrier phases: a0 *= e^{-i omega t}, a1,a2 *= e^{-i omega0 t}.

    Moduli are unchanged; at resonance the two phase factors coincide, so the
    full-frame state differs from the slow-frame one by a global phase only.
    Raises ValueError when handed anything but a slow-frame state.
    """
    if state.frame != "slow":
        raise ValueError(f"expected a slow-frame state, got frame={state.frame!r}")
    cavity_phase = cmath.exp(-1j * params.omega * state.t)
    atom_phase = cmath.exp(-1j * params.omega0 * state.t)
    return AmplitudeState(
        a0=state.a0 * cavity_phase,
        a1=state.a1 * atom_phase,
        a2=state.a2 * atom_phase,
        frame="full",
        t=state.t,
    )

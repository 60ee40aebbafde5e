"""Bipartite entanglement measures and sharing inequalities.

The measure used throughout is Y = 1 - sqrt(2/K - 1), where K is the Schmidt
weight (participation ratio of the two reduced eigenvalues) of a one-to-other
bipartition; equivalently Y = 1 - sqrt(1 - C^2) with C the concurrence of the
same cut. For a normalized single-excitation state the three one-to-other
measures reduce to

    y_i = 2 * min(p_j + p_k, p_i),   p_i = |a_i|^2

which is the fast path. The Schmidt-weight route through the reduced density
matrix is kept alongside as an independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import AmplitudeState

__all__ = [
    "SchmidtPair",
    "EntanglementTriple",
    "MonogamyReport",
    "schmidt_weight",
    "y_from_schmidt_weight",
    "y_from_concurrence",
    "one_to_other",
    "reduced_eigenvalues",
    "pairwise_concurrence",
    "one_to_other_concurrence",
    "check_monogamy",
    "NORM_TOL",
]

# measures accept states whose norm drifted by at most this much, then renormalize
NORM_TOL = 1e-8

_DOMAIN_SLACK = 1e-12


@dataclass(frozen=True)
class SchmidtPair:
    """Eigenvalue pair of a one-qubit reduced density matrix, mu1 >= mu2."""

    mu1: float
    mu2: float

    def __post_init__(self) -> None:
        if self.mu1 < self.mu2:
            raise ValueError(f"eigenvalues out of order: {self.mu1!r} < {self.mu2!r}")
        if self.mu2 < -_DOMAIN_SLACK or self.mu1 > 1.0 + _DOMAIN_SLACK:
            raise ValueError(f"eigenvalues outside [0, 1]: ({self.mu1!r}, {self.mu2!r})")
        if abs(self.mu1 + self.mu2 - 1.0) > 1e-10:
            raise ValueError(
                f"eigenvalues must sum to 1, got {self.mu1 + self.mu2!r}"
            )


@dataclass(frozen=True)
class EntanglementTriple:
    """One-to-other measures for the cavity (y0) and the two atoms (y1, y2)."""

    y0: float
    y1: float
    y2: float

    @property
    def y_sum(self) -> float:
        return self.y0 + self.y1 + self.y2

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.y0, self.y1, self.y2)


@dataclass(frozen=True)
class MonogamyReport:
    """Slack of the squared-concurrence sharing bound for each focus party.

    slack_i = C_{i(jk)}^2 - C_{ij}^2 - C_{ik}^2; the bound requires
    slack_i >= 0 (up to ``tol``). ``passed[i]`` records slack_i >= -tol.
    """

    slacks: tuple[float, float, float]
    passed: tuple[bool, bool, bool]
    tol: float

    @property
    def all_passed(self) -> bool:
        return all(self.passed)


def _probabilities(state: AmplitudeState) -> tuple[float, float, float]:
    # accept mild propagator drift, renormalize, reject anything worse
    p0, p1, p2 = state.probabilities()
    total = p0 + p1 + p2
    if abs(total - 1.0) > NORM_TOL:
        raise ValueError(
            f"state is not normalized: |a0|^2+|a1|^2+|a2|^2 = {total!r}"
        )
    return (p0 / total, p1 / total, p2 / total)


def schmidt_weight(pair: SchmidtPair) -> float:
    """Participation ratio K = 1 / (mu1^2 + mu2^2), in [1, 2] for a qubit cut."""
    return 1.0 / (pair.mu1 * pair.mu1 + pair.mu2 * pair.mu2)


def y_from_schmidt_weight(k: float) -> float:
    """Y = 1 - sqrt(2/k - 1). Defined for k in [1, 2]."""
    if not (1.0 - _DOMAIN_SLACK <= k <= 2.0 + _DOMAIN_SLACK):
        raise ValueError(f"Schmidt weight must lie in [1, 2], got {k!r}")
    inner = 2.0 / min(max(k, 1.0), 2.0) - 1.0
    return 1.0 - math.sqrt(min(max(inner, 0.0), 1.0))


def y_from_concurrence(c: float) -> float:
    """Y = 1 - sqrt(1 - C^2). Defined for C in [0, 1]."""
    if not (-_DOMAIN_SLACK <= c <= 1.0 + _DOMAIN_SLACK):
        raise ValueError(f"concurrence must lie in [0, 1], got {c!r}")
    c = min(max(c, 0.0), 1.0)
    return 1.0 - math.sqrt(max(1.0 - c * c, 0.0))


def one_to_other(state: AmplitudeState) -> EntanglementTriple:
    """Fast-path one-to-other measures from the amplitude moduli."""
    p0, p1, p2 = _probabilities(state)
    return EntanglementTriple(
        y0=2.0 * min(p1 + p2, p0),
        y1=2.0 * min(p0 + p2, p1),
        y2=2.0 * min(p0 + p1, p2),
    )


def reduced_eigenvalues(state: AmplitudeState, party: int) -> SchmidtPair:
    """Eigenvalues of the reduced density matrix of one party.

    ``party`` indexes (0 = cavity, 1 = atom 1, 2 = atom 2). The state vector
    is embedded in the three-qubit product space, the other two parties are
    traced out, and the two eigenvalues are obtained from the trace and
    determinant of the resulting 2x2 matrix (no general eigensolver).
    """
    if party not in (0, 1, 2):
        raise ValueError(f"party must be 0, 1 or 2, got {party!r}")
    p0, p1, p2 = _probabilities(state)
    scale = 1.0 / math.sqrt(p0 + p1 + p2)
    psi = np.zeros((2, 2, 2), dtype=np.complex128)
    # axes are (cavity photon number, atom 1, atom 2); excited/occupied = 1
    psi[1, 0, 0] = state.a0 * scale
    psi[0, 1, 0] = state.a1 * scale
    psi[0, 0, 1] = state.a2 * scale
    mat = np.moveaxis(psi, party, 0).reshape(2, 4)
    rho = mat @ mat.conj().T
    trace = rho[0, 0].real + rho[1, 1].real
    det = (rho[0, 0] * rho[1, 1] - rho[0, 1] * rho[1, 0]).real
    disc = math.sqrt(max(trace * trace - 4.0 * det, 0.0))
    mu1 = 0.5 * (trace + disc)
    mu2 = 0.5 * (trace - disc)
    return SchmidtPair(mu1=min(mu1, 1.0), mu2=max(mu2, 0.0))


def pairwise_concurrence(state: AmplitudeState, i: int, j: int) -> float:
    """Concurrence of the (generally mixed) two-party cut: C_ij = 2 |a_i| |a_j|."""
    if i not in (0, 1, 2) or j not in (0, 1, 2):
        raise ValueError(f"party indices must be 0, 1 or 2, got ({i!r}, {j!r})")
    if i == j:
        raise ValueError("pairwise concurrence needs two distinct parties")
    p = _probabilities(state)
    return 2.0 * math.sqrt(p[i] * p[j])


def one_to_other_concurrence(state: AmplitudeState, i: int) -> float:
    """Concurrence of party i against the remaining two: 2 |a_i| sqrt(p_j + p_k)."""
    if i not in (0, 1, 2):
        raise ValueError(f"party must be 0, 1 or 2, got {i!r}")
    p = _probabilities(state)
    rest = p[(i + 1) % 3] + p[(i + 2) % 3]
    return 2.0 * math.sqrt(p[i] * rest)


def check_monogamy(state: AmplitudeState, tol: float = 1e-12) -> MonogamyReport:
    """Squared-concurrence sharing bound for all three focus parties."""
    p = _probabilities(state)
    slacks = []
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        whole = 4.0 * p[i] * (p[j] + p[k])
        parts = 4.0 * p[i] * p[j] + 4.0 * p[i] * p[k]
        slacks.append(whole - parts)
    slack_tuple = (slacks[0], slacks[1], slacks[2])
    passed = tuple(s >= -tol for s in slack_tuple)
    return MonogamyReport(slacks=slack_tuple, passed=passed, tol=tol)

"""Model parameters and the block-diagonal Hamiltonian.

Two identical two-level atoms couple to a single lossless cavity mode with
equal strength g (rotating-wave form). The interaction conserves the total
excitation number, so the Hamiltonian splits into finite blocks labelled by
the excitation count m. Only the m = 1 block is propagated elsewhere in this
package; blocks for any m are constructed here so the conservation structure
itself can be checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ModelParams",
    "ExcitationBlock",
    "build_params",
    "build_block",
    "direct_sum_hamiltonian",
    "verify_excitation_conservation",
]


@dataclass(frozen=True)
class ModelParams:
    """Coupling and bare frequencies, with the derived oscillation rates.

    Parameters
    ----------
    g : float
        Atom-cavity coupling strength. Must be strictly positive; every
        derived rate and the default integrator step scale with it.
    omega : float
        Cavity mode frequency.
    omega0 : float
        Atomic transition frequency (identical for both atoms).

    Notes
    -----
    All frequencies are angular and share one unit system; times elsewhere
    are expressed in units of 1/g unless stated otherwise.
    """

    g: float
    omega: float
    omega0: float

    def __post_init__(self) -> None:
        for name in ("g", "omega", "omega0"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.g <= 0.0:
            raise ValueError(f"coupling g must be strictly positive, got {self.g!r}")

    @property
    def detuning(self) -> float:
        """Atom-cavity detuning omega0 - omega."""
        return self.omega0 - self.omega

    @property
    def collective_rabi(self) -> float:
        """Resonant oscillation rate G = sqrt(8) * g of the one-excitation sector."""
        return math.sqrt(8.0) * self.g

    @property
    def generalized_rabi(self) -> float:
        """Detuned oscillation rate Omega = sqrt(detuning^2 + G^2)."""
        return math.hypot(self.detuning, self.collective_rabi)


def build_params(g: float, omega: float = 0.0, omega0: float = 0.0) -> ModelParams:
    """Validate and assemble :class:`ModelParams`."""
    return ModelParams(g=float(g), omega=float(omega), omega0=float(omega0))


@dataclass(frozen=True)
class ExcitationBlock:
    """One fixed-excitation block of the Hamiltonian.

    ``matrix`` is real symmetric (couplings are real by convention; any
    coupling phase can be absorbed into the basis states). ``basis_labels``
    names the product states |n, atom1, atom2> in row order.
    """

    m: int
    matrix: np.ndarray
    basis_labels: tuple[str, ...]

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def build_block(m: int, params: ModelParams) -> ExcitationBlock:
    """Build the m-excitation block.

    The m = 0 block is the bare ground state (energy zero). The m = 1 block
    is 3x3 over (|0,e,g>, |0,g,e>, |1,g,g>); each atom couples to the photon
    state with strength g. Blocks with m >= 2 are 4x4 over
    (|m-2,e,e>, |m-1,e,g>, |m-1,g,e>, |m,g,g>) with photon-number-enhanced
    couplings sqrt(m-1)*g and sqrt(m)*g.
    """
    if m < 0:
        raise ValueError(f"excitation number must be non-negative, got {m}")
    g, w, w0 = params.g, params.omega, params.omega0

    if m == 0:
        matrix = np.zeros((1, 1))
        labels = ("|0,g,g>",)
    elif m == 1:
        matrix = np.array(
            [
                [w0, 0.0, g],
                [0.0, w0, g],
                [g, g, w],
            ]
        )
        labels = ("|0,e,g>", "|0,g,e>", "|1,g,g>")
    else:
        low = math.sqrt(m - 1) * g
        high = math.sqrt(m) * g
        matrix = np.array(
            [
                [(m - 2) * w + 2 * w0, low, low, 0.0],
                [low, (m - 1) * w + w0, 0.0, high],
                [low, 0.0, (m - 1) * w + w0, high],
                [0.0, high, high, m * w],
            ]
        )
        labels = (
            f"|{m - 2},e,e>",
            f"|{m - 1},e,g>",
            f"|{m - 1},g,e>",
            f"|{m},g,g>",
        )
    return ExcitationBlock(m=m, matrix=matrix, basis_labels=labels)


def direct_sum_hamiltonian(max_m: int, params: ModelParams) -> tuple[np.ndarray, np.ndarray]:
    """Direct sum of blocks 0..max_m and the excitation number of each basis state.

    Returns ``(h, counts)`` where ``h`` is the assembled block-diagonal
    Hamiltonian and ``counts[i]`` is the excitation number of basis state i.
    """
    if max_m < 0:
        raise ValueError(f"excitation number must be non-negative, got {max_m}")
    blocks = [build_block(m, params) for m in range(max_m + 1)]
    dim = sum(b.dim for b in blocks)
    h = np.zeros((dim, dim))
    counts = np.zeros(dim)
    offset = 0
    for block in blocks:
        stop = offset + block.dim
        h[offset:stop, offset:stop] = block.matrix
        counts[offset:stop] = block.m
        offset = stop
    return h, counts


def verify_excitation_conservation(
    m: int,
    params: ModelParams,
    atol: float = 1e-12,
    hamiltonian: np.ndarray | None = None,
) -> bool:
    """Check that the Hamiltonian commutes with the excitation-number operator.

    Assembles blocks 0..m (or takes ``hamiltonian`` as an override of the
    assembled matrix, which lets a test inject a defect) and returns True when
    the commutator with the number operator vanishes to ``atol``.
    """
    h, counts = direct_sum_hamiltonian(m, params)
    if hamiltonian is not None:
        hamiltonian = np.asarray(hamiltonian, dtype=float)
        if hamiltonian.shape != h.shape:
            raise ValueError(
                f"hamiltonian override has shape {hamiltonian.shape}, expected {h.shape}"
            )
        h = hamiltonian
    number_op = np.diag(counts)
    commutator = h @ number_op - number_op @ h
    return bool(np.max(np.abs(commutator)) <= atol)

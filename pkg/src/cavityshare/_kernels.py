"""Numeric hot paths: fixed-step integrator, curve/grid fill, batched measures.

Every kernel ships in two spellings: a vectorized NumPy implementation and a
scalar-loop twin compiled with numba when available. The default backend is
resolved once at import from CAVITYSHARE_BACKEND ("auto", "numba", "numpy");
call sites may override per call, which the benchmark script uses to compare
the two paths on identical inputs.
"""

from __future__ import annotations

import cmath
import math
import os
import warnings

import numpy as np

ENV_BACKEND = "CAVITYSHARE_BACKEND"

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    HAS_NUMBA = False

    def njit(*args, **kwargs):  # type: ignore[misc]
        # fallback decorator: leave the function untouched
        def wrap(func):
            return func

        if args and callable(args[0]):
            return args[0]
        return wrap


def resolve_backend(requested: str | None, have_numba: bool) -> str:
    """Map an environment request onto an available backend name."""
    name = (requested or "auto").strip().lower()
    if name not in ("auto", "numba", "numpy"):
        raise ValueError(
            f"{ENV_BACKEND} must be 'auto', 'numba' or 'numpy', got {requested!r}"
        )
    if name == "numpy":
        return "numpy"
    if name == "numba" and not have_numba:
        warnings.warn(
            f"{ENV_BACKEND}=numba requested but numba is not importable; "
            "falling back to numpy",
            RuntimeWarning,
            stacklevel=2,
        )
        return "numpy"
    if name == "auto":
        return "numba" if have_numba else "numpy"
    return "numba"


BACKEND = resolve_backend(os.environ.get(ENV_BACKEND), HAS_NUMBA)


def backend_name() -> str:
    return BACKEND


def _pick(backend: str | None) -> str:
    which = BACKEND if backend is None else backend
    if which not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if which == "numba" and not HAS_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return which


# ---------------------------------------------------------------------------
# RK4 span propagation of the slow-frame amplitude equations
#   da1/dt = -i g a0 e^{+i d t}
#   da2/dt = -i g a0 e^{+i d t}
#   da0/dt = -i g (a1 + a2) e^{-i d t}
# ---------------------------------------------------------------------------


def _rk4_span_scalar(a0, a1, a2, g, delta, t0, t1, dt):
    # classic fixed-step RK4 from t0 to t1; one shortened final step lands on t1
    span = t1 - t0
    if span <= 0.0:
        return a0, a1, a2
    n_whole = int(span / dt)
    mig = -1j * g
    for k in range(n_whole + 1):
        t = t0 + k * dt
        h = dt if k < n_whole else t1 - t
        if h <= 1e-15 * max(abs(t1), 1.0):
            break
        e1 = cmath.exp(1j * delta * t)
        e2 = cmath.exp(1j * delta * (t + 0.5 * h))
        e3 = cmath.exp(1j * delta * (t + h))

        k1_1 = mig * a0 * e1
        k1_0 = mig * (a1 + a2) * e1.conjugate()

        b0 = a0 + 0.5 * h * k1_0
        b12 = 0.5 * (a1 + a2) + 0.5 * h * k1_1
        k2_1 = mig * b0 * e2
        k2_0 = mig * 2.0 * b12 * e2.conjugate()

        c0 = a0 + 0.5 * h * k2_0
        c12 = 0.5 * (a1 + a2) + 0.5 * h * k2_1
        k3_1 = mig * c0 * e2
        k3_0 = mig * 2.0 * c12 * e2.conjugate()

        d0 = a0 + h * k3_0
        d12 = 0.5 * (a1 + a2) + h * k3_1
        k4_1 = mig * d0 * e3
        k4_0 = mig * 2.0 * d12 * e3.conjugate()

        inc = (h / 6.0) * (k1_1 + 2.0 * k2_1 + 2.0 * k3_1 + k4_1)
        a1 = a1 + inc
        a2 = a2 + inc
        a0 = a0 + (h / 6.0) * (k1_0 + 2.0 * k2_0 + 2.0 * k3_0 + k4_0)
    return a0, a1, a2


_rk4_span_jit = njit(cache=True, nogil=True)(_rk4_span_scalar)


def _rk4_span_batch_numpy(amps, g, delta, t0, t1, dt):
    # same scheme vectorized over a batch of amplitude triples (columns a0,a1,a2)
    span = t1 - t0
    a0 = amps[:, 0].copy()
    a1 = amps[:, 1].copy()
    a2 = amps[:, 2].copy()
    if span <= 0.0:
        return np.stack([a0, a1, a2], axis=1)
    n_whole = int(span / dt)
    mig = -1j * g
    for k in range(n_whole + 1):
        t = t0 + k * dt
        h = dt if k < n_whole else t1 - t
        if h <= 1e-15 * max(abs(t1), 1.0):
            break
        e1 = cmath.exp(1j * delta * t)
        e2 = cmath.exp(1j * delta * (t + 0.5 * h))
        e3 = cmath.exp(1j * delta * (t + h))

        k1_1 = mig * e1 * a0
        k1_0 = (mig * e1.conjugate()) * (a1 + a2)

        b0 = a0 + 0.5 * h * k1_0
        b12 = 0.5 * (a1 + a2) + 0.5 * h * k1_1
        k2_1 = mig * e2 * b0
        k2_0 = (mig * e2.conjugate()) * (2.0 * b12)

        c0 = a0 + 0.5 * h * k2_0
        c12 = 0.5 * (a1 + a2) + 0.5 * h * k2_1
        k3_1 = mig * e2 * c0
        k3_0 = (mig * e2.conjugate()) * (2.0 * c12)

        d0 = a0 + h * k3_0
        d12 = 0.5 * (a1 + a2) + h * k3_1
        k4_1 = mig * e3 * d0
        k4_0 = (mig * e3.conjugate()) * (2.0 * d12)

        inc = (h / 6.0) * (k1_1 + 2.0 * k2_1 + 2.0 * k3_1 + k4_1)
        a1 += inc
        a2 += inc
        a0 += (h / 6.0) * (k1_0 + 2.0 * k2_0 + 2.0 * k3_0 + k4_0)
    return np.stack([a0, a1, a2], axis=1)


def propagate_span(
    amps: np.ndarray,
    g: float,
    delta: float,
    t0: float,
    t1: float,
    dt: float,
    backend: str | None = None,
) -> np.ndarray:
    """Advance a batch of amplitude triples from t0 to t1 with fixed-step RK4.

    ``amps`` has shape (n, 3) with columns (a0, a1, a2) in the slow frame.
    Returns a new array; the input is not modified.
    """
    if dt <= 0.0 or not math.isfinite(dt):
        raise ValueError(f"integrator step dt must be positive, got {dt!r}")
    if t1 < t0:
        raise ValueError(f"cannot integrate backwards, got span [{t0}, {t1}]")
    amps = np.ascontiguousarray(amps, dtype=np.complex128)
    if amps.ndim != 2 or amps.shape[1] != 3:
        raise ValueError(f"expected amplitude batch of shape (n, 3), got {amps.shape}")
    if _pick(backend) == "numba":
        out = np.empty_like(amps)
        for i in range(amps.shape[0]):
            out[i, 0], out[i, 1], out[i, 2] = _rk4_span_jit(
                amps[i, 0], amps[i, 1], amps[i, 2], g, delta, t0, t1, dt
            )
        return out
    return _rk4_span_batch_numpy(amps, g, delta, t0, t1, dt)


# ---------------------------------------------------------------------------
# Closed-form total sharing measure for the atom-pair superposition family,
# evaluated as the sum of three 2*min{...} terms
# ---------------------------------------------------------------------------


def bell_surface_numpy(theta, tau):
    """Total sharing measure for cos(theta)/sin(theta) atom superpositions.

    Broadcasts over ``theta`` (radians) and ``tau`` (dimensionless time Gt/pi).
    """
    theta = np.asarray(theta, dtype=float)
    tau = np.asarray(tau, dtype=float)
    half = 0.5 * np.pi * tau
    cos_h = np.cos(half)
    cos_sq = cos_h * cos_h
    sin_sq = np.sin(half) ** 2
    sin2t = np.sin(2.0 * theta)
    cos2t = np.cos(2.0 * theta)
    plus = 0.5 * (1.0 + sin2t)
    minus = 0.5 * (1.0 - sin2t)

    term0 = np.minimum(plus * cos_sq + minus, plus * sin_sq)
    base = 0.5 * plus * cos_sq + 0.5 * minus
    transferred = plus * sin_sq
    cross = 0.5 * cos2t * cos_h
    term1 = np.minimum(base + transferred + cross, base - cross)
    term2 = np.minimum(base + transferred - cross, base + cross)
    return 2.0 * (term0 + term1 + term2)


def _bell_row_scalar(theta, tau, out):
    # one theta row over a tau axis; mirrors bell_surface_numpy term by term
    sin2t = math.sin(2.0 * theta)
    cos2t = math.cos(2.0 * theta)
    plus = 0.5 * (1.0 + sin2t)
    minus = 0.5 * (1.0 - sin2t)
    for j in range(tau.shape[0]):
        half = 0.5 * math.pi * tau[j]
        cos_h = math.cos(half)
        cos_sq = cos_h * cos_h
        sin_sq = math.sin(half) ** 2
        term0 = min(plus * cos_sq + minus, plus * sin_sq)
        base = 0.5 * plus * cos_sq + 0.5 * minus
        transferred = plus * sin_sq
        cross = 0.5 * cos2t * cos_h
        term1 = min(base + transferred + cross, base - cross)
        term2 = min(base + transferred - cross, base + cross)
        out[j] = 2.0 * (term0 + term1 + term2)
    return out


_bell_row_jit = njit(cache=True, nogil=True)(_bell_row_scalar)


def bell_curve(theta: float, tau: np.ndarray, backend: str | None = None) -> np.ndarray:
    """One theta row of the closed-form sharing measure over a tau axis."""
    tau = np.ascontiguousarray(tau, dtype=float)
    if _pick(backend) == "numba":
        out = np.empty_like(tau)
        _bell_row_jit(float(theta), tau, out)
        return out
    return bell_surface_numpy(float(theta), tau)


# ---------------------------------------------------------------------------
# Batched sharing measures from amplitude moduli squared
# ---------------------------------------------------------------------------


def measure_batch_numpy(probs):
    """Per-party measures y_i = 2*min(p_j + p_k, p_i) for rows of (p0, p1, p2)."""
    probs = np.asarray(probs, dtype=float)
    total = probs.sum(axis=-1, keepdims=True)
    return 2.0 * np.minimum(total - probs, probs)


def _measure_batch_scalar(probs, out):
    for i in range(probs.shape[0]):
        p0 = probs[i, 0]
        p1 = probs[i, 1]
        p2 = probs[i, 2]
        out[i, 0] = 2.0 * min(p1 + p2, p0)
        out[i, 1] = 2.0 * min(p0 + p2, p1)
        out[i, 2] = 2.0 * min(p0 + p1, p2)
    return out


_measure_batch_jit = njit(cache=True, nogil=True)(_measure_batch_scalar)


def measure_batch(probs: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Batched per-party measures; ``probs`` has shape (n, 3)."""
    probs = np.ascontiguousarray(probs, dtype=float)
    if probs.ndim != 2 or probs.shape[1] != 3:
        raise ValueError(f"expected probability batch of shape (n, 3), got {probs.shape}")
    if _pick(backend) == "numba":
        out = np.empty_like(probs)
        _measure_batch_jit(probs, out)
        return out
    return measure_batch_numpy(probs)


def warm_up() -> None:
    """Trigger JIT compilation of all kernels (no-op on the numpy backend)."""
    if not HAS_NUMBA:
        return
    amps = np.array([[1.0 + 0j, 0j, 0j]])
    propagate_span(amps, 1.0, 0.5, 0.0, 2e-3, 1e-3, backend="numba")
    bell_curve(0.3, np.array([0.0, 0.5]), backend="numba")
    measure_batch(np.array([[0.2, 0.3, 0.5]]), backend="numba")

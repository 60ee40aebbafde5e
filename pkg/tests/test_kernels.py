"""Backend selection and numba/numpy kernel agreement."""

import os
import subprocess
import sys

import numpy as np
import pytest

import cavityshare as cs
from cavityshare import _kernels

needs_numba = pytest.mark.skipif(
    not _kernels.HAS_NUMBA, reason="compiled backend not installed"
)


class TestBackendSelection:
    def test_default_prefers_compiled(self):
        assert _kernels.resolve_backend(None, True) == "numba"
        assert _kernels.resolve_backend(None, False) == "numpy"

    def test_explicit_choices(self):
        assert _kernels.resolve_backend("numba", True) == "numba"
        assert _kernels.resolve_backend("numpy", True) == "numpy"

    def test_missing_compiler_falls_back_with_warning(self):
        with pytest.warns(RuntimeWarning, match="numba"):
            assert _kernels.resolve_backend("numba", False) == "numpy"

    def test_unknown_name_rejected(self):
        with pytest.raises(ValueError, match="'numba' or 'numpy'"):
            _kernels.resolve_backend("fortran", True)

    def test_module_backend_is_exposed(self):
        assert cs.backend_name() in ("numba", "numpy")
        assert cs.backend_name() == _kernels.BACKEND

    def test_environment_override_in_subprocess(self):
        env = os.environ.copy()
        env[_kernels.ENV_BACKEND] = "numpy"
        result = subprocess.run(
            [sys.executable, "-c", "import cavityshare; print(cavityshare.backend_name())"],
            capture_output=True,
            text=True,
            env=env,
        )
        assert result.returncode == 0
        assert result.stdout.strip() == "numpy"

    def test_invalid_environment_value_fails_import(self):
        env = os.environ.copy()
        env[_kernels.ENV_BACKEND] = "cuda"
        result = subprocess.run(
            [sys.executable, "-c", "import cavityshare"],
            capture_output=True,
            text=True,
            env=env,
        )
        assert result.returncode != 0
        assert "backend" in result.stderr


class TestPropagateSpan:
    def _batch(self, rng, n=6):
        raw = rng.standard_normal((n, 3)) + 1j * rng.standard_normal((n, 3))
        return raw / np.linalg.norm(raw, axis=1, keepdims=True)

    @needs_numba
    def test_backends_agree(self, rng):
        amps = self._batch(rng)
        kwargs = dict(g=1.0, delta=0.7, t0=0.0, t1=2.31, dt=1e-3)
        compiled = _kernels.propagate_span(amps, backend="numba", **kwargs)
        plain = _kernels.propagate_span(amps, backend="numpy", **kwargs)
        np.testing.assert_allclose(compiled, plain, atol=1e-12)

    def test_zero_span_returns_input(self, rng):
        amps = self._batch(rng)
        result = _kernels.propagate_span(amps, g=1.0, delta=0.0, t0=1.0, t1=1.0, dt=1e-3)
        np.testing.assert_allclose(result, amps, atol=1e-15)

    def test_partial_final_step_lands_on_endpoint(self):
        # span deliberately not divisible by dt; compare against the closed form
        params = cs.build_params(1.0, omega=0.0, omega0=0.5)
        init = cs.CavityExcited()
        t1 = 1.0005
        amps = np.array([init.amplitudes()])
        numeric = _kernels.propagate_span(
            amps, g=1.0, delta=0.5, t0=0.0, t1=t1, dt=1e-3
        )
        exact = np.array(cs.amplitude_trajectory(init, params, t1))
        np.testing.assert_allclose(numeric[0], exact, atol=1e-9)

    def test_validation(self, rng):
        amps = self._batch(rng, n=2)
        with pytest.raises(ValueError, match="dt"):
            _kernels.propagate_span(amps, g=1.0, delta=0.0, t0=0.0, t1=1.0, dt=0.0)
        with pytest.raises(ValueError, match="backward"):
            _kernels.propagate_span(amps, g=1.0, delta=0.0, t0=1.0, t1=0.5, dt=1e-3)
        with pytest.raises(ValueError, match="shape"):
            _kernels.propagate_span(
                np.zeros((2, 2), dtype=complex), g=1.0, delta=0.0, t0=0.0, t1=1.0, dt=1e-3
            )


class TestBellCurveKernel:
    @needs_numba
    def test_backends_agree(self):
        tau = np.linspace(0.0, 4.0, 257)
        for theta in (0.0, 0.3, 0.25 * np.pi, 0.75 * np.pi):
            compiled = _kernels.bell_curve(theta, tau, backend="numba")
            plain = _kernels.bell_curve(theta, tau, backend="numpy")
            np.testing.assert_allclose(compiled, plain, atol=1e-14)

    def test_matches_broadcast_surface(self):
        tau = np.linspace(0.0, 4.0, 65)
        theta = 0.4
        row = _kernels.bell_curve(theta, tau, backend="numpy")
        surface = _kernels.bell_surface_numpy(np.array([theta])[:, None], tau[None, :])
        np.testing.assert_allclose(row, surface[0], atol=1e-15)


class TestMeasureKernel:
    @needs_numba
    def test_backends_agree(self, rng):
        raw = rng.standard_normal((200, 3)) + 1j * rng.standard_normal((200, 3))
        probs = np.abs(raw / np.linalg.norm(raw, axis=1, keepdims=True)) ** 2
        compiled = _kernels.measure_batch(probs, backend="numba")
        plain = _kernels.measure_batch(probs, backend="numpy")
        np.testing.assert_allclose(compiled, plain, atol=1e-15)

    def test_matches_direct_formula(self, rng):
        raw = rng.standard_normal((50, 3)) + 1j * rng.standard_normal((50, 3))
        probs = np.abs(raw / np.linalg.norm(raw, axis=1, keepdims=True)) ** 2
        y = _kernels.measure_batch(probs)
        total = probs.sum(axis=1, keepdims=True)
        np.testing.assert_allclose(y, 2.0 * np.minimum(total - probs, probs), atol=1e-15)


def test_warm_up_is_idempotent():
    _kernels.warm_up()
    _kernels.warm_up()

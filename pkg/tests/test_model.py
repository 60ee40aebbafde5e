"""Hamiltonian block structure, spectra, and excitation conservation."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import cavityshare as cs

couplings = st.floats(min_value=1e-3, max_value=10.0, allow_nan=False)
frequencies = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False)


class TestParams:
    def test_derived_rates(self):
        params = cs.build_params(2.0, omega=1.0, omega0=1.5)
        assert params.detuning == pytest.approx(0.5)
        assert params.collective_rabi == pytest.approx(math.sqrt(8.0) * 2.0)
        assert params.generalized_rabi == pytest.approx(
            math.hypot(0.5, math.sqrt(8.0) * 2.0)
        )

    def test_resonant_rates_coincide(self):
        params = cs.build_params(1.0, omega=0.4, omega0=0.4)
        assert params.detuning == 0.0
        assert params.generalized_rabi == pytest.approx(params.collective_rabi)

    @pytest.mark.parametrize("bad", [0.0, -1.0])
    def test_rejects_nonpositive_coupling(self, bad):
        with pytest.raises(ValueError, match="strictly positive"):
            cs.build_params(bad)

    @pytest.mark.parametrize("bad", [math.nan, math.inf])
    def test_rejects_nonfinite_frequency(self, bad):
        with pytest.raises(ValueError, match="finite"):
            cs.build_params(1.0, omega=bad)


class TestBlocks:
    def test_ground_block(self):
        block = cs.build_block(0, cs.build_params(1.0))
        assert block.dim == 1
        assert block.basis_labels == ("|0,g,g>",)
        np.testing.assert_array_equal(block.matrix, [[0.0]])

    def test_one_excitation_block(self):
        block = cs.build_block(1, cs.build_params(1.3, omega=0.7, omega0=0.9))
        expected = [
            [0.9, 0.0, 1.3],
            [0.0, 0.9, 1.3],
            [1.3, 1.3, 0.7],
        ]
        np.testing.assert_allclose(block.matrix, expected, rtol=0.0, atol=0.0)
        assert block.basis_labels == ("|0,e,g>", "|0,g,e>", "|1,g,g>")

    def test_one_excitation_spectrum(self):
        # symmetric coupling of two atoms splits the dressed pair by sqrt(2) g
        block = cs.build_block(1, cs.build_params(1.0))
        eigs = np.linalg.eigvalsh(block.matrix)
        np.testing.assert_allclose(
            eigs, [-math.sqrt(2.0), 0.0, math.sqrt(2.0)], atol=1e-12
        )

    def test_higher_block_matrix(self):
        params = cs.build_params(2.0, omega=0.5, omega0=0.25)
        block = cs.build_block(3, params)
        low = math.sqrt(2.0) * 2.0
        high = math.sqrt(3.0) * 2.0
        expected = [
            [1.0, low, low, 0.0],
            [low, 1.25, 0.0, high],
            [low, 0.0, 1.25, high],
            [0.0, high, high, 1.5],
        ]
        np.testing.assert_allclose(block.matrix, expected, rtol=0.0, atol=1e-15)
        assert block.basis_labels == ("|1,e,e>", "|2,e,g>", "|2,g,e>", "|3,g,g>")

    def test_blocks_are_symmetric(self):
        params = cs.build_params(0.7, omega=1.1, omega0=0.4)
        for m in range(6):
            matrix = cs.build_block(m, params).matrix
            np.testing.assert_array_equal(matrix, matrix.T)

    def test_rejects_negative_excitation(self):
        with pytest.raises(ValueError, match="non-negative"):
            cs.build_block(-1, cs.build_params(1.0))


class TestConservation:
    def test_direct_sum_layout(self):
        h, counts = cs.direct_sum_hamiltonian(3, cs.build_params(1.0))
        assert h.shape == (12, 12)
        np.testing.assert_array_equal(counts, [0] + [1] * 3 + [2] * 4 + [3] * 4)
        # blocks with different excitation count never couple
        for i in range(12):
            for j in range(12):
                if counts[i] != counts[j]:
                    assert h[i, j] == 0.0

    @given(m=st.integers(2, 50), g=couplings, omega=frequencies, omega0=frequencies)
    def test_number_operator_commutes(self, m, g, omega, omega0):
        params = cs.build_params(g, omega=omega, omega0=omega0)
        assert cs.verify_excitation_conservation(m, params)

    def test_defect_between_blocks_is_detected(self):
        params = cs.build_params(1.0)
        h, _ = cs.direct_sum_hamiltonian(2, params)
        h = h.copy()
        h[0, 2] = h[2, 0] = 1e-6  # couples the m=0 and m=1 sectors
        assert not cs.verify_excitation_conservation(2, params, hamiltonian=h)

    def test_defect_within_block_still_conserves(self):
        params = cs.build_params(1.0)
        h, _ = cs.direct_sum_hamiltonian(2, params)
        h = h.copy()
        h[1, 2] = h[2, 1] = 0.123  # stays inside the m=1 sector
        assert cs.verify_excitation_conservation(2, params, hamiltonian=h)

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError, match="shape"):
            cs.verify_excitation_conservation(
                2, cs.build_params(1.0), hamiltonian=np.zeros((3, 3))
            )

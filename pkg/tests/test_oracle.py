"""Sine-basis spectral cross-check: matrix structure, eigensolvers, extrapolation."""

import math

import numpy as np
import pytest

import wellspec as ws
from wellspec.oracle import (
    SineBasisMatrix,
    build_matrix,
    extrapolated_oracle_spectrum,
    jacobi_eigenvalues,
    lowest_eigenvalues,
    oracle_spectrum,
    richardson,
)


class TestBuildMatrix:
    def test_center_even_rows_decouple(self):
        m = build_matrix(ws.DimensionlessConfig.exact(1, 2, 0.3), 12)
        assert np.all(m.coupling[1::2] == 0.0)  # even basis index: sin(m pi/2) = 0
        assert np.all(m.coupling[0::2] != 0.0)

    def test_two_fifths_multiples_of_five_decouple(self):
        m = build_matrix(ws.DimensionlessConfig.exact(2, 5, 0.3), 20)
        idx = np.arange(1, 21)
        assert np.all(m.coupling[idx % 5 == 0] == 0.0)
        assert np.all(m.coupling[idx % 5 != 0] != 0.0)

    def test_zero_coupling_sentinel_is_diagonal(self):
        m = build_matrix(ws.DimensionlessConfig.generic(0.3, math.inf), 6)
        assert m.sigma == 0.0
        dense = m.entries
        assert np.allclose(dense, np.diag((np.arange(1, 7) * np.pi) ** 2))

    def test_dense_form_symmetric(self):
        m = build_matrix(ws.DimensionlessConfig.generic(0.37, -0.8), 40)
        dense = m.entries
        assert np.allclose(dense, dense.T, atol=1e-12 * np.abs(dense).max())

    def test_too_small_rejected(self):
        with pytest.raises(ValueError):
            build_matrix(ws.DimensionlessConfig.generic(0.3, 1.0), 1)


class TestLowestEigenvalues:
    def test_already_diagonal(self):
        m = SineBasisMatrix(3, np.array([1.0, 4.0, 9.0]), np.zeros(3), 0.0)
        assert lowest_eigenvalues(m, 2) == [1.0, 4.0]

    def test_free_well_ladder(self):
        vals = oracle_spectrum(ws.DimensionlessConfig.generic(0.3, math.inf), 3, 50)
        assert vals == pytest.approx([math.pi**2, 4.0 * math.pi**2, 9.0 * math.pi**2], rel=1e-14)

    def test_count_bounds(self):
        m = build_matrix(ws.DimensionlessConfig.generic(0.3, 1.0), 5)
        with pytest.raises(ValueError):
            lowest_eigenvalues(m, 0)
        with pytest.raises(ValueError):
            lowest_eigenvalues(m, 6)

    def test_secular_matches_jacobi(self):
        # independent dense eigensolver agrees with the rank-one secular path
        for cfg in (
            ws.DimensionlessConfig.exact(1, 2, -0.2),
            ws.DimensionlessConfig.generic(0.3183, 1.0),
            ws.DimensionlessConfig.generic(0.71, 0.05),
        ):
            m = build_matrix(cfg, 90)
            secular = np.array(lowest_eigenvalues(m, 90))
            dense = jacobi_eigenvalues(m.entries)
            scale = np.maximum(np.abs(dense), 1.0)
            assert np.max(np.abs(secular - dense) / scale) < 1e-12

    def test_jacobi_known_spectrum(self):
        # 100x100 matrix with known eigenvalues via an orthogonal similarity
        rng = np.random.default_rng(11)
        target = np.sort(rng.uniform(-50.0, 50.0, 100))
        q, _ = np.linalg.qr(rng.normal(size=(100, 100)))
        a = q @ np.diag(target) @ q.T
        a = 0.5 * (a + a.T)
        got = jacobi_eigenvalues(a)
        assert np.max(np.abs(got - target) / np.maximum(np.abs(target), 1.0)) < 1e-12

    def test_jacobi_rejects_nonsymmetric(self):
        with pytest.raises(ValueError):
            jacobi_eigenvalues(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_variational_monotonicity_and_bound_limit(self):
        cfg = ws.DimensionlessConfig.exact(1, 2, 0.1)
        prev = None
        for m in (250, 500, 1000, 2000):
            vals = np.array(oracle_spectrum(cfg, 6, m))
            if prev is not None:
                assert np.all(vals <= prev + 1e-9)  # Rayleigh-Ritz: levels only descend
            prev = vals
        # ground level approaches -1/f^2 = -100 from above
        assert prev[0] > -100.0
        assert prev[0] == pytest.approx(-100.0, abs=0.5)

    def test_nodal_sector_exact_at_any_truncation(self):
        cfg = ws.DimensionlessConfig.exact(2, 5, 0.07)
        vals = oracle_spectrum(cfg, 12, 60)
        for j in (1, 2):
            target = (5 * j * math.pi) ** 2
            assert min(abs(v - target) for v in vals) < 1e-9 * target


class TestRichardson:
    def test_formula(self):
        assert richardson([3.0], [2.0])[0] == pytest.approx(1.0)
        assert richardson([3.0], [2.0], ratio=4.0)[0] == pytest.approx(2.0 - 1.0 / 3.0)

    def test_extrapolation_beats_raw_truncation(self):
        cfg = ws.DimensionlessConfig.exact(1, 2, -0.2)
        exact = ws.full_spectrum(cfg, 12.0 * math.pi).energies[:6]
        raw = np.array(oracle_spectrum(cfg, 6, 1000))
        extr = extrapolated_oracle_spectrum(cfg, 6, 500)
        raw_err = np.abs(raw - exact).max()
        extr_err = np.abs(extr - exact).max()
        assert extr_err < 0.05 * raw_err
        assert extr_err < 1e-4

    def test_truncation_error_decays_like_one_over_m(self):
        cfg = ws.DimensionlessConfig.generic(0.3183, 1.0)
        exact = ws.full_spectrum(cfg, 8.0 * math.pi).energies[0]
        errs = [abs(oracle_spectrum(cfg, 1, m)[0] - exact) for m in (250, 500, 1000)]
        assert 1.5 < errs[0] / errs[1] < 2.7
        assert 1.5 < errs[1] / errs[2] < 2.7

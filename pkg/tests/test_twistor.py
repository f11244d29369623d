import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles as O
from vahlen import twistor as tw
from vahlen.algebra import CL41, DIRAC, AlgebraError, gamma5
from vahlen.reps import dirac_rep

real = st.floats(-2, 2, allow_nan=False, allow_infinity=False)


class TestProjectors:
    def test_algebra(self):
        L, R = tw.projector("L"), tw.projector("R")
        assert L * L == L and R * R == R
        assert (L * R).max_abs() == 0 and (R * L).max_abs() == 0
        assert L + R == DIRAC.one()
        assert gamma5() * L == L * -1j

    def test_left_is_lower_block(self):
        assert np.array_equal(dirac_rep(tw.projector("L"), tw.KELLER_REP), np.diag([0, 0, 1, 1]))

    def test_bad_chirality(self):
        with pytest.raises(AlgebraError):
            tw.projector("X")


class TestReference:
    def test_origin(self):
        t = tw.reference_twistor([0, 0, 0, 0], [1 + 2j, -1j])
        assert np.allclose(t.components, [0, 0, 1 + 2j, -1j])

    def test_time_axis(self):
        t = tw.reference_twistor([1, 0, 0, 0], [1, 0])
        assert np.allclose(t.components, [1j, 0, 1, 0])

    @given(st.tuples(real, real, real, real), st.tuples(real, real, real, real))
    def test_penrose_oracle(self, x, z):
        xi = np.array([z[0] + 1j * z[1], z[2] + 1j * z[3]])
        t = tw.reference_twistor(x, xi)
        assert np.allclose(t.components, O.penrose(np.array(x), xi), atol=1e-12)

    def test_reflected_matrices_oracle(self, rng):
        x = rng.uniform(-1, 1, 4)
        xi = rng.normal(size=2) + 1j * rng.normal(size=2)
        g = [O.REFL_G0] + O.REFL_GK
        G5 = g[0] @ g[1] @ g[2] @ g[3]
        X = sum(x[m] * g[m] for m in range(4))
        eta = (np.eye(4) + G5 @ X) @ np.concatenate([[0, 0], xi])
        assert np.allclose(tw.reference_twistor(x, xi).components, eta)

    def test_printed_x_matrix_is_transpose(self, rng):
        x = rng.uniform(-1, 1, 4)
        assert np.allclose(tw.x_matrix(x, printed=True), tw.x_matrix(x).T)
        t = tw.reference_twistor(x, [1, 1j])
        assert t.penrose_residual(printed=True) > 1e-3


class TestIdeal:
    def test_two_paths(self, rng):
        for _ in range(100):
            x = rng.uniform(-1, 1, 4)
            U = tw.random_U(rng)
            t = tw.twistor_from_ideal(x, U)
            ref = tw.reference_twistor(x, t.xi)
            assert np.max(np.abs(t.components - ref.components)) <= 1e-12
            assert t.penrose_residual() <= 1e-12

    def test_origin_lift(self, rng):
        U = tw.random_U(rng)
        t = tw.twistor_from_ideal([0, 0, 0, 0], U)
        assert np.allclose(t.components[:2], 0)
        assert np.allclose(t.components[2:], t.xi)

    def test_weyl_spinor_is_left_handed(self, rng):
        U = tw.random_U(rng)
        assert tw.chirality_residual(U) < 1e-14

    def test_fern_identity(self, rng):
        for _ in range(20):
            assert tw.fern_residual(rng.uniform(-1, 1, 4)) < 1e-12

    def test_fern_needs_unit_lambda(self):
        # only alpha4 - alpha0 = 1 reproduces T_x P_L
        assert tw.fern_residual([0.1, 0.2, 0.3, 0.4], 0.3, 0.5) > 0.1
        assert tw.fern_residual([0.1, 0.2, 0.3, 0.4], 0.3, 1.3) < 1e-12

    def test_e4_pi_sign(self, rng):
        r = tw.e4_pi_residuals(tw.random_U(rng))
        assert r["+i"] < 1e-14 and r["-i"] > 0.1

    def test_default_lift_is_null(self, rng):
        from vahlen.algebra import conjugation
        for _ in range(10):
            b = tw.lift(rng.uniform(-1, 1, 4))
            assert (b * conjugation(b)).max_abs() < 1e-14

    def test_rejects_wrong_algebra(self):
        with pytest.raises(AlgebraError):
            tw.twistor_from_ideal([0, 0, 0, 0], DIRAC.one())


class TestIncidence:
    def test_self_incidence(self, rng):
        for _ in range(100):
            t = tw.twistor_from_ideal(rng.uniform(-1, 1, 4), tw.random_U(rng))
            assert tw.mv_norm(tw.incidence(t, t)) <= 1e-12

    def test_distinct_points(self, rng):
        U = tw.random_U(rng)
        a = tw.twistor_from_ideal([0.1, 0.2, 0.3, 0.4], U)
        b = tw.twistor_from_ideal([0.5, -0.2, 0.1, 0.0], U)
        assert tw.mv_norm(tw.incidence(a, b)) > 1e-3

    def test_scaling(self, rng):
        x, y = rng.uniform(-1, 1, 4), rng.uniform(-1, 1, 4)
        U = tw.random_U(rng)
        base = tw.robinson_scan(x, [y], U)[0][1]
        s = 1.5 + 0.5 * CL41.blade("01234")
        scaled = tw.robinson_scan(x, [y], U * s)[0][1]
        assert scaled == pytest.approx(base * (1.5 ** 2 + 0.5 ** 2), rel=1e-12)

    def test_needs_provenance(self):
        t = tw.reference_twistor([0, 0, 0, 0], [1, 0])
        with pytest.raises(AlgebraError):
            tw.incidence(t, t)

    def test_robinson_scan_includes_base_point(self, rng):
        x = rng.uniform(-1, 1, 4)
        out = tw.robinson_scan(x, [x, rng.uniform(-1, 1, 4)], tw.random_U(rng))
        assert out[0][1] < 1e-12 and out[1][1] > 0

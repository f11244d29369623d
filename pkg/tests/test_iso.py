import numpy as np
import pytest

from vahlen import iso
from vahlen.algebra import (CL24, CL30, CL41, DIRAC, AlgebraError, Multivector, conjugation,
                            exp, gamma5, random_mv, reversion)
from vahlen.conformal import vahlen_bar, vahlen_tilde
from vahlen.reps import dirac_rep


@pytest.mark.parametrize("kind", iso.ISO_KINDS)
class TestIdentifications:
    def test_generator_images_obey_cl41(self, kind):
        imgs = iso.generator_images(kind)
        one = DIRAC.one()
        for i in range(5):
            for j in range(5):
                anti = imgs[i] * imgs[j] + imgs[j] * imgs[i]
                want = 2 * CL41.square(i) if i == j else 0
                assert anti == one * want

    def test_homomorphism(self, kind, rng):
        for _ in range(50):
            a, b = random_mv(rng, CL41.sig, range(6)), random_mv(rng, CL41.sig, range(6))
            lhs = iso.iso_forward(a * b, kind)
            assert (lhs - iso.iso_forward(a, kind) * iso.iso_forward(b, kind)).max_abs() < 1e-12

    def test_bijection(self, kind, rng):
        T = iso.iso_operator(kind)
        R = np.vstack([T.real, T.imag])
        assert np.linalg.matrix_rank(R) == 32
        b = random_mv(rng, DIRAC.sig, range(5), True)
        assert (iso.iso_forward(iso.iso_backward(b, kind), kind) - b).max_abs() < 1e-12

    def test_coefficient_dictionary(self, kind, rng):
        res, bad = iso.coeff_dict_residual(kind)
        assert res <= 1e-12 and not bad
        d = iso.coeff_dict(kind)
        a = random_mv(rng, CL41.sig, range(6))
        H = {lab: CL41.coeff(a, lab).real for lab in CL41.labels()}
        B = d.forward(H)
        img = iso.iso_forward(a, kind)
        for lab, v in B.items():
            assert abs(v - DIRAC.coeff(img, lab)) < 1e-12
        back = d.backward(B)
        assert max(abs(back[k] - H[k]) for k in H) < 1e-12

    def test_rejects_complex_input(self, kind):
        with pytest.raises(AlgebraError):
            iso.iso_forward(CL41.gen(1) * 1j, kind)


def test_kind_a_gammas_are_e_nu_e_4():
    for nu in range(4):
        assert iso.iso_forward(CL41.gen(nu) * CL41.gen(4), "A") == DIRAC.gen(nu)


def test_kind_b_gamma_is_i_e():
    for mu in range(4):
        assert iso.iso_forward(CL41.gen(mu), "B") * 1j == DIRAC.gen(mu)


def test_pseudoscalar_is_central_imaginary():
    I = CL41.blade("01234")
    for kind in iso.ISO_KINDS:
        img = iso.iso_forward(I, kind)
        assert img.grades() == {0}
        assert abs(abs(img.scalar_part()) - 1) < 1e-15 and img.scalar_part().real == 0


class TestPrintedDictionaries:
    def test_kind_a_agrees(self):
        assert iso.coeff_dict_residual("A", printed=True) == (0.0, [])

    def test_kind_b_differs_at_one_row(self):
        res, bad = iso.coeff_dict_residual("B", printed=True)
        assert bad == ["2"] and res == pytest.approx(2.0)

    def test_kind_c_differs_everywhere(self):
        _, bad = iso.coeff_dict_residual("C", printed=True)
        assert len(bad) == 16


BLOCK_CASES = [(k, w) for k in iso.BLOCK_FORMULAS for w in iso.BLOCK_FORMULAS[k]]


@pytest.mark.parametrize("kind, which", BLOCK_CASES)
def test_block_formulas(kind, which, rng):
    for _ in range(20):
        Z = random_mv(rng, CL41.sig, range(6))
        assert iso.antiauto_matrix_check(Z, which, kind).passed


@pytest.mark.parametrize("which", ["reversion", "bullet"])
def test_printed_kind_b_reversion_and_bullet_fail(which, rng):
    Z = random_mv(rng, CL41.sig, range(6))
    assert iso.antiauto_matrix_check(Z, which, "B", printed=True).residual > 0.1


def test_conjugation_matches_dagger_for_kind_b(rng):
    # Zbar -> [[p1^dag, -p3^dag], [-p2^dag, p4^dag]] = J Z^dag J with J = diag(1, 1, -1, -1)
    Z = random_mv(rng, CL41.sig, range(6))
    M = iso.dirac_image(Z, "B")
    J = iso.J_SU22
    assert np.allclose(iso.dirac_image(conjugation(Z), "B"), J @ M.conj().T @ J)


class TestGroups:
    def test_su22_and_sp2(self, rng):
        for _ in range(50):
            Z = exp(random_mv(rng, CL41.sig, (1, 2)) * 0.5)
            assert iso.su22_check(Z).passed
            assert iso.sp2_check(Z).passed

    def test_pseudoscalar_phase_breaks_det(self):
        Z = exp(CL41.blade("01234") * 0.3)
        r = iso.su22_check(Z)
        assert r.form < 1e-12 and r.algebra < 1e-12
        assert r.det > 0.1

    def test_non_member(self):
        Z = CL41.one() * 2
        assert not iso.su22_check(Z).passed


class TestPeriodicitySplit:
    def test_generators(self):
        one, z = CL30.one(), Multivector.zero(CL30.sig)
        for i in (1, 2, 3):
            s = iso.periodicity_split(CL41.gen(i))
            assert s.residual(iso.VahlenSplit(CL30.gen(i), z, z, -CL30.gen(i))) == 0
        assert iso.periodicity_split(CL41.gen(4)).residual(iso.VahlenSplit(z, one, one, z)) == 0
        assert iso.periodicity_split(CL41.gen(0)).residual(iso.VahlenSplit(z, one, -one, z)) == 0

    def test_pseudoscalar(self):
        s = iso.periodicity_split(CL41.blade("01234"))
        e123 = CL30.blade("123")
        z = Multivector.zero(CL30.sig)
        assert s.residual(iso.VahlenSplit(e123, z, z, e123)) == 0

    def test_homomorphism_and_involutions(self, rng):
        for _ in range(30):
            a, b = random_mv(rng, CL41.sig, range(6)), random_mv(rng, CL41.sig, range(6))
            sa, sb = iso.periodicity_split(a), iso.periodicity_split(b)
            assert iso.periodicity_split(a * b).residual(sa @ sb) < 1e-12
            assert iso.periodicity_split(reversion(a)).residual(vahlen_tilde(sa)) < 1e-13
            assert iso.periodicity_split(conjugation(a)).residual(vahlen_bar(sa)) < 1e-13
            assert (iso.periodicity_join(sa) - a).max_abs() < 1e-13

    def test_tensor_factors(self):
        for i in range(5):
            e, m = iso.split_tensor_factors(i)
            s = iso.periodicity_split(CL41.gen(i))
            assert s.a == e * m[0, 0] and s.c == e * m[0, 1]
            assert s.b == e * m[1, 0] and s.d == e * m[1, 1]

    def test_paravector_block(self):
        a = CL41.from_labels({"": 0.5, "1": 1.0, "2": -2.0, "3": 0.25, "0": 0.75, "4": 1.5})
        s = iso.periodicity_split(a)
        x = CL30.from_labels({"": 0.5, "1": 1.0, "2": -2.0, "3": 0.25})
        assert s.a == x and s.d == conjugation(x)
        assert s.c == CL30.one() * (1.5 - 0.75)
        assert s.b == CL30.one() * (1.5 + 0.75)


class TestXi:
    def test_homomorphism_into_even_part(self, rng):
        for _ in range(20):
            a, b = random_mv(rng, CL41.sig, range(6)), random_mv(rng, CL41.sig, range(6))
            assert (iso.xi(a * b) - iso.xi(a) * iso.xi(b)).max_abs() < 1e-12
            assert iso.xi(a).grades() <= {0, 2, 4, 6}
            assert (iso.xi_inverse(iso.xi(a)) - a).max_abs() < 1e-12

    def test_embed_paravector(self, rng):
        b = random_mv(rng, CL41.sig, (0, 1))
        alpha = iso.embed_cl24(b)
        assert alpha.grades() <= {1}
        assert (iso.xi(b) - alpha * CL24.gen(5)).max_abs() < 1e-13

    def test_rejects_odd(self):
        with pytest.raises(AlgebraError):
            iso.xi_inverse(CL24.gen(0))


def test_dirac_image_of_gamma5():
    # E_0123 E_4 in kind A is g5 up to the identification of g_nu = E_nu E_4
    g = [iso.dirac_image(CL41.gen(n) * CL41.gen(4), "A") for n in range(4)]
    assert np.allclose(g[0] @ g[1] @ g[2] @ g[3], dirac_rep(gamma5()))

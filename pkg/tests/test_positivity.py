import random
from fractions import Fraction

import numpy as np
import pytest

import suites
from geowb import catalog
from geowb.forms import InvariantForm, Monomial, sigma, wedge
from geowb.metrics import HermitianMetric, form_power, fundamental_form
from geowb.positivity import (
    CERTIFIED_POSITIVE,
    FALSIFIED,
    NOT_FALSIFIED,
    SimpleForm,
    TransversalityVerdict,
    interior_product,
    is_decomposable,
    omega_a_form,
    omega_a_matrix,
    omega_a_verdict,
    pairing,
    pairing_matrix,
    quadric_matrix,
    quadric_transversality,
    recognize_omega_a,
    transversality_sample,
)
from geowb.scalars import EXACT, FLOAT, GaussRational


def G(re=0, im=0):
    return GaussRational(re, im)


A_VALUES = [G(0), G(1), G(Fraction(3, 2)), G(2), G(Fraction(5, 2))]


class TestPairing:
    def test_normalised_diagonal_block(self):
        psi = InvariantForm(2, {Monomial.make([1], [1], 2): sigma(1)})
        value = pairing(psi, SimpleForm.coordinate([2], 2))
        assert value == G(1)

    def test_dependent_factors_vanish(self):
        psi = omega_a_form(G(0))
        beta = SimpleForm.make([(1, 0, 0, 0), (2, 0, 0, 0)], 4)
        assert pairing(psi, beta) == G(0)

    def test_metric_power_positive(self):
        rnd = random.Random(5)
        for _ in range(10):
            n = rnd.randint(2, 4)
            p = rnd.randint(1, n - 1)
            diag = [rnd.randint(1, 4) for _ in range(n)]
            omega = fundamental_form(HermitianMetric.diagonal(diag))
            psi = form_power(omega, p)
            factors = [
                tuple(suites.random_scalar(rnd) for _ in range(n))
                for _ in range(n - p)
            ]
            beta = SimpleForm.make(factors, n)
            value = pairing(psi, beta)
            assert value.im == 0
            if not beta.to_form().is_zero():
                assert value.re > 0

    def test_realness_property(self):
        suites.pairing_is_real(300)

    def test_degree_mismatch(self):
        psi = omega_a_form(G(0))
        with pytest.raises(ValueError):
            pairing(psi, SimpleForm.coordinate([1], 4))

    def test_matrix_path_matches_direct(self):
        psi = catalog.eta_beta5_three_kahler_form()
        subsets, t = pairing_matrix(psi)
        rng = np.random.default_rng(7)
        for _ in range(5):
            b = rng.standard_normal((2, 5)) + 1j * rng.standard_normal((2, 5))
            p = np.array([np.linalg.det(b[:, [i - 1 for i in s]]) for s in subsets])
            via_matrix = (p @ t @ p.conj()).real
            direct = pairing(
                psi.to_float(), SimpleForm.make([tuple(map(complex, r)) for r in b])
            )
            assert abs(via_matrix - direct.real) < 1e-8 * max(1, abs(direct.real))


class TestSampling:
    def test_eta_beta5_not_falsified(self):
        psi = catalog.eta_beta5_three_kahler_form()
        verdict = transversality_sample(psi, samples=1500, seed=42)
        assert verdict.kind == NOT_FALSIFIED
        assert verdict.min_value > 0

    def test_omega_a_3_falsified(self):
        verdict = transversality_sample(omega_a_form(G(3)), samples=2000, seed=1)
        assert verdict.kind == FALSIFIED
        assert verdict.value <= 1e-9
        assert verdict.witness is not None

    def test_negated_power_falsified_fast(self):
        omega = fundamental_form(HermitianMetric.identity(3))
        psi = -form_power(omega, 2)
        verdict = transversality_sample(psi, samples=50, seed=9)
        assert verdict.kind == FALSIFIED
        assert verdict.samples <= 2

    def test_zero_form_falsified(self):
        verdict = transversality_sample(InvariantForm.zero(3), samples=10, seed=0)
        assert verdict.kind == FALSIFIED

    def test_top_degree_certified(self):
        from geowb.forms import volume_form

        verdict = transversality_sample(volume_form(3), samples=10, seed=0)
        assert verdict.kind == CERTIFIED_POSITIVE

    def test_seed_reproducibility(self):
        psi = omega_a_form(G(1))
        v1 = transversality_sample(psi, samples=300, seed=77)
        v2 = transversality_sample(psi, samples=300, seed=77)
        assert v1.to_json() == v2.to_json()

    def test_witness_value_matches_exact_pairing(self):
        verdict = transversality_sample(omega_a_form(G(3)), samples=2000, seed=1)
        w = verdict.witness
        raw = pairing(omega_a_form(G(3)).to_float(), w)
        assert abs(raw.real / w.gram_det() - verdict.value) < 1e-8

    def test_cone_property_on_shared_samples(self):
        # without refinement, per-sample values are additive in psi
        omega = fundamental_form(HermitianMetric.identity(4))
        psi1 = form_power(omega, 2)
        psi2 = omega_a_form(G(1))
        psi_sum = psi1 + psi2
        _, v1 = transversality_sample(
            psi1, samples=200, seed=5, refine=False, return_values=True
        )
        _, v2 = transversality_sample(
            psi2, samples=200, seed=5, refine=False, return_values=True
        )
        _, vs = transversality_sample(
            psi_sum, samples=200, seed=5, refine=False, return_values=True
        )
        assert np.allclose(vs, v1 + v2, rtol=1e-9, atol=1e-12)
        assert vs.min() >= v1.min() + v2.min() - 1e-12

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            transversality_sample(omega_a_form(G(1)), samples=0)
        non_real = InvariantForm(2, {Monomial.make([1], [2], 2): 1})
        with pytest.raises(ValueError):
            transversality_sample(non_real, samples=10)


class TestQuadricMatrix:
    def test_omega_a_pattern(self):
        for pair in ((1, 6), (2, 5), (3, 4)):
            a = G(1, 2)
            mat = quadric_matrix(omega_a_form(a, pair))
            expected = omega_a_matrix(a, pair)
            assert mat.entries == expected.entries

    def test_f_plus_theta_is_omega_1(self):
        # the diagonal (2,2) block plus the cross terms on slots (2,5)
        f = InvariantForm.zero(4)
        for pair_indices in ([1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]):
            m = InvariantForm(4, {Monomial.make(pair_indices, [], 4): 1})
            f = f + wedge(m, m.conjugate())
        theta = InvariantForm(
            4,
            {
                Monomial.make([1, 3], [2, 4], 4): -1,
                Monomial.make([2, 4], [1, 3], 4): -1,
            },
        )
        mat = quadric_matrix(f + theta)
        hit = recognize_omega_a(mat)
        assert hit is not None
        a, pair = hit
        assert a == G(1) and pair == (2, 5)

    def test_zero_form(self):
        mat = quadric_matrix(InvariantForm.zero(4))
        assert all(x == G(0) for row in mat.entries for x in row)

    def test_reconstruction(self):
        rnd = random.Random(3)
        half = suites.random_form(rnd, 4, terms=4, p=2, q=2)
        psi = half + half.conjugate()
        mat = quadric_matrix(psi)
        from geowb.positivity import omega_basis_form

        rebuilt = InvariantForm.zero(4)
        for j in range(6):
            for k in range(6):
                om_j = omega_basis_form(j + 1)
                om_k = omega_basis_form(k + 1)
                rebuilt = rebuilt + wedge(om_j, om_k.conjugate()).scale(
                    mat.entries[j][k]
                )
        assert rebuilt.equals(psi)
        assert mat.is_hermitian()

    def test_wrong_rank(self):
        with pytest.raises(ValueError):
            quadric_matrix(InvariantForm.zero(3))


class TestQuadricTransversality:
    def test_analytic_family(self):
        for a in A_VALUES:
            if a == G(0):
                continue
            verdict = quadric_transversality(omega_a_matrix(a))
            assert verdict.positive == omega_a_verdict(a)

    def test_identity_goes_numeric(self):
        verdict = quadric_transversality(omega_a_matrix(G(0)), starts=24, seed=2)
        assert verdict.kind == NOT_FALSIFIED
        assert abs(verdict.min_value - 1.0) < 1e-6

    def test_numeric_matches_boundary_values(self):
        # the family minimum on the quadric sphere is (2 - |a|)/2
        for a, expected in [(G(1), 0.5), (G(Fraction(3, 2)), 0.25), (G(Fraction(5, 2)), -0.25)]:
            verdict = quadric_transversality(
                omega_a_matrix(a), starts=48, seed=4, analytic=False
            )
            got = verdict.min_value if verdict.min_value is not None else verdict.value
            assert abs(got - expected) < 1e-6

    def test_boundary_a2(self):
        verdict = quadric_transversality(
            omega_a_matrix(G(2)), starts=48, seed=4, analytic=False
        )
        got = verdict.min_value if verdict.min_value is not None else verdict.value
        assert abs(got) <= 1e-6

    def test_falsified_witness_lies_on_quadric(self):
        verdict = quadric_transversality(omega_a_matrix(G(3)))
        assert verdict.kind == FALSIFIED
        w = verdict.witness
        xi = w.to_form(FLOAT)
        assert wedge(xi, xi).is_zero(1e-8)
        raw = pairing(omega_a_form(G(3)).to_float(), w)
        assert raw.real < 0

    def test_rejects_non_hermitian(self):
        from geowb.positivity import QuadricMatrix

        rows = [[G(0)] * 6 for _ in range(6)]
        rows[0][1] = G(1)
        with pytest.raises(ValueError):
            quadric_transversality(QuadricMatrix(tuple(tuple(r) for r in rows)))

    def test_sampling_agrees_in_sign(self):
        for a in A_VALUES:
            sample = transversality_sample(omega_a_form(a), samples=1200, seed=11)
            assert sample.kind in (FALSIFIED, NOT_FALSIFIED)  # never certifies
            analytic_positive = omega_a_verdict(a)
            if a == G(2):
                # boundary: minimum is exactly 0; accept either tiny side
                value = sample.min_value if sample.min_value is not None else sample.value
                assert abs(value) <= 1e-6
            else:
                assert sample.positive == analytic_positive

    def test_coordinate_directions_never_witness(self):
        import itertools

        for a in A_VALUES:
            psi = omega_a_form(a)
            for indices in itertools.combinations(range(1, 5), 2):
                value = pairing(psi, SimpleForm.coordinate(indices, 4))
                assert value.im == 0 and value.re > 0


class TestOmegaAVerdict:
    @pytest.mark.parametrize(
        "a, expected",
        [(G(0), True), (G(1), True), (G(Fraction(3, 2)), True), (G(2), False),
         (G(Fraction(5, 2)), False), (G(1, 1), True), (G(2, 1), False)],
    )
    def test_values(self, a, expected):
        assert omega_a_verdict(a) is expected

    def test_float_input(self):
        assert omega_a_verdict(1.9 + 0j)
        assert not omega_a_verdict(2.1 + 0j)


class TestDecomposability:
    def test_interior_product_sign(self):
        f = InvariantForm(4, {Monomial.make([1, 3], [], 4): 1})
        assert interior_product(1, f).coeff(Monomial.make([3], [], 4)) == G(1)
        assert interior_product(3, f).coeff(Monomial.make([1], [], 4)) == G(-1)

    def test_simple_two_form(self):
        f = wedge(
            InvariantForm.generator(4, 1) + InvariantForm.generator(4, 2),
            InvariantForm.generator(4, 3),
        )
        assert is_decomposable(f)

    def test_non_simple(self):
        f = InvariantForm(
            4,
            {Monomial.make([1, 2], [], 4): 1, Monomial.make([3, 4], [], 4): 1},
        )
        assert not is_decomposable(f)

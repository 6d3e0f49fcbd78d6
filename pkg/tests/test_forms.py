import numpy as np
import pytest

from kyfan.ensembles import (
    SeededStream,
    ginibre,
    random_subunit_columns,
    random_unit_vector,
)
from kyfan.forms import (
    EntrywiseForm,
    apply_form,
    column_scale_factorization,
    fan_form,
    fan_product,
    hadamard_form,
    phi,
    psi,
    right_adjoint_apply,
    theta,
)
from kyfan.matrixcore import singular_values


class TestEntrywiseForm:
    def test_rejects_asymmetric_mask(self):
        with pytest.raises(ValueError):
            EntrywiseForm(np.array([[1.0, 2.0], [3.0, 4.0]]))

    def test_rejects_complex_mask(self):
        with pytest.raises(ValueError):
            EntrywiseForm(np.array([[1.0j, 0.0], [0.0, 1.0j]]))

    def test_mask_is_read_only(self):
        f = hadamard_form(3)
        with pytest.raises(ValueError):
            f.mask[0, 0] = 5.0

    def test_hadamard_mask(self):
        assert np.array_equal(hadamard_form(2).mask, np.ones((2, 2)))

    def test_fan_mask(self):
        expected = np.ones((3, 3))
        np.fill_diagonal(expected, -1.0)
        assert np.array_equal(fan_form(3).mask, expected)

    def test_apply_form_matches_elementwise(self):
        g = SeededStream(21).generator()
        a, b = ginibre(3, g), ginibre(3, g)
        f = fan_form(3)
        assert np.array_equal(apply_form(f, a, b), f.mask * a * b)


class TestFanProduct:
    def test_identity_pair(self):
        assert np.array_equal(fan_product(np.eye(2, dtype=complex), np.eye(2, dtype=complex)), -np.eye(2))

    def test_matches_masked_route(self):
        g = SeededStream(22).generator()
        a, b = ginibre(4, g), ginibre(4, g)
        assert np.array_equal(fan_product(a, b), apply_form(fan_form(4), a, b))

    def test_counterexample_product(self):
        x = np.full((3, 3), 1.0, dtype=complex) / np.sqrt(3.0)
        s = np.array([[2, 1, 2], [-2, 2, 1], [1, 2, -2]], dtype=complex) / 3.0
        j = x.conj().T @ x  # all-entries-one matrix
        m = fan_product(j, s)
        expected = np.array([[-2, 1, 2], [-2, -2, 1], [1, 2, 2]], dtype=complex) / 3.0
        assert np.allclose(m, expected, atol=1e-14)


class TestRightAdjoint:
    def test_trace_identity(self):
        g = SeededStream(23).generator()
        f = fan_form(4)
        a, b, c = ginibre(4, g), ginibre(4, g), ginibre(4, g)
        lhs = np.trace(apply_form(f, a, b) @ c)
        rhs = np.trace(right_adjoint_apply(f, b, c) @ a)
        assert abs(lhs - rhs) <= 1e-12 * (1 + abs(lhs))

    def test_hadamard_adjoint_is_transpose_mask(self):
        g = SeededStream(24).generator()
        b, c = ginibre(3, g), ginibre(3, g)
        assert np.array_equal(right_adjoint_apply(hadamard_form(3), b, c), b.T * c)


class TestThetaPhiPsi:
    def test_theta_negates_first_entry(self):
        assert np.array_equal(theta(np.array([2.0, 3.0])), np.diag([-2.0, 3.0]))

    def test_phi_identity_layout(self):
        out = phi(np.eye(2, dtype=complex))
        expected = np.zeros((2, 4), dtype=complex)
        expected[0, 0] = -1.0  # block 0 negates coordinate 0
        expected[1, 3] = -1.0  # block 1 negates coordinate 1
        assert np.array_equal(out, expected)

    def test_psi_stacks_columns_blockwise(self):
        b = np.array([[1.0, 2.0], [3.0, 4.0]], dtype=complex)
        out = psi(b)
        assert out.shape == (4, 2)
        assert np.array_equal(out[0:2, 0], b[:, 0])
        assert np.array_equal(out[2:4, 1], b[:, 1])
        assert np.array_equal(out[2:4, 0], np.zeros(2))
        assert np.array_equal(out[0:2, 1], np.zeros(2))

    def test_factorization_reproduces_fan_product(self):
        g = SeededStream(25).generator()
        for n in (2, 3, 5):
            a, b = ginibre(n, g), ginibre(n, g)
            got = phi(a) @ psi(b)
            want = fan_product(a, b)
            assert np.linalg.norm(got - want) <= 1e-12 * (1 + np.linalg.norm(a) * np.linalg.norm(b))

    def test_phi_row_norms(self):
        g = SeededStream(26).generator()
        a = ginibre(4, g)
        gram = phi(a) @ phi(a).conj().T
        assert np.allclose(gram, np.diag(np.sum(np.abs(a) ** 2, axis=1)), atol=1e-12)

    def test_phi_contractive_on_subunit_rows(self):
        for i in range(30):
            g = SeededStream(27, i).generator()
            a = random_subunit_columns(4, g).conj().T  # rows now sub-unit
            assert singular_values(phi(a))[0] <= 1.0 + 1e-10

    def test_psi_preserves_column_norms(self):
        g = SeededStream(28).generator()
        b = random_subunit_columns(3, g)
        out = psi(b)
        assert np.allclose(
            np.linalg.norm(out, axis=0), np.linalg.norm(b, axis=0), atol=1e-14
        )


class TestColumnScaleFactorization:
    def test_gram_picks_up_rank_one_mask(self):
        g = SeededStream(29).generator()
        n = 4
        x, y = ginibre(n, g), ginibre(n, g)
        u = random_unit_vector(n, g)
        v = random_unit_vector(n, g)
        xs, ys = column_scale_factorization(x, y, u, v)
        got = xs.conj().T @ ys
        want = (x.conj().T @ y) * np.outer(u, np.conj(v))
        assert np.linalg.norm(got - want) <= 1e-12 * (1 + np.linalg.norm(want))

    def test_frobenius_norms_do_not_grow(self):
        g = SeededStream(31).generator()
        x, y = ginibre(5, g), ginibre(5, g)
        u = random_unit_vector(5, g)
        v = random_unit_vector(5, g)
        xs, ys = column_scale_factorization(x, y, u, v)
        assert np.linalg.norm(xs) <= np.linalg.norm(x) + 1e-12
        assert np.linalg.norm(ys) <= np.linalg.norm(y) + 1e-12

    def test_rejects_non_unit_scalars(self):
        g = SeededStream(30).generator()
        x = np.linalg.qr(ginibre(3, g))[0]
        with pytest.raises(ValueError):
            column_scale_factorization(x, x, np.array([2.0, 1.0, 1.0]), np.ones(3))

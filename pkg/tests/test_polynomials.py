"""
Unit tests for signatures, symmetric tensors and determinant polynomials
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.calculus.polarized import CauchyQuadConfig
from src.domains.descriptor import DomainDescriptor
from src.domains.jordan import q_closed
from src.polynomials.determinants import (
    compose_with_q,
    del_n_2_residual,
    del_n_boundary_probe,
    delta_fundamental,
    delta_signature,
    highest_weight_tensor,
    loos_h_identity_check,
)
from src.polynomials.expansion import fk_expansion_check, minor_kernels
from src.polynomials.nearly_holo import nearly_holo_builder, nearly_holo_kernel_check
from src.polynomials.signature import Signature, enumerate_signatures
from src.polynomials.sym_tensor import SymTensor
from src.reporting.report import PASS
from src.quadrature.sampler import draw_points
from src.utils.errors import InvalidSignature
from src.verification import CheckSpec, SuiteSpec, run_suite


def _points(dom, count=10, seed=0, max_norm=0.8):
    return draw_points(dom, count, np.random.default_rng(seed), max_norm=max_norm)


class TestSignature:
    """Test signature parsing and validation"""

    @pytest.mark.parametrize('text', ['2,1', '2 1', ' 2, 1 '])
    def test_parse(self, text):
        """Test comma and space separated input"""
        assert Signature.parse(text).parts == (2, 1)

    @pytest.mark.parametrize('text', ['', 'a,b', '1,2', '2,-1'])
    def test_parse_invalid(self, text):
        """Test empty, non-numeric, increasing and negative input"""
        with pytest.raises(InvalidSignature):
            Signature.parse(text)

    def test_properties(self):
        """Test size, leading part and minor exponents"""
        sig = Signature((3, 1))
        assert sig.size == 4
        assert sig.m1 == 3
        assert sig.exponents == [2, 1]
        assert sig.to_config() == '3,1'
        assert str(sig) == '(3,1)'

    def test_padding(self):
        """Test padding to the rank"""
        assert Signature((2,)).padded(3).parts == (2, 0, 0)
        assert Signature((2, 0)).padded(1).parts == (2,)
        with pytest.raises(InvalidSignature):
            Signature((2, 1)).padded(1)

    def test_full(self):
        """Test the full-determinant signature"""
        assert Signature.full(2, 3).parts == (3, 3)

    @pytest.mark.parametrize('m1,alpha,expected', [(2, 4.0, True), (3, 4.0, False), (1, 1.5, True), (1, 1.0, False)])
    def test_admissible(self, m1, alpha, expected):
        """Test (α + 1)/2 > m_1"""
        assert Signature((m1,)).admissible(alpha) is expected

    def test_enumerate(self):
        """Test enumeration order and the zero signature"""
        parts = [s.parts for s in enumerate_signatures(2, 2)]
        assert parts == [(1, 0), (2, 0), (1, 1)]
        with_zero = [s.parts for s in enumerate_signatures(2, 1, include_zero=True)]
        assert with_zero == [(0, 0), (1, 0)]

    @given(st.lists(st.integers(min_value=0, max_value=6), min_size=1, max_size=4))
    def test_sorted_tuples_are_signatures(self, values):
        """Property: any non-increasing tuple round-trips through its config string"""
        parts = tuple(sorted(values, reverse=True))
        assert Signature.parse(Signature(parts).to_config()).parts == parts


class TestSymTensor:
    """Test the symmetric tensor / polynomial identification"""

    def test_from_polynomial(self):
        """Test η_0 η_1 corresponds to the symmetrized e_0 ⊗ e_1"""
        tensor = SymTensor.from_polynomial(lambda eta: eta[..., 0] * eta[..., 1], 2, 2)
        np.testing.assert_allclose(tensor.data, [[0, 0.5], [0.5, 0]], atol=1e-15)
        assert tensor.is_symmetric()

    def test_polynomial_view(self):
        """Test φ(η) recovers the polynomial"""
        def cubic(eta):
            return eta[..., 0] ** 2 * eta[..., 1] - 3 * eta[..., 1] ** 3

        tensor = SymTensor.from_polynomial(cubic, 3, 2)
        eta = np.random.default_rng(1).standard_normal((6, 2)) + 0j
        np.testing.assert_allclose(tensor.polynomial(eta), cubic(eta), atol=1e-12)

    def test_order_zero(self):
        """Test constants are order-0 tensors"""
        tensor = SymTensor.from_polynomial(lambda eta: 2.0 * np.ones(eta.shape[:-1]), 0, 3)
        assert tensor.order == 0
        np.testing.assert_allclose(tensor.polynomial(np.zeros((4, 3))), 2.0)


class TestDeterminants:
    """Test minors, Δ_m and their composition with q"""

    def test_fundamental_minors(self):
        """Test Δ_1 and Δ_2 on a 2x2 matrix"""
        dom = DomainDescriptor.matrix(2, 2)
        v = np.array([[1.0, 2.0], [3.0, 4.0]])
        assert delta_fundamental(1, v, dom) == pytest.approx(1.0)
        assert delta_fundamental(2, v, dom) == pytest.approx(-2.0)
        with pytest.raises(InvalidSignature):
            delta_fundamental(3, v, dom)

    def test_delta_signature(self):
        """Test Δ_(2,1) = Δ_1 Δ_2"""
        dom = DomainDescriptor.matrix(2, 3)
        v = _points(dom, 5)
        expected = delta_fundamental(1, v, dom) * delta_fundamental(2, v, dom)
        np.testing.assert_allclose(delta_signature(Signature((2, 1)), v, dom), expected, atol=1e-14)

    def test_compose_with_q_on_disk(self):
        """Test Δ̄_(m)(q) = q^m on the disk"""
        disk = DomainDescriptor.disk()
        z = _points(disk, 5)
        np.testing.assert_allclose(compose_with_q(Signature((3,)), z, disk), q_closed(z, disk)[:, 0] ** 3)

    @pytest.mark.parametrize('dom', [DomainDescriptor.ball(2), DomainDescriptor.matrix(2, 2)], ids=lambda d: d.label)
    def test_highest_weight_tensor(self, dom):
        """Test the tensor of Δ_m reproduces Δ_m on covectors"""
        sig = Signature.full(dom.rank, 1).padded(dom.rank)
        tensor = highest_weight_tensor(sig, dom)
        assert tensor.order == sig.size
        eta = _points(dom, 4, seed=2)
        np.testing.assert_allclose(tensor.polynomial(eta), delta_signature(sig, eta, dom), atol=1e-13)

    @pytest.mark.parametrize('dom', [DomainDescriptor.disk(), DomainDescriptor.matrix(2, 2),
                                     DomainDescriptor.matrix(2, 3)], ids=lambda d: d.label)
    def test_top_minor_of_q(self, dom):
        """Test Δ̄_r(q(z)) = Δ̄_r(z) / h(z, z̄)"""
        z = _points(dom, 10, seed=3)
        assert np.max(del_n_2_residual(z, dom)) < 1e-12

    @pytest.mark.parametrize('dom', [DomainDescriptor.ball(2), DomainDescriptor.matrix(2, 2)], ids=lambda d: d.label)
    def test_h_of_quasi_inverse(self, dom):
        """Test h(v, z̄^z) = h(v + z, z̄) / h(z, z̄)"""
        z = _points(dom, 10, seed=4, max_norm=0.6)
        v = _points(dom, 10, seed=5, max_norm=0.3)
        assert np.max(loos_h_identity_check(v, z, dom)) < 1e-12

    def test_boundary_probe_disk(self):
        """Test h Δ̄_(1)(q) = z̄ stays bounded at the boundary"""
        disk = DomainDescriptor.disk()
        result = del_n_boundary_probe(Signature((1,)), disk, np.random.default_rng(6), directions=16)
        assert result['stable']
        assert result['sup'][-1] == pytest.approx(1 - 1e-4)


class TestKernelExpansion:
    """Test the minor expansion of h"""

    def test_minor_kernels_first_column(self):
        """Test K_0 = 1 and K_1 = <v, w> on the ball"""
        ball = DomainDescriptor.ball(2)
        v = _points(ball, 4, seed=7)
        w = _points(ball, 4, seed=8)
        kernels = minor_kernels(v, w, ball)
        np.testing.assert_allclose(kernels[:, 0], 1.0)
        np.testing.assert_allclose(kernels[:, 1], np.sum(v * np.conj(w), axis=-1), atol=1e-14)

    @pytest.mark.parametrize('dom', [DomainDescriptor.ball(3), DomainDescriptor.matrix(2, 2),
                                     DomainDescriptor.matrix(2, 3)], ids=lambda d: d.label)
    def test_expansion_constants(self, dom):
        """Test h = Σ (-1)^s K_s with unit constants"""
        v = _points(dom, 20, seed=9)
        w = _points(dom, 20, seed=10)
        result = fk_expansion_check(dom, v, w)
        assert result['residual'] < 1e-12
        assert result['sign_pattern_ok']
        assert result['design_rank'] == dom.rank + 1
        np.testing.assert_allclose(result['constants'], np.ones(dom.rank + 1), atol=1e-9)


class TestNearlyHolomorphic:
    """Test nearly holomorphic functions"""

    def test_requires_coefficients(self):
        """Test an empty coefficient list is rejected"""
        with pytest.raises(ValueError):
            nearly_holo_builder([], DomainDescriptor.disk())

    def test_degree_one_is_q(self):
        """Test g_0 = 0, g_1 = 1 gives f = q"""
        disk = DomainDescriptor.disk()
        f = nearly_holo_builder([
            lambda z: np.zeros(z.shape[0]),
            lambda z: np.ones((z.shape[0], 1)),
        ], disk)
        assert f.degree == 1
        z = _points(disk, 5, seed=11)
        np.testing.assert_allclose(f(z), q_closed(z, disk)[:, 0], atol=1e-14)

    def test_kernel_check_on_holomorphic(self):
        """Test D̄ kills a holomorphic function"""
        disk = DomainDescriptor.disk()
        f = nearly_holo_builder([lambda z: 1.0 + z[:, 0] ** 2], disk)
        result = nearly_holo_kernel_check(f, _points(disk, 4, seed=12, max_norm=0.6), CauchyQuadConfig(points=16))
        assert result['kernel_residual'] < 1e-8
        assert result['top_norm'] > 0


class TestRegisteredPolynomialChecks:
    """Test the registered polynomial checks end to end"""

    @pytest.mark.parametrize('dom,sig', [
        (DomainDescriptor.ball(2), Signature((2,))),
        (DomainDescriptor.matrix(2, 2), Signature((2, 1))),
        (DomainDescriptor.matrix(2, 3), Signature((1, 1))),
    ], ids=['ball2', 'matrix2x2', 'matrix2x3'])
    def test_k_covariance_composition(self, dom, sig):
        """Test f_{kφ}(z) = f_φ(k^{-1}z) for Haar-random k"""
        suite = SuiteSpec(id='k-cov', domain=dom,
                          checks=[CheckSpec('k-covariance-composition', samples=10, signature=sig)]).validate()
        record = run_suite(suite, seed=42, timestamp='t').checks[0]
        assert record.status == PASS, record.notes
        assert record.max_error < 1e-9


if __name__ == '__main__':
    pytest.main([__file__, '-v'])

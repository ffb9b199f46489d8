"""
Unit tests for the Mobius action and the adjoint operator on the ball
"""

import numpy as np
import pytest

from src.calculus.adjoint import adjoint_D_ball, adjoint_power_constant, constant_readings, first_frame_power
from src.calculus.mobius import MobiusElement, mobius_action, mobius_intertwining_residual
from src.calculus.polarized import CauchyQuadConfig, combine, h_polarized
from src.domains.descriptor import DomainDescriptor
from src.polynomials.determinants import compose_with_q_polarized
from src.polynomials.signature import Signature
from src.quadrature.sampler import draw_points
from src.utils.errors import BranchAmbiguity, NotUnitary, PointOutsideDomain, UnsupportedDomain

BALL2 = DomainDescriptor.ball(2)


@pytest.fixture
def cfg():
    return CauchyQuadConfig(points=16)


@pytest.fixture
def boost():
    """Transvection composed with a phase rotation"""
    a = np.array([0.2 + 0.1j, -0.15j])
    return MobiusElement.transvection(a).compose(MobiusElement.rotation(np.exp(0.7j) * np.eye(2)))


class TestMobiusElement:
    """Test SU(n,1) elements and their action"""

    def test_rejects_non_pseudo_unitary(self):
        """Test matrices outside U(n,1) are refused"""
        with pytest.raises(NotUnitary):
            MobiusElement.from_matrix(2 * np.eye(3))

    def test_transvection_moves_origin(self):
        """Test the transvection to a sends 0 to a"""
        a = np.array([0.3, 0.4j])
        g = MobiusElement.transvection(a)
        np.testing.assert_allclose(g.act(np.zeros(2)), a, atol=1e-14)

    def test_transvection_outside(self):
        """Test targets outside the ball are refused"""
        with pytest.raises(PointOutsideDomain):
            MobiusElement.transvection([0.8, 0.8])

    def test_inverse(self, boost):
        """Test g^{-1} g acts as the identity"""
        z = draw_points(BALL2, 5, np.random.default_rng(0))
        np.testing.assert_allclose(boost.inverse().act(boost.act(z)), z, atol=1e-13)

    def test_preserves_ball(self, boost):
        """Test images of interior points stay inside"""
        z = draw_points(BALL2, 50, np.random.default_rng(1), max_norm=0.99)
        assert np.all(BALL2.contains(boost.act(z)))

    def test_log_jacobian(self, boost):
        """Test exp(log J_g) = det dg"""
        z = draw_points(BALL2, 5, np.random.default_rng(2))
        np.testing.assert_allclose(np.exp(boost.log_jacobian(z)), np.linalg.det(boost.differential(z)), atol=1e-12)

    def test_branch_ambiguity(self):
        """Test the continuation refuses points where |c.z / d| >= 1"""
        u = np.array([1.0, 0.0])
        g = MobiusElement.transvection(0.9 * u)
        with pytest.raises(BranchAmbiguity):
            g.log_jacobian(2.0 * u)


class TestMobiusAction:
    """Test π_ν(g) and its intertwining with D̄"""

    def test_requires_ball(self):
        """Test matrix domains are refused"""
        dom = DomainDescriptor.matrix(2, 2)
        with pytest.raises(UnsupportedDomain):
            mobius_action(MobiusElement.identity(4), h_polarized(dom), 4.0)

    def test_identity_acts_trivially(self):
        """Test π_ν(1)f = f"""
        F = h_polarized(BALL2)
        z = draw_points(BALL2, 4, np.random.default_rng(3))
        np.testing.assert_allclose(mobius_action(MobiusElement.identity(2), F, 7.0).restrict(z), F.restrict(z),
                                   atol=1e-14)

    def test_intertwining(self, boost, cfg):
        """Test D̄ π_ν(g) = ((dg)^{-1} ⊗ π_ν(g)) D̄"""
        F = combine(lambda f, h: f * h, compose_with_q_polarized(Signature((2,)), BALL2), h_polarized(BALL2),
                    order=0, name='Δ(q)h')
        z = draw_points(BALL2, 5, np.random.default_rng(4), max_norm=0.5)
        assert mobius_intertwining_residual(boost, F, 4.0 + BALL2.genus, z, cfg) < 1e-6


class TestAdjoint:
    """Test the formal adjoint of D̄ on the ball"""

    @pytest.mark.parametrize('alpha', [2.0, 4.0])
    def test_readings_agree_for_m1(self, alpha):
        """Test both readings give -α for m = 1"""
        assert constant_readings(1, alpha) == {'uniform': -alpha, 'frozen': -alpha}

    def test_readings_for_m2(self):
        """Test the readings split at m = 2"""
        assert constant_readings(2, 4.0) == {'uniform': 6.0, 'frozen': 4.0}

    @pytest.mark.parametrize('alpha', [2.0, 4.0])
    def test_first_order_constant(self, alpha, cfg):
        """Test D e_1 = -α (1-|z|^2)^{-1} z̄_1"""
        z = np.array([[0.3 + 0.1j, 0.2], [-0.25j, 0.4 + 0.1j], [0.5, -0.2j]])
        constants = adjoint_power_constant(BALL2, 1, alpha, z, cfg)
        np.testing.assert_allclose(constants, -alpha, atol=1e-7)

    def test_constant_is_uniform_across_points(self, cfg):
        """Test D^2(e_1 ⊗ e_1) has a constant profile ratio"""
        z = np.array([[0.3 + 0.1j, 0.2], [-0.25j, 0.4 + 0.1j], [0.5, -0.2j]])
        constants = adjoint_power_constant(BALL2, 2, 4.0, z, cfg)
        assert np.max(np.abs(constants - np.mean(constants))) < 1e-5 * max(1.0, abs(np.mean(constants)))

    def test_needs_ball(self, cfg):
        """Test matrix domains are refused"""
        with pytest.raises(UnsupportedDomain):
            adjoint_D_ball(first_frame_power(DomainDescriptor.matrix(2, 2), 1), 4.0, cfg)

    def test_needs_positive_order(self, cfg):
        """Test scalar input is refused"""
        with pytest.raises(ValueError):
            adjoint_D_ball(h_polarized(BALL2), 4.0, cfg)

    def test_rejects_points_on_axis(self, cfg):
        """Test points with z_1 = 0 are refused"""
        with pytest.raises(ValueError):
            adjoint_power_constant(BALL2, 1, 4.0, np.array([[0.0, 0.5]]), cfg)


if __name__ == '__main__':
    pytest.main([__file__, '-v'])

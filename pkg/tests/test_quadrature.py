"""
Unit tests for domain sampling, weighted integrals and integrability probes
"""

import math

import numpy as np
import pytest

from src.domains.descriptor import DomainDescriptor
from src.domains.jordan import q_closed
from src.quadrature.integrals import (
    bergman_tensor_norm,
    disk_q_power_norm,
    mc_integrate,
    weighted_norm,
)
from src.quadrature.probes import (
    DIVERGENT,
    FINITE,
    INCONCLUSIVE,
    MATRIX_MARGINS,
    ProbeConfig,
    ProbeResult,
    integrability_probe,
    threshold_table,
)
from src.quadrature.sampler import (
    RADIAL_STRATIFIED,
    SamplerConfig,
    box_volume,
    cone_directions,
    domain_volume,
    draw_points,
    sample_domain,
)
from src.reporting.report import PASS
from src.utils.errors import AcceptanceTooLow, ConfigInvalid, InconclusiveProbe, UnsupportedDomain
from src.verification import CheckSpec, SuiteSpec, run_suite

DISK = DomainDescriptor.disk()


def _ones(z):
    return np.ones(z.shape[0])


class TestSampler:
    """Test domain sampling"""

    @pytest.mark.parametrize('dom,expected', [
        (DISK, math.pi),
        (DomainDescriptor.ball(2), math.pi ** 2 / 2),
        (DomainDescriptor.matrix(2, 2), math.pi ** 4 / 12),
    ], ids=['disk', 'ball2', 'matrix2x2'])
    def test_domain_volume(self, dom, expected):
        """Test closed-form Lebesgue volumes"""
        assert domain_volume(dom) == pytest.approx(expected)

    def test_box_volume(self):
        """Test one [-1, 1]^2 square per complex coordinate"""
        assert box_volume(DISK) == 4.0
        assert box_volume(DomainDescriptor.matrix(2, 2)) == 4.0 ** 4

    def test_config_validation(self):
        """Test invalid sampler settings"""
        with pytest.raises(ConfigInvalid):
            SamplerConfig(method='sobol')
        with pytest.raises(ConfigInvalid):
            SamplerConfig(samples=1)
        with pytest.raises(ConfigInvalid):
            SamplerConfig.from_dict({'seeds': 3})

    def test_deterministic(self):
        """Test a fixed seed reproduces the sample"""
        cfg = SamplerConfig(seed=7, samples=5_000, chunk_size=1_000)
        first = sample_domain(DISK, cfg)
        second = sample_domain(DISK, cfg)
        np.testing.assert_array_equal(first.points, second.points)
        assert first.proposals == 5_000

    def test_acceptance_rate(self):
        """Test the acceptance rate approaches vol(disk) / vol(box)"""
        sample = sample_domain(DISK, SamplerConfig(seed=1, samples=100_000))
        assert sample.acceptance_rate == pytest.approx(math.pi / 4, abs=0.01)
        assert np.all(DISK.contains(sample.points))

    def test_acceptance_too_low(self):
        """Test sampling is refused below the acceptance floor"""
        with pytest.raises(AcceptanceTooLow):
            sample_domain(DISK, SamplerConfig(samples=1_000, min_acceptance=0.99))

    def test_draw_points_range(self):
        """Test interior test points respect their norm bounds"""
        dom = DomainDescriptor.matrix(2, 3)
        z = draw_points(dom, 100, np.random.default_rng(0), max_norm=0.7, min_norm=0.1)
        norms = dom.operator_norm(z)
        assert np.all(norms <= 0.7 + 1e-12)
        assert np.all(norms >= 0.1 - 1e-12)

    def test_draw_points_invalid(self):
        """Test impossible norm bounds"""
        with pytest.raises(ConfigInvalid):
            draw_points(DISK, 10, np.random.default_rng(0), max_norm=1.0)

    def test_cone_directions(self):
        """Test boundary directions and their weights"""
        units, weights = cone_directions(DISK, 8, np.random.default_rng(0))
        np.testing.assert_allclose(np.abs(units[:, 0]), 1.0)
        np.testing.assert_allclose(weights, 1.0)

        dom = DomainDescriptor.matrix(2, 2)
        units, weights = cone_directions(dom, 32, np.random.default_rng(1))
        np.testing.assert_allclose(dom.operator_norm(units), 1.0)
        assert np.mean(weights) == pytest.approx(1.0)


class TestWeightedIntegrals:
    """Test Monte-Carlo and radial quadrature"""

    def test_disk_area_mc(self):
        """Test ∫_disk 1 dm = π within the Monte-Carlo error"""
        estimate = weighted_norm(_ones, 0.0, DISK, SamplerConfig(seed=3, samples=100_000))
        assert estimate.agrees_with(math.pi, n_sigma=4.0)
        assert estimate.method == 'rejection-box'

    def test_disk_area_radial(self):
        """Test the radial rule is exact for constants"""
        estimate = weighted_norm(_ones, 0.0, DISK, SamplerConfig(method=RADIAL_STRATIFIED))
        assert estimate.value == pytest.approx(math.pi, rel=1e-10)

    def test_ball_volume_mc(self):
        """Test ∫_ball2 1 dm = π^2/2"""
        estimate = mc_integrate(_ones, DomainDescriptor.ball(2), SamplerConfig(seed=4, samples=100_000))
        assert estimate.agrees_with(math.pi ** 2 / 2, n_sigma=4.0)

    @pytest.mark.parametrize('alpha,m,expected', [(4.0, 1, math.pi / 12), (4.0, 2, math.pi / 3),
                                                  (4.0, 0, math.pi / 5)])
    def test_disk_q_power_norm(self, alpha, m, expected):
        """Test π B(m + 1, α - 2m + 1)"""
        assert disk_q_power_norm(alpha, m) == pytest.approx(expected)

    def test_disk_q_power_norm_divergent(self):
        """Test past the threshold the norm is infinite"""
        assert math.isinf(disk_q_power_norm(4.0, 3))

    def test_radial_matches_beta(self):
        """Test the radial rule reproduces the beta closed form"""
        def q_first(z):
            return q_closed(z, DISK)[:, 0]

        estimate = weighted_norm(q_first, 4.0, DISK, SamplerConfig(method=RADIAL_STRATIFIED))
        assert estimate.value == pytest.approx(math.pi / 12, rel=1e-6)

    def test_invalid_weight(self):
        """Test α <= -1 is refused"""
        with pytest.raises(ConfigInvalid):
            weighted_norm(_ones, -1.0, DISK, SamplerConfig())

    def test_radial_is_disk_only(self):
        """Test the radial rule refuses other domains"""
        with pytest.raises(UnsupportedDomain):
            weighted_norm(_ones, 0.0, DomainDescriptor.ball(2), SamplerConfig(method=RADIAL_STRATIFIED))

    def test_bergman_tensor_norm_disk(self):
        """Test ∫ B^{-1} h^α dm = π / (α - 1) for the constant 1 ∈ V"""
        def f(z):
            return np.ones((z.shape[0], 1))

        estimate = bergman_tensor_norm(f, 1, 4.0, DISK, SamplerConfig(seed=5, samples=100_000))
        assert estimate.agrees_with(math.pi / 3, n_sigma=4.0)


class TestIntegrabilityProbe:
    """Test boundary-refinement probes"""

    def test_config_validation(self):
        """Test margin schedules"""
        with pytest.raises(ConfigInvalid):
            ProbeConfig(margins=(1e-2, 1e-3))
        with pytest.raises(ConfigInvalid):
            ProbeConfig(margins=(1e-3, 1e-2, 1e-4))

    def test_matrix_schedule(self):
        """Test matrix domains stop at 1e-4"""
        assert ProbeConfig.for_domain(DomainDescriptor.matrix(2, 2)).margins == MATRIX_MARGINS

    def test_finite(self):
        """Test α = 2, m_1 = 1 is finite on the disk"""
        result = integrability_probe(DISK, 2.0, 1, ProbeConfig(directions=32))
        assert result.verdict == FINITE
        assert result.fitted_exponent > 0

    def test_divergent(self):
        """Test α = 2, m_1 = 2 diverges at the predicted rate"""
        result = integrability_probe(DISK, 2.0, 2, ProbeConfig(directions=32))
        assert result.verdict == DIVERGENT
        assert result.predicted_exponent == -1.0
        assert result.fitted_exponent == pytest.approx(-1.0, abs=0.2)

    def test_finite_partial_integral(self):
        """Test the converged partial integral matches the beta closed form"""
        result = integrability_probe(DISK, 4.0, 1, ProbeConfig(directions=32))
        assert result.partial_integrals[-1] == pytest.approx(math.pi / 12, rel=1e-4)

    def test_require_verdict(self):
        """Test an inconclusive result refuses to give a verdict"""
        result = ProbeResult(INCONCLUSIVE, 1.0, float('nan'))
        with pytest.raises(InconclusiveProbe):
            result.require_verdict()

    def test_threshold_table(self):
        """Test admissibility and verdicts across m_1"""
        table = threshold_table(DISK, 4.0, [0, 1, 2, 3], ProbeConfig(directions=32))
        assert list(table['admissible']) == [True, True, True, False]
        assert list(table['verdict']) == [FINITE, FINITE, FINITE, DIVERGENT]
        assert math.isinf(table['closed_form'].iloc[3])
        assert table['boundary_exponent'].tolist() == [4.0, 2.0, 0.0, -2.0]

    @pytest.mark.parametrize('alpha,m1', [(3.0, 2), (1.0, 1), (5.0, 3)])
    def test_log_divergent_at_threshold(self, alpha, m1):
        """Test α - 2m_1 + 1 = 0 diverges logarithmically"""
        result = integrability_probe(DISK, alpha, m1, ProbeConfig(directions=32))
        assert result.predicted_exponent == 0.0
        assert result.verdict == DIVERGENT
        assert result.fitted_exponent == pytest.approx(0.0, abs=0.2)
        # one decade of ε adds about π log 10
        assert result.increments[-1] == pytest.approx(math.pi * math.log(10.0), rel=0.05)

    def test_threshold_table_odd_alpha(self):
        """Test the threshold row is divergent at α = 3"""
        table = threshold_table(DISK, 3.0, [0, 1, 2], ProbeConfig(directions=32))
        assert list(table['admissible']) == [True, True, False]
        assert list(table['verdict']) == [FINITE, FINITE, DIVERGENT]


def _run_registered(check_id, dom=DISK, **fields):
    """Run one registered check as a single-check suite"""
    suite = SuiteSpec(id=check_id, domain=dom, checks=[CheckSpec(check_id, **fields)]).validate()
    return run_suite(suite, seed=42, timestamp='t').checks[0]


class TestRegisteredQuadratureChecks:
    """Test the registered quadrature checks end to end"""

    def test_radial_q_power_inside_disk(self):
        """Test the radial rule never evaluates q on the unit circle"""
        def q_squared(z):
            return q_closed(z, DISK)[:, 0] ** 2

        estimate = weighted_norm(q_squared, 6.0, DISK, SamplerConfig(method=RADIAL_STRATIFIED))
        assert estimate.value == pytest.approx(disk_q_power_norm(6.0, 2), rel=1e-6)

    def test_disk_q_norms(self):
        """Test radial, Monte-Carlo and beta values agree and (4, 3) diverges"""
        record = _run_registered('disk-q-norms')
        assert record.status == PASS, record.notes
        assert record.max_error < 1e-3
        assert record.notes.endswith('divergent')

    def test_radial_vs_mc(self):
        """Test the radial rule and Monte Carlo agree for q^0, q^1, q^2"""
        record = _run_registered('radial-vs-mc')
        assert record.status == PASS, record.notes

    @pytest.mark.parametrize('dom', [DISK, DomainDescriptor.ball(2)], ids=['disk', 'ball2'])
    def test_mc_seed_halves(self, dom):
        """Test disjoint seeds agree within three standard errors"""
        record = _run_registered('mc-seed-halves', dom)
        assert record.status == PASS, record.notes

    def test_stderr_scaling(self):
        """Test quadrupling the sample halves the standard error"""
        record = _run_registered('stderr-scaling')
        assert record.status == PASS, record.notes

    @pytest.mark.parametrize('alpha', [2.0, 3.0])
    def test_threshold_sweep(self, alpha):
        """Test verdicts follow admissibility for m_1 = 1, 2"""
        record = _run_registered('threshold-sweep', alpha=alpha, params={'m1_values': [1, 2]})
        assert record.status == PASS, record.notes
        assert 'm1=2: divergent' in record.notes


if __name__ == '__main__':
    pytest.main([__file__, '-v'])

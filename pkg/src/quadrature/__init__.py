from .sampler import (
    SamplerConfig,
    DomainSample,
    REJECTION_BOX,
    RADIAL_STRATIFIED,
    box_volume,
    domain_volume,
    iter_sample_chunks,
    sample_domain,
    draw_directions,
    cone_directions,
    draw_points,
)
from .integrals import (
    IntegralEstimate,
    weight_h,
    mc_integrate,
    radial_disk_integrate,
    weighted_norm,
    bergman_tensor_norm,
    disk_q_power_norm,
)
from .probes import (
    ProbeConfig,
    ProbeResult,
    FINITE,
    DIVERGENT,
    INCONCLUSIVE,
    first_minor_integrand,
    integrability_probe,
    threshold_table,
    with_margins,
)

__all__ = [
    'SamplerConfig', 'DomainSample', 'REJECTION_BOX', 'RADIAL_STRATIFIED',
    'box_volume', 'domain_volume', 'iter_sample_chunks', 'sample_domain',
    'draw_directions', 'cone_directions', 'draw_points',
    'IntegralEstimate', 'weight_h', 'mc_integrate', 'radial_disk_integrate',
    'weighted_norm', 'bergman_tensor_norm', 'disk_q_power_norm',
    'ProbeConfig', 'ProbeResult', 'FINITE', 'DIVERGENT', 'INCONCLUSIVE',
    'first_minor_integrand', 'integrability_probe', 'threshold_table', 'with_margins',
]

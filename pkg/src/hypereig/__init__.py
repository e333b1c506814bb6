"""Principal eigenvectors of uniform hypergraphs, with certified bounds."""

__version__ = "0.1.0"

from .hypergraph import (  # noqa: E402
    Hypergraph,
    ShadowGraph,
    build,
    components,
    degrees,
    delete_edge,
    diameter,
    distance,
    is_connected,
    is_linear,
    shadow,
)
from .spectral import (  # noqa: E402
    IterationOptions,
    SpectralResult,
    apply_adjacency,
    power_iteration,
    rayleigh,
    residual,
)
from .incidence import (  # noqa: E402
    WeightedIncidence,
    build_incidence,
    verify_alpha_normal,
    verify_consistency,
)
from .bounds import BoundCertificate, BoundId, certify_all  # noqa: E402
from .gap import GapReport, audit_edge_deletions, gap_lower_bound, spectral_radius_general  # noqa: E402

"""Isoperimetric profiles of S^k x R^n and the Yamabe-constant lower bounds
they imply."""

__version__ = "0.1.0"

from .geometry import (  # noqa: E402
    SphereMetricSpec,
    gamma,
    sin_power_integral,
    sphere_profile,
    sphere_profile_peak,
    unit_ball_volume,
    unit_sphere_volume,
)
from .cylinder import (  # noqa: E402
    CylinderSpec,
    ball_area,
    ball_integrals,
    ball_volume,
    crossover,
    cylinder_profile,
    profile_ratio,
)
from .bounds import (  # noqa: E402
    ProfileBound,
    DominationCertificate,
    certify_domination,
    chord_line,
    morgan_product_bound,
    ros_compose,
    verify_auxiliary_min,
)
from .plans import BUILTIN_PLANS, build_plan, run_plan  # noqa: E402
from .yamabe import (  # noqa: E402
    YamabeBoundInput,
    YamabeBoundResult,
    reproduce_headlines,
    yamabe_product_bound,
    yamabe_ricci_volume_bound,
    yamabe_sphere,
)

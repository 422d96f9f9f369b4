"""Lower bounds for the area of images of discs under Q-homeomorphisms
with respect to the p-modulus (p > 2), with numerical checks of every
ingredient against radial maps, closed-form capacities and a discrete
p-energy minimiser."""

from .bounds import (
    BoundCurve,
    BoundParams,
    area_lower_bound,
    bound_curve,
    constant_bound,
    extremal_min,
    log_bound,
    power_law_bound,
)
from .capacity import (
    GridField,
    OptimizerConfig,
    RingCondenser,
    grid_capacity_2d,
    isoperimetric_deficit,
    kruzhkov_bound,
    radial_capacity_1d,
    ring_capacity_closed,
)
from .errors import (
    ConvergenceError,
    DivergenceError,
    DomainError,
    EvaluationError,
    GeometryError,
    LineSearchError,
    NumericalError,
    ParameterError,
    QAreaError,
)
from .maps import (
    Identity,
    LinearScaling,
    PowerStretch,
    area_functional,
    dilatations_at,
    extremal_map,
    image_disc_area,
)
from .profiles import (
    Constant,
    Logarithmic,
    PowerLaw,
    ScalarField,
    Table,
    circle_average,
    eval_profile,
    profile_from_map,
)
from .quadrature import QuadratureConfig, bound_integral

__version__ = "0.1.0"
